//! The three label-insertion moves and their common inverse.
//!
//! Growing a tree on `[m]` into a tree on `[m+1]` happens one of three ways:
//! attach `m+1` as a leaf (*z*, keeps the improper count), splice `m+1` into
//! an existing edge (*v*, one new improper edge), or plant `m+1` at the top
//! of an improper edge's parent, splitting that parent's children by
//! subtree-minimum rank (*u*, one new improper edge). Every tree arises from
//! exactly one move, so `delete_max` recovers the unique predecessor.

use super::{check_bound, RootedTree};
use crate::{Error, Result};

/// Which insertion produced the maximum label, and where.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertionDescriptor {
    /// Leaf child of `parent`.
    Z { parent: usize },
    /// Spliced into `edge`.
    V { edge: (usize, usize) },
    /// Applied at the improper `edge = (i, j_d)`.
    U { edge: (usize, usize) },
}

impl InsertionDescriptor {
    /// Replays this insertion on `t`.
    pub fn apply(&self, t: &RootedTree) -> Result<RootedTree> {
        match *self {
            InsertionDescriptor::Z { parent } => z_insert(t, parent),
            InsertionDescriptor::V { edge } => v_insert(t, edge),
            InsertionDescriptor::U { edge } => u_insert(t, edge),
        }
    }
}

/// Starting point for [`generate_via_insertion`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    /// The planted edge 0–1; grows into every planted tree on `{0,...,n}`.
    PlantedEdge,
    /// The lone vertex 1; grows into every tree on `[n]` rooted at 1.
    SingleVertex,
}

fn next_label(t: &RootedTree) -> usize {
    t.n() + 1
}

/// Attaches the next label as a leaf child of `i`. The new edge is proper,
/// so the improper count is unchanged. The planted root 0 may not be `i`.
pub fn z_insert(t: &RootedTree, i: usize) -> Result<RootedTree> {
    if i < 1 || i > t.n() {
        return Err(Error::InvalidVertex(i));
    }
    let m = next_label(t);
    let mut parent = t.parent.clone();
    parent.push(Some(i));
    Ok(RootedTree { n: m, planted: t.planted(), root: t.root(), parent })
}

/// Splices the next label into the edge `(i, j)`. The new edge down to `j`
/// is improper (the subtree minimum is below the new maximum label), the
/// edge from `i` keeps the old status, so the improper count grows by one.
pub fn v_insert(t: &RootedTree, edge: (usize, usize)) -> Result<RootedTree> {
    let (i, j) = edge;
    if !t.has_edge(i, j) {
        return Err(Error::InvalidEdge(i, j));
    }
    let m = next_label(t);
    let mut parent = t.parent.clone();
    parent.push(Some(i));
    parent[j] = Some(m);
    Ok(RootedTree { n: m, planted: t.planted(), root: t.root(), parent })
}

/// Applies the restructuring move at the improper edge `(i, j_d)`: with the
/// children of `i` ranked `j_1, ..., j_l` by increasing subtree minimum, the
/// new vertex takes over `i`'s position and adopts `j_1, ..., j_d` together
/// with `i` itself; `i` keeps the rest. Both new edges down to the adopted
/// block and to `i` are improper on arrival, for a net gain of one.
pub fn u_insert(t: &RootedTree, edge: (usize, usize)) -> Result<RootedTree> {
    let (i, j_d) = edge;
    if !t.has_edge(i, j_d) {
        return Err(Error::InvalidEdge(i, j_d));
    }
    if !t.is_improper_edge(i, j_d)? {
        return Err(Error::NotImproperEdge(i, j_d));
    }
    let stats = t.stats();
    let m = next_label(t);
    let mut parent = t.parent.clone();
    parent.push(t.parent(i));
    let root = if t.root() == i { m } else { t.root() };
    parent[i] = Some(m);
    for c in t.children()[i].iter().copied() {
        if stats.beta[c] <= stats.beta[j_d] {
            parent[c] = Some(m);
        }
    }
    Ok(RootedTree { n: m, planted: t.planted(), root, parent })
}

/// Removes the maximum label, returning the unique predecessor tree and the
/// insertion that rebuilds the input.
///
/// An unplanted tree whose root is the maximum label with a single child has
/// no unplanted predecessor; plant such trees first.
pub fn delete_max(t: &RootedTree) -> (RootedTree, InsertionDescriptor) {
    let m = t.n();
    assert!(m >= 2, "nothing to delete below two vertices");
    let children = t.children();
    let kids = &children[m];
    match kids.len() {
        0 => {
            let i = t.parent(m).expect("a leaf has a parent");
            let mut parent = t.parent.clone();
            parent.pop();
            let pred = RootedTree { n: m - 1, planted: t.planted(), root: t.root(), parent };
            (pred, InsertionDescriptor::Z { parent: i })
        }
        1 => {
            let j = kids[0];
            let i = t
                .parent(m)
                .expect("splice inverse needs a parent; plant the tree first");
            let mut parent = t.parent.clone();
            parent.pop();
            parent[j] = Some(i);
            let pred = RootedTree { n: m - 1, planted: t.planted(), root: t.root(), parent };
            (pred, InsertionDescriptor::V { edge: (i, j) })
        }
        _ => {
            // The child of the maximum that carries the largest subtree
            // minimum is the vertex the move displaced; the rest were its
            // low-ranked children.
            let stats = t.stats();
            let &i = kids.iter().max_by_key(|&&c| stats.beta[c]).unwrap();
            let &j_d = kids
                .iter()
                .filter(|&&c| c != i)
                .max_by_key(|&&c| stats.beta[c])
                .unwrap();
            let mut parent = t.parent.clone();
            let up = parent.pop().unwrap();
            parent[i] = up;
            for &c in kids {
                if c != i {
                    parent[c] = Some(i);
                }
            }
            let root = if t.root() == m { i } else { t.root() };
            let pred = RootedTree { n: m - 1, planted: t.planted(), root, parent };
            (pred, InsertionDescriptor::U { edge: (i, j_d) })
        }
    }
}

/// Grows every tree reachable from `seed` with labels up to `n`, each
/// exactly once: all planted trees on `{0,...,n}` from the planted edge, or
/// all trees on `[n]` rooted at 1 from the lone vertex.
pub fn generate_via_insertion(n: usize, seed: Seed) -> Result<Vec<RootedTree>> {
    assert!(n >= 1);
    check_bound(n)?;
    let start = match seed {
        Seed::PlantedEdge => RootedTree {
            n: 1,
            planted: true,
            root: 0,
            parent: vec![None, Some(0)],
        },
        Seed::SingleVertex => RootedTree { n: 1, planted: false, root: 1, parent: vec![None, None] },
    };
    let mut level = vec![start];
    for _ in 2..=n {
        let mut next = Vec::new();
        for t in &level {
            for i in 1..=t.n() {
                next.push(z_insert(t, i)?);
            }
            let lo = if t.planted() { 0 } else { 1 };
            let stats = t.stats();
            for j in lo..=t.n() {
                if let Some(p) = t.parent(j) {
                    next.push(v_insert(t, (p, j))?);
                    if stats.beta[j] < p {
                        next.push(u_insert(t, (p, j))?);
                    }
                }
            }
        }
        level = next;
    }
    Ok(level)
}
