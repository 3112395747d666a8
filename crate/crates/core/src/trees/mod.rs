//! Labeled rooted trees, improper-edge statistics, and brute-force oracles.
//!
//! An edge `(i, j)` with `j` a child of `i` is *improper* if some vertex in
//! the subtree of `j` (including `j` itself) is smaller than `i`. The
//! subtree minima `β(j)` make this a single traversal.

mod enumerate;
mod insertion;

pub use enumerate::{enumerate_rooted, enumerate_rooted_at_1, RootedTreeIter};
pub use insertion::{
    delete_max, generate_via_insertion, u_insert, v_insert, z_insert, InsertionDescriptor, Seed,
};

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::algebra::Rat;
use crate::ramanujan::UniPoly;
use crate::{Error, Result};

/// Default cap on the number of enumerated vertices; `RG_MAX_N` overrides.
pub const DEFAULT_MAX_N: usize = 8;

/// Enumeration bound: `DEFAULT_MAX_N` unless overridden by the `RG_MAX_N`
/// environment variable.
pub fn max_n() -> usize {
    std::env::var("RG_MAX_N")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

pub(crate) fn check_bound(vertices: usize) -> Result<()> {
    let max = max_n();
    if vertices > max {
        Err(Error::BoundExceeded { requested: vertices, max })
    } else {
        Ok(())
    }
}

/// A labeled rooted tree on `[n]`, optionally planted: a planted tree has an
/// auxiliary root 0 with exactly one child.
///
/// `parent[v]` is the parent of `v`; the root's entry is `None`. Children
/// are not stored; they are recomputed where needed, which keeps the value
/// canonical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTree {
    n: usize,
    planted: bool,
    root: usize,
    parent: Vec<Option<usize>>, // indexed 0..=n; index 0 used only when planted
}

impl RootedTree {
    /// Builds and validates a tree from parent links. `parent[v]` must be
    /// given for `v` in `1..=n` (`None` exactly at the root); for a planted
    /// tree the root is 0.
    pub fn new(n: usize, planted: bool, parent: Vec<Option<usize>>) -> Result<RootedTree> {
        assert_eq!(parent.len(), n + 1, "parent vector must cover 0..=n");
        let root = if planted {
            0
        } else {
            let mut root = None;
            for v in 1..=n {
                if parent[v].is_none() {
                    if root.is_some() {
                        return Err(Error::InvalidVertex(v));
                    }
                    root = Some(v);
                }
            }
            root.ok_or(Error::InvalidVertex(0))?
        };
        let t = RootedTree { n, planted, root, parent };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let lo = if self.planted { 0 } else { 1 };
        for v in lo..=self.n {
            match self.parent[v] {
                None => {
                    if v != self.root {
                        return Err(Error::InvalidVertex(v));
                    }
                }
                Some(p) => {
                    if p < lo || p > self.n || v == self.root {
                        return Err(Error::InvalidVertex(v));
                    }
                }
            }
        }
        if self.planted && self.parent[0].is_some() {
            return Err(Error::InvalidVertex(0));
        }
        // acyclicity and connectivity: every vertex reaches the root
        for v in lo..=self.n {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = self.parent[cur] {
                cur = p;
                steps += 1;
                if steps > self.n + 1 {
                    return Err(Error::InvalidVertex(v));
                }
            }
            if cur != self.root {
                return Err(Error::InvalidVertex(v));
            }
        }
        if self.planted && self.children_of(0).len() != 1 {
            return Err(Error::InvalidVertex(0));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn planted(&self) -> bool {
        self.planted
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        j <= self.n && self.parent.get(j).copied().flatten() == Some(i)
    }

    fn children_of(&self, v: usize) -> Vec<usize> {
        let lo = if self.planted { 0 } else { 1 };
        (lo..=self.n).filter(|&c| self.parent[c] == Some(v)).collect()
    }

    /// Child lists for every vertex, in one pass.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n + 1];
        let lo = if self.planted { 0 } else { 1 };
        for v in lo..=self.n {
            if let Some(p) = self.parent[v] {
                out[p].push(v);
            }
        }
        out
    }

    /// Degree statistics, subtree minima and the improper-edge count.
    pub fn stats(&self) -> TreeStats {
        let children = self.children();
        let mut beta = vec![usize::MAX; self.n + 1];
        // post-order via explicit stack
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                let mut m = v;
                for &c in &children[v] {
                    m = m.min(beta[c]);
                }
                beta[v] = m;
            } else {
                stack.push((v, true));
                for &c in &children[v] {
                    stack.push((c, false));
                }
            }
        }
        let mut improper = 0;
        let lo = if self.planted { 0 } else { 1 };
        for v in lo..=self.n {
            if let Some(p) = self.parent[v] {
                if beta[v] < p {
                    improper += 1;
                }
            }
        }
        let degrees = children.iter().map(|c| c.len()).collect();
        TreeStats { improper_count: improper, degrees, beta }
    }

    pub fn improper_count(&self) -> usize {
        self.stats().improper_count
    }

    /// True iff `(i, j)` is an edge and improper.
    pub fn is_improper_edge(&self, i: usize, j: usize) -> Result<bool> {
        if !self.has_edge(i, j) {
            return Err(Error::InvalidEdge(i, j));
        }
        Ok(self.stats().beta[j] < i)
    }

    /// Forgets the planted root 0, re-rooting the tree at its unique child.
    pub fn unplant(&self) -> RootedTree {
        if !self.planted {
            return self.clone();
        }
        let mut parent = self.parent.clone();
        let real_root = self.children_of(0)[0];
        parent[real_root] = None;
        parent[0] = None;
        RootedTree { n: self.n, planted: false, root: real_root, parent }
    }

    /// Regards a rooted tree on `[n]` as planted on `{0,...,n}`.
    pub fn plant(&self) -> RootedTree {
        if self.planted {
            return self.clone();
        }
        let mut parent = self.parent.clone();
        parent[self.root] = Some(0);
        RootedTree { n: self.n, planted: true, root: 0, parent }
    }
}

impl fmt::Display for RootedTree {
    /// `root:r;parents:[...]` with the parents of all non-root vertices in
    /// increasing label order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root:{};parents:[", self.root)?;
        let lo = if self.planted { 0 } else { 1 };
        let mut first = true;
        for v in lo..=self.n {
            if v == self.root {
                continue;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{}", self.parent[v].unwrap())?;
        }
        write!(f, "]")
    }
}

/// Statistics of one tree: improper-edge count, per-vertex child counts and
/// subtree minima (index 0 is meaningful only for planted trees).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub improper_count: usize,
    pub degrees: Vec<usize>,
    pub beta: Vec<usize>,
}

/// `R(n,k)`: rooted trees on `[n]` by improper-edge count. The histogram
/// sums to `n^{n-1}`.
pub fn count_r(n: usize) -> Result<Vec<u64>> {
    let mut hist = vec![0u64; n.max(1)];
    for t in enumerate_rooted(n)? {
        hist[t.improper_count()] += 1;
    }
    Ok(hist)
}

/// `T(n,k)`: rooted trees on `[n+1]` with root 1, by improper-edge count.
/// The histogram sums to `(n+1)^{n-1}`.
pub fn count_t(n: usize) -> Result<Vec<u64>> {
    let mut hist = vec![0u64; n.max(1)];
    for t in enumerate_rooted_at_1(n + 1)? {
        hist[t.improper_count()] += 1;
    }
    Ok(hist)
}

/// Rooted trees on `[n]` with `k` improper edges whose vertex 1 is a leaf;
/// the counting interpretation of `Q_{n,k}(-1)`.
pub fn count_r_with_leaf_one(n: usize) -> Result<Vec<u64>> {
    let mut hist = vec![0u64; n.max(1)];
    for t in enumerate_rooted(n)? {
        let stats = t.stats();
        if stats.degrees[1] == 0 {
            hist[stats.improper_count] += 1;
        }
    }
    Ok(hist)
}

/// Which of the two equivalent degree-weighted sums defines the polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QForm {
    /// `Σ_{T on [n+1], root 1, k improper} x^{deg_T(1) - 1}`
    RootedAt1,
    /// `Σ_{T rooted on [n], k improper} (x+1)^{deg_T(1)}`
    RootedAny,
}

/// Brute-force `Q_{n,k}(x)` straight from its defining sum over trees.
pub fn q_poly_bruteforce(n: usize, k: usize, form: QForm) -> Result<UniPoly> {
    assert!(n >= 1 && k < n);
    let mut out = UniPoly::zero();
    match form {
        QForm::RootedAt1 => {
            // powers of x
            let mut powers = vec![UniPoly::one()];
            for _ in 0..n {
                powers.push(&powers.last().unwrap().clone() * &UniPoly::x());
            }
            for t in enumerate_rooted_at_1(n + 1)? {
                let stats = t.stats();
                if stats.improper_count == k {
                    out = &out + &powers[stats.degrees[1] - 1];
                }
            }
        }
        QForm::RootedAny => {
            let xp1 = UniPoly::from_coeffs(vec![Rat::one(), Rat::one()]);
            let mut powers = vec![UniPoly::one()];
            for _ in 0..n {
                powers.push(&powers.last().unwrap().clone() * &xp1);
            }
            for t in enumerate_rooted(n)? {
                let stats = t.stats();
                if stats.improper_count == k {
                    out = &out + &powers[stats.degrees[1]];
                }
            }
        }
    }
    Ok(out)
}

/// Cardinality tables of the Chen-Guo correspondence on trees on `[n]`
/// rooted at 1: for every `(k, r)`,
/// `#{k improper, deg(2) > 0, deg(1) = r}` must equal
/// `#{k+1 improper, deg(n) > 0, deg(1) = r}`.
///
/// Returns both tables keyed by `(k, r)` so callers can report them.
pub fn bijection_counts(
    n: usize,
) -> Result<(BTreeMap<(usize, usize), u64>, BTreeMap<(usize, usize), u64>)> {
    assert!(n >= 2);
    let mut deg2_table: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut degn_table: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for t in enumerate_rooted_at_1(n)? {
        let stats = t.stats();
        let k = stats.improper_count;
        let r = stats.degrees[1];
        if stats.degrees[2] > 0 {
            *deg2_table.entry((k, r)).or_insert(0) += 1;
        }
        if stats.degrees[n] > 0 && k >= 1 {
            *degn_table.entry((k - 1, r)).or_insert(0) += 1;
        }
    }
    Ok((deg2_table, degn_table))
}

/// Parses the `root:r;parents:[...]` rendering of [`RootedTree`].
pub fn parse_tree(src: &str) -> Result<RootedTree> {
    let bad = || Error::syntax(1, 1, "expected `root:r;parents:[p,...]`");
    let rest = src.trim().strip_prefix("root:").ok_or_else(bad)?;
    let (root_str, rest) = rest.split_once(";parents:[").ok_or_else(bad)?;
    let body = rest.strip_suffix(']').ok_or_else(bad)?;
    let root: usize = root_str.trim().parse().map_err(|_| bad())?;
    let parents: Vec<usize> = if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|s| s.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    };
    let planted = root == 0;
    let n = if planted { parents.len() } else { parents.len() + 1 };
    let mut parent = vec![None; n + 1];
    let lo = if planted { 0 } else { 1 };
    let mut it = parents.into_iter();
    for v in lo..=n {
        if v == root {
            continue;
        }
        parent[v] = Some(it.next().ok_or_else(bad)?);
    }
    RootedTree::new(n, planted, parent)
}
