//! Exhaustive tree enumeration through Prüfer sequences.
//!
//! Each labeled (unrooted) tree on `[n]` corresponds to exactly one sequence
//! in `[n]^{n-2}`; pairing the sequences with a root choice streams every
//! rooted tree exactly once. This generator is deliberately independent of
//! the insertion algorithm so the two can cross-validate.

use super::{check_bound, RootedTree};
use crate::Result;

/// Streams every rooted tree on `[n]`; `n^{n-1}` trees total.
pub fn enumerate_rooted(n: usize) -> Result<RootedTreeIter> {
    assert!(n >= 1);
    check_bound(n)?;
    Ok(RootedTreeIter::new(n, (1..=n).collect()))
}

/// Streams every tree on `[n]` rooted at 1; `n^{n-2}` trees total.
pub fn enumerate_rooted_at_1(n: usize) -> Result<RootedTreeIter> {
    assert!(n >= 1);
    check_bound(n)?;
    Ok(RootedTreeIter::new(n, vec![1]))
}

/// Iterator over (root, Prüfer sequence) pairs, decoding each on demand.
pub struct RootedTreeIter {
    n: usize,
    roots: Vec<usize>,
    root_idx: usize,
    seq: Vec<usize>, // entries in 1..=n
    done: bool,
}

impl RootedTreeIter {
    fn new(n: usize, roots: Vec<usize>) -> RootedTreeIter {
        let seq_len = n.saturating_sub(2);
        RootedTreeIter { n, roots, root_idx: 0, seq: vec![1; seq_len], done: false }
    }

    fn advance(&mut self) {
        for slot in self.seq.iter_mut().rev() {
            if *slot < self.n {
                *slot += 1;
                return;
            }
            *slot = 1;
        }
        self.root_idx += 1;
        if self.root_idx >= self.roots.len() {
            self.done = true;
        }
    }
}

impl Iterator for RootedTreeIter {
    type Item = RootedTree;

    fn next(&mut self) -> Option<RootedTree> {
        if self.done {
            return None;
        }
        let tree = decode(self.n, self.roots[self.root_idx], &self.seq);
        self.advance();
        Some(tree)
    }
}

/// Decodes a Prüfer sequence into edges, then orients them away from `root`.
fn decode(n: usize, root: usize, seq: &[usize]) -> RootedTree {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    if n >= 2 {
        let mut degree = vec![1usize; n + 1];
        degree[0] = 0;
        for &a in seq {
            degree[a] += 1;
        }
        for &a in seq {
            // smallest remaining leaf
            let leaf = (1..=n).find(|&v| degree[v] == 1).unwrap();
            adj[leaf].push(a);
            adj[a].push(leaf);
            degree[leaf] = 0;
            degree[a] -= 1;
        }
        let mut rest = (1..=n).filter(|&v| degree[v] == 1);
        let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![None; n + 1];
    let mut seen = vec![false; n + 1];
    let mut queue = std::collections::VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    RootedTree { n, planted: false, root, parent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn counts_and_uniqueness() {
        for n in 1..=5usize {
            let all: Vec<RootedTree> = enumerate_rooted(n).unwrap().collect();
            assert_eq!(all.len(), n.pow(n as u32 - 1));
            let distinct: BTreeSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len(), "duplicates at n={n}");
            let at_1: Vec<RootedTree> = enumerate_rooted_at_1(n).unwrap().collect();
            let expect = if n == 1 { 1 } else { n.pow(n as u32 - 2) };
            assert_eq!(at_1.len(), expect);
            assert!(at_1.iter().all(|t| t.root() == 1));
        }
    }

    #[test]
    fn trees_are_valid() {
        for t in enumerate_rooted(4).unwrap() {
            t.validate().unwrap();
        }
    }
}
