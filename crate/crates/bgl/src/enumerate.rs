//! Exhaustive enumeration of small graphs up to isomorphism.
//!
//! The oracle tests in this crate sweep "all graphs on at most n nodes";
//! this module generates one representative per isomorphism class by
//! extending (n-1)-node representatives with every possible neighbourhood
//! for a fresh vertex and deduplicating by a canonical form. Intended for
//! n up to 8 (12346 classes).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, NodeId};

/// Adjacency of an unlabelled graph on `n` vertices packed into a bit mask,
/// one bit per unordered pair in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GraphMask {
    pub n: usize,
    pub bits: u64,
}

/// Index of the pair `(i, j)` with `i < j` among the pairs of `0..n`.
pub fn pair_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl GraphMask {
    pub fn empty(n: usize) -> Self {
        GraphMask { n, bits: 0 }
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.bits >> pair_index(i, j, self.n) & 1 == 1
    }

    pub fn with_edge(mut self, i: usize, j: usize) -> Self {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.bits |= 1 << pair_index(i, j, self.n);
        self
    }

    /// Applies a vertex permutation: vertex `i` of the result is vertex
    /// `perm[i]` of `self`.
    fn permuted(&self, perm: &[usize]) -> u64 {
        let mut bits = 0u64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    bits |= 1 << pair_index(i, j, self.n);
                }
            }
        }
        bits
    }

    fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(u, v)).count()
    }

    /// Canonical form: the minimum bit mask over all vertex permutations
    /// compatible with an iterated degree refinement. The refinement prunes
    /// the permutation search to within signature classes.
    pub fn canonical(&self) -> u64 {
        let n = self.n;
        if n <= 1 {
            return self.bits;
        }
        // Iterated signatures: degree, then sorted neighbour signatures.
        let mut sig: Vec<u64> = (0..n).map(|v| self.degree(v) as u64).collect();
        for _ in 0..n {
            let mut next: Vec<u64> = Vec::with_capacity(n);
            for v in 0..n {
                let mut nb: Vec<u64> = (0..n)
                    .filter(|&u| self.has_edge(u, v))
                    .map(|u| sig[u])
                    .collect();
                nb.sort_unstable();
                let mut h = sig[v].wrapping_mul(0x9e3779b97f4a7c15);
                for s in nb {
                    h = h.rotate_left(7) ^ s.wrapping_mul(0xff51afd7ed558ccd);
                }
                next.push(h);
            }
            if next == sig {
                break;
            }
            sig = next;
        }
        // Target positions must be filled in non-decreasing signature order;
        // vertices may only occupy positions of equal signature rank.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| sig[v]);
        let mut best = u64::MAX;
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn search(
            g: &GraphMask,
            sig: &[u64],
            order: &[usize],
            pos: usize,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            best: &mut u64,
        ) {
            let n = g.n;
            if pos == n {
                let bits = g.permuted(perm);
                if bits < *best {
                    *best = bits;
                }
                return;
            }
            let want = sig[order[pos]];
            for &v in order {
                if used[v] || sig[v] != want {
                    continue;
                }
                perm[pos] = v;
                used[v] = true;
                search(g, sig, order, pos + 1, perm, used, best);
                used[v] = false;
                perm[pos] = usize::MAX;
            }
        }
        search(self, &sig, &order, 0, &mut perm, &mut used, &mut best);
        best
    }

    /// Materialises the mask as a linear [`LabelledGraph`] with node names
    /// `a`, `b`, `c`, ...
    pub fn to_graph(&self) -> LabelledGraph {
        let names: Vec<String> = (0..self.n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect();
        let nodes = names
            .iter()
            .map(|s| (NodeId::new(s.clone()), s.clone()));
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    edges.push((NodeId::new(names[i].clone()), NodeId::new(names[j].clone())));
                }
            }
        }
        LabelledGraph::new(nodes, edges).expect("mask graphs are always well formed")
    }
}

/// One representative per isomorphism class of graphs on exactly `n`
/// vertices, `1 <= n <= 8`.
pub fn graphs_up_to_iso(n: usize) -> Result<Vec<GraphMask>> {
    if n == 0 || n > 8 {
        return Err(Error::resource(format!(
            "graph enumeration supports 1..=8 vertices, got {n}"
        )));
    }
    let mut reps = vec![GraphMask::empty(1)];
    for k in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for rep in &reps {
            // Extend with vertex k-1 attached to every subset of 0..k-1.
            for nb in 0u64..(1 << (k - 1)) {
                let mut mask = GraphMask::empty(k);
                for i in 0..k - 1 {
                    for j in i + 1..k - 1 {
                        if rep.has_edge(i, j) {
                            mask = mask.with_edge(i, j);
                        }
                    }
                }
                for i in 0..k - 1 {
                    if nb >> i & 1 == 1 {
                        mask = mask.with_edge(i, k - 1);
                    }
                }
                let canon = mask.canonical();
                if seen.insert(canon) {
                    next.push(GraphMask { n: k, bits: canon });
                }
            }
        }
        reps = next;
    }
    Ok(reps)
}

/// Representatives for every size from 1 up to `n` inclusive.
pub fn graphs_up_to_iso_cumulative(n: usize) -> Result<Vec<GraphMask>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(graphs_up_to_iso(k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_the_known_sequence() {
        // Number of graphs on n unlabelled nodes: 1, 2, 4, 11, 34, 156, 1044.
        let expected = [1usize, 2, 4, 11, 34, 156, 1044];
        for (i, want) in expected.iter().enumerate() {
            let got = graphs_up_to_iso(i + 1).unwrap().len();
            assert_eq!(got, *want, "n = {}", i + 1);
        }
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic_at_n4() {
        let reps = graphs_up_to_iso(4).unwrap();
        for (i, a) in reps.iter().enumerate() {
            for b in reps.iter().skip(i + 1) {
                assert!(!a.to_graph().is_isomorphic(&b.to_graph()));
            }
        }
    }

    #[test]
    fn canonical_form_is_isomorphism_invariant() {
        let g = GraphMask::empty(5)
            .with_edge(0, 1)
            .with_edge(1, 2)
            .with_edge(2, 3)
            .with_edge(3, 4);
        let h = GraphMask::empty(5)
            .with_edge(3, 0)
            .with_edge(0, 4)
            .with_edge(4, 1)
            .with_edge(1, 2);
        assert_eq!(g.canonical(), h.canonical());
    }
}
