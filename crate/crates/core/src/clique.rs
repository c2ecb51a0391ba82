//! Exact clique search over small graphs given as adjacency bit-sets.
//!
//! Widths in this crate are maximum cliques in a compatibility graph (for
//! antichains: "unrelated in both directions"; for achronal sets:
//! "futures incomparable"). Adjacency must be symmetric and irreflexive.

use crate::worldset::WorldSet;

/// A maximum clique inside `candidates`. Ties go to the lexicographically
/// first clique found by the search, which is deterministic.
pub fn max_clique(adj: &[WorldSet], candidates: &WorldSet) -> WorldSet {
    let mut best = WorldSet::empty(candidates.universe());
    let mut current = WorldSet::empty(candidates.universe());
    expand(adj, &mut current, 0, candidates.clone(), &mut best);
    best
}

pub fn clique_number(adj: &[WorldSet], candidates: &WorldSet) -> usize {
    max_clique(adj, candidates).count()
}

fn expand(
    adj: &[WorldSet],
    current: &mut WorldSet,
    size: usize,
    mut cand: WorldSet,
    best: &mut WorldSet,
) {
    let best_size = best.count();
    if cand.is_empty() {
        if size > best_size {
            *best = current.clone();
        }
        return;
    }
    while let Some(v) = cand.first() {
        // Greedy colouring would tighten this; the plain size bound is enough at these scales.
        if size + cand.count() <= best.count() {
            return;
        }
        cand.remove(v);
        current.insert(v);
        let next = cand.intersection(&adj[v]);
        expand(adj, current, size + 1, next, best);
        current.remove(v);
    }
    if size > best.count() {
        *best = current.clone();
    }
}

/// The lexicographically least clique of exactly `k` vertices inside
/// `candidates`, listed in increasing order.
pub fn first_clique_of_size(adj: &[WorldSet], candidates: &WorldSet, k: usize) -> Option<Vec<usize>> {
    let mut stack = Vec::with_capacity(k);
    if search(adj, candidates.clone(), k, &mut stack) {
        Some(stack)
    } else {
        None
    }
}

fn search(adj: &[WorldSet], mut cand: WorldSet, k: usize, stack: &mut Vec<usize>) -> bool {
    if stack.len() == k {
        return true;
    }
    while let Some(v) = cand.first() {
        if stack.len() + cand.count() < k {
            return false;
        }
        cand.remove(v);
        stack.push(v);
        if search(adj, cand.intersection(&adj[v]), k, stack) {
            return true;
        }
        stack.pop();
    }
    false
}
