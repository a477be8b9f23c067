//! Deterministic sums over word trees and monotone bisection.
//!
//! [`word_sum`] walks every word of length `0..=max_len` depth-first. The tree
//! is cut at a fixed prefix depth; each frontier subtree is summed
//! sequentially (possibly on another rayon worker) and the block totals are
//! combined in index order, so the result does not depend on the thread
//! count.

use rayon::prelude::*;

/// Minimum number of frontier blocks before the walk fans out.
const MIN_BLOCKS: usize = 64;

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<T: IntoIterator<Item = f64>>(iter: T) -> Self {
        let mut s = NeumaierSum::new();
        iter.into_iter().for_each(|x| s.add(x));
        s
    }
}

/// What to do at a node of the word tree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Visit {
    /// Add the term and descend.
    Keep(f64),
    /// Record a bound for the node and its subtree; do not descend.
    Prune(f64),
}

/// Per-node behaviour of a word-tree sum. `state` carries whatever the
/// visitor needs (a product, a row vector) for the current word.
pub trait WordVisitor: Sync {
    type State: Clone + Send + Sync;

    fn root(&self) -> Self::State;
    fn step(&self, state: &Self::State, letter: usize) -> Self::State;
    fn visit(&self, state: &Self::State, depth: usize) -> Visit;
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct WordSum {
    pub total: f64,
    /// Sum of the bounds reported by pruned nodes.
    pub pruned: f64,
    pub visited: u64,
}

#[derive(Default)]
struct Acc {
    total: NeumaierSum,
    pruned: NeumaierSum,
    visited: u64,
}

impl Acc {
    fn finish(&self) -> WordSum {
        WordSum { total: self.total.value(), pruned: self.pruned.value(), visited: self.visited }
    }
}

fn dfs<V: WordVisitor>(v: &V, alphabet: &[usize], state: &V::State, depth: usize, max_len: usize, acc: &mut Acc) {
    acc.visited += 1;
    match v.visit(state, depth) {
        Visit::Prune(b) => acc.pruned.add(b),
        Visit::Keep(t) => {
            acc.total.add(t);
            if depth < max_len {
                for &l in alphabet {
                    dfs(v, alphabet, &v.step(state, l), depth + 1, max_len, acc);
                }
            }
        }
    }
}

/// Visits shallow nodes (depth < `split`) and collects the surviving
/// states at depth `split` in lexicographic order.
fn frontier<V: WordVisitor>(
    v: &V,
    alphabet: &[usize],
    state: V::State,
    depth: usize,
    split: usize,
    acc: &mut Acc,
    out: &mut Vec<V::State>,
) {
    if depth == split {
        out.push(state);
        return;
    }
    acc.visited += 1;
    match v.visit(&state, depth) {
        Visit::Prune(b) => acc.pruned.add(b),
        Visit::Keep(t) => {
            acc.total.add(t);
            for &l in alphabet {
                frontier(v, alphabet, v.step(&state, l), depth + 1, split, acc, out);
            }
        }
    }
}

/// Sums a visitor over all words on `alphabet` with length `0..=max_len`.
pub fn word_sum<V: WordVisitor>(v: &V, alphabet: &[usize], max_len: usize) -> WordSum {
    let mut split = 0;
    let mut blocks = 1usize;
    while blocks < MIN_BLOCKS && split < max_len && alphabet.len() > 1 {
        blocks = blocks.saturating_mul(alphabet.len());
        split += 1;
    }
    let mut head = Acc::default();
    if split == 0 {
        dfs(v, alphabet, &v.root(), 0, max_len, &mut head);
        return head.finish();
    }
    let mut states = Vec::new();
    frontier(v, alphabet, v.root(), 0, split, &mut head, &mut states);
    let parts: Vec<WordSum> = states
        .par_iter()
        .map(|s| {
            let mut acc = Acc::default();
            dfs(v, alphabet, s, split, max_len, &mut acc);
            acc.finish()
        })
        .collect();
    let mut total = head.total;
    let mut pruned = head.pruned;
    let mut visited = head.visited;
    for p in &parts {
        total.add(p.total);
        pruned.add(p.pruned);
        visited += p.visited;
    }
    WordSum { total: total.value(), pruned: pruned.value(), visited }
}

/// Bisection for a nonincreasing `g`: returns `(lo, hi)` with `hi − lo ≤ tol`,
/// `g(lo) > target` (or `lo` the left end) and `g(hi) ≤ target` (or `hi` the
/// right end). If `g(lo) ≤ target` at the start, both ends collapse to `lo`;
/// if `g(hi) > target`, both collapse to `hi`.
pub fn bisect_decreasing<G: FnMut(f64) -> f64>(mut g: G, target: f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    if g(lo) <= target {
        return (lo, lo);
    }
    if g(hi) > target {
        return (hi, hi);
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}
