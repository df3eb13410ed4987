//! Enumeration of all maximum cliques by branch and bound with a greedy
//! colouring bound.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

/// A fixed-size bitset over vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + t)
            })
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
    pub parallel: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_limit: 50_000_000,
            time_limit: None,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CliqueSearch {
    pub max_size: usize,
    /// All maximum cliques, each sorted, in lexicographic order.
    pub cliques: Vec<Vec<usize>>,
    pub nodes: u64,
    /// False when a budget stopped the search; `max_size` is then a lower bound.
    pub exhaustive: bool,
}

struct Shared<'a> {
    adj: &'a [BitSet],
    best: AtomicUsize,
    nodes: AtomicU64,
    aborted: AtomicBool,
    budget: SearchBudget,
    start: Instant,
}

impl Shared<'_> {
    fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget.node_limit {
            self.aborted.store(true, Ordering::Relaxed);
        }
        if n.is_multiple_of(4096) {
            if let Some(limit) = self.budget.time_limit {
                if self.start.elapsed() > limit {
                    self.aborted.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    /// Vertices of `p` in colouring order with their colour numbers.
    fn colour(&self, p: &BitSet) -> Vec<(usize, usize)> {
        let mut uncoloured = p.clone();
        let mut out = Vec::with_capacity(p.len());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut available = uncoloured.clone();
            while let Some(v) = available.first() {
                out.push((v, colour));
                uncoloured.remove(v);
                available.remove(v);
                for (w, a) in available.words.iter_mut().zip(&self.adj[v].words) {
                    *w &= !a;
                }
            }
        }
        out
    }

    fn expand(&self, r: &mut Vec<usize>, p: BitSet, found: &mut Vec<Vec<usize>>) {
        if !self.tick() {
            return;
        }
        if p.is_empty() {
            let best = self.best.load(Ordering::Relaxed);
            if r.len() >= best {
                if r.len() > best {
                    self.best.fetch_max(r.len(), Ordering::Relaxed);
                }
                let mut c = r.clone();
                c.sort_unstable();
                found.push(c);
            }
            return;
        }
        let order = self.colour(&p);
        let mut p = p;
        for &(v, colour) in order.iter().rev() {
            if r.len() + colour < self.best.load(Ordering::Relaxed) {
                return;
            }
            r.push(v);
            self.expand(r, p.intersection(&self.adj[v]), found);
            r.pop();
            p.remove(v);
        }
    }
}

/// All maximum cliques of the graph given by symmetric adjacency bitsets.
///
/// `lower` is a size known to be attained; cliques smaller than it are never reported.
pub fn maximum_cliques(adj: &[BitSet], lower: usize, budget: SearchBudget) -> CliqueSearch {
    let n = adj.len();
    let shared = Shared {
        adj,
        best: AtomicUsize::new(lower),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        budget,
        start: Instant::now(),
    };
    let branch = |v: usize| -> Vec<Vec<usize>> {
        let mut later = BitSet::new(n);
        for w in adj[v].iter().filter(|&w| w > v) {
            later.insert(w);
        }
        let mut found = Vec::new();
        shared.expand(&mut vec![v], later, &mut found);
        found
    };
    let mut all: Vec<Vec<usize>> = if budget.parallel {
        (0..n).into_par_iter().flat_map_iter(branch).collect()
    } else {
        (0..n).flat_map(branch).collect()
    };
    let max_size = all.iter().map(Vec::len).max().unwrap_or(0);
    all.retain(|c| c.len() == max_size);
    all.sort();
    all.dedup();
    CliqueSearch {
        max_size,
        cliques: all,
        nodes: shared.nodes.load(Ordering::Relaxed),
        exhaustive: !shared.aborted.load(Ordering::Relaxed),
    }
}

pub fn adjacency_from_fn(n: usize, adjacent: impl Fn(usize, usize) -> bool + Sync) -> Vec<BitSet> {
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut b = BitSet::new(n);
            for j in 0..n {
                if i != j && adjacent(i, j) {
                    b.insert(j);
                }
            }
            b
        })
        .collect()
}
