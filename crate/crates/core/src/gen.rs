//! Deterministic synthetic corpora and query workloads for tests and
//! benchmarks. Everything is seeded; the same seed always yields the same
//! bytes.

use crate::batch::Query;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random string over `[0, sigma)`.
pub fn uniform_string(n: usize, sigma: usize, seed: u64) -> Vec<usize> {
    let mut rng = rng(seed);
    (0..n).map(|_| rng.random_range(0..sigma)).collect()
}

/// Zipf-distributed string: symbol `k` (0-based) drawn with probability
/// proportional to `1/(k+1)^s`.
pub fn zipf_string(n: usize, sigma: usize, s: f64, seed: u64) -> Vec<usize> {
    let mut rng = rng(seed);
    let zipf = rand_distr::Zipf::new(sigma as f64, s).expect("valid Zipf parameters");
    (0..n).map(|_| zipf.sample(&mut rng) as usize - 1).collect()
}

/// String of exactly `r` runs (1 <= r <= n, r >= 2 when sigma > 1) with total
/// length `n`; run heads avoid repeating the previous head.
pub fn run_string(n: usize, r: usize, sigma: usize, seed: u64) -> Vec<usize> {
    assert!(r >= 1 && r <= n);
    assert!(sigma >= 2 || r == 1);
    let mut rng = rng(seed);
    // r - 1 distinct cut points in [1, n).
    let mut cuts: Vec<usize> = Vec::with_capacity(r - 1);
    let mut used = std::collections::BTreeSet::new();
    while used.len() < r - 1 {
        used.insert(rng.random_range(1..n));
    }
    cuts.extend(used.iter());
    cuts.push(n);
    let mut out = Vec::with_capacity(n);
    let mut prev_head = usize::MAX;
    let mut start = 0usize;
    for &end in &cuts {
        let head = loop {
            let h = rng.random_range(0..sigma);
            if h != prev_head {
                break h;
            }
        };
        out.extend(std::iter::repeat_n(head, end - start));
        prev_head = head;
        start = end;
    }
    out
}

/// Repetitive text: `base_len` random tokens repeated `copies` times, each
/// copied token mutated with probability `mutation_rate`.
pub fn repetitive_text(
    base_len: usize,
    copies: usize,
    sigma: usize,
    mutation_rate: f64,
    seed: u64,
) -> Vec<usize> {
    let mut rng = rng(seed);
    let base: Vec<usize> = (0..base_len).map(|_| rng.random_range(0..sigma)).collect();
    let mut out = Vec::with_capacity(base_len * copies);
    for _ in 0..copies {
        for &t in &base {
            if rng.random_bool(mutation_rate) {
                out.push(rng.random_range(0..sigma));
            } else {
                out.push(t);
            }
        }
    }
    out
}

/// How query symbols are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolDraw {
    /// Uniform over string positions: frequent symbols are queried often.
    FromPositions,
    /// Uniform over the occurring alphabet.
    UniformAlphabet,
}

/// Random queries for one operation over `seq`: rank positions uniform in
/// `[0, n]`, select's `j` uniform in `[1, n_α]`, access positions uniform,
/// snippet windows of length `len` at uniform valid starts.
pub struct WorkloadGen<'a> {
    seq: &'a [usize],
    occurring: Vec<usize>,
    counts: Vec<usize>,
    rng: ChaCha8Rng,
    draw: SymbolDraw,
}

impl<'a> WorkloadGen<'a> {
    pub fn new(seq: &'a [usize], sigma: usize, draw: SymbolDraw, seed: u64) -> Self {
        let mut counts = vec![0usize; sigma];
        for &s in seq {
            counts[s] += 1;
        }
        let occurring = (0..sigma).filter(|&s| counts[s] > 0).collect();
        WorkloadGen {
            seq,
            occurring,
            counts,
            rng: rng(seed),
            draw,
        }
    }

    fn symbol(&mut self) -> usize {
        match self.draw {
            SymbolDraw::FromPositions => self.seq[self.rng.random_range(0..self.seq.len())],
            SymbolDraw::UniformAlphabet => {
                self.occurring[self.rng.random_range(0..self.occurring.len())]
            }
        }
    }

    pub fn rank(&mut self) -> Query {
        Query::Rank {
            symbol: self.symbol(),
            pos: self.rng.random_range(0..=self.seq.len()),
        }
    }

    pub fn select(&mut self) -> Query {
        let symbol = self.symbol();
        Query::Select {
            symbol,
            j: self.rng.random_range(1..=self.counts[symbol]),
        }
    }

    pub fn access(&mut self) -> Query {
        Query::Access {
            pos: self.rng.random_range(1..=self.seq.len()),
        }
    }

    pub fn snippet(&mut self, len: usize) -> Query {
        let len = len.min(self.seq.len());
        Query::Snippet {
            pos: self.rng.random_range(1..=self.seq.len() - len + 1),
            len,
        }
    }

    pub fn batch_of(&mut self, op: &str, count: usize, snippet_len: usize) -> Vec<Query> {
        (0..count)
            .map(|_| match op {
                "rank" => self.rank(),
                "select" => self.select(),
                "access" => self.access(),
                "snippet" => self.snippet(snippet_len),
                other => panic!("unknown operation {other}"),
            })
            .collect()
    }
}
