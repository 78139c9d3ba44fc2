//! Reference implementations by direct scan over plain arrays.
//!
//! These answer the same queries as the succinct structures but store the
//! raw sequence (plus one position list per symbol), so they are trivially
//! correct and serve as the independent side of every equivalence check.
//! Nothing here touches the succinct code paths.

/// Plain-array rank/select/access/snippet oracle.
#[derive(Debug, Clone)]
pub struct NaiveSequence {
    seq: Vec<usize>,
    positions: Vec<Vec<usize>>,
}

impl NaiveSequence {
    pub fn new(seq: &[usize], sigma: usize) -> Self {
        let mut positions = vec![Vec::new(); sigma];
        for (i, &s) in seq.iter().enumerate() {
            positions[s].push(i + 1);
        }
        NaiveSequence {
            seq: seq.to_vec(),
            positions,
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sigma(&self) -> usize {
        self.positions.len()
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn count(&self, symbol: usize) -> usize {
        self.positions.get(symbol).map_or(0, |p| p.len())
    }

    pub fn rank(&self, symbol: usize, i: usize) -> usize {
        self.positions
            .get(symbol)
            .map_or(0, |p| p.partition_point(|&q| q <= i))
    }

    /// 1-based position of the `j`-th occurrence, or `None` past the last.
    pub fn select(&self, symbol: usize, j: usize) -> Option<usize> {
        self.positions
            .get(symbol)
            .and_then(|p| p.get(j - 1))
            .copied()
    }

    pub fn access(&self, i: usize) -> usize {
        self.seq[i - 1]
    }

    pub fn snippet(&self, i: usize, len: usize) -> Vec<usize> {
        self.seq[i - 1..i - 1 + len].to_vec()
    }

    /// Occurrences of `pattern` in the sequence by sliding-window scan.
    pub fn count_occurrences(&self, pattern: &[usize]) -> usize {
        if pattern.is_empty() {
            return self.seq.len();
        }
        if pattern.len() > self.seq.len() {
            return 0;
        }
        self.seq
            .windows(pattern.len())
            .filter(|w| *w == pattern)
            .count()
    }
}

/// Number of maximal runs of equal adjacent symbols.
pub fn run_count(seq: &[usize]) -> usize {
    if seq.is_empty() {
        return 0;
    }
    1 + seq.windows(2).filter(|w| w[0] != w[1]).count()
}
