//! Run-length compressed sequences and their alphabet-partitioned
//! composition.
//!
//! [`RunLengthSequence`] keeps one wavelet matrix over the run heads plus
//! two bit vectors: `starts` marks run starts in text order, `sorted` lays
//! the runs out grouped by symbol (each run contributes `1 0^{len-1}`), and
//! a cumulative table counts runs per symbol. rank/select reduce to a
//! handful of bit vector operations on those.
//!
//! [`RunApString`] splits the alphabet into `p = ⌈lg n⌉` uniform slices,
//! concatenates the per-partition mark vectors into a single run-length bit
//! vector of `n·p` bits, and stores the concatenated sub-alphabet strings as
//! one run-length sequence; queries use segment arithmetic.

use crate::bitvec::{PlainBitVector, RunBitVector, SparseBitVector};
use crate::error::{Error, Result};
use crate::oracle::run_count;
use crate::partition::SymbolMap;
use crate::wavelet::WaveletMatrix;

/// Run statistics of a string under uniform partitioning: total runs `r`,
/// runs of the partition-id stream `r_t`, summed runs of the sub-alphabet
/// strings `r_s`. Both reduced counts are at most `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunStats {
    pub r: usize,
    pub r_t: usize,
    pub r_s: usize,
}

/// Computes [`RunStats`] for `seq` under the uniform partitioning of its
/// length and `sigma`.
pub fn count_runs(seq: &[usize], sigma: usize) -> Result<RunStats> {
    let r = run_count(seq);
    if seq.len() < 2 {
        return Ok(RunStats { r, r_t: r, r_s: r });
    }
    let map = SymbolMap::assign_uniform(seq.len(), sigma)?;
    let q = map.repr_uniform_q().expect("uniform map");
    let mut r_t = 0usize;
    let mut prev_part = usize::MAX;
    let mut r_s = 0usize;
    let mut last_in_part = vec![usize::MAX; map.num_partitions()];
    for &s in seq {
        let part = s / q;
        if part != prev_part {
            r_t += 1;
            prev_part = part;
        }
        if last_in_part[part] != s {
            r_s += 1;
            last_in_part[part] = s;
        }
    }
    Ok(RunStats { r, r_t, r_s })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunLengthSequence {
    n: usize,
    sigma: usize,
    num_runs: usize,
    /// Run head symbols in text order.
    heads: WaveletMatrix,
    /// Ones at run start positions.
    starts: SparseBitVector,
    /// Runs grouped by symbol (appearance order within a symbol); each run
    /// writes a one followed by `length - 1` zeros.
    sorted: PlainBitVector,
    /// `runs_before[c]` = number of runs of symbols `< c`; last entry = r'.
    runs_before: Vec<usize>,
}

impl RunLengthSequence {
    pub fn new(seq: &[usize], sigma: usize) -> Result<Self> {
        if let Some(&bad) = seq.iter().find(|&&v| v >= sigma) {
            return Err(Error::range("symbol", bad, 0, sigma.saturating_sub(1)));
        }
        let n = seq.len();
        // (head, start position 1-based, length) per run.
        let mut runs: Vec<(usize, usize, usize)> = Vec::new();
        for (i, &s) in seq.iter().enumerate() {
            match runs.last_mut() {
                Some((head, _, len)) if *head == s => *len += 1,
                _ => runs.push((s, i + 1, 1)),
            }
        }
        let num_runs = runs.len();
        let heads: Vec<usize> = runs.iter().map(|r| r.0).collect();
        let starts: Vec<usize> = runs.iter().map(|r| r.1).collect();

        let mut runs_before = vec![0usize; sigma + 1];
        for &(head, _, _) in &runs {
            runs_before[head + 1] += 1;
        }
        for c in 0..sigma {
            runs_before[c + 1] += runs_before[c];
        }
        // Stable counting sort of runs by head symbol.
        let mut sorted_bits = vec![false; n];
        let mut next_slot = runs_before.clone();
        let mut lengths_by_slot = vec![0usize; num_runs];
        for &(head, _, len) in &runs {
            lengths_by_slot[next_slot[head]] = len;
            next_slot[head] += 1;
        }
        let mut pos = 0usize;
        for &len in &lengths_by_slot {
            sorted_bits[pos] = true;
            pos += len;
        }
        Ok(RunLengthSequence {
            n,
            sigma,
            num_runs,
            heads: WaveletMatrix::new(&heads, sigma.max(1))?,
            starts: SparseBitVector::from_positions(&starts, n)?,
            sorted: PlainBitVector::from_bits(sorted_bits),
            runs_before,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    #[inline]
    pub fn num_runs(&self) -> usize {
        self.num_runs
    }

    /// Start position (1-based, in the sorted layout) of the `j`-th run slot,
    /// with the one-past-the-end sentinel `n + 1`.
    #[inline]
    fn sorted_start(&self, j: usize) -> usize {
        if j == self.num_runs + 1 {
            self.n + 1
        } else {
            self.sorted.select1(j).expect("run slot in range")
        }
    }

    /// Total length of the first `t` runs of symbol `c`.
    #[inline]
    fn occ_in_runs(&self, c: usize, t: usize) -> usize {
        if t == 0 {
            return 0;
        }
        self.sorted_start(self.runs_before[c] + t + 1) - self.sorted_start(self.runs_before[c] + 1)
    }

    /// Symbol at position `i`: the head of the containing run.
    pub fn access(&self, i: usize) -> Result<usize> {
        if i < 1 || i > self.n {
            return Err(Error::range("position", i, 1, self.n));
        }
        self.heads.access(self.starts.rank1_unchecked(i))
    }

    /// Occurrences of `c` in positions `[1, i]`.
    pub fn rank(&self, c: usize, i: usize) -> Result<usize> {
        if c >= self.sigma {
            return Err(Error::range("symbol", c, 0, self.sigma.saturating_sub(1)));
        }
        if i > self.n {
            return Err(Error::range("rank index", i, 0, self.n));
        }
        if i == 0 {
            return Ok(0);
        }
        let k = self.starts.rank1_unchecked(i);
        let t = self.heads.rank(c, k)?;
        if self.heads.access(k)? == c {
            Ok(self.occ_in_runs(c, t - 1) + i - self.starts.select1_unchecked(k) + 1)
        } else {
            Ok(self.occ_in_runs(c, t))
        }
    }

    /// Position of the `j`-th occurrence of `c`.
    pub fn select(&self, c: usize, j: usize) -> Result<usize> {
        if c >= self.sigma {
            return Err(Error::range("symbol", c, 0, self.sigma.saturating_sub(1)));
        }
        let total_runs = self.runs_before[c + 1] - self.runs_before[c];
        let total = self.occ_in_runs(c, total_runs);
        if j < 1 || j > total {
            return Err(Error::range("select rank", j, 1, total));
        }
        // Run (t-th of c) whose slot covers the j-th occurrence in the
        // sorted layout.
        let t = self
            .sorted
            .rank1(self.sorted_start(self.runs_before[c] + 1) + j - 1)?
            - self.runs_before[c];
        let offset = j - self.occ_in_runs(c, t - 1);
        let g = self.heads.select(c, t)?;
        Ok(self.starts.select1_unchecked(g) + offset - 1)
    }

    pub fn count(&self, c: usize) -> Result<usize> {
        if c >= self.sigma {
            return Err(Error::range("symbol", c, 0, self.sigma.saturating_sub(1)));
        }
        let total_runs = self.runs_before[c + 1] - self.runs_before[c];
        Ok(self.occ_in_runs(c, total_runs))
    }

    pub(crate) fn parts(&self) -> (&WaveletMatrix, &SparseBitVector, &PlainBitVector, &[usize]) {
        (&self.heads, &self.starts, &self.sorted, &self.runs_before)
    }

    pub(crate) fn from_raw(
        n: usize,
        sigma: usize,
        num_runs: usize,
        heads: WaveletMatrix,
        starts: SparseBitVector,
        sorted: PlainBitVector,
        runs_before: Vec<usize>,
    ) -> Self {
        RunLengthSequence {
            n,
            sigma,
            num_runs,
            heads,
            starts,
            sorted,
            runs_before,
        }
    }

    /// Total in-memory size in bits.
    pub fn size_bits(&self) -> usize {
        self.heads.size_bits()
            + self.starts.size_bits()
            + self.sorted.size_bits()
            + 64 * self.runs_before.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunApString {
    n: usize,
    sigma: usize,
    map: SymbolMap,
    /// Concatenation of the per-partition mark vectors: `n·p` bits, `n` ones.
    marks: RunBitVector,
    /// Concatenation of the sub-alphabet strings, run-length compressed.
    locals: RunLengthSequence,
    /// `offsets[ℓ]` = combined length of partitions before `ℓ`; last = n.
    offsets: Vec<usize>,
    stats: RunStats,
}

impl RunApString {
    pub fn new(seq: &[usize], sigma: usize) -> Result<Self> {
        if seq.len() < 2 {
            return Err(Error::invalid("run-length partitioning needs n >= 2"));
        }
        if let Some(&bad) = seq.iter().find(|&&v| v >= sigma) {
            return Err(Error::range("symbol", bad, 0, sigma.saturating_sub(1)));
        }
        let n = seq.len();
        let map = SymbolMap::assign_uniform(n, sigma)?;
        let q = map.repr_uniform_q().expect("uniform map");
        let p = map.num_partitions();
        let stats = count_runs(seq, sigma)?;

        let parts: Vec<usize> = seq.iter().map(|&s| s / q).collect();
        // Concatenated marks: per segment ℓ, the 0/1 runs of (part == ℓ);
        // merge across segment boundaries when the bit repeats.
        let mut runs: Vec<(bool, usize)> = Vec::new();
        let push_run = |runs: &mut Vec<(bool, usize)>, bit: bool, len: usize| {
            if len == 0 {
                return;
            }
            match runs.last_mut() {
                Some((b, l)) if *b == bit => *l += len,
                _ => runs.push((bit, len)),
            }
        };
        for l in 0..p {
            let mut i = 0usize;
            while i < n {
                let bit = parts[i] == l;
                let mut j = i + 1;
                while j < n && (parts[j] == l) == bit {
                    j += 1;
                }
                push_run(&mut runs, bit, j - i);
                i = j;
            }
        }
        let marks = RunBitVector::from_runs(&runs)?;

        let mut locals_concat: Vec<usize> = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(p + 1);
        for l in 0..p {
            offsets.push(locals_concat.len());
            locals_concat.extend(seq.iter().filter(|&&s| s / q == l).map(|&s| s % q));
        }
        offsets.push(locals_concat.len());
        let locals = RunLengthSequence::new(&locals_concat, q)?;

        Ok(RunApString {
            n,
            sigma,
            map,
            marks,
            locals,
            offsets,
            stats,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    #[inline]
    pub fn map(&self) -> &SymbolMap {
        &self.map
    }

    #[inline]
    pub fn stats(&self) -> RunStats {
        self.stats
    }

    pub fn num_partitions(&self) -> usize {
        self.map.num_partitions()
    }

    /// Ones of segment `ℓ` in its first `i` positions.
    #[inline]
    fn segment_rank1(&self, l: usize, i: usize) -> usize {
        self.marks.rank1_unchecked(l * self.n + i) - self.marks.rank1_unchecked(l * self.n)
    }

    /// Position (within segment `ℓ`) of its `j`-th one.
    #[inline]
    fn segment_select1(&self, l: usize, j: usize) -> Result<usize> {
        let before = self.marks.rank1_unchecked(l * self.n);
        Ok(self.marks.select1(before + j)? - l * self.n)
    }

    /// Occurrences of local code `c` in the first `k` slots of segment `ℓ`.
    #[inline]
    fn local_rank(&self, l: usize, c: usize, k: usize) -> Result<usize> {
        Ok(self.locals.rank(c, self.offsets[l] + k)? - self.locals.rank(c, self.offsets[l])?)
    }

    /// Occurrences of `symbol` in positions `[1, i]`.
    pub fn rank(&self, symbol: usize, i: usize) -> Result<usize> {
        if i > self.n {
            return Err(Error::range("rank index", i, 0, self.n));
        }
        if symbol >= self.sigma {
            return Ok(0);
        }
        let (part, code) = self.map.map(symbol)?;
        let k = self.segment_rank1(part, i);
        self.local_rank(part, code, k)
    }

    /// Position of the `j`-th occurrence of `symbol`.
    pub fn select(&self, symbol: usize, j: usize) -> Result<usize> {
        if symbol >= self.sigma {
            return Err(Error::UnknownSymbol(symbol));
        }
        let (part, code) = self.map.map(symbol)?;
        let before = self.locals.rank(code, self.offsets[part])?;
        let total = self.locals.rank(code, self.offsets[part + 1])? - before;
        if j < 1 || j > total {
            return Err(Error::range("select rank", j, 1, total));
        }
        let slot = self.locals.select(code, before + j)? - self.offsets[part];
        self.segment_select1(part, slot)
    }

    /// Symbol at position `i`; probes segments in ascending order.
    pub fn access(&self, i: usize) -> Result<usize> {
        if i < 1 || i > self.n {
            return Err(Error::range("position", i, 1, self.n));
        }
        for part in 0..self.num_partitions() {
            let k = self.segment_rank1(part, i);
            if k > 0 && self.segment_select1(part, k)? == i {
                let code = self.locals.access(self.offsets[part] + k)?;
                return self.map.unmap(part, code);
            }
        }
        unreachable!("segments do not cover position {i}");
    }

    pub(crate) fn parts(&self) -> (&SymbolMap, &RunBitVector, &RunLengthSequence, &[usize]) {
        (&self.map, &self.marks, &self.locals, &self.offsets)
    }

    pub(crate) fn from_raw(
        n: usize,
        sigma: usize,
        map: SymbolMap,
        marks: RunBitVector,
        locals: RunLengthSequence,
        offsets: Vec<usize>,
        stats: RunStats,
    ) -> Self {
        RunApString {
            n,
            sigma,
            map,
            marks,
            locals,
            offsets,
            stats,
        }
    }

    /// Total in-memory size in bits.
    pub fn size_bits(&self) -> usize {
        self.marks.size_bits()
            + self.locals.size_bits()
            + 64 * self.offsets.len()
            + self.map.size_bits()
            + 3 * 64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::NaiveSequence;

    #[test]
    fn rls_build_example() {
        // a a a b b a = codes 0 0 0 1 1 0
        let seq = [0usize, 0, 0, 1, 1, 0];
        let x = RunLengthSequence::new(&seq, 2).unwrap();
        assert_eq!(x.num_runs(), 3);
        let (heads, starts, sorted, runs_before) = x.parts();
        let head_syms: Vec<usize> = (1..=3).map(|k| heads.access(k).unwrap()).collect();
        assert_eq!(head_syms, vec![0, 1, 0]);
        let start_bits: String = (1..=6)
            .map(|i| if starts.get(i).unwrap() { '1' } else { '0' })
            .collect();
        assert_eq!(start_bits, "100101");
        let sorted_bits: String = (1..=6)
            .map(|i| if sorted.get(i).unwrap() { '1' } else { '0' })
            .collect();
        assert_eq!(sorted_bits, "100110");
        assert_eq!(runs_before, &[0, 2, 3]);
    }

    #[test]
    fn rls_degenerate_shapes() {
        let x = RunLengthSequence::new(&[4; 10], 5).unwrap();
        assert_eq!(x.num_runs(), 1);
        assert_eq!(x.select(4, 1).unwrap(), 1);
        assert_eq!(x.rank(4, 10).unwrap(), 10);
        let seq: Vec<usize> = (0..8).collect();
        let x = RunLengthSequence::new(&seq, 8).unwrap();
        assert_eq!(x.num_runs(), 8);
        let empty = RunLengthSequence::new(&[], 4).unwrap();
        assert_eq!(empty.num_runs(), 0);
        assert_eq!(empty.rank(1, 0).unwrap(), 0);
    }

    #[test]
    fn rls_worked_queries() {
        let seq = [0usize, 0, 0, 1, 1, 0]; // aaabba
        let x = RunLengthSequence::new(&seq, 2).unwrap();
        assert_eq!(x.access(5).unwrap(), 1);
        assert_eq!(x.access(1).unwrap(), 0);
        assert_eq!(x.access(6).unwrap(), 0);
        assert_eq!(x.rank(0, 5).unwrap(), 3);
        assert_eq!(x.rank(1, 6).unwrap(), 2);
        assert_eq!(x.select(0, 4).unwrap(), 6);
        assert_eq!(x.select(1, 2).unwrap(), 5);
        assert!(x.select(1, 3).is_err());
    }

    #[test]
    fn rls_matches_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for sigma in [2usize, 3, 17] {
            let mut seq = Vec::new();
            while seq.len() < 500 {
                let s = rng.random_range(0..sigma);
                let len = rng.random_range(1..12);
                if seq.last() != Some(&s) {
                    seq.extend(std::iter::repeat_n(s, len));
                }
            }
            let oracle = NaiveSequence::new(&seq, sigma);
            let x = RunLengthSequence::new(&seq, sigma).unwrap();
            for i in 1..=seq.len() {
                assert_eq!(x.access(i).unwrap(), oracle.access(i));
            }
            for c in 0..sigma {
                for i in 0..=seq.len() {
                    assert_eq!(x.rank(c, i).unwrap(), oracle.rank(c, i), "rank({c},{i})");
                }
                for j in 1..=oracle.count(c) {
                    assert_eq!(x.select(c, j).unwrap(), oracle.select(c, j).unwrap());
                }
                assert_eq!(x.count(c).unwrap(), oracle.count(c));
            }
        }
    }

    #[test]
    fn count_runs_examples() {
        let stats = count_runs(&[0, 0, 0, 1, 1, 0], 2).unwrap();
        assert_eq!(stats.r, 3);
        let stats = count_runs(&[7; 20], 8).unwrap();
        assert_eq!((stats.r, stats.r_t, stats.r_s), (1, 1, 1));
        // Adjacent runs of same-partition symbols: 0^5 1^5 with q = 2
        // (n = 10 gives p = 4, q still groups 0 and 1 when sigma <= 2p).
        let mut seq = vec![0usize; 5];
        seq.extend(vec![1usize; 5]);
        let stats = count_runs(&seq, 8).unwrap();
        assert_eq!(stats.r, 2);
        assert_eq!(stats.r_t, 1); // 0 and 1 share a partition
        assert!(stats.r_t <= stats.r && stats.r_s <= stats.r);
    }

    #[test]
    fn rap_build_shape() {
        // alabar codes over sigma = 6, n = 20: p = 5, q = 2.
        let mut codes = std::collections::HashMap::new();
        let seq: Vec<usize> = "alabar_a_la_alabarda"
            .chars()
            .map(|ch| {
                let next = codes.len();
                *codes.entry(ch).or_insert(next)
            })
            .collect();
        let x = RunApString::new(&seq, 6).unwrap();
        assert_eq!(x.num_partitions(), 5);
        assert_eq!(x.map().repr_uniform_q(), Some(2));
        let (_, marks, locals, offsets) = x.parts();
        assert_eq!(marks.len(), 20 * 5);
        assert_eq!(marks.count_ones(), 20);
        assert_eq!(locals.len(), 20);
        assert_eq!(offsets[5], 20);
    }

    #[test]
    fn rap_worked_queries() {
        // 0^10 3^10 over sigma = 4.
        let mut seq = vec![0usize; 10];
        seq.extend(vec![3usize; 10]);
        let x = RunApString::new(&seq, 4).unwrap();
        assert_eq!(x.rank(0, 10).unwrap(), 10);
        assert_eq!(x.select(3, 1).unwrap(), 11);
        for (i, &s) in seq.iter().enumerate() {
            assert_eq!(x.access(i + 1).unwrap(), s);
        }
    }

    #[test]
    fn rap_matches_apstring() {
        use crate::apstring::ApString;
        use crate::partition::PartitionScheme;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        let sigma = 30;
        let mut seq = Vec::new();
        while seq.len() < 700 {
            let s = rng.random_range(0..sigma);
            seq.extend(std::iter::repeat_n(s, rng.random_range(1..9)));
        }
        let ap = ApString::new(&seq, sigma, PartitionScheme::Dense { l_min: 1 }).unwrap();
        let rap = RunApString::new(&seq, sigma).unwrap();
        let oracle = NaiveSequence::new(&seq, sigma);
        for c in 0..sigma {
            for i in (0..=seq.len()).step_by(7) {
                let expect = oracle.rank(c, i);
                assert_eq!(rap.rank(c, i).unwrap(), expect);
                assert_eq!(ap.rank(c, i).unwrap(), expect);
            }
            for j in 1..=oracle.count(c) {
                let expect = oracle.select(c, j).unwrap();
                assert_eq!(rap.select(c, j).unwrap(), expect);
                assert_eq!(ap.select(c, j).unwrap(), expect);
            }
        }
        for i in 1..=seq.len() {
            assert_eq!(rap.access(i).unwrap(), seq[i - 1]);
        }
        // Absent symbol behaves like the flat structure.
        assert_eq!(rap.rank(sigma + 5, 10).unwrap(), 0);
    }

    #[test]
    fn reduced_run_counts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for _ in 0..10 {
            let sigma = rng.random_range(2..200);
            let mut seq = Vec::new();
            while seq.len() < 2000 {
                let s = rng.random_range(0..sigma);
                seq.extend(std::iter::repeat_n(s, rng.random_range(1..30)));
            }
            let stats = count_runs(&seq, sigma).unwrap();
            assert!(stats.r_t <= stats.r);
            assert!(stats.r_s <= stats.r);
            let rap = RunApString::new(&seq, sigma).unwrap();
            assert_eq!(rap.stats(), stats);
        }
    }
}
