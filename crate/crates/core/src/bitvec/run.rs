//! Run-length bit vector: two sparse vectors over the cumulative lengths of
//! the 0-runs and of the 1-runs, plus the value of the first bit.
//!
//! rank/access locate the containing run with a binary search over the
//! cumulative sums; select needs one rank and one select on the cumulative
//! vectors plus arithmetic.

use crate::bitvec::sparse::SparseBitVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunBitVector {
    len: usize,
    /// First bit of the vector; meaningless when `len == 0`.
    first_bit: bool,
    /// Ones at the cumulative lengths of the 0-runs, universe = total zeros.
    zero_cum: SparseBitVector,
    /// Ones at the cumulative lengths of the 1-runs, universe = total ones.
    one_cum: SparseBitVector,
}

impl RunBitVector {
    /// Builds from `(bit, length)` runs; lengths must be positive and bit
    /// values must alternate.
    pub fn from_runs(runs: &[(bool, usize)]) -> Result<Self> {
        let mut zero_sums = Vec::new();
        let mut one_sums = Vec::new();
        let mut zeros = 0usize;
        let mut ones = 0usize;
        let mut prev: Option<bool> = None;
        for &(bit, len) in runs {
            if len == 0 {
                return Err(Error::invalid("zero-length run"));
            }
            if prev == Some(bit) {
                return Err(Error::invalid("adjacent runs must alternate bit values"));
            }
            if bit {
                ones += len;
                one_sums.push(ones);
            } else {
                zeros += len;
                zero_sums.push(zeros);
            }
            prev = Some(bit);
        }
        Ok(RunBitVector {
            len: zeros + ones,
            first_bit: runs.first().map(|r| r.0).unwrap_or(false),
            zero_cum: SparseBitVector::from_positions(&zero_sums, zeros)?,
            one_cum: SparseBitVector::from_positions(&one_sums, ones)?,
        })
    }

    /// Builds from a bit stream by collapsing it into runs.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let mut runs: Vec<(bool, usize)> = Vec::new();
        for b in bits {
            match runs.last_mut() {
                Some((bit, len)) if *bit == b => *len += 1,
                _ => runs.push((b, 1)),
            }
        }
        Self::from_runs(&runs)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.one_cum.len()
    }

    /// Number of runs (of either bit value).
    pub fn num_runs(&self) -> usize {
        self.zero_cum.count_ones() + self.one_cum.count_ones()
    }

    #[inline]
    fn cum(v: &SparseBitVector, t: usize) -> usize {
        if t == 0 {
            0
        } else {
            v.select1_unchecked(t)
        }
    }

    /// Locates position `i` (1 <= i <= len): returns `(pairs, rem, in_first_kind)`
    /// where `pairs` counts the complete (first-kind, second-kind) run pairs
    /// before `i`, and `rem` is the offset of `i` into the current pair.
    fn locate(&self, i: usize) -> (usize, usize, bool) {
        let (first, second) = if self.first_bit {
            (&self.one_cum, &self.zero_cum)
        } else {
            (&self.zero_cum, &self.one_cum)
        };
        let max_pairs = first.count_ones().min(second.count_ones());
        // Largest j with boundary(j) < i, boundary(j) = cum_first(j) + cum_second(j).
        let mut lo = 0usize;
        let mut hi = max_pairs;
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if Self::cum(first, mid) + Self::cum(second, mid) < i {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let j = lo;
        let boundary = Self::cum(first, j) + Self::cum(second, j);
        let rem = i - boundary;
        let first_run_len = if j < first.count_ones() {
            Self::cum(first, j + 1) - Self::cum(first, j)
        } else {
            0
        };
        if j < first.count_ones() && rem <= first_run_len {
            (j, rem, true)
        } else {
            (j, rem - first_run_len, false)
        }
    }

    /// Number of ones in positions `[1, i]`, `0 <= i <= len`.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::range("rank index", i, 0, self.len));
        }
        Ok(self.rank1_unchecked(i))
    }

    pub(crate) fn rank1_unchecked(&self, i: usize) -> usize {
        if i == 0 || self.one_cum.count_ones() == 0 {
            return 0;
        }
        if self.zero_cum.count_ones() == 0 {
            return i; // all ones
        }
        let (j, rem, in_first) = self.locate(i);
        match (self.first_bit, in_first) {
            (true, true) => Self::cum(&self.one_cum, j) + rem,
            (true, false) => Self::cum(&self.one_cum, j + 1),
            (false, true) => Self::cum(&self.one_cum, j),
            (false, false) => Self::cum(&self.one_cum, j) + rem,
        }
    }

    /// 1-based position of the `j`-th one, `1 <= j <= count_ones()`.
    pub fn select1(&self, j: usize) -> Result<usize> {
        let ones = self.one_cum.len();
        if j < 1 || j > ones {
            return Err(Error::range("select rank", j, 1, ones));
        }
        // Run index of the j-th one among the 1-runs.
        let t = 1 + self.one_cum.rank1_unchecked(j - 1);
        let zeros_before = if self.first_bit {
            Self::cum(&self.zero_cum, t - 1)
        } else {
            Self::cum(&self.zero_cum, t)
        };
        Ok(zeros_before + j)
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> Result<bool> {
        if i < 1 || i > self.len {
            return Err(Error::range("position", i, 1, self.len));
        }
        if self.one_cum.count_ones() == 0 {
            return Ok(false);
        }
        if self.zero_cum.count_ones() == 0 {
            return Ok(true);
        }
        let (_, _, in_first) = self.locate(i);
        Ok(in_first == self.first_bit)
    }

    pub(crate) fn first_bit(&self) -> bool {
        self.first_bit
    }

    pub(crate) fn zero_cum(&self) -> &SparseBitVector {
        &self.zero_cum
    }

    pub(crate) fn one_cum(&self) -> &SparseBitVector {
        &self.one_cum
    }

    pub(crate) fn from_raw(
        len: usize,
        first_bit: bool,
        zero_cum: SparseBitVector,
        one_cum: SparseBitVector,
    ) -> Self {
        RunBitVector {
            len,
            first_bit,
            zero_cum,
            one_cum,
        }
    }

    /// Total in-memory size in bits.
    pub fn size_bits(&self) -> usize {
        self.zero_cum.size_bits() + self.one_cum.size_bits() + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expand(runs: &[(bool, usize)]) -> Vec<bool> {
        runs.iter()
            .flat_map(|&(b, l)| std::iter::repeat_n(b, l))
            .collect()
    }

    fn check(runs: &[(bool, usize)]) {
        let bits = expand(runs);
        let v = RunBitVector::from_runs(runs).unwrap();
        assert_eq!(v.len(), bits.len());
        let mut r = 0usize;
        assert_eq!(v.rank1(0).unwrap(), 0);
        for (i, &b) in bits.iter().enumerate() {
            if b {
                r += 1;
                assert_eq!(v.select1(r).unwrap(), i + 1, "select1({r})");
            }
            assert_eq!(v.rank1(i + 1).unwrap(), r, "rank1({})", i + 1);
            assert_eq!(v.get(i + 1).unwrap(), b, "get({})", i + 1);
        }
        assert!(v.select1(r + 1).is_err());
    }

    #[test]
    fn worked_examples() {
        // 0^3 1^4 0^3 1^2
        let runs = [(false, 3), (true, 4), (false, 3), (true, 2)];
        let v = RunBitVector::from_runs(&runs).unwrap();
        assert_eq!(v.rank1(5).unwrap(), 2);
        assert_eq!(v.select1(5).unwrap(), 11);
        check(&runs);
        // all ones
        let v = RunBitVector::from_runs(&[(true, 40)]).unwrap();
        for i in 0..=40 {
            assert_eq!(v.rank1(i).unwrap(), i);
        }
    }

    #[test]
    fn construction_errors() {
        assert!(RunBitVector::from_runs(&[(true, 0)]).is_err());
        assert!(RunBitVector::from_runs(&[(true, 2), (true, 3)]).is_err());
        assert!(RunBitVector::from_runs(&[(false, 2), (false, 1)]).is_err());
    }

    #[test]
    fn assorted_shapes() {
        check(&[]);
        check(&[(false, 7)]);
        check(&[(true, 1)]);
        check(&[(false, 1), (true, 1), (false, 1), (true, 1), (false, 1)]);
        check(&[(true, 100), (false, 1), (true, 100)]);
        check(&[
            (false, 513),
            (true, 512),
            (false, 64),
            (true, 1),
            (false, 1000),
            (true, 3),
        ]);
    }

    #[test]
    fn random_runs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n_runs = rng.random_range(1..60);
            let mut bit = rng.random_bool(0.5);
            let mut runs = Vec::new();
            for _ in 0..n_runs {
                runs.push((bit, rng.random_range(1..50)));
                bit = !bit;
            }
            check(&runs);
        }
    }
}
