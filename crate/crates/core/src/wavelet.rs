//! Wavelet matrix over integer sequences.
//!
//! The `⌈lg σ⌉` levels are plain bit vectors of `n` bits each; level `l`
//! holds bit `⌈lg σ⌉ - 1 - l` of every symbol, with the elements of level
//! `l + 1` stably partitioned into zeros-then-ones of level `l`. A `σ = 1`
//! alphabet has zero levels and degenerates to the constant sequence.

use crate::bits::code_width;
use crate::bitvec::PlainBitVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveletMatrix {
    n: usize,
    sigma: usize,
    levels: Vec<PlainBitVector>,
    zeros: Vec<usize>,
}

impl WaveletMatrix {
    /// Builds over `seq`, all symbols in `[0, sigma)`.
    pub fn new(seq: &[usize], sigma: usize) -> Result<Self> {
        if sigma == 0 && !seq.is_empty() {
            return Err(Error::invalid("sigma = 0 with a non-empty sequence"));
        }
        let width = code_width(sigma);
        if let Some(&bad) = seq.iter().find(|&&v| v >= sigma) {
            return Err(Error::range("symbol", bad, 0, sigma.saturating_sub(1)));
        }
        let n = seq.len();
        let mut levels = Vec::with_capacity(width);
        let mut zeros = Vec::with_capacity(width);
        let mut cur: Vec<usize> = seq.to_vec();
        let mut next: Vec<usize> = Vec::with_capacity(n);
        for l in 0..width {
            let shift = width - 1 - l;
            let bv = PlainBitVector::from_bits(cur.iter().map(|&v| v >> shift & 1 == 1));
            zeros.push(bv.count_zeros());
            next.clear();
            next.extend(cur.iter().filter(|&&v| v >> shift & 1 == 0));
            next.extend(cur.iter().filter(|&&v| v >> shift & 1 == 1));
            std::mem::swap(&mut cur, &mut next);
            levels.push(bv);
        }
        Ok(WaveletMatrix {
            n,
            sigma,
            levels,
            zeros,
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

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// Symbol at 1-based position `i`.
    pub fn access(&self, i: usize) -> Result<usize> {
        if i < 1 || i > self.n {
            return Err(Error::range("position", i, 1, self.n));
        }
        let mut pos = i;
        let mut symbol = 0usize;
        for (bv, &z) in self.levels.iter().zip(&self.zeros) {
            symbol <<= 1;
            if bv.get(pos)? {
                symbol |= 1;
                pos = z + bv.rank1_unchecked(pos);
            } else {
                pos -= bv.rank1_unchecked(pos);
            }
        }
        Ok(symbol)
    }

    /// Occurrences of `c` in the first `i` positions, `0 <= i <= n`.
    pub fn rank(&self, c: usize, i: usize) -> Result<usize> {
        if c >= self.sigma {
            return Err(Error::range("symbol", c, 0, self.sigma.saturating_sub(1)));
        }
        if i > self.n {
            return Err(Error::range("rank index", i, 0, self.n));
        }
        Ok(self.rank_unchecked(c, i))
    }

    fn rank_unchecked(&self, c: usize, i: usize) -> usize {
        let width = self.levels.len();
        let mut start = 0usize;
        let mut end = i;
        for (l, (bv, &z)) in self.levels.iter().zip(&self.zeros).enumerate() {
            if c >> (width - 1 - l) & 1 == 1 {
                start = z + bv.rank1_unchecked(start);
                end = z + bv.rank1_unchecked(end);
            } else {
                start -= bv.rank1_unchecked(start);
                end -= bv.rank1_unchecked(end);
            }
        }
        end - start
    }

    /// Position of the `j`-th occurrence of `c`, `1 <= j <= rank(c, n)`.
    pub fn select(&self, c: usize, j: usize) -> Result<usize> {
        if c >= self.sigma {
            return Err(Error::range("symbol", c, 0, self.sigma.saturating_sub(1)));
        }
        let total = self.rank_unchecked(c, self.n);
        if j < 1 || j > total {
            return Err(Error::range("select rank", j, 1, total));
        }
        let width = self.levels.len();
        // Walk down to find where c's block starts at the virtual bottom level.
        let mut start = 0usize;
        for (l, (bv, &z)) in self.levels.iter().zip(&self.zeros).enumerate() {
            if c >> (width - 1 - l) & 1 == 1 {
                start = z + bv.rank1_unchecked(start);
            } else {
                start -= bv.rank1_unchecked(start);
            }
        }
        // Walk back up mapping the j-th element of the block to level 0.
        let mut pos = start + j;
        for (l, (bv, &z)) in self.levels.iter().zip(&self.zeros).enumerate().rev() {
            pos = if c >> (width - 1 - l) & 1 == 1 {
                bv.select1(pos - z)?
            } else {
                bv.select0(pos)?
            };
        }
        Ok(pos)
    }

    /// `rank(c, n)`: total occurrences of `c`.
    pub fn count(&self, c: usize) -> Result<usize> {
        self.rank(c, self.n)
    }

    /// Level payload in bits, directories excluded.
    pub fn payload_bits(&self) -> usize {
        self.levels.iter().map(|l| l.payload_bits()).sum()
    }

    /// Total in-memory size in bits.
    pub fn size_bits(&self) -> usize {
        self.levels.iter().map(|l| l.size_bits()).sum::<usize>() + 64 * (2 + self.zeros.len())
    }

    pub(crate) fn levels(&self) -> &[PlainBitVector] {
        &self.levels
    }

    pub(crate) fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    pub(crate) fn from_raw(
        n: usize,
        sigma: usize,
        levels: Vec<PlainBitVector>,
        zeros: Vec<usize>,
    ) -> Self {
        WaveletMatrix {
            n,
            sigma,
            levels,
            zeros,
        }
    }
}
