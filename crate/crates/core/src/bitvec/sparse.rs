//! Sparse bit vector: Elias-Fano encoding of the 1-positions.
//!
//! Each 1-position (made 0-based) is split into a low part of
//! `max(0, ⌊lg(u/m)⌋)` bits, stored packed, and a high part encoded in unary
//! inside a plain bit vector. The payload stays within
//! `m⌈lg(u/m)⌉ + 2m` bits; rank needs `select0` on the high part, select
//! needs one `select1`.

use crate::bits::IntArray;
use crate::bitvec::plain::PlainBitVector;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBitVector {
    universe: usize,
    ones: usize,
    low_width: usize,
    low: IntArray,
    /// Unary-coded high parts; empty when `ones == 0`.
    high: PlainBitVector,
}

impl SparseBitVector {
    /// Builds from strictly increasing 1-based positions in `[1, len]`.
    pub fn from_positions(positions: &[usize], len: usize) -> Result<Self> {
        let m = positions.len();
        if m == 0 {
            return Ok(SparseBitVector {
                universe: len,
                ones: 0,
                low_width: 0,
                low: IntArray::new(0),
                high: PlainBitVector::from_bits(std::iter::empty()),
            });
        }
        let mut prev = 0usize;
        for &p in positions {
            if p < 1 || p > len {
                return Err(Error::range("position", p, 1, len));
            }
            if p <= prev {
                return Err(Error::invalid(format!(
                    "positions must be strictly increasing, got {p} after {prev}"
                )));
            }
            prev = p;
        }
        let low_width = (len / m).ilog2() as usize;
        let mut low = IntArray::with_capacity(low_width, m);
        let max_high = (positions[m - 1] - 1) >> low_width;
        let high_len = m + max_high;
        let mut high_words = vec![0u64; high_len.div_ceil(64)];
        for (k, &p) in positions.iter().enumerate() {
            let v = p - 1;
            if low_width > 0 {
                low.push((v as u64) & ((1u64 << low_width) - 1));
            } else {
                low.push(0);
            }
            let idx = k + (v >> low_width);
            high_words[idx / 64] |= 1u64 << (idx % 64);
        }
        Ok(SparseBitVector {
            universe: len,
            ones: m,
            low_width,
            low,
            high: PlainBitVector::from_words(high_words, high_len, 512),
        })
    }

    /// Builds from a bit stream.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        let mut positions = Vec::new();
        let mut len = 0usize;
        for b in bits {
            len += 1;
            if b {
                positions.push(len);
            }
        }
        Self::from_positions(&positions, len)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.universe == 0
    }

    #[inline]
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    /// Number of ones in positions `[1, i]`, `0 <= i <= len`.
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.universe {
            return Err(Error::range("rank index", i, 0, self.universe));
        }
        Ok(self.rank1_unchecked(i))
    }

    pub(crate) fn rank1_unchecked(&self, i: usize) -> usize {
        if self.ones == 0 || i == 0 {
            return 0;
        }
        // Count stored values v (0-based positions) with v < i.
        let hx = i >> self.low_width;
        let max_high = self.high.len() - self.ones;
        let k0 = if hx == 0 {
            0
        } else if hx > max_high {
            return self.ones;
        } else {
            self.high.select0(hx).unwrap() - hx
        };
        let k1 = if hx + 1 > max_high {
            self.ones
        } else {
            self.high.select0(hx + 1).unwrap() - hx - 1
        };
        if self.low_width == 0 {
            return k0;
        }
        let xl = (i as u64) & ((1u64 << self.low_width) - 1);
        // Low parts are strictly increasing within one high bucket.
        let mut lo = k0;
        let mut hi = k1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.low.get(mid) < xl {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// 1-based position of the `j`-th one, `1 <= j <= count_ones()`.
    pub fn select1(&self, j: usize) -> Result<usize> {
        if j < 1 || j > self.ones {
            return Err(Error::range("select rank", j, 1, self.ones));
        }
        Ok(self.select1_unchecked(j))
    }

    #[inline]
    pub(crate) fn select1_unchecked(&self, j: usize) -> usize {
        let pos = self.high.select1(j).unwrap();
        let high_val = pos - j;
        (high_val << self.low_width | self.low.get(j - 1) as usize) + 1
    }

    /// Bit at 1-based position `i`.
    pub fn get(&self, i: usize) -> Result<bool> {
        if i < 1 || i > self.universe {
            return Err(Error::range("position", i, 1, self.universe));
        }
        Ok(self.rank1_unchecked(i) - self.rank1_unchecked(i - 1) == 1)
    }

    pub(crate) fn low_width(&self) -> usize {
        self.low_width
    }

    pub(crate) fn low(&self) -> &IntArray {
        &self.low
    }

    pub(crate) fn high(&self) -> &PlainBitVector {
        &self.high
    }

    pub(crate) fn from_raw(
        universe: usize,
        ones: usize,
        low_width: usize,
        low: IntArray,
        high: PlainBitVector,
    ) -> Self {
        SparseBitVector {
            universe,
            ones,
            low_width,
            low,
            high,
        }
    }

    /// Encoding payload in bits: packed low parts plus the unary high part,
    /// rank/select directories excluded.
    pub fn payload_bits(&self) -> usize {
        self.ones * self.low_width + self.high.len()
    }

    /// Total in-memory size in bits including the high part's directories.
    pub fn size_bits(&self) -> usize {
        self.low.size_bits() + self.high.size_bits()
    }

    /// Iterates over the 1-based positions of all ones.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.ones).map(move |j| self.select1_unchecked(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        // v = 101001: ones at 1, 3, 6
        let v = SparseBitVector::from_positions(&[1, 3, 6], 6).unwrap();
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.rank1(4).unwrap(), 2);
        assert_eq!(v.rank1(0).unwrap(), 0);
        assert_eq!(v.select1(3).unwrap(), 6);
        // empty
        let v = SparseBitVector::from_positions(&[], 10).unwrap();
        assert_eq!(v.rank1(10).unwrap(), 0);
        assert!(v.select1(1).is_err());
        // single one at the end
        let v = SparseBitVector::from_positions(&[1000], 1000).unwrap();
        assert_eq!(v.select1(1).unwrap(), 1000);
        // B_1 of the four-partition example: a-positions
        let b1 = vec![1, 3, 5, 8, 11, 13, 15, 17, 20];
        let v = SparseBitVector::from_positions(&b1, 20).unwrap();
        assert_eq!(v.count_ones(), 9);
        assert_eq!(v.rank1(5).unwrap(), 3);
        assert_eq!(v.select1(4).unwrap(), 8);
    }

    #[test]
    fn construction_errors() {
        assert!(SparseBitVector::from_positions(&[3, 3], 5).is_err());
        assert!(SparseBitVector::from_positions(&[4, 2], 5).is_err());
        assert!(SparseBitVector::from_positions(&[0], 5).is_err());
        assert!(SparseBitVector::from_positions(&[6], 5).is_err());
    }

    #[test]
    fn payload_within_bound() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &(u, m) in &[
            (1usize << 20, 100usize),
            (1 << 18, 1 << 10),
            (4096, 4096),
            (100, 1),
        ] {
            let mut pos: Vec<usize> = Vec::with_capacity(m);
            let mut used = std::collections::BTreeSet::new();
            while used.len() < m {
                used.insert(rng.random_range(1..=u));
            }
            pos.extend(used.iter());
            let v = SparseBitVector::from_positions(&pos, u).unwrap();
            let bound = m * (u as f64 / m as f64).log2().ceil() as usize + 2 * m;
            assert!(
                v.payload_bits() <= bound,
                "payload {} exceeds bound {} for u={u} m={m}",
                v.payload_bits(),
                bound
            );
        }
    }

    #[test]
    fn matches_naive_on_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for density in [0.001, 0.02, 0.3, 0.95] {
            let u = 50_000;
            let bits: Vec<bool> = (0..u).map(|_| rng.random_bool(density)).collect();
            let v = SparseBitVector::from_bits(bits.iter().copied()).unwrap();
            let mut r = 0usize;
            for (i, &b) in bits.iter().enumerate() {
                if b {
                    r += 1;
                    assert_eq!(v.select1(r).unwrap(), i + 1);
                }
                assert_eq!(v.rank1(i + 1).unwrap(), r);
                assert_eq!(v.get(i + 1).unwrap(), b);
            }
        }
    }
}
