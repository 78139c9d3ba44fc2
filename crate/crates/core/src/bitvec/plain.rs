//! Plain (uncompressed) bit vector with rank/select directories.
//!
//! Bits are packed into 64-bit words. Rank uses a two-level directory:
//! cumulative counts per 512-bit superblock plus 9-bit in-superblock word
//! offsets. Select keeps the position of every k-th set (and unset) bit and
//! finishes with a bounded superblock search.

use crate::bits::{bits_for, select_in_word, words_for, IntArray};
use crate::error::{Error, Result};

pub(crate) const SUPERBLOCK_BITS: usize = 512;
const WORDS_PER_SB: usize = SUPERBLOCK_BITS / 64;

/// Default select sampling rate: one sampled position every 512 ones/zeros.
pub const DEFAULT_SELECT_SAMPLING: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainBitVector {
    words: Vec<u64>,
    len: usize,
    ones: usize,
    sb_ranks: IntArray,
    word_offsets: IntArray,
    select1_samples: IntArray,
    select0_samples: IntArray,
    sample_rate: usize,
}

impl PlainBitVector {
    /// Builds from a bit stream with the default select sampling rate.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Self::from_bits_sampled(bits, DEFAULT_SELECT_SAMPLING)
    }

    /// Builds from a bit stream, sampling every `sample_rate`-th one/zero for select.
    pub fn from_bits_sampled<I: IntoIterator<Item = bool>>(bits: I, sample_rate: usize) -> Self {
        let mut words: Vec<u64> = Vec::new();
        let mut len = 0usize;
        for b in bits {
            if len.is_multiple_of(64) {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1u64 << (len % 64);
            }
            len += 1;
        }
        if words.len() > words_for(len) {
            words.truncate(words_for(len));
        }
        Self::from_words(words, len, sample_rate)
    }

    /// Builds a vector of `len` bits whose ones are the given 1-based positions.
    pub fn from_positions(positions: &[usize], len: usize, sample_rate: usize) -> Result<Self> {
        let mut words = vec![0u64; words_for(len)];
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
            words[(p - 1) / 64] |= 1u64 << ((p - 1) % 64);
            prev = p;
        }
        Ok(Self::from_words(words, len, sample_rate))
    }

    pub(crate) fn from_words(words: Vec<u64>, len: usize, sample_rate: usize) -> Self {
        assert!(words.len() == words_for(len));
        assert!(sample_rate >= 1);
        let mut v = PlainBitVector {
            words,
            len,
            ones: 0,
            sb_ranks: IntArray::new(0),
            word_offsets: IntArray::new(0),
            select1_samples: IntArray::new(0),
            select0_samples: IntArray::new(0),
            sample_rate,
        };
        // Mask stray bits past the end so popcounts stay honest.
        if !v.len.is_multiple_of(64) {
            if let Some(last) = v.words.last_mut() {
                *last &= (1u64 << (v.len % 64)) - 1;
            }
        }
        v.build_directories();
        v
    }

    fn build_directories(&mut self) {
        let num_words = self.words.len();
        let num_sb = num_words.div_ceil(WORDS_PER_SB);
        let mut sb_ranks = IntArray::with_capacity(bits_for(self.len), num_sb);
        let mut word_offsets = IntArray::with_capacity(9, num_words);
        let pos_width = bits_for(self.len.saturating_sub(1));
        let mut sel1 = IntArray::new(pos_width);
        let mut sel0 = IntArray::new(pos_width);

        let mut total = 0usize;
        let mut zeros = 0usize;
        for (w, &word) in self.words.iter().enumerate() {
            if w % WORDS_PER_SB == 0 {
                sb_ranks.push(total as u64);
            }
            word_offsets.push((total - sb_rank_peek(&sb_ranks)) as u64);
            let in_word = (word.count_ones() as usize).min(self.len - w * 64);
            // Sample the (t*k+1)-th one/zero as they stream by.
            let word_bits = (self.len - w * 64).min(64);
            if in_word > 0 {
                let first = total;
                let last = total + in_word - 1;
                let mut t = first / self.sample_rate * self.sample_rate;
                if t < first {
                    t += self.sample_rate;
                }
                while t <= last {
                    let j = (t - first) as u32 + 1;
                    sel1.push(w as u64 * 64 + select_in_word(word, j) as u64);
                    t += self.sample_rate;
                }
            }
            let in_word_zeros = word_bits - in_word;
            if in_word_zeros > 0 {
                let first = zeros;
                let last = zeros + in_word_zeros - 1;
                let inv = !word
                    & if word_bits == 64 {
                        u64::MAX
                    } else {
                        (1u64 << word_bits) - 1
                    };
                let mut t = first / self.sample_rate * self.sample_rate;
                if t < first {
                    t += self.sample_rate;
                }
                while t <= last {
                    let j = (t - first) as u32 + 1;
                    sel0.push(w as u64 * 64 + select_in_word(inv, j) as u64);
                    t += self.sample_rate;
                }
            }
            total += in_word;
            zeros += in_word_zeros;
        }
        self.ones = total;
        self.sb_ranks = sb_ranks;
        self.word_offsets = word_offsets;
        self.select1_samples = sel1;
        self.select0_samples = sel0;
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
        self.ones
    }

    #[inline]
    pub fn count_zeros(&self) -> usize {
        self.len - self.ones
    }

    /// Bit at 1-based position `i`.
    #[inline]
    pub fn get(&self, i: usize) -> Result<bool> {
        if i < 1 || i > self.len {
            return Err(Error::range("position", i, 1, self.len));
        }
        let b = i - 1;
        Ok(self.words[b / 64] >> (b % 64) & 1 == 1)
    }

    /// Number of ones in positions `[1, i]`; `i` may be 0 (empty prefix) up to `len`.
    #[inline]
    pub fn rank1(&self, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::range("rank index", i, 0, self.len));
        }
        Ok(self.rank1_unchecked(i))
    }

    #[inline]
    pub(crate) fn rank1_unchecked(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        let w = i / 64;
        let rem = i % 64;
        let mut r = self.rank_before_word(w.min(self.words.len() - 1));
        if w < self.words.len() && rem > 0 {
            r += (self.words[w] & ((1u64 << rem) - 1)).count_ones() as usize;
        } else if w == self.words.len() {
            // i == len and len % 64 == 0: the final word is complete.
            r = self.rank_before_word(w - 1) + self.words[w - 1].count_ones() as usize;
        }
        r
    }

    #[inline]
    fn rank_before_word(&self, w: usize) -> usize {
        self.sb_ranks.get(w / WORDS_PER_SB) as usize + self.word_offsets.get(w) as usize
    }

    /// Number of zeros in positions `[1, i]`.
    #[inline]
    pub fn rank0(&self, i: usize) -> Result<usize> {
        Ok(i - self.rank1(i)?)
    }

    /// 1-based position of the `j`-th one, `1 <= j <= count_ones()`.
    pub fn select1(&self, j: usize) -> Result<usize> {
        if j < 1 || j > self.ones {
            return Err(Error::range("select rank", j, 1, self.ones));
        }
        let sample = self.select1_samples.get((j - 1) / self.sample_rate) as usize;
        let lo = sample / SUPERBLOCK_BITS;
        let hi = if (j - 1) / self.sample_rate + 1 < self.select1_samples.len() {
            self.select1_samples.get((j - 1) / self.sample_rate + 1) as usize / SUPERBLOCK_BITS
        } else {
            self.sb_ranks.len() - 1
        };
        let sb = last_leq(lo, hi, |s| self.sb_ranks.get(s) as usize, j - 1);
        let mut rem = j - self.sb_ranks.get(sb) as usize;
        let w_end = (sb * WORDS_PER_SB + WORDS_PER_SB).min(self.words.len());
        for w in sb * WORDS_PER_SB..w_end {
            let c = self.words[w].count_ones() as usize;
            if rem <= c {
                return Ok(w * 64 + select_in_word(self.words[w], rem as u32) as usize + 1);
            }
            rem -= c;
        }
        unreachable!("select1 directory inconsistent");
    }

    /// 1-based position of the `j`-th zero, `1 <= j <= count_zeros()`.
    pub fn select0(&self, j: usize) -> Result<usize> {
        let zeros = self.count_zeros();
        if j < 1 || j > zeros {
            return Err(Error::range("select rank", j, 1, zeros));
        }
        let sample = self.select0_samples.get((j - 1) / self.sample_rate) as usize;
        let lo = sample / SUPERBLOCK_BITS;
        let hi = if (j - 1) / self.sample_rate + 1 < self.select0_samples.len() {
            self.select0_samples.get((j - 1) / self.sample_rate + 1) as usize / SUPERBLOCK_BITS
        } else {
            self.sb_ranks.len() - 1
        };
        let zeros_before =
            |s: usize| -> usize { s * SUPERBLOCK_BITS - self.sb_ranks.get(s) as usize };
        let sb = last_leq(lo, hi, zeros_before, j - 1);
        let mut rem = j - zeros_before(sb);
        let w_end = (sb * WORDS_PER_SB + WORDS_PER_SB).min(self.words.len());
        for w in sb * WORDS_PER_SB..w_end {
            let word_bits = (self.len - w * 64).min(64);
            let inv = !self.words[w]
                & if word_bits == 64 {
                    u64::MAX
                } else {
                    (1u64 << word_bits) - 1
                };
            let c = inv.count_ones() as usize;
            if rem <= c {
                return Ok(w * 64 + select_in_word(inv, rem as u32) as usize + 1);
            }
            rem -= c;
        }
        unreachable!("select0 directory inconsistent");
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn sample_rate(&self) -> usize {
        self.sample_rate
    }

    pub(crate) fn directories(&self) -> (&IntArray, &IntArray, &IntArray, &IntArray) {
        (
            &self.sb_ranks,
            &self.word_offsets,
            &self.select1_samples,
            &self.select0_samples,
        )
    }

    pub(crate) fn from_serialized(
        words: Vec<u64>,
        len: usize,
        sample_rate: usize,
        sb_ranks: IntArray,
        word_offsets: IntArray,
        select1_samples: IntArray,
        select0_samples: IntArray,
    ) -> Result<Self> {
        if words.len() != words_for(len) || sample_rate == 0 {
            return Err(Error::invalid("inconsistent bit vector payload"));
        }
        let ones = words.iter().map(|w| w.count_ones() as usize).sum();
        let v = PlainBitVector {
            words,
            len,
            ones,
            sb_ranks,
            word_offsets,
            select1_samples,
            select0_samples,
            sample_rate,
        };
        if v.sb_ranks.len() != v.words.len().div_ceil(WORDS_PER_SB)
            || v.word_offsets.len() != v.words.len()
        {
            return Err(Error::invalid("inconsistent bit vector directories"));
        }
        Ok(v)
    }

    /// Raw bit payload in bits, directories excluded.
    pub fn payload_bits(&self) -> usize {
        self.len
    }

    /// Total in-memory size in bits: payload plus all directories.
    pub fn size_bits(&self) -> usize {
        self.words.len() * 64
            + self.sb_ranks.size_bits()
            + self.word_offsets.size_bits()
            + self.select1_samples.size_bits()
            + self.select0_samples.size_bits()
    }

    /// Iterates over all bits.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (1..=self.len).map(move |i| self.get(i).unwrap())
    }
}

fn sb_rank_peek(sb_ranks: &IntArray) -> usize {
    sb_ranks.get(sb_ranks.len() - 1) as usize
}

/// Largest `s` in `[lo, hi]` with `f(s) <= target` (`f` non-decreasing, `f(lo) <= target`).
fn last_leq(mut lo: usize, mut hi: usize, f: impl Fn(usize) -> usize, target: usize) -> usize {
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if f(mid) <= target {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(bits: &[bool]) -> (Vec<usize>, Vec<usize>) {
        let ones = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .collect();
        let zeros = bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| !b)
            .map(|(i, _)| i + 1)
            .collect();
        (ones, zeros)
    }

    fn check_all(bits: &[bool], v: &PlainBitVector) {
        let (ones, zeros) = naive(bits);
        assert_eq!(v.count_ones(), ones.len());
        let mut r = 0usize;
        assert_eq!(v.rank1(0).unwrap(), 0);
        for (i, &b) in bits.iter().enumerate() {
            if b {
                r += 1;
            }
            assert_eq!(v.rank1(i + 1).unwrap(), r, "rank1({})", i + 1);
            assert_eq!(v.get(i + 1).unwrap(), b);
        }
        for (j, &p) in ones.iter().enumerate() {
            assert_eq!(v.select1(j + 1).unwrap(), p, "select1({})", j + 1);
        }
        for (j, &p) in zeros.iter().enumerate() {
            assert_eq!(v.select0(j + 1).unwrap(), p, "select0({})", j + 1);
        }
        assert!(v.select1(ones.len() + 1).is_err());
        assert!(v.rank1(bits.len() + 1).is_err());
    }

    #[test]
    fn worked_examples() {
        // 1101: rank1(3)=2, select1(3)=4
        let v = PlainBitVector::from_bits([true, true, false, true]);
        assert_eq!(v.rank1(3).unwrap(), 2);
        assert_eq!(v.select1(3).unwrap(), 4);
        // 0^1000 1: select1(1) = 1001
        let v = PlainBitVector::from_bits((0..1001).map(|i| i == 1000));
        assert_eq!(v.select1(1).unwrap(), 1001);
        assert_eq!(v.rank1(1000).unwrap(), 0);
        assert_eq!(v.rank1(1001).unwrap(), 1);
    }

    #[test]
    fn exhaustive_small_patterns() {
        for len in [0usize, 1, 2, 63, 64, 65, 127, 128, 129, 511, 512, 513, 1025] {
            for (name, f) in [
                (
                    "empty",
                    Box::new(|_: usize| false) as Box<dyn Fn(usize) -> bool>,
                ),
                ("full", Box::new(|_| true)),
                ("alt", Box::new(|i| i % 2 == 0)),
                ("sparse", Box::new(|i| i % 97 == 3)),
                ("blocky", Box::new(|i| (i / 33) % 2 == 1)),
            ] {
                let bits: Vec<bool> = (0..len).map(&f).collect();
                let v = PlainBitVector::from_bits_sampled(bits.iter().copied(), 8);
                check_all(&bits, &v);
                let v = PlainBitVector::from_bits(bits.iter().copied());
                check_all(&bits, &v);
                let _ = name;
            }
        }
    }

    #[test]
    fn random_large() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for density in [0.01, 0.5, 0.99] {
            let len = 70_000;
            let bits: Vec<bool> = (0..len).map(|_| rng.random_bool(density)).collect();
            let v = PlainBitVector::from_bits(bits.iter().copied());
            check_all(&bits, &v);
        }
    }

    #[test]
    fn from_positions_validation() {
        assert!(PlainBitVector::from_positions(&[1, 1], 4, 512).is_err());
        assert!(PlainBitVector::from_positions(&[0], 4, 512).is_err());
        assert!(PlainBitVector::from_positions(&[5], 4, 512).is_err());
        let v = PlainBitVector::from_positions(&[1, 3, 6], 6, 512).unwrap();
        assert_eq!(v.rank1(4).unwrap(), 2);
        assert_eq!(v.select1(3).unwrap(), 6);
    }
}
