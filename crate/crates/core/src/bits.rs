//! Word-level bit utilities and a fixed-width packed integer array.

/// Number of 64-bit words needed to hold `bits` bits.
#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Bits needed to store values in `[0, max]`; 1 for `max == 0`.
#[inline]
pub(crate) fn bits_for(max: usize) -> usize {
    if max == 0 {
        1
    } else {
        (usize::BITS - max.leading_zeros()) as usize
    }
}

/// `⌈lg sigma⌉`: code width for an alphabet of size `sigma` (0 when `sigma <= 1`).
#[inline]
pub(crate) fn code_width(sigma: usize) -> usize {
    if sigma <= 1 {
        0
    } else {
        bits_for(sigma - 1)
    }
}

/// Position (0-based) of the `j`-th set bit of `word`, `1 <= j <= popcount`.
#[inline]
pub(crate) fn select_in_word(word: u64, j: u32) -> u32 {
    debug_assert!(j >= 1 && j <= word.count_ones());
    let mut remaining = j;
    let mut cur = word;
    let mut base = 0u32;
    let mut size = 32u32;
    while size > 0 {
        let lo = cur & ((1u64 << size) - 1);
        let c = lo.count_ones();
        if remaining > c {
            remaining -= c;
            cur >>= size;
            base += size;
        } else {
            cur = lo;
        }
        size /= 2;
    }
    base
}

/// Fixed-width packed array of unsigned integers.
///
/// Width 0 is allowed and stores nothing; every entry reads back as 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntArray {
    width: usize,
    len: usize,
    words: Vec<u64>,
}

impl IntArray {
    pub fn new(width: usize) -> Self {
        assert!(width <= 64, "width must be at most 64");
        IntArray {
            width,
            len: 0,
            words: Vec::new(),
        }
    }

    pub fn with_capacity(width: usize, len: usize) -> Self {
        assert!(width <= 64);
        IntArray {
            width,
            len: 0,
            words: Vec::with_capacity(words_for(width * len)),
        }
    }

    pub fn from_iter<I: IntoIterator<Item = u64>>(width: usize, values: I) -> Self {
        let mut a = IntArray::new(width);
        for v in values {
            a.push(v);
        }
        a
    }

    pub fn push(&mut self, value: u64) {
        debug_assert!(self.width == 64 || value < (1u64 << self.width) || self.width == 0);
        if self.width == 0 {
            debug_assert_eq!(value, 0);
            self.len += 1;
            return;
        }
        let bitpos = self.len * self.width;
        let w = bitpos / 64;
        let o = bitpos % 64;
        if w >= self.words.len() {
            self.words.push(0);
        }
        self.words[w] |= value << o;
        if o + self.width > 64 {
            self.words.push(value >> (64 - o));
        }
        self.len += 1;
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        if self.width == 0 {
            return 0;
        }
        let bitpos = i * self.width;
        let w = bitpos / 64;
        let o = bitpos % 64;
        let mask = if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        };
        if o + self.width <= 64 {
            (self.words[w] >> o) & mask
        } else {
            ((self.words[w] >> o) | (self.words[w + 1] << (64 - o))) & mask
        }
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
    pub fn width(&self) -> usize {
        self.width
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn from_raw(width: usize, len: usize, words: Vec<u64>) -> Self {
        IntArray { width, len, words }
    }

    /// Payload size in bits (packed words, no metadata).
    pub fn size_bits(&self) -> usize {
        self.words.len() * 64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn select_in_word_all_positions() {
        let w: u64 = 0b1011_0100_1000_0001;
        let ones: Vec<u32> = (0..64).filter(|i| w >> i & 1 == 1).collect();
        for (j, &pos) in ones.iter().enumerate() {
            assert_eq!(select_in_word(w, j as u32 + 1), pos);
        }
        assert_eq!(select_in_word(u64::MAX, 64), 63);
        assert_eq!(select_in_word(1 << 63, 1), 63);
    }

    #[test]
    fn int_array_roundtrip() {
        for width in [0usize, 1, 3, 7, 9, 17, 31, 33, 63, 64] {
            let n = 201;
            let vals: Vec<u64> = (0..n)
                .map(|i| {
                    if width == 0 {
                        0
                    } else {
                        (i as u64).wrapping_mul(0x9e3779b97f4a7c15) & ((1u128 << width) - 1) as u64
                    }
                })
                .collect();
            let a = IntArray::from_iter(width, vals.iter().copied());
            assert_eq!(a.len(), n);
            for (i, &v) in vals.iter().enumerate() {
                assert_eq!(a.get(i), v, "width {width} index {i}");
            }
        }
    }

    #[test]
    fn bits_for_boundaries() {
        assert_eq!(bits_for(0), 1);
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(2), 2);
        assert_eq!(bits_for(255), 8);
        assert_eq!(bits_for(256), 9);
        assert_eq!(code_width(1), 0);
        assert_eq!(code_width(2), 1);
        assert_eq!(code_width(4), 2);
        assert_eq!(code_width(5), 3);
    }
}
