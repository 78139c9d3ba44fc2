//! Burrows-Wheeler transform construction and backward-search counting.
//!
//! The text gets a sentinel (symbol 0, everything else shifted up by one),
//! the suffix array comes from prefix doubling, and the BWT is indexed by
//! either flavor of partitioned string. Counting a pattern narrows a
//! suffix-array range with two rank calls per pattern symbol.

use crate::apstring::ApString;
use crate::error::{Error, Result};
use crate::oracle::run_count;
use crate::partition::PartitionScheme;
use crate::runs::RunApString;

/// Suffix array of `text` (1-based entries) by prefix doubling.
pub fn suffix_array(text: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = text.to_vec();
    let mut tmp = vec![0usize; n];
    let mut k = 1usize;
    while k < n {
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w]) != key(sa[w - 1]));
        }
        rank.copy_from_slice(&tmp);
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa.iter_mut().for_each(|i| *i += 1);
    sa
}

/// Appends the sentinel (0; text symbols shifted by +1), returns the BWT of
/// the extended text and its suffix array: `bwt[i] = text'[SA[i] - 1]`, the
/// sentinel itself when `SA[i] = 1`.
pub fn build_bwt(text: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut extended: Vec<usize> = Vec::with_capacity(text.len() + 1);
    extended.extend(text.iter().map(|&s| s + 1));
    extended.push(0);
    let sa = suffix_array(&extended);
    let bwt = sa
        .iter()
        .map(|&p| if p == 1 { 0 } else { extended[p - 2] })
        .collect();
    (bwt, sa)
}

/// Which structure indexes the BWT.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BwtBacking {
    Aps(PartitionScheme),
    Raps,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum BwtStore {
    Aps(ApString),
    Raps(RunApString),
}

impl BwtStore {
    fn rank(&self, c: usize, i: usize) -> Result<usize> {
        match self {
            BwtStore::Aps(a) => a.rank(c, i),
            BwtStore::Raps(r) => r.rank(c, i),
        }
    }

    fn access(&self, i: usize) -> Result<usize> {
        match self {
            BwtStore::Aps(a) => a.access(i),
            BwtStore::Raps(r) => r.access(i),
        }
    }

    fn size_bits(&self) -> usize {
        match self {
            BwtStore::Aps(a) => a.size_bits(),
            BwtStore::Raps(r) => r.size_bits(),
        }
    }
}

/// Count-only FM-index over a token text.
#[derive(Debug, Clone, PartialEq)]
pub struct FmIndex {
    /// Text length + 1 (the sentinel).
    n: usize,
    /// Alphabet size of the original text.
    text_sigma: usize,
    bwt: BwtStore,
    /// `c_array[c]` = number of BWT symbols smaller than `c`, `c` in the
    /// shifted alphabet `[0, sigma + 1]`.
    c_array: Vec<usize>,
    bwt_runs: usize,
}

impl FmIndex {
    pub fn new(text: &[usize], sigma: usize, backing: BwtBacking) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::invalid("cannot index an empty text"));
        }
        if let Some(&bad) = text.iter().find(|&&s| s >= sigma) {
            return Err(Error::range("symbol", bad, 0, sigma.saturating_sub(1)));
        }
        let (bwt, _sa) = build_bwt(text);
        let bwt_runs = run_count(&bwt);
        let shifted_sigma = sigma + 1;
        let mut c_array = vec![0usize; shifted_sigma + 1];
        for &s in &bwt {
            c_array[s + 1] += 1;
        }
        for c in 0..shifted_sigma {
            c_array[c + 1] += c_array[c];
        }
        let store = match backing {
            BwtBacking::Aps(scheme) => BwtStore::Aps(ApString::new(&bwt, shifted_sigma, scheme)?),
            BwtBacking::Raps => BwtStore::Raps(RunApString::new(&bwt, shifted_sigma)?),
        };
        Ok(FmIndex {
            n: bwt.len(),
            text_sigma: sigma,
            bwt: store,
            c_array,
            bwt_runs,
        })
    }

    /// Length of the indexed BWT (text length + 1).
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn text_sigma(&self) -> usize {
        self.text_sigma
    }

    /// Number of runs in the BWT.
    #[inline]
    pub fn bwt_runs(&self) -> usize {
        self.bwt_runs
    }

    /// Occurrences of `pattern` in the original text. The empty pattern
    /// counts every position, `n - 1`. Symbols outside the text alphabet
    /// yield 0.
    pub fn count(&self, pattern: &[usize]) -> Result<usize> {
        if pattern.is_empty() {
            return Ok(self.n - 1);
        }
        let mut sp = 1usize;
        let mut ep = self.n;
        for &sym in pattern.iter().rev() {
            if sym >= self.text_sigma {
                return Ok(0);
            }
            let c = sym + 1;
            sp = self.c_array[c] + self.bwt.rank(c, sp - 1)? + 1;
            ep = self.c_array[c] + self.bwt.rank(c, ep)?;
            if sp > ep {
                return Ok(0);
            }
        }
        Ok(ep - sp + 1)
    }

    /// Reconstructs the original text by walking LF from the sentinel row.
    pub fn invert(&self) -> Result<Vec<usize>> {
        let mut out = vec![0usize; self.n - 1];
        let mut row = 1usize; // the row whose suffix is the sentinel alone
        for slot in out.iter_mut().rev() {
            let sym = self.bwt.access(row)?;
            debug_assert!(sym > 0, "hit the sentinel before the text was complete");
            *slot = sym - 1;
            row = self.c_array[sym] + self.bwt.rank(sym, row)?;
        }
        Ok(out)
    }

    pub(crate) fn store(&self) -> &BwtStore {
        &self.bwt
    }

    pub(crate) fn c_array(&self) -> &[usize] {
        &self.c_array
    }

    pub(crate) fn from_raw(
        n: usize,
        text_sigma: usize,
        bwt: BwtStore,
        c_array: Vec<usize>,
        bwt_runs: usize,
    ) -> Self {
        FmIndex {
            n,
            text_sigma,
            bwt,
            c_array,
            bwt_runs,
        }
    }

    /// Total in-memory size in bits.
    pub fn size_bits(&self) -> usize {
        self.bwt.size_bits() + 64 * self.c_array.len() + 3 * 64
    }
}
