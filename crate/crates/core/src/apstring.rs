//! The alphabet-partitioned string: a symbol map, one sparse bit vector
//! `B_ℓ` per partition marking which positions hold that partition's
//! symbols, and one wavelet matrix `s_ℓ` per partition holding the local
//! codes in order of appearance.
//!
//! `rank` and `select` touch exactly one partition:
//!
//! ```text
//! rank_α(i)   = s_ℓ.rank_c(B_ℓ.rank1(i))
//! select_α(j) = B_ℓ.select1(s_ℓ.select_c(j))
//! ```
//!
//! `access(i)` probes partitions in ascending order until `B_ℓ[i] = 1`;
//! `snippet` extracts a window by walking each partition's ones once, which
//! amortizes much better than per-position `access`.

use crate::bitvec::SparseBitVector;
use crate::error::{Error, Result};
use crate::partition::{PartitionScheme, SymbolMap, SymbolStats};
use crate::wavelet::WaveletMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct ApString {
    n: usize,
    sigma: usize,
    map: SymbolMap,
    /// `marks[ℓ]` has a one at every position of a partition-ℓ symbol.
    marks: Vec<SparseBitVector>,
    /// `seqs[ℓ]` holds the local codes of partition ℓ in appearance order.
    seqs: Vec<WaveletMatrix>,
}

/// Serialized size accounting, in bits, per component.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SizeReport {
    /// Elias-Fano payload (low + high bits) per partition bit vector.
    pub mark_payload: Vec<usize>,
    /// Directory bits on top of the payload, per partition bit vector.
    pub mark_directories: Vec<usize>,
    /// Total bits per sub-alphabet sequence (levels plus directories).
    pub seq_bits: Vec<usize>,
    /// Bits of the symbol map.
    pub map_bits: usize,
}

impl SizeReport {
    pub fn mark_total(&self) -> usize {
        self.mark_payload.iter().sum::<usize>() + self.mark_directories.iter().sum::<usize>()
    }

    pub fn mark_payload_total(&self) -> usize {
        self.mark_payload.iter().sum()
    }

    pub fn seq_total(&self) -> usize {
        self.seq_bits.iter().sum()
    }

    pub fn total(&self) -> usize {
        self.mark_total() + self.seq_total() + self.map_bits
    }
}

impl ApString {
    /// Builds with a freshly computed partition map.
    pub fn new(seq: &[usize], sigma: usize, scheme: PartitionScheme) -> Result<Self> {
        let map = match scheme {
            PartitionScheme::Sparse => {
                SymbolMap::assign_sparse(&SymbolStats::from_seq(seq, sigma)?)?
            }
            PartitionScheme::Dense { l_min } => {
                SymbolMap::assign_dense(&SymbolStats::from_seq(seq, sigma)?, l_min)?
            }
            PartitionScheme::Uniform => SymbolMap::assign_uniform(seq.len(), sigma)?,
            PartitionScheme::Explicit => {
                return Err(Error::invalid("explicit scheme needs a map; use with_map"))
            }
        };
        Self::with_map(seq, sigma, map)
    }

    /// Builds with a caller-provided symbol map.
    pub fn with_map(seq: &[usize], sigma: usize, map: SymbolMap) -> Result<Self> {
        if map.sigma() != sigma {
            return Err(Error::invalid(format!(
                "map covers alphabet {} but sigma is {sigma}",
                map.sigma()
            )));
        }
        let n = seq.len();
        let p = map.num_partitions();
        let mut positions: Vec<Vec<usize>> = vec![Vec::new(); p];
        let mut codes: Vec<Vec<usize>> = vec![Vec::new(); p];
        for (i, &symbol) in seq.iter().enumerate() {
            let (part, code) = map.map(symbol)?;
            positions[part].push(i + 1);
            codes[part].push(code);
        }
        let mut marks = Vec::with_capacity(p);
        let mut seqs = Vec::with_capacity(p);
        for l in 0..p {
            marks.push(SparseBitVector::from_positions(&positions[l], n)?);
            let sigma_l = map.sub_alphabet_size(l)?;
            seqs.push(WaveletMatrix::new(&codes[l], sigma_l.max(1))?);
        }
        Ok(ApString {
            n,
            sigma,
            map,
            marks,
            seqs,
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

    pub fn num_partitions(&self) -> usize {
        self.marks.len()
    }

    /// Occurrences of `symbol` in positions `[1, i]`; 0 for symbols that
    /// never occur.
    pub fn rank(&self, symbol: usize, i: usize) -> Result<usize> {
        if i > self.n {
            return Err(Error::range("rank index", i, 0, self.n));
        }
        let (part, code) = match self.map.map(symbol) {
            Ok(pc) => pc,
            Err(Error::UnknownSymbol(_)) => return Ok(0),
            Err(e) => return Err(e),
        };
        let k = self.marks[part].rank1_unchecked(i);
        self.seqs[part].rank(code, k)
    }

    /// Position of the `j`-th occurrence of `symbol`.
    pub fn select(&self, symbol: usize, j: usize) -> Result<usize> {
        let (part, code) = self.map.map(symbol)?;
        let k = self.seqs[part].select(code, j)?;
        self.marks[part].select1(k)
    }

    /// Symbol at position `i`; probes partitions in ascending order.
    pub fn access(&self, i: usize) -> Result<usize> {
        if i < 1 || i > self.n {
            return Err(Error::range("position", i, 1, self.n));
        }
        for (part, mark) in self.marks.iter().enumerate() {
            let k = mark.rank1_unchecked(i);
            if k > 0 && mark.select1_unchecked(k) == i {
                let code = self.seqs[part].access(k)?;
                return self.map.unmap(part, code);
            }
        }
        unreachable!("partition bit vectors do not cover position {i}");
    }

    /// The window `s[i..i+len-1]`, extracted partition by partition.
    pub fn snippet(&self, i: usize, len: usize) -> Result<Vec<usize>> {
        if len < 1 {
            return Err(Error::invalid("snippet length must be at least 1"));
        }
        if i < 1 || i + len - 1 > self.n {
            return Err(Error::range("snippet window end", i + len - 1, 1, self.n));
        }
        let mut out = vec![0usize; len];
        for (part, mark) in self.marks.iter().enumerate() {
            let mut cur = mark.rank1_unchecked(i - 1);
            let count = mark.rank1_unchecked(i + len - 1) - cur;
            for _ in 0..count {
                cur += 1;
                let pos = mark.select1_unchecked(cur);
                let code = self.seqs[part].access(cur)?;
                out[pos - i] = self.map.unmap(part, code)?;
            }
        }
        Ok(out)
    }

    /// Borrows partition `ℓ`'s mark vector and sub-alphabet sequence.
    pub fn partition_components(&self, l: usize) -> (&SparseBitVector, &WaveletMatrix) {
        (&self.marks[l], &self.seqs[l])
    }

    pub(crate) fn from_raw(
        n: usize,
        sigma: usize,
        map: SymbolMap,
        marks: Vec<SparseBitVector>,
        seqs: Vec<WaveletMatrix>,
    ) -> Self {
        ApString {
            n,
            sigma,
            map,
            marks,
            seqs,
        }
    }

    /// Exact per-component size accounting.
    pub fn size_report(&self) -> SizeReport {
        SizeReport {
            mark_payload: self.marks.iter().map(|b| b.payload_bits()).collect(),
            mark_directories: self
                .marks
                .iter()
                .map(|b| b.size_bits() - b.payload_bits())
                .collect(),
            seq_bits: self.seqs.iter().map(|s| s.size_bits()).collect(),
            map_bits: self.map.size_bits(),
        }
    }

    /// Total in-memory size in bits.
    pub fn size_bits(&self) -> usize {
        self.size_report().total()
    }
}
