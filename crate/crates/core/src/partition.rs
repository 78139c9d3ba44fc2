//! Alphabet partitions: computing them (frequency-driven sparse and dense
//! schemes, arithmetic uniform scheme) and translating symbols between the
//! global alphabet and `(partition, local code)` pairs.
//!
//! For the stored schemes the per-symbol partition ids live in a wavelet
//! matrix, so the local code of a symbol is a `rank` over that sequence and
//! the inverse mapping is a `select`. The uniform scheme stores nothing and
//! maps arithmetically.

use crate::error::{Error, Result};
use crate::wavelet::WaveletMatrix;

/// Per-symbol occurrence counts of a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStats {
    n: usize,
    sigma: usize,
    counts: Vec<usize>,
}

impl SymbolStats {
    pub fn from_seq(seq: &[usize], sigma: usize) -> Result<Self> {
        let mut counts = vec![0usize; sigma];
        for &s in seq {
            if s >= sigma {
                return Err(Error::range("symbol", s, 0, sigma.saturating_sub(1)));
            }
            counts[s] += 1;
        }
        Ok(SymbolStats {
            n: seq.len(),
            sigma,
            counts,
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    #[inline]
    pub fn count(&self, symbol: usize) -> usize {
        self.counts[symbol]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// Zero-order empirical entropy in bits per symbol:
    /// `Σ (n_c/n) lg(n/n_c)` over the symbols that occur.
    pub fn entropy_h0(&self) -> f64 {
        entropy_from_counts(self.n, self.counts.iter().copied())
    }
}

/// `Σ (n_c/n) lg(n/n_c)` over positive counts.
pub fn entropy_from_counts<I: IntoIterator<Item = usize>>(n: usize, counts: I) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    counts
        .into_iter()
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            p * (n / c as f64).log2()
        })
        .sum()
}

/// How the alphabet was split into partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionScheme {
    /// Partition id `⌈lg(n/n_α)·lg n⌉`, densified.
    Sparse,
    /// Frequency-ranked: ranks below `2^l_min` get singleton partitions,
    /// the rest share partition `⌊lg rank⌋` (shifted past the singletons).
    Dense { l_min: u32 },
    /// `⌈lg n⌉` equal slices of the alphabet, mapped arithmetically.
    Uniform,
    /// Caller-provided assignment (diagnostics and tests).
    Explicit,
}

#[derive(Debug, Clone, PartialEq)]
enum MapRepr {
    /// part_of stored as a wavelet matrix over `sigma` entries; symbols that
    /// do not occur are parked in a sentinel partition `p`.
    Stored {
        part_of: WaveletMatrix,
        has_absent: bool,
    },
    /// Uniform arithmetic mapping with slice width `q`.
    Uniform { q: usize },
}

/// An alphabet partition: maps symbol `α` to `(partition, local code)` and back.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolMap {
    scheme: PartitionScheme,
    sigma: usize,
    num_partitions: usize,
    repr: MapRepr,
}

impl SymbolMap {
    /// Sparse partitioning: raw partition id `⌈lg(n/n_α)·lg n⌉` per occurring
    /// symbol, gaps removed preserving order.
    pub fn assign_sparse(stats: &SymbolStats) -> Result<Self> {
        if stats.n() == 0 {
            return Err(Error::invalid("cannot partition an empty string"));
        }
        let n = stats.n() as f64;
        let lg_n = n.log2();
        let raw: Vec<Option<usize>> = stats
            .counts()
            .iter()
            .map(|&c| (c > 0).then(|| ((n / c as f64).log2() * lg_n).ceil() as usize))
            .collect();
        let mut ids: Vec<usize> = raw.iter().flatten().copied().collect();
        ids.sort_unstable();
        ids.dedup();
        let part_of: Vec<Option<usize>> = raw
            .iter()
            .map(|r| r.map(|v| ids.binary_search(&v).unwrap()))
            .collect();
        Self::from_part_ids(PartitionScheme::Sparse, &part_of, ids.len())
    }

    /// Dense partitioning with parameter `l_min >= 1`: symbols are ranked by
    /// descending frequency (ties by ascending symbol code); ranks below
    /// `2^l_min` become singleton partitions, the remaining ranks share
    /// partition `⌊lg rank⌋`, shifted past the singletons. `l_min = 1` is the
    /// plain dense scheme.
    pub fn assign_dense(stats: &SymbolStats, l_min: u32) -> Result<Self> {
        if stats.n() == 0 {
            return Err(Error::invalid("cannot partition an empty string"));
        }
        if l_min < 1 {
            return Err(Error::invalid("l_min must be at least 1"));
        }
        let mut occurring: Vec<usize> =
            (0..stats.sigma()).filter(|&a| stats.count(a) > 0).collect();
        occurring.sort_by(|&a, &b| stats.count(b).cmp(&stats.count(a)).then(a.cmp(&b)));
        let singletons = (1usize << l_min) - 1;
        let mut part_of: Vec<Option<usize>> = vec![None; stats.sigma()];
        let mut num_partitions = 0usize;
        for (idx, &sym) in occurring.iter().enumerate() {
            let rank = idx + 1;
            let part = if rank <= singletons {
                rank - 1
            } else {
                singletons + (rank.ilog2() as usize - l_min as usize)
            };
            part_of[sym] = Some(part);
            num_partitions = num_partitions.max(part + 1);
        }
        Self::from_part_ids(PartitionScheme::Dense { l_min }, &part_of, num_partitions)
    }

    /// Uniform partitioning for a string of length `n >= 2`: `p = ⌈lg n⌉`
    /// slices of `q = ⌈sigma/p⌉` consecutive symbols, mapped on the fly.
    pub fn assign_uniform(n: usize, sigma: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("uniform partitioning needs n >= 2"));
        }
        if sigma < 1 {
            return Err(Error::invalid("uniform partitioning needs sigma >= 1"));
        }
        let p = (n as f64).log2().ceil() as usize;
        let q = sigma.div_ceil(p);
        Ok(SymbolMap {
            scheme: PartitionScheme::Uniform,
            sigma,
            num_partitions: p,
            repr: MapRepr::Uniform { q },
        })
    }

    /// Explicit partition assignment: `part_of[α] = Some(partition)` for the
    /// symbols that occur. Partition ids must cover `0..p` for some `p`.
    pub fn from_explicit(part_of: &[Option<usize>]) -> Result<Self> {
        let p = part_of
            .iter()
            .flatten()
            .copied()
            .max()
            .map(|m| m + 1)
            .unwrap_or(0);
        let mut seen = vec![false; p];
        for &part in part_of.iter().flatten() {
            seen[part] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::invalid(format!("partition {missing} is empty")));
        }
        Self::from_part_ids(PartitionScheme::Explicit, part_of, p)
    }

    fn from_part_ids(
        scheme: PartitionScheme,
        part_of: &[Option<usize>],
        num_partitions: usize,
    ) -> Result<Self> {
        let has_absent = part_of.iter().any(|p| p.is_none());
        // Absent symbols are parked in a sentinel partition so that rank
        // queries on them stay answerable (and answer 0).
        let values: Vec<usize> = part_of
            .iter()
            .map(|p| p.unwrap_or(num_partitions))
            .collect();
        let wm_sigma = num_partitions + usize::from(has_absent);
        let part_of = WaveletMatrix::new(&values, wm_sigma.max(1))?;
        Ok(SymbolMap {
            scheme,
            sigma: values.len(),
            num_partitions,
            repr: MapRepr::Stored {
                part_of,
                has_absent,
            },
        })
    }

    #[inline]
    pub fn scheme(&self) -> PartitionScheme {
        self.scheme
    }

    #[inline]
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Number of partitions `p`. For the uniform scheme this is `⌈lg n⌉`,
    /// of which trailing partitions may be empty.
    #[inline]
    pub fn num_partitions(&self) -> usize {
        self.num_partitions
    }

    /// Maps a symbol to `(partition, local code)`.
    ///
    /// The local code is the number of smaller symbols in the same
    /// partition. Symbols that do not occur yield [`Error::UnknownSymbol`].
    pub fn map(&self, symbol: usize) -> Result<(usize, usize)> {
        if symbol >= self.sigma {
            return Err(Error::UnknownSymbol(symbol));
        }
        match &self.repr {
            MapRepr::Uniform { q } => Ok((symbol / q, symbol % q)),
            MapRepr::Stored { part_of, .. } => {
                let part = part_of.access(symbol + 1)?;
                if part >= self.num_partitions {
                    return Err(Error::UnknownSymbol(symbol));
                }
                let code = part_of.rank(part, symbol)?;
                Ok((part, code))
            }
        }
    }

    /// Inverse of [`SymbolMap::map`].
    pub fn unmap(&self, partition: usize, code: usize) -> Result<usize> {
        if partition >= self.num_partitions {
            return Err(Error::range(
                "partition",
                partition,
                0,
                self.num_partitions.saturating_sub(1),
            ));
        }
        match &self.repr {
            MapRepr::Uniform { q } => {
                let symbol = partition * q + code;
                if code >= *q || symbol >= self.sigma {
                    return Err(Error::range("local code", code, 0, q.saturating_sub(1)));
                }
                Ok(symbol)
            }
            MapRepr::Stored { part_of, .. } => {
                part_of.select(partition, code + 1).map(|pos| pos - 1)
            }
        }
    }

    /// Size of sub-alphabet `Σ_ℓ`. For the uniform scheme this is the slice
    /// width `q` regardless of which symbols actually occur.
    pub fn sub_alphabet_size(&self, partition: usize) -> Result<usize> {
        if partition >= self.num_partitions {
            return Err(Error::range(
                "partition",
                partition,
                0,
                self.num_partitions.saturating_sub(1),
            ));
        }
        match &self.repr {
            MapRepr::Uniform { q } => Ok(*q),
            MapRepr::Stored { part_of, .. } => part_of.rank(partition, self.sigma),
        }
    }

    /// Lists every partition's symbols in ascending order (diagnostics).
    pub fn partitions(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_partitions];
        for symbol in 0..self.sigma {
            if let Ok((part, _)) = self.map(symbol) {
                out[part].push(symbol);
            }
        }
        out
    }

    pub(crate) fn repr_uniform_q(&self) -> Option<usize> {
        match &self.repr {
            MapRepr::Uniform { q } => Some(*q),
            _ => None,
        }
    }

    pub(crate) fn stored_wm(&self) -> Option<(&WaveletMatrix, bool)> {
        match &self.repr {
            MapRepr::Stored {
                part_of,
                has_absent,
            } => Some((part_of, *has_absent)),
            _ => None,
        }
    }

    pub(crate) fn from_raw_stored(
        scheme: PartitionScheme,
        sigma: usize,
        num_partitions: usize,
        part_of: WaveletMatrix,
        has_absent: bool,
    ) -> Self {
        SymbolMap {
            scheme,
            sigma,
            num_partitions,
            repr: MapRepr::Stored {
                part_of,
                has_absent,
            },
        }
    }

    pub(crate) fn from_raw_uniform(sigma: usize, num_partitions: usize, q: usize) -> Self {
        SymbolMap {
            scheme: PartitionScheme::Uniform,
            sigma,
            num_partitions,
            repr: MapRepr::Uniform { q },
        }
    }

    /// Total in-memory size in bits.
    pub fn size_bits(&self) -> usize {
        match &self.repr {
            MapRepr::Uniform { .. } => 128,
            MapRepr::Stored { part_of, .. } => part_of.size_bits() + 128,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// alabar_a_la_alabarda with symbols coded by first appearance:
    /// a=0, l=1, b=2, r=3, _=4, d=5.
    pub(crate) fn alabar() -> Vec<usize> {
        let text = "alabar_a_la_alabarda";
        let mut codes = std::collections::HashMap::new();
        let mut seq = Vec::new();
        for ch in text.chars() {
            let next = codes.len();
            let id = *codes.entry(ch).or_insert(next);
            seq.push(id);
        }
        seq
    }

    #[test]
    fn entropy_examples() {
        let seq = alabar();
        let stats = SymbolStats::from_seq(&seq, 6).unwrap();
        assert!((stats.entropy_h0() - 2.2200).abs() < 1e-3);
        let constant = SymbolStats::from_seq(&[2; 50], 3).unwrap();
        assert_eq!(constant.entropy_h0(), 0.0);
        let uniform = SymbolStats::from_seq(&[0, 1, 2, 3, 0, 1, 2, 3], 4).unwrap();
        assert!((uniform.entropy_h0() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sparse_raw_ids() {
        // n = 20: raw id of 'a' (n_a = 9) is ⌈lg(20/9)·lg 20⌉ = 5,
        // of 'd' (n_d = 1) is ⌈lg 20 · lg 20⌉ = 19.
        let n: f64 = 20.0;
        assert_eq!(((n / 9.0).log2() * n.log2()).ceil() as usize, 5);
        assert_eq!(((n / 1.0).log2() * n.log2()).ceil() as usize, 19);

        let seq = alabar();
        let stats = SymbolStats::from_seq(&seq, 6).unwrap();
        let map = SymbolMap::assign_sparse(&stats).unwrap();
        // Raw ids: a→5, l/_→12, b/r→15, d→19; densified to 0..4.
        assert_eq!(map.num_partitions(), 4);
        assert_eq!(
            map.partitions(),
            vec![vec![0], vec![1, 4], vec![2, 3], vec![5]]
        );

        // A symbol with n_α = n lands in raw id 0.
        let stats = SymbolStats::from_seq(&[0, 0, 0, 0], 1).unwrap();
        let map = SymbolMap::assign_sparse(&stats).unwrap();
        assert_eq!(map.num_partitions(), 1);
        assert_eq!(map.map(0).unwrap(), (0, 0));
    }

    #[test]
    fn dense_matches_rank_floor_log() {
        let seq = alabar();
        let stats = SymbolStats::from_seq(&seq, 6).unwrap();
        let map = SymbolMap::assign_dense(&stats, 1).unwrap();
        // Ranks: a=1, l=2, _=3, b=4, r=5, d=6 (l before _ by symbol code);
        // ⌊lg r⌋ = 0,1,1,2,2,2.
        assert_eq!(map.num_partitions(), 3);
        assert_eq!(map.partitions(), vec![vec![0], vec![1, 4], vec![2, 3, 5]]);
        // Tie-break: n_l = n__ = 3 and code(l) < code(_), so r(l) < r(_).
        assert_eq!(map.map(1).unwrap().0, map.map(4).unwrap().0);

        // Single-symbol alphabet: one partition for any l_min.
        let stats = SymbolStats::from_seq(&[0; 7], 1).unwrap();
        for l_min in [1, 3, 5] {
            let map = SymbolMap::assign_dense(&stats, l_min).unwrap();
            assert_eq!(map.num_partitions(), 1);
        }
    }

    #[test]
    fn dense_l_min_singletons() {
        // 10 symbols with strictly decreasing counts.
        let mut seq = Vec::new();
        for s in 0..10usize {
            seq.extend(std::iter::repeat_n(s, 20 - s));
        }
        let stats = SymbolStats::from_seq(&seq, 10).unwrap();
        let map = SymbolMap::assign_dense(&stats, 3).unwrap();
        // Ranks 1..7 are singletons; ranks 8..10 share ⌊lg r⌋ = 3.
        let parts = map.partitions();
        assert_eq!(parts.len(), 8);
        for p in &parts[..7] {
            assert_eq!(p.len(), 1);
        }
        assert_eq!(parts[7], vec![7, 8, 9]);
    }

    #[test]
    fn uniform_examples() {
        // n = 20, σ = 6: p = ⌈lg 20⌉ = 5, q = ⌈6/5⌉ = 2.
        let map = SymbolMap::assign_uniform(20, 6).unwrap();
        assert_eq!(map.num_partitions(), 5);
        assert_eq!(map.map(5).unwrap(), (2, 1));
        assert_eq!(map.map(3).unwrap(), (1, 1));
        assert_eq!(map.unmap(1, 0).unwrap(), 2);
        // σ ≤ ⌈lg n⌉: every symbol its own partition.
        let map = SymbolMap::assign_uniform(20, 4).unwrap();
        for s in 0..4 {
            assert_eq!(map.map(s).unwrap(), (s, 0));
        }
    }

    #[test]
    fn map_round_trip_and_unknowns() {
        let seq = alabar();
        let stats = SymbolStats::from_seq(&seq, 8).unwrap(); // symbols 6, 7 never occur
        for map in [
            SymbolMap::assign_sparse(&stats).unwrap(),
            SymbolMap::assign_dense(&stats, 1).unwrap(),
            SymbolMap::assign_dense(&stats, 2).unwrap(),
        ] {
            for s in 0..6 {
                let (part, code) = map.map(s).unwrap();
                assert_eq!(map.unmap(part, code).unwrap(), s, "symbol {s}");
            }
            assert_eq!(map.map(6), Err(Error::UnknownSymbol(6)));
            assert_eq!(map.map(9), Err(Error::UnknownSymbol(9)));
        }
        let map = SymbolMap::assign_uniform(20, 8).unwrap();
        for s in 0..8 {
            let (part, code) = map.map(s).unwrap();
            assert_eq!(map.unmap(part, code).unwrap(), s);
        }
    }

    #[test]
    fn explicit_four_partition_map() {
        // The four sub-alphabets {a}, {l,_}, {b,r}, {d} over first-appearance codes.
        let part_of = [Some(0), Some(1), Some(2), Some(2), Some(1), Some(3)];
        let map = SymbolMap::from_explicit(&part_of).unwrap();
        assert_eq!(map.num_partitions(), 4);
        // 'l' is the smaller symbol of partition 1 under first-appearance codes.
        assert_eq!(map.map(1).unwrap(), (1, 0));
        assert_eq!(map.map(4).unwrap(), (1, 1));
        assert_eq!(map.unmap(0, 0).unwrap(), 0);
        assert!(SymbolMap::from_explicit(&[Some(0), Some(2)]).is_err());
    }

    #[test]
    fn partition_entropy_decomposition() {
        // H0(t) + Σ (n_ℓ/n)·lg σ_ℓ stays within H0(s) + 0.1 on a Zipf corpus.
        use rand::SeedableRng;
        use rand_distr::Distribution;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let zipf = rand_distr::Zipf::new(1000.0, 1.0).unwrap();
        let seq: Vec<usize> = (0..60_000)
            .map(|_| zipf.sample(&mut rng) as usize - 1)
            .collect();
        let stats = SymbolStats::from_seq(&seq, 1000).unwrap();
        let h0 = stats.entropy_h0();
        for map in [
            SymbolMap::assign_sparse(&stats).unwrap(),
            SymbolMap::assign_dense(&stats, 1).unwrap(),
        ] {
            let p = map.num_partitions();
            let mut part_counts = vec![0usize; p];
            for &s in &seq {
                part_counts[map.map(s).unwrap().0] += 1;
            }
            let h0_t = entropy_from_counts(seq.len(), part_counts.iter().copied());
            let mut seq_bits = 0.0;
            for l in 0..p {
                let sigma_l = map.sub_alphabet_size(l).unwrap() as f64;
                if sigma_l > 0.0 {
                    seq_bits += part_counts[l] as f64 / seq.len() as f64 * sigma_l.log2();
                }
            }
            assert!(
                h0_t + seq_bits <= h0 + 0.1,
                "H0(t)={h0_t} + seq={seq_bits} vs H0={h0}"
            );
        }
    }
}
