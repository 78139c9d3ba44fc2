//! Binary serialization of every structure.
//!
//! Layout per structure: a one-byte type tag, the 8-byte little-endian
//! primary length `u`, then length-prefixed payload sections. Directories
//! are serialized verbatim, so the byte size of a structure matches its
//! in-memory accounting.

use crate::apstring::ApString;
use crate::bits::IntArray;
use crate::bitvec::{PlainBitVector, RunBitVector, SparseBitVector};
use crate::error::{Error, Result};
use crate::fmindex::FmIndex;
use crate::partition::{PartitionScheme, SymbolMap};
use crate::runs::{RunApString, RunLengthSequence, RunStats};
use crate::wavelet::WaveletMatrix;

pub const TAG_PLAIN: u8 = 0x01;
pub const TAG_SPARSE: u8 = 0x02;
pub const TAG_RUN: u8 = 0x03;
pub const TAG_WAVELET: u8 = 0x04;
pub const TAG_SYMBOL_MAP: u8 = 0x05;
pub const TAG_APSTRING: u8 = 0x06;
pub const TAG_RLSEQ: u8 = 0x07;
pub const TAG_RAPSTRING: u8 = 0x08;

/// Append-only little-endian byte sink.
#[derive(Debug, Default)]
pub struct ByteWriter {
    buf: Vec<u8>,
}

impl ByteWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn put_u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn put_u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn put_usize(&mut self, v: usize) {
        self.put_u64(v as u64);
    }

    /// Writes a length-prefixed section produced by `f`.
    pub fn put_section(&mut self, f: impl FnOnce(&mut ByteWriter)) {
        let mut inner = ByteWriter::new();
        f(&mut inner);
        self.put_u64(inner.buf.len() as u64);
        self.buf.extend_from_slice(&inner.buf);
    }

    pub fn put_bytes(&mut self, bytes: &[u8]) {
        self.buf.extend_from_slice(bytes);
    }

    fn put_words(&mut self, words: &[u64]) {
        self.put_u64(words.len() as u64);
        for &w in words {
            self.put_u64(w);
        }
    }

    fn put_int_array(&mut self, a: &IntArray) {
        self.put_u8(a.width() as u8);
        self.put_u64(a.len() as u64);
        self.put_words(a.words());
    }

    fn put_usize_slice(&mut self, values: &[usize]) {
        self.put_u64(values.len() as u64);
        for &v in values {
            self.put_u64(v as u64);
        }
    }

    pub fn put_str(&mut self, s: &str) {
        self.put_u64(s.len() as u64);
        self.put_bytes(s.as_bytes());
    }
}

/// Cursor over a byte slice.
pub struct ByteReader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> ByteReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        ByteReader { data, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.data.len() - self.pos
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.remaining() < n {
            return Err(Error::Format(format!(
                "unexpected end of input: wanted {n} bytes, have {}",
                self.remaining()
            )));
        }
        let out = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn get_u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    pub fn get_u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn get_u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn get_usize(&mut self) -> Result<usize> {
        Ok(self.get_u64()? as usize)
    }

    /// Enters a length-prefixed section; returns a reader over it.
    pub fn get_section(&mut self) -> Result<ByteReader<'a>> {
        let len = self.get_usize()?;
        Ok(ByteReader::new(self.take(len)?))
    }

    pub fn get_bytes(&mut self, n: usize) -> Result<&'a [u8]> {
        self.take(n)
    }

    fn get_words(&mut self) -> Result<Vec<u64>> {
        let n = self.get_usize()?;
        let mut words = Vec::with_capacity(n);
        for _ in 0..n {
            words.push(self.get_u64()?);
        }
        Ok(words)
    }

    fn get_int_array(&mut self) -> Result<IntArray> {
        let width = self.get_u8()? as usize;
        let len = self.get_usize()?;
        let words = self.get_words()?;
        Ok(IntArray::from_raw(width, len, words))
    }

    fn get_usize_slice(&mut self) -> Result<Vec<usize>> {
        let n = self.get_usize()?;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(self.get_usize()?);
        }
        Ok(out)
    }

    pub fn get_str(&mut self) -> Result<String> {
        let len = self.get_usize()?;
        String::from_utf8(self.take(len)?.to_vec())
            .map_err(|_| Error::Format("invalid utf-8 string".into()))
    }
}

fn expect_tag(r: &mut ByteReader, tag: u8) -> Result<()> {
    let got = r.get_u8()?;
    if got != tag {
        return Err(Error::Format(format!(
            "expected structure tag {tag:#04x}, found {got:#04x}"
        )));
    }
    Ok(())
}

/// Structures serializable in the tagged container format.
pub trait Serial: Sized {
    fn write(&self, w: &mut ByteWriter);
    fn read(r: &mut ByteReader) -> Result<Self>;

    fn to_bytes(&self) -> Vec<u8> {
        let mut w = ByteWriter::new();
        self.write(&mut w);
        w.into_bytes()
    }

    fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = ByteReader::new(bytes);
        let out = Self::read(&mut r)?;
        if r.remaining() != 0 {
            return Err(Error::Format(format!(
                "{} trailing bytes after structure",
                r.remaining()
            )));
        }
        Ok(out)
    }
}

impl Serial for PlainBitVector {
    fn write(&self, w: &mut ByteWriter) {
        w.put_u8(TAG_PLAIN);
        w.put_usize(self.len());
        w.put_section(|w| {
            w.put_usize(self.sample_rate());
            w.put_words(self.words());
        });
        w.put_section(|w| {
            let (sb, wo, s1, s0) = self.directories();
            w.put_int_array(sb);
            w.put_int_array(wo);
            w.put_int_array(s1);
            w.put_int_array(s0);
        });
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        expect_tag(r, TAG_PLAIN)?;
        let len = r.get_usize()?;
        let mut payload = r.get_section()?;
        let sample_rate = payload.get_usize()?;
        let words = payload.get_words()?;
        let mut dirs = r.get_section()?;
        let sb = dirs.get_int_array()?;
        let wo = dirs.get_int_array()?;
        let s1 = dirs.get_int_array()?;
        let s0 = dirs.get_int_array()?;
        PlainBitVector::from_serialized(words, len, sample_rate, sb, wo, s1, s0)
    }
}

impl Serial for SparseBitVector {
    fn write(&self, w: &mut ByteWriter) {
        w.put_u8(TAG_SPARSE);
        w.put_usize(self.len());
        w.put_section(|w| {
            w.put_usize(self.count_ones());
            w.put_u8(self.low_width() as u8);
            w.put_int_array(self.low());
        });
        w.put_section(|w| self.high().write(w));
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        expect_tag(r, TAG_SPARSE)?;
        let universe = r.get_usize()?;
        let mut payload = r.get_section()?;
        let ones = payload.get_usize()?;
        let low_width = payload.get_u8()? as usize;
        let low = payload.get_int_array()?;
        let mut high_r = r.get_section()?;
        let high = PlainBitVector::read(&mut high_r)?;
        Ok(SparseBitVector::from_raw(
            universe, ones, low_width, low, high,
        ))
    }
}

impl Serial for RunBitVector {
    fn write(&self, w: &mut ByteWriter) {
        w.put_u8(TAG_RUN);
        w.put_usize(self.len());
        w.put_u8(self.first_bit() as u8);
        w.put_section(|w| self.zero_cum().write(w));
        w.put_section(|w| self.one_cum().write(w));
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        expect_tag(r, TAG_RUN)?;
        let len = r.get_usize()?;
        let first_bit = r.get_u8()? != 0;
        let zero_cum = SparseBitVector::read(&mut r.get_section()?)?;
        let one_cum = SparseBitVector::read(&mut r.get_section()?)?;
        Ok(RunBitVector::from_raw(len, first_bit, zero_cum, one_cum))
    }
}

impl Serial for WaveletMatrix {
    fn write(&self, w: &mut ByteWriter) {
        w.put_u8(TAG_WAVELET);
        w.put_usize(self.len());
        w.put_usize(self.sigma());
        w.put_usize(self.num_levels());
        w.put_section(|w| {
            for &z in self.zeros() {
                w.put_usize(z);
            }
        });
        for level in self.levels() {
            w.put_section(|w| level.write(w));
        }
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        expect_tag(r, TAG_WAVELET)?;
        let n = r.get_usize()?;
        let sigma = r.get_usize()?;
        let num_levels = r.get_usize()?;
        let mut zr = r.get_section()?;
        let mut zeros = Vec::with_capacity(num_levels);
        for _ in 0..num_levels {
            zeros.push(zr.get_usize()?);
        }
        let mut levels = Vec::with_capacity(num_levels);
        for _ in 0..num_levels {
            levels.push(PlainBitVector::read(&mut r.get_section()?)?);
        }
        Ok(WaveletMatrix::from_raw(n, sigma, levels, zeros))
    }
}

const SCHEME_SPARSE: u8 = 0;
const SCHEME_DENSE: u8 = 1;
const SCHEME_UNIFORM: u8 = 2;
const SCHEME_EXPLICIT: u8 = 3;

impl Serial for SymbolMap {
    fn write(&self, w: &mut ByteWriter) {
        w.put_u8(TAG_SYMBOL_MAP);
        w.put_usize(self.sigma());
        w.put_usize(self.num_partitions());
        match self.scheme() {
            PartitionScheme::Sparse => w.put_u8(SCHEME_SPARSE),
            PartitionScheme::Dense { l_min } => {
                w.put_u8(SCHEME_DENSE);
                w.put_u32(l_min);
            }
            PartitionScheme::Uniform => w.put_u8(SCHEME_UNIFORM),
            PartitionScheme::Explicit => w.put_u8(SCHEME_EXPLICIT),
        }
        match self.scheme() {
            PartitionScheme::Uniform => {
                w.put_usize(self.repr_uniform_q().expect("uniform map stores q"));
            }
            _ => {
                let (wm, has_absent) = self.stored_wm().expect("stored map");
                w.put_u8(has_absent as u8);
                w.put_section(|w| wm.write(w));
            }
        }
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        expect_tag(r, TAG_SYMBOL_MAP)?;
        let sigma = r.get_usize()?;
        let num_partitions = r.get_usize()?;
        let scheme_tag = r.get_u8()?;
        let scheme = match scheme_tag {
            SCHEME_SPARSE => PartitionScheme::Sparse,
            SCHEME_DENSE => PartitionScheme::Dense {
                l_min: r.get_u32()?,
            },
            SCHEME_UNIFORM => PartitionScheme::Uniform,
            SCHEME_EXPLICIT => PartitionScheme::Explicit,
            other => {
                return Err(Error::Format(format!("unknown scheme tag {other}")));
            }
        };
        if scheme == PartitionScheme::Uniform {
            let q = r.get_usize()?;
            Ok(SymbolMap::from_raw_uniform(sigma, num_partitions, q))
        } else {
            let has_absent = r.get_u8()? != 0;
            let wm = WaveletMatrix::read(&mut r.get_section()?)?;
            Ok(SymbolMap::from_raw_stored(
                scheme,
                sigma,
                num_partitions,
                wm,
                has_absent,
            ))
        }
    }
}

impl Serial for ApString {
    fn write(&self, w: &mut ByteWriter) {
        w.put_u8(TAG_APSTRING);
        w.put_usize(self.len());
        w.put_usize(self.sigma());
        w.put_section(|w| self.map().write(w));
        let p = self.num_partitions();
        w.put_usize(p);
        for l in 0..p {
            let (mark, seq) = self.partition_components(l);
            w.put_section(|w| mark.write(w));
            w.put_section(|w| seq.write(w));
        }
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        expect_tag(r, TAG_APSTRING)?;
        let n = r.get_usize()?;
        let sigma = r.get_usize()?;
        let map = SymbolMap::read(&mut r.get_section()?)?;
        let p = r.get_usize()?;
        let mut marks = Vec::with_capacity(p);
        let mut seqs = Vec::with_capacity(p);
        for _ in 0..p {
            marks.push(SparseBitVector::read(&mut r.get_section()?)?);
            seqs.push(WaveletMatrix::read(&mut r.get_section()?)?);
        }
        Ok(ApString::from_raw(n, sigma, map, marks, seqs))
    }
}

impl Serial for RunLengthSequence {
    fn write(&self, w: &mut ByteWriter) {
        w.put_u8(TAG_RLSEQ);
        w.put_usize(self.len());
        w.put_usize(self.sigma());
        w.put_usize(self.num_runs());
        let (heads, starts, sorted, runs_before) = self.parts();
        w.put_section(|w| heads.write(w));
        w.put_section(|w| starts.write(w));
        w.put_section(|w| sorted.write(w));
        w.put_section(|w| w.put_usize_slice(runs_before));
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        expect_tag(r, TAG_RLSEQ)?;
        let n = r.get_usize()?;
        let sigma = r.get_usize()?;
        let num_runs = r.get_usize()?;
        let heads = WaveletMatrix::read(&mut r.get_section()?)?;
        let starts = SparseBitVector::read(&mut r.get_section()?)?;
        let sorted = PlainBitVector::read(&mut r.get_section()?)?;
        let runs_before = r.get_section()?.get_usize_slice()?;
        Ok(RunLengthSequence::from_raw(
            n,
            sigma,
            num_runs,
            heads,
            starts,
            sorted,
            runs_before,
        ))
    }
}

impl Serial for RunApString {
    fn write(&self, w: &mut ByteWriter) {
        w.put_u8(TAG_RAPSTRING);
        w.put_usize(self.len());
        w.put_usize(self.sigma());
        let (map, marks, locals, offsets) = self.parts();
        w.put_section(|w| map.write(w));
        w.put_section(|w| marks.write(w));
        w.put_section(|w| locals.write(w));
        w.put_section(|w| w.put_usize_slice(offsets));
        let stats = self.stats();
        w.put_usize(stats.r);
        w.put_usize(stats.r_t);
        w.put_usize(stats.r_s);
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        expect_tag(r, TAG_RAPSTRING)?;
        let n = r.get_usize()?;
        let sigma = r.get_usize()?;
        let map = SymbolMap::read(&mut r.get_section()?)?;
        let marks = RunBitVector::read(&mut r.get_section()?)?;
        let locals = RunLengthSequence::read(&mut r.get_section()?)?;
        let offsets = r.get_section()?.get_usize_slice()?;
        let stats = RunStats {
            r: r.get_usize()?,
            r_t: r.get_usize()?,
            r_s: r.get_usize()?,
        };
        Ok(RunApString::from_raw(
            n, sigma, map, marks, locals, offsets, stats,
        ))
    }
}

/// FM-index: C array and metadata, plus the BWT store.
impl Serial for FmIndex {
    fn write(&self, w: &mut ByteWriter) {
        w.put_usize(self.len());
        w.put_usize(self.text_sigma());
        w.put_usize(self.bwt_runs());
        w.put_section(|w| w.put_usize_slice(self.c_array()));
        match self.store() {
            crate::fmindex::BwtStore::Aps(a) => {
                w.put_u8(0);
                w.put_section(|w| a.write(w));
            }
            crate::fmindex::BwtStore::Raps(x) => {
                w.put_u8(1);
                w.put_section(|w| x.write(w));
            }
        }
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        let n = r.get_usize()?;
        let text_sigma = r.get_usize()?;
        let bwt_runs = r.get_usize()?;
        let c_array = r.get_section()?.get_usize_slice()?;
        let store = match r.get_u8()? {
            0 => crate::fmindex::BwtStore::Aps(ApString::read(&mut r.get_section()?)?),
            1 => crate::fmindex::BwtStore::Raps(RunApString::read(&mut r.get_section()?)?),
            other => return Err(Error::Format(format!("unknown BWT store tag {other}"))),
        };
        Ok(FmIndex::from_raw(n, text_sigma, store, c_array, bwt_runs))
    }
}

/// Document collection: text, bounds, doc-id remap, vocabulary.
impl Serial for crate::docs::Collection {
    fn write(&self, w: &mut ByteWriter) {
        let (text, bounds, doc_ids, vocab) = self.raw_parts();
        w.put_usize(self.num_docs());
        w.put_section(|w| text.write(w));
        w.put_section(|w| bounds.write(w));
        w.put_section(|w| w.put_usize_slice(doc_ids));
        w.put_section(|w| {
            w.put_usize(vocab.len());
            for word in vocab {
                w.put_str(word);
            }
        });
    }

    fn read(r: &mut ByteReader) -> Result<Self> {
        let ndocs = r.get_usize()?;
        let text = ApString::read(&mut r.get_section()?)?;
        let bounds = SparseBitVector::read(&mut r.get_section()?)?;
        let doc_ids = r.get_section()?.get_usize_slice()?;
        let mut vr = r.get_section()?;
        let len = vr.get_usize()?;
        let mut vocab = Vec::with_capacity(len);
        for _ in 0..len {
            vocab.push(vr.get_str()?);
        }
        Ok(crate::docs::Collection::from_raw_parts(
            text, bounds, doc_ids, ndocs, vocab,
        ))
    }
}

/// CRC-32 (IEEE 802.3, reflected) over `data`.
pub fn crc32(data: &[u8]) -> u32 {
    const POLY: u32 = 0xEDB8_8320;
    static TABLE: std::sync::OnceLock<[u32; 256]> = std::sync::OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = [0u32; 256];
        for (i, slot) in t.iter_mut().enumerate() {
            let mut c = i as u32;
            for _ in 0..8 {
                c = if c & 1 == 1 { POLY ^ (c >> 1) } else { c >> 1 };
            }
            *slot = c;
        }
        t
    });
    let mut crc = u32::MAX;
    for &b in data {
        crc = table[((crc ^ b as u32) & 0xFF) as usize] ^ (crc >> 8);
    }
    !crc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::SymbolStats;
    use rand::{Rng, SeedableRng};

    fn roundtrip<T: Serial + PartialEq + std::fmt::Debug>(v: &T) {
        let bytes = v.to_bytes();
        let back = T::from_bytes(&bytes).unwrap();
        assert_eq!(&back, v);
        // Determinism: identical bytes on re-serialization.
        assert_eq!(back.to_bytes(), bytes);
    }

    #[test]
    fn structures_roundtrip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        let bits: Vec<bool> = (0..3000).map(|_| rng.random_bool(0.3)).collect();
        roundtrip(&PlainBitVector::from_bits(bits.iter().copied()));
        roundtrip(&SparseBitVector::from_bits(bits.iter().copied()).unwrap());
        roundtrip(&RunBitVector::from_bits(bits.iter().copied()).unwrap());
        roundtrip(&SparseBitVector::from_positions(&[], 50).unwrap());

        let seq: Vec<usize> = (0..2000).map(|_| rng.random_range(0..300)).collect();
        roundtrip(&WaveletMatrix::new(&seq, 300).unwrap());
        roundtrip(&WaveletMatrix::new(&[0, 0, 0], 1).unwrap());

        let stats = SymbolStats::from_seq(&seq, 310).unwrap();
        roundtrip(&SymbolMap::assign_sparse(&stats).unwrap());
        roundtrip(&SymbolMap::assign_dense(&stats, 4).unwrap());
        roundtrip(&SymbolMap::assign_uniform(2000, 300).unwrap());

        roundtrip(&ApString::new(&seq, 300, PartitionScheme::Sparse).unwrap());
        roundtrip(&ApString::new(&seq, 300, PartitionScheme::Uniform).unwrap());

        let runs_seq: Vec<usize> = (0..1500).map(|i| (i / 17) % 40).collect();
        roundtrip(&RunLengthSequence::new(&runs_seq, 40).unwrap());
        roundtrip(&RunApString::new(&runs_seq, 40).unwrap());

        roundtrip(&FmIndex::new(&seq[..500], 300, crate::fmindex::BwtBacking::Raps).unwrap());
    }

    #[test]
    fn loaded_structures_answer_queries() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        let seq: Vec<usize> = (0..1000).map(|_| rng.random_range(0..50)).collect();
        let ap = ApString::new(&seq, 50, PartitionScheme::Dense { l_min: 2 }).unwrap();
        let back = ApString::from_bytes(&ap.to_bytes()).unwrap();
        for i in 1..=1000 {
            assert_eq!(back.access(i).unwrap(), seq[i - 1]);
        }
        assert_eq!(back.rank(7, 500).unwrap(), ap.rank(7, 500).unwrap());
    }

    #[test]
    fn truncated_input_fails_cleanly() {
        let ap = ApString::new(&[1, 2, 3, 1], 4, PartitionScheme::Dense { l_min: 1 }).unwrap();
        let bytes = ap.to_bytes();
        for cut in [0, 1, 5, bytes.len() / 2, bytes.len() - 1] {
            assert!(ApString::from_bytes(&bytes[..cut]).is_err());
        }
        let mut wrong_tag = bytes.clone();
        wrong_tag[0] = 0x7F;
        assert!(ApString::from_bytes(&wrong_tag).is_err());
    }

    #[test]
    fn crc32_known_values() {
        assert_eq!(crc32(b""), 0);
        assert_eq!(crc32(b"123456789"), 0xCBF4_3926);
        assert_eq!(
            crc32(b"The quick brown fox jumps over the lazy dog"),
            0x414F_A339
        );
    }
}
