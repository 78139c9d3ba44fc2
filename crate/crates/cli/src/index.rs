//! The on-disk index container.
//!
//! Layout: magic `ASAPX`, a format version byte, a section table
//! (4-byte tag, offset, length, CRC32 each), then the section blobs.
//! Unknown sections are skipped on load; checksums are verified; newer
//! format versions are rejected.

use anyhow::{anyhow, bail, Context, Result};
use asap::apstring::ApString;
use asap::docs::Collection;
use asap::fmindex::FmIndex;
use asap::io::{crc32, ByteReader, ByteWriter, Serial};
use asap::partition::SymbolMap;
use asap::runs::RunApString;

pub const MAGIC: &[u8; 5] = b"ASAPX";
pub const FORMAT_VERSION: u8 = 1;

pub const SEC_SYMBOL_MAP: [u8; 4] = *b"SMAP";
pub const SEC_APSTRING: [u8; 4] = *b"APS1";
pub const SEC_RAPSTRING: [u8; 4] = *b"RAPS";
pub const SEC_FM_EXTRAS: [u8; 4] = *b"FMCX";
pub const SEC_DOC_EXTRAS: [u8; 4] = *b"DOCS";

/// The string structure held by an index.
#[derive(Debug, Clone)]
pub enum TextStore {
    Aps(ApString),
    Raps(RunApString),
}

impl TextStore {
    pub fn len(&self) -> usize {
        match self {
            TextStore::Aps(a) => a.len(),
            TextStore::Raps(r) => r.len(),
        }
    }

    pub fn sigma(&self) -> usize {
        match self {
            TextStore::Aps(a) => a.sigma(),
            TextStore::Raps(r) => r.sigma(),
        }
    }

    pub fn rank(&self, symbol: usize, i: usize) -> asap::Result<usize> {
        match self {
            TextStore::Aps(a) => a.rank(symbol, i),
            TextStore::Raps(r) => r.rank(symbol, i),
        }
    }

    pub fn select(&self, symbol: usize, j: usize) -> asap::Result<usize> {
        match self {
            TextStore::Aps(a) => a.select(symbol, j),
            TextStore::Raps(r) => r.select(symbol, j),
        }
    }

    pub fn access(&self, i: usize) -> asap::Result<usize> {
        match self {
            TextStore::Aps(a) => a.access(i),
            TextStore::Raps(r) => r.access(i),
        }
    }

    /// Window extraction; the run-length structure reads per position.
    pub fn snippet(&self, i: usize, len: usize) -> asap::Result<Vec<usize>> {
        match self {
            TextStore::Aps(a) => a.snippet(i, len),
            TextStore::Raps(r) => (i..i + len).map(|p| r.access(p)).collect(),
        }
    }

    pub fn map(&self) -> &SymbolMap {
        match self {
            TextStore::Aps(a) => a.map(),
            TextStore::Raps(r) => r.map(),
        }
    }

    pub fn size_bits(&self) -> usize {
        match self {
            TextStore::Aps(a) => a.size_bits(),
            TextStore::Raps(r) => r.size_bits(),
        }
    }
}

/// Fully decoded index.
#[derive(Debug, Clone)]
pub struct Index {
    pub text: TextStore,
    pub fm: Option<FmIndex>,
    pub collection: Option<Collection>,
}

impl Index {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut sections: Vec<([u8; 4], Vec<u8>)> = Vec::new();
        let mut w = ByteWriter::new();
        self.text.map().write(&mut w);
        sections.push((SEC_SYMBOL_MAP, w.into_bytes()));
        match &self.text {
            TextStore::Aps(a) => sections.push((SEC_APSTRING, a.to_bytes())),
            TextStore::Raps(r) => sections.push((SEC_RAPSTRING, r.to_bytes())),
        }
        if let Some(fm) = &self.fm {
            sections.push((SEC_FM_EXTRAS, fm.to_bytes()));
        }
        if let Some(c) = &self.collection {
            // Only the extras: the text lives in its own section.
            let (_, bounds, doc_ids, vocab) = collection_parts(c);
            let mut w = ByteWriter::new();
            w.put_usize(c.num_docs());
            w.put_section(|w| bounds.write(w));
            w.put_section(|w| {
                w.put_usize(doc_ids.len());
                for &d in doc_ids {
                    w.put_usize(d);
                }
            });
            w.put_section(|w| {
                w.put_usize(vocab.len());
                for word in vocab {
                    w.put_str(word);
                }
            });
            sections.push((SEC_DOC_EXTRAS, w.into_bytes()));
        }

        let header_len = MAGIC.len() + 1 + 4 + sections.len() * (4 + 8 + 8 + 4);
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(FORMAT_VERSION);
        out.extend_from_slice(&(sections.len() as u32).to_le_bytes());
        let mut offset = header_len as u64;
        for (tag, blob) in &sections {
            out.extend_from_slice(tag);
            out.extend_from_slice(&offset.to_le_bytes());
            out.extend_from_slice(&(blob.len() as u64).to_le_bytes());
            out.extend_from_slice(&crc32(blob).to_le_bytes());
            offset += blob.len() as u64;
        }
        for (_, blob) in &sections {
            out.extend_from_slice(blob);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < MAGIC.len() + 1 + 4 {
            bail!("file too short to be an index");
        }
        if &bytes[..5] != MAGIC {
            bail!("bad magic: not an index file");
        }
        let version = bytes[5];
        if version > FORMAT_VERSION {
            bail!("index format version {version} is newer than supported ({FORMAT_VERSION})");
        }
        let count = u32::from_le_bytes(bytes[6..10].try_into().unwrap()) as usize;
        let mut table = Vec::with_capacity(count);
        let mut pos = 10usize;
        for _ in 0..count {
            if bytes.len() < pos + 24 {
                bail!("truncated section table");
            }
            let tag: [u8; 4] = bytes[pos..pos + 4].try_into().unwrap();
            let offset = u64::from_le_bytes(bytes[pos + 4..pos + 12].try_into().unwrap()) as usize;
            let length = u64::from_le_bytes(bytes[pos + 12..pos + 20].try_into().unwrap()) as usize;
            let crc = u32::from_le_bytes(bytes[pos + 20..pos + 24].try_into().unwrap());
            table.push((tag, offset, length, crc));
            pos += 24;
        }
        let section = |tag: [u8; 4]| -> Result<Option<&[u8]>> {
            for &(t, offset, length, crc) in &table {
                if t == tag {
                    let blob = bytes
                        .get(offset..offset + length)
                        .ok_or_else(|| anyhow!("section {} out of bounds", tag_name(&t)))?;
                    if crc32(blob) != crc {
                        bail!("checksum mismatch in section {}", tag_name(&t));
                    }
                    return Ok(Some(blob));
                }
            }
            Ok(None)
        };

        let text = if let Some(blob) = section(SEC_APSTRING)? {
            TextStore::Aps(ApString::from_bytes(blob).context("decoding APS1")?)
        } else if let Some(blob) = section(SEC_RAPSTRING)? {
            TextStore::Raps(RunApString::from_bytes(blob).context("decoding RAPS")?)
        } else {
            bail!("index holds neither an APS1 nor a RAPS section");
        };
        let fm = match section(SEC_FM_EXTRAS)? {
            Some(blob) => Some(FmIndex::from_bytes(blob).context("decoding FMCX")?),
            None => None,
        };
        let collection = match section(SEC_DOC_EXTRAS)? {
            Some(blob) => {
                let TextStore::Aps(text) = &text else {
                    bail!("document extras require an APS1 text section");
                };
                let mut r = ByteReader::new(blob);
                let ndocs = r.get_usize()?;
                let bounds = asap::bitvec::SparseBitVector::read(&mut r.get_section()?)?;
                let mut dr = r.get_section()?;
                let len = dr.get_usize()?;
                let mut doc_ids = Vec::with_capacity(len);
                for _ in 0..len {
                    doc_ids.push(dr.get_usize()?);
                }
                let mut vr = r.get_section()?;
                let len = vr.get_usize()?;
                let mut vocab = Vec::with_capacity(len);
                for _ in 0..len {
                    vocab.push(vr.get_str()?);
                }
                Some(Collection::from_raw_parts(
                    text.clone(),
                    bounds,
                    doc_ids,
                    ndocs,
                    vocab,
                ))
            }
            None => None,
        };
        Ok(Index {
            text,
            fm,
            collection,
        })
    }
}

pub fn tag_name(tag: &[u8; 4]) -> String {
    String::from_utf8_lossy(tag).into_owned()
}

fn collection_parts(
    c: &Collection,
) -> (
    &ApString,
    &asap::bitvec::SparseBitVector,
    &[usize],
    &[String],
) {
    c.raw_parts()
}
