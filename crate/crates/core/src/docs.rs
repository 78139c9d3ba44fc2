//! Document collections over a partitioned string: tokenization into word
//! ids, document boundaries, snippet extraction, and inverted-list
//! intersection simulated with rank/select on the concatenated text.

use crate::apstring::ApString;
use crate::bitvec::SparseBitVector;
use crate::error::{Error, Result};
use crate::partition::PartitionScheme;
use std::collections::HashMap;

/// Splits text into lowercased word tokens; every punctuation character is
/// its own token, whitespace only separates.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut word = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            word.extend(ch.to_lowercase());
        } else {
            if !word.is_empty() {
                tokens.push(std::mem::take(&mut word));
            }
            if !ch.is_whitespace() {
                tokens.push(ch.to_string());
            }
        }
    }
    if !word.is_empty() {
        tokens.push(word);
    }
    tokens
}

#[derive(Debug, Clone)]
pub struct Collection {
    text: ApString,
    /// Ones at the first position of each non-empty document.
    bounds: SparseBitVector,
    /// Original 1-based doc id per bounds rank (identity when no document
    /// is empty).
    doc_ids: Vec<usize>,
    ndocs: usize,
    vocab: Vec<String>,
    vocab_index: HashMap<String, usize>,
}

impl Collection {
    /// Ingests tokenized documents; word ids are assigned by first
    /// appearance. Empty documents keep their doc id but own no positions.
    pub fn ingest<D, T>(documents: D, scheme: PartitionScheme) -> Result<Self>
    where
        D: IntoIterator<Item = T>,
        T: IntoIterator<Item = String>,
    {
        let mut vocab: Vec<String> = Vec::new();
        let mut vocab_index: HashMap<String, usize> = HashMap::new();
        let mut seq: Vec<usize> = Vec::new();
        let mut starts: Vec<usize> = Vec::new();
        let mut doc_ids: Vec<usize> = Vec::new();
        let mut ndocs = 0usize;
        for doc in documents {
            ndocs += 1;
            let start = seq.len() + 1;
            for token in doc {
                let id = *vocab_index.entry(token.clone()).or_insert_with(|| {
                    vocab.push(token);
                    vocab.len() - 1
                });
                seq.push(id);
            }
            if seq.len() + 1 > start {
                starts.push(start);
                doc_ids.push(ndocs);
            }
        }
        if ndocs == 0 || seq.is_empty() {
            return Err(Error::invalid("collection has no tokens"));
        }
        let sigma = vocab.len();
        Ok(Collection {
            text: ApString::new(&seq, sigma, scheme)?,
            bounds: SparseBitVector::from_positions(&starts, seq.len())?,
            doc_ids,
            ndocs,
            vocab,
            vocab_index,
        })
    }

    /// Ingests plain-text documents via [`tokenize`].
    pub fn from_texts(texts: &[&str], scheme: PartitionScheme) -> Result<Self> {
        Self::ingest(texts.iter().map(|t| tokenize(t)), scheme)
    }

    #[inline]
    pub fn num_tokens(&self) -> usize {
        self.text.len()
    }

    #[inline]
    pub fn num_docs(&self) -> usize {
        self.ndocs
    }

    #[inline]
    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    #[inline]
    pub fn text(&self) -> &ApString {
        &self.text
    }

    pub fn vocab(&self) -> &[String] {
        &self.vocab
    }

    pub fn word_id(&self, token: &str) -> Option<usize> {
        self.vocab_index.get(token).copied()
    }

    pub fn word(&self, id: usize) -> Option<&str> {
        self.vocab.get(id).map(|s| s.as_str())
    }

    /// 1-based doc id containing position `i`.
    pub fn doc_of(&self, i: usize) -> Result<usize> {
        if i < 1 || i > self.text.len() {
            return Err(Error::range("position", i, 1, self.text.len()));
        }
        Ok(self.doc_ids[self.bounds.rank1_unchecked(i) - 1])
    }

    /// Position range `[start, end]` of (non-empty) document `doc`.
    fn doc_span(&self, bounds_rank: usize) -> (usize, usize) {
        let start = self.bounds.select1_unchecked(bounds_rank);
        let end = if bounds_rank < self.bounds.count_ones() {
            self.bounds.select1_unchecked(bounds_rank + 1) - 1
        } else {
            self.text.len()
        };
        (start, end)
    }

    /// Documents containing every term, by the adaptive candidate-eliminator
    /// loop over the virtual inverted lists (rank/select on the text).
    pub fn intersect(&self, terms: &[&str]) -> Result<Vec<usize>> {
        let mut ids = Vec::with_capacity(terms.len());
        for t in terms {
            match self.word_id(t) {
                Some(id) => ids.push(id),
                None => return Ok(Vec::new()),
            }
        }
        self.intersect_ids(&ids)
    }

    /// [`Collection::intersect`] over word ids.
    pub fn intersect_ids(&self, terms: &[usize]) -> Result<Vec<usize>> {
        let mut terms: Vec<usize> = terms.to_vec();
        terms.sort_unstable();
        terms.dedup();
        if terms.iter().any(|&t| t >= self.vocab.len()) {
            return Ok(Vec::new());
        }
        if terms.is_empty() {
            return Ok(Vec::new());
        }
        let n = self.text.len();
        let totals: Vec<usize> = terms
            .iter()
            .map(|&t| self.text.rank(t, n))
            .collect::<Result<_>>()?;
        if totals.contains(&0) {
            return Ok(Vec::new());
        }
        let num_candidates = self.bounds.count_ones();
        let mut out = Vec::new();
        let mut candidate = 1usize; // bounds rank of the candidate document
        let mut matched = 0usize;
        let mut term_idx = 0usize;
        while candidate <= num_candidates {
            let term = terms[term_idx];
            let (start, _) = self.doc_span(candidate);
            // First occurrence of `term` at a position >= start.
            let occ = self.text.rank(term, start - 1)? + 1;
            if occ > totals[term_idx] {
                break; // this term is exhausted: no further doc can match
            }
            let pos = self.text.select(term, occ)?;
            let doc = self.bounds.rank1_unchecked(pos);
            if doc == candidate {
                matched += 1;
            } else {
                candidate = doc;
                matched = 1; // the probing term is the first match in the new doc
            }
            if matched == terms.len() {
                out.push(self.doc_ids[candidate - 1]);
                candidate += 1;
                matched = 0;
            }
            term_idx = (term_idx + 1) % terms.len();
        }
        Ok(out)
    }

    /// Intersection by materializing each term's full document list with
    /// repeated select, then merging. Baseline for the adaptive loop.
    pub fn intersect_materialized(&self, terms: &[usize]) -> Result<Vec<usize>> {
        let mut terms: Vec<usize> = terms.to_vec();
        terms.sort_unstable();
        terms.dedup();
        if terms.is_empty() || terms.iter().any(|&t| t >= self.vocab.len()) {
            return Ok(Vec::new());
        }
        let n = self.text.len();
        let mut lists: Vec<Vec<usize>> = Vec::with_capacity(terms.len());
        for &t in &terms {
            let total = self.text.rank(t, n)?;
            let mut docs = Vec::new();
            for j in 1..=total {
                let doc = self.bounds.rank1_unchecked(self.text.select(t, j)?);
                if docs.last() != Some(&doc) {
                    docs.push(doc);
                }
            }
            lists.push(docs);
        }
        lists.sort_by_key(|l| l.len());
        let mut acc = lists[0].clone();
        for list in &lists[1..] {
            acc.retain(|d| list.binary_search(d).is_ok());
        }
        Ok(acc.into_iter().map(|d| self.doc_ids[d - 1]).collect())
    }

    /// Term frequency of `term` within document `doc` (1-based doc id).
    pub fn term_frequency(&self, term: &str, doc: usize) -> Result<usize> {
        if doc < 1 || doc > self.ndocs {
            return Err(Error::range("doc", doc, 1, self.ndocs));
        }
        let Some(id) = self.word_id(term) else {
            return Ok(0);
        };
        let Ok(bounds_rank) = self.doc_ids.binary_search(&doc) else {
            return Ok(0); // empty document
        };
        let (start, end) = self.doc_span(bounds_rank + 1);
        Ok(self.text.rank(id, end)? - self.text.rank(id, start - 1)?)
    }

    /// Tokens `text[pos .. pos+len-1]`, clipped at the end of the document
    /// containing `pos`.
    pub fn snippet_at(&self, pos: usize, len: usize) -> Result<Vec<String>> {
        if pos < 1 || pos > self.text.len() {
            return Err(Error::range("position", pos, 1, self.text.len()));
        }
        if len < 1 {
            return Err(Error::invalid("snippet length must be at least 1"));
        }
        let (_, end) = self.doc_span(self.bounds.rank1_unchecked(pos));
        let len = len.min(end - pos + 1);
        let ids = self.text.snippet(pos, len)?;
        Ok(ids.into_iter().map(|id| self.vocab[id].clone()).collect())
    }

    /// The collection's components (serialization).
    pub fn raw_parts(&self) -> (&ApString, &SparseBitVector, &[usize], &[String]) {
        (&self.text, &self.bounds, &self.doc_ids, &self.vocab)
    }

    /// Reassembles a collection from serialized components.
    pub fn from_raw_parts(
        text: ApString,
        bounds: SparseBitVector,
        doc_ids: Vec<usize>,
        ndocs: usize,
        vocab: Vec<String>,
    ) -> Self {
        let vocab_index = vocab
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Collection {
            text,
            bounds,
            doc_ids,
            ndocs,
            vocab,
            vocab_index,
        }
    }
}
