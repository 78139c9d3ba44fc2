//! Command-line front end: corpus ingestion, index build/load, queries,
//! pattern counting, inverted-list intersection, snippets, benchmarks, and
//! the distributed-processing simulator.

mod index;

use anyhow::{anyhow, bail, Context, Result};
use asap::apstring::ApString;
use asap::batch::{Answer, Query};
use asap::distsim::{ClusterSim, CostModel};
use asap::docs::{tokenize, Collection};
use asap::fmindex::{BwtBacking, FmIndex};
use asap::gen::{SymbolDraw, WorkloadGen};
use asap::oracle::NaiveSequence;
use asap::partition::PartitionScheme;
use asap::runs::RunApString;
use clap::{Parser, Subcommand, ValueEnum};
use index::{Index, TextStore};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "asap",
    version,
    about = "Alphabet-partitioned rank/select indexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// Raw 32-bit little-endian symbol ids, one document.
    Ids,
    /// UTF-8 text, one symbol per character, one document.
    TextChars,
    /// UTF-8 text, word/punctuation tokens, one document.
    TextWords,
    /// UTF-8 text, word/punctuation tokens, one document per line.
    TextLines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Structure {
    Aps,
    Raps,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index file from a corpus.
    Build {
        /// Input corpus path.
        #[arg(long)]
        input: PathBuf,
        /// Input interpretation.
        #[arg(long, value_enum, default_value = "ids")]
        format: InputFormat,
        /// Partitioning scheme: sparse, dense:<l_min>, or uniform.
        #[arg(long, default_value = "dense:1")]
        scheme: String,
        /// Index structure: flat partitions or run-length.
        #[arg(long, value_enum, default_value = "aps")]
        structure: Structure,
        /// Also build the backward-search layer over the token stream.
        #[arg(long)]
        with_fm: bool,
        /// Output index path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print structure, partition, and size information for an index.
    Info {
        index: PathBuf,
        /// Print at most this many partitions in the dump.
        #[arg(long, default_value_t = 64)]
        max_partitions: usize,
    },
    /// Run rank/select/access/snippet queries; one answer per line.
    Query {
        index: PathBuf,
        /// Inline query: `rank <symbol> <i>`, `select <symbol> <j>`,
        /// `access <i>`, or `snippet <i> <len>`.
        #[arg(num_args = 0..)]
        query: Vec<String>,
        /// File with one query per line (same syntax).
        #[arg(long)]
        batch: Option<PathBuf>,
    },
    /// Count pattern occurrences with backward search; one count per line.
    Count {
        index: PathBuf,
        /// File with one pattern per line: whitespace-separated symbol ids,
        /// or vocabulary tokens.
        #[arg(long)]
        patterns: PathBuf,
        /// Pattern interpretation: `ids`, `words` (vocabulary tokens), or
        /// `chars` (each character a token). Default: words when the index
        /// has a vocabulary, ids otherwise.
        #[arg(long)]
        pattern_format: Option<String>,
    },
    /// Intersect the documents containing every given term.
    Intersect {
        index: PathBuf,
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Extract the snippet of `len` tokens starting at position `pos`.
    Snippet {
        index: PathBuf,
        pos: usize,
        len: usize,
    },
    /// Time query batches; emits CSV.
    Bench {
        index: PathBuf,
        /// Operations to time.
        #[arg(long, default_value = "rank,select,access,snippet")]
        ops: String,
        /// Queries per operation.
        #[arg(long, default_value_t = 10_000)]
        queries: usize,
        /// Repetitions; the fastest run is reported.
        #[arg(long, default_value_t = 1)]
        repeat: usize,
        /// Snippet length for snippet workloads.
        #[arg(long, default_value_t = 100)]
        snippet_len: usize,
        /// Symbol distribution: positions (frequent symbols often) or alphabet.
        #[arg(long, default_value = "positions")]
        symbols: String,
        /// Thread-pool size for batch execution (0 = default).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Workload file of tagged queries instead of generated ones.
        #[arg(long)]
        workload: Option<PathBuf>,
        /// Also compare adaptive vs materialized intersection (needs documents).
        #[arg(long)]
        intersect_check: bool,
    },
    /// Simulate distributed batch processing; emits a per-operation CSV.
    Simulate {
        index: PathBuf,
        /// Queries per operation.
        #[arg(long, default_value_t = 10_000)]
        queries: usize,
        /// Cost model.
        #[arg(long, default_value = "measured")]
        cost: String,
        /// Snippet length for the snippet row.
        #[arg(long, default_value_t = 10)]
        snippet_len: usize,
    },
    /// Write the indexed token stream as raw 32-bit little-endian ids.
    Export {
        index: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check index answers against direct scans of the original corpus.
    Verify {
        index: PathBuf,
        /// The corpus the index was built from.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ids")]
        format: InputFormat,
        /// Random queries per operation.
        #[arg(long, default_value_t = 2_000)]
        queries: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn seed_from_env() -> u64 {
    std::env::var("ASAP_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0xA5A9)
}

fn parse_scheme(s: &str) -> Result<PartitionScheme> {
    match s {
        "sparse" => Ok(PartitionScheme::Sparse),
        "uniform" => Ok(PartitionScheme::Uniform),
        _ => {
            if let Some(l) = s.strip_prefix("dense:") {
                let l_min: u32 = l.parse().context("bad dense l_min")?;
                if l_min < 1 {
                    bail!("dense l_min must be at least 1");
                }
                Ok(PartitionScheme::Dense { l_min })
            } else if s == "dense" {
                Ok(PartitionScheme::Dense { l_min: 1 })
            } else {
                bail!("unknown scheme {s:?} (expected sparse, dense:<L>, or uniform)");
            }
        }
    }
}

/// A corpus decoded into symbols, with optional document/vocab layers.
struct LoadedCorpus {
    seq: Vec<usize>,
    sigma: usize,
    /// Tokenized documents when the input is text.
    docs: Option<Vec<Vec<String>>>,
}

fn load_corpus(path: &Path, format: InputFormat) -> Result<LoadedCorpus> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    if bytes.is_empty() {
        bail!("input {} is empty", path.display());
    }
    match format {
        InputFormat::Ids => {
            if bytes.len() % 4 != 0 {
                bail!("ids input length must be a multiple of 4 bytes");
            }
            let seq: Vec<usize> = bytes
                .chunks_exact(4)
                .map(|c| u32::from_le_bytes(c.try_into().unwrap()) as usize)
                .collect();
            let sigma = seq.iter().max().copied().unwrap_or(0) + 1;
            Ok(LoadedCorpus {
                seq,
                sigma,
                docs: None,
            })
        }
        InputFormat::TextChars => {
            let text = String::from_utf8(bytes).context("input is not UTF-8")?;
            let docs = vec![text
                .trim_end_matches('\n')
                .chars()
                .map(String::from)
                .collect()];
            Ok(corpus_from_docs(docs))
        }
        InputFormat::TextWords => {
            let text = String::from_utf8(bytes).context("input is not UTF-8")?;
            Ok(corpus_from_docs(vec![tokenize(&text)]))
        }
        InputFormat::TextLines => {
            let text = String::from_utf8(bytes).context("input is not UTF-8")?;
            let docs: Vec<Vec<String>> = text.lines().map(tokenize).collect();
            Ok(corpus_from_docs(docs))
        }
    }
}

fn corpus_from_docs(docs: Vec<Vec<String>>) -> LoadedCorpus {
    let mut vocab_index = std::collections::HashMap::new();
    let mut seq = Vec::new();
    for doc in &docs {
        for token in doc {
            let next = vocab_index.len();
            let id = *vocab_index.entry(token.clone()).or_insert(next);
            seq.push(id);
        }
    }
    LoadedCorpus {
        seq,
        sigma: vocab_index.len(),
        docs: Some(docs),
    }
}

fn load_index(path: &Path) -> Result<Index> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Index::from_bytes(&bytes)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Build {
            input,
            format,
            scheme,
            structure,
            with_fm,
            out,
        } => {
            let corpus = load_corpus(&input, format)?;
            if corpus.seq.is_empty() {
                bail!("corpus has no symbols");
            }
            let scheme = parse_scheme(&scheme)?;
            let text = match structure {
                Structure::Aps => TextStore::Aps(ApString::new(&corpus.seq, corpus.sigma, scheme)?),
                Structure::Raps => TextStore::Raps(RunApString::new(&corpus.seq, corpus.sigma)?),
            };
            let fm = if with_fm {
                let backing = match structure {
                    Structure::Aps => BwtBacking::Aps(scheme),
                    Structure::Raps => BwtBacking::Raps,
                };
                Some(FmIndex::new(&corpus.seq, corpus.sigma, backing)?)
            } else {
                None
            };
            let collection = match (&text, corpus.docs) {
                (TextStore::Aps(_), Some(docs)) => Some(Collection::ingest(docs, scheme)?),
                _ => None,
            };
            let ix = Index {
                text,
                fm,
                collection,
            };
            std::fs::write(&out, ix.to_bytes())
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "built index: n={} sigma={} -> {}",
                corpus.seq.len(),
                corpus.sigma,
                out.display()
            );
            Ok(0)
        }

        Command::Info {
            index,
            max_partitions,
        } => {
            let ix = load_index(&index)?;
            print_info(&ix, max_partitions);
            Ok(0)
        }

        Command::Query {
            index,
            query,
            batch,
        } => {
            let ix = load_index(&index)?;
            let mut lines: Vec<String> = Vec::new();
            if !query.is_empty() {
                lines.push(query.join(" "));
            }
            if let Some(path) = batch {
                let content = std::fs::read_to_string(&path)?;
                lines.extend(content.lines().map(str::to_owned));
            }
            if lines.is_empty() {
                bail!("no query given (pass one inline or via --batch)");
            }
            let mut had_error = false;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for line in &lines {
                if line.trim().is_empty() {
                    continue;
                }
                match parse_query(line) {
                    Err(e) => {
                        had_error = true;
                        writeln!(out, "error: {e}")?;
                    }
                    Ok(q) => {
                        let answer = execute_query(&ix.text, q);
                        if matches!(answer, Answer::Error(_)) {
                            had_error = true;
                        }
                        writeln!(out, "{answer}")?;
                    }
                }
            }
            Ok(if had_error { 2 } else { 0 })
        }

        Command::Count {
            index,
            patterns,
            pattern_format,
        } => {
            let ix = load_index(&index)?;
            let fm = ix
                .fm
                .as_ref()
                .ok_or_else(|| anyhow!("index was built without --with-fm"))?;
            let format = match pattern_format.as_deref() {
                Some(f @ ("ids" | "words" | "chars")) => f.to_string(),
                Some(other) => bail!("unknown pattern format {other:?}"),
                None => {
                    if ix.collection.is_some() {
                        "words".to_string()
                    } else {
                        "ids".to_string()
                    }
                }
            };
            let content = std::fs::read_to_string(&patterns)?;
            let mut had_error = false;
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for line in content.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                match parse_pattern(line, &format, ix.collection.as_ref()) {
                    Err(e) => {
                        had_error = true;
                        writeln!(out, "error: {e}")?;
                    }
                    Ok(pattern) => writeln!(out, "{}", fm.count(&pattern)?)?,
                }
            }
            Ok(if had_error { 2 } else { 0 })
        }

        Command::Intersect { index, terms } => {
            let ix = load_index(&index)?;
            let c = ix
                .collection
                .as_ref()
                .ok_or_else(|| anyhow!("index has no document layer"))?;
            let term_refs: Vec<&str> = terms.iter().map(String::as_str).collect();
            let docs = c.intersect(&term_refs)?;
            println!(
                "{}",
                docs.iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            Ok(0)
        }

        Command::Snippet { index, pos, len } => {
            let ix = load_index(&index)?;
            match &ix.collection {
                Some(c) => println!("{}", c.snippet_at(pos, len)?.join(" ")),
                None => {
                    let ids = ix.text.snippet(pos, len)?;
                    println!(
                        "{}",
                        ids.iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
            }
            Ok(0)
        }

        Command::Bench {
            index,
            ops,
            queries,
            repeat,
            snippet_len,
            symbols,
            threads,
            workload,
            intersect_check,
        } => run_bench(
            &index,
            &ops,
            queries,
            repeat.max(1),
            snippet_len,
            &symbols,
            threads,
            workload.as_deref(),
            intersect_check,
        ),

        Command::Simulate {
            index,
            queries,
            cost,
            snippet_len,
        } => run_simulate(&index, queries, &cost, snippet_len),

        Command::Export { index, out } => {
            let ix = load_index(&index)?;
            let ids = ix.text.snippet(1, ix.text.len())?;
            let mut bytes = Vec::with_capacity(ids.len() * 4);
            for id in ids {
                let id = u32::try_from(id).map_err(|_| anyhow!("symbol {id} exceeds 32 bits"))?;
                bytes.extend_from_slice(&id.to_le_bytes());
            }
            std::fs::write(&out, bytes).with_context(|| format!("writing {}", out.display()))?;
            println!("exported {} tokens to {}", ix.text.len(), out.display());
            Ok(0)
        }

        Command::Verify {
            index,
            input,
            format,
            queries,
        } => run_verify(&index, &input, format, queries),
    }
}

fn parse_query(line: &str) -> Result<Query> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    let int = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| anyhow!("bad integer {s:?} in query {line:?}"))
    };
    match parts.as_slice() {
        ["rank", symbol, i] => Ok(Query::Rank {
            symbol: int(symbol)?,
            pos: int(i)?,
        }),
        ["select", symbol, j] => Ok(Query::Select {
            symbol: int(symbol)?,
            j: int(j)?,
        }),
        ["access", i] => Ok(Query::Access { pos: int(i)? }),
        ["snippet", i, len] => Ok(Query::Snippet {
            pos: int(i)?,
            len: int(len)?,
        }),
        _ => bail!("cannot parse query {line:?}"),
    }
}

fn execute_query(text: &TextStore, q: Query) -> Answer {
    match text {
        TextStore::Aps(a) => asap::batch::execute(a, q),
        TextStore::Raps(_) => {
            let answer = match q {
                Query::Rank { symbol, pos } => text.rank(symbol, pos).map(Answer::Count),
                Query::Select { symbol, j } => text.select(symbol, j).map(Answer::Position),
                Query::Access { pos } => text.access(pos).map(Answer::Symbol),
                Query::Snippet { pos, len } => text.snippet(pos, len).map(Answer::Snippet),
            };
            answer.unwrap_or_else(Answer::Error)
        }
    }
}

fn parse_pattern(line: &str, format: &str, collection: Option<&Collection>) -> Result<Vec<usize>> {
    let vocab =
        || collection.ok_or_else(|| anyhow!("pattern {line:?} needs a vocabulary the index lacks"));
    match format {
        "ids" => line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| anyhow!("{e}")))
            .collect(),
        "words" => {
            let c = vocab()?;
            Ok(line
                .split_whitespace()
                .map(|t| c.word_id(t).unwrap_or(usize::MAX))
                .collect())
        }
        "chars" => {
            let c = vocab()?;
            Ok(line
                .chars()
                .filter(|ch| !ch.is_whitespace())
                .map(|ch| c.word_id(&ch.to_string()).unwrap_or(usize::MAX))
                .collect())
        }
        other => bail!("unknown pattern format {other:?}"),
    }
}

fn print_info(ix: &Index, max_partitions: usize) {
    let text = &ix.text;
    let n = text.len();
    println!("tokens: {n}");
    println!("alphabet: {}", text.sigma());
    let map = text.map();
    let scheme = match map.scheme() {
        PartitionScheme::Sparse => "sparse".to_string(),
        PartitionScheme::Dense { l_min } => format!("dense:{l_min}"),
        PartitionScheme::Uniform => "uniform".to_string(),
        PartitionScheme::Explicit => "explicit".to_string(),
    };
    println!("scheme: {scheme}");
    println!("partitions: {}", map.num_partitions());
    println!("bits: total={}", text.size_bits());
    println!("bits_per_symbol: {:.4}", text.size_bits() as f64 / n as f64);
    match text {
        TextStore::Aps(a) => {
            let report = a.size_report();
            println!("structure: aps");
            println!(
                "bits: marks={} (payload={} directories={}) seqs={} map={}",
                report.mark_total(),
                report.mark_payload_total(),
                report.mark_total() - report.mark_payload_total(),
                report.seq_total(),
                report.map_bits
            );
        }
        TextStore::Raps(r) => {
            let stats = r.stats();
            println!("structure: raps");
            println!("runs: r={} r_t={} r_s={}", stats.r, stats.r_t, stats.r_s);
        }
    }
    if let Some(fm) = &ix.fm {
        println!("fm: bwt_runs={} bits={}", fm.bwt_runs(), fm.size_bits());
    }
    if let Some(c) = &ix.collection {
        println!("documents: {} vocabulary: {}", c.num_docs(), c.vocab_size());
    }
    for (l, symbols) in map.partitions().iter().enumerate().take(max_partitions) {
        let shown: Vec<String> = symbols.iter().take(16).map(usize::to_string).collect();
        let ellipsis = if symbols.len() > 16 { " ..." } else { "" };
        println!(
            "partition {l}: size={} symbols=[{}{}]",
            symbols.len(),
            shown.join(" "),
            ellipsis
        );
    }
}

#[allow(clippy::too_many_arguments)]
fn run_bench(
    index: &Path,
    ops: &str,
    queries: usize,
    repeat: usize,
    snippet_len: usize,
    symbols: &str,
    threads: usize,
    workload: Option<&Path>,
    intersect_check: bool,
) -> Result<i32> {
    let ix = load_index(index)?;
    let TextStore::Aps(ap) = &ix.text else {
        bail!("bench currently targets aps indexes");
    };
    let draw = match symbols {
        "positions" => SymbolDraw::FromPositions,
        "alphabet" => SymbolDraw::UniformAlphabet,
        other => bail!("unknown symbol distribution {other:?}"),
    };
    let seed = seed_from_env();
    let index_bits = ap.size_bits();
    let bits_per_symbol = index_bits as f64 / ap.len() as f64;

    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }

    println!("operation,n_queries,total_ns,ns_per_op,index_bits,bits_per_symbol");
    let emit = |op: &str, batch: &[Query]| {
        if batch.is_empty() {
            return;
        }
        let mut best = u128::MAX;
        for _ in 0..repeat {
            let start = Instant::now();
            let answers = if threads > 0 {
                asap::batch::run(ap, batch)
            } else {
                asap::batch::run_sequential(ap, batch)
            };
            let elapsed = start.elapsed().as_nanos();
            std::hint::black_box(&answers);
            best = best.min(elapsed);
        }
        println!(
            "{op},{},{best},{:.2},{index_bits},{bits_per_symbol:.4}",
            batch.len(),
            best as f64 / batch.len() as f64
        );
    };

    if let Some(path) = workload {
        let content = std::fs::read_to_string(path)?;
        let mut batch = Vec::new();
        for line in content.lines() {
            if !line.trim().is_empty() {
                batch.push(parse_query(line)?);
            }
        }
        emit("workload", &batch);
    } else {
        // Reconstruct the token stream once for workload generation.
        let seq = ap.snippet(1, ap.len())?;
        let mut gen = WorkloadGen::new(&seq, ap.sigma(), draw, seed);
        for op in ops.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let batch = gen.batch_of(op, queries, snippet_len);
            emit(op, &batch);
        }
    }

    if intersect_check {
        let c = ix
            .collection
            .as_ref()
            .ok_or_else(|| anyhow!("--intersect-check needs a document layer"))?;
        let mut rng = asap::gen::rng(seed ^ 0x157);
        use rand::Rng;
        let mut adaptive_ns = 0u128;
        let mut materialized_ns = 0u128;
        let trials = 200usize;
        for _ in 0..trials {
            let k = rng.random_range(2..=3);
            let terms: Vec<usize> = (0..k)
                .map(|_| rng.random_range(0..c.vocab_size()))
                .collect();
            let start = Instant::now();
            let a = c.intersect_ids(&terms)?;
            adaptive_ns += start.elapsed().as_nanos();
            let start = Instant::now();
            let b = c.intersect_materialized(&terms)?;
            materialized_ns += start.elapsed().as_nanos();
            if a != b {
                bail!("intersection mismatch for terms {terms:?}");
            }
        }
        println!(
            "intersect_adaptive,{trials},{adaptive_ns},{:.2},{index_bits},{bits_per_symbol:.4}",
            adaptive_ns as f64 / trials as f64
        );
        println!(
            "intersect_materialized,{trials},{materialized_ns},{:.2},{index_bits},{bits_per_symbol:.4}",
            materialized_ns as f64 / trials as f64
        );
    }
    Ok(0)
}

fn run_simulate(index: &Path, queries: usize, cost: &str, snippet_len: usize) -> Result<i32> {
    let ix = load_index(index)?;
    let TextStore::Aps(ap) = &ix.text else {
        bail!("simulate needs an aps index (one node per partition)");
    };
    let model = match cost {
        "op-count" => CostModel::OpCount,
        "measured" => CostModel::Measured,
        other => bail!("unknown cost model {other:?}"),
    };
    let sim = ClusterSim::new(ap);
    let seq = ap.snippet(1, ap.len())?;
    let mut gen = WorkloadGen::new(&seq, ap.sigma(), SymbolDraw::FromPositions, seed_from_env());
    println!("nodes: {}", sim.num_nodes());
    println!("operation,asap_us_per_op,asap_speedup,ap_us_per_op,ap_speedup,ap_over_asap");
    for op in ["rank", "select", "access", "snippet"] {
        let batch = gen.batch_of(op, queries, snippet_len);
        let (answers, report) = sim.run(&batch, model);
        let (answers_ap, report_ap) = sim.run_broker_baseline(&batch, model);
        // Per-symbol cost for snippets, per-op otherwise, as microseconds
        // under the measured model and units under op-count.
        let denom = if op == "snippet" {
            (batch.len() * snippet_len) as f64
        } else {
            batch.len() as f64
        };
        let scale = if model == CostModel::Measured {
            1e3
        } else {
            1.0
        };
        let asap_cost = report.t_par() / denom / scale;
        let ap_cost = report_ap.t_par() / denom / scale;
        println!(
            "{op},{asap_cost:.4},{:.2},{ap_cost:.4},{:.2},{:.2}",
            report.speedup(),
            report_ap.speedup(),
            ap_cost / asap_cost.max(f64::EPSILON)
        );
        std::hint::black_box((&answers, &answers_ap));
    }
    Ok(0)
}

fn run_verify(index: &Path, input: &Path, format: InputFormat, queries: usize) -> Result<i32> {
    let ix = load_index(index)?;
    let corpus = load_corpus(input, format)?;
    let oracle = NaiveSequence::new(&corpus.seq, corpus.sigma);
    let text = &ix.text;
    if text.len() != corpus.seq.len() {
        bail!(
            "length mismatch: index has {} tokens, corpus {}",
            text.len(),
            corpus.seq.len()
        );
    }
    let mut gen = WorkloadGen::new(
        &corpus.seq,
        corpus.sigma,
        SymbolDraw::FromPositions,
        seed_from_env(),
    );
    let mut mismatches = 0usize;
    for op in ["rank", "select", "access", "snippet"] {
        for q in gen.batch_of(op, queries, 8) {
            let got = execute_query(text, q);
            let expect = match q {
                Query::Rank { symbol, pos } => Answer::Count(oracle.rank(symbol, pos)),
                Query::Select { symbol, j } => match oracle.select(symbol, j) {
                    Some(p) => Answer::Position(p),
                    None => continue,
                },
                Query::Access { pos } => Answer::Symbol(oracle.access(pos)),
                Query::Snippet { pos, len } => Answer::Snippet(oracle.snippet(pos, len)),
            };
            if got != expect {
                mismatches += 1;
                eprintln!("mismatch on {q:?}: index={got} oracle={expect}");
            }
        }
    }
    if mismatches == 0 {
        println!("verify: ok ({} queries per operation)", queries);
        Ok(0)
    } else {
        println!("verify: {mismatches} mismatches");
        Ok(2)
    }
}
