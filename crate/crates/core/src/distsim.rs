//! Simulation of distributed batch query processing.
//!
//! One simulated node per partition, owning that partition's bit vector and
//! sub-alphabet sequence; the symbol map is replicated everywhere, so any
//! node can route. rank/select go to the single owning node; access and
//! snippet are broadcast. Only computation is modeled, never communication.
//!
//! A baseline scheme with a dedicated broker holding the partition-id
//! sequence `t` (and the map) is simulated for comparison: every query pays
//! a serial broker stage there.

use crate::apstring::ApString;
use crate::batch::{Answer, Query};
use crate::error::Error;
use crate::wavelet::WaveletMatrix;
use std::time::Instant;

/// How node work is charged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostModel {
    /// One unit per node touched per query; deterministic.
    OpCount,
    /// Wall-clock nanoseconds of each node's work, nodes executed serially.
    Measured,
}

/// Where a query is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Single owning node.
    Node(usize),
    /// Every node participates.
    Broadcast,
    /// Answerable locally without touching any node (absent symbol).
    Unrouted,
}

/// Per-batch cost accounting.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub cost_model: CostModel,
    /// Busy cost per node (units or nanoseconds).
    pub node_cost: Vec<f64>,
    /// Serial broker cost; zero in the replicated-map scheme.
    pub broker_cost: f64,
    pub queries: usize,
}

impl SimReport {
    /// Total work: what a single node executing everything would pay.
    pub fn t_seq(&self) -> f64 {
        self.node_cost.iter().sum::<f64>() + self.broker_cost
    }

    /// Critical path: the busiest node, or the broker if it dominates.
    pub fn t_par(&self) -> f64 {
        self.node_cost
            .iter()
            .copied()
            .fold(self.broker_cost, f64::max)
    }

    pub fn speedup(&self) -> f64 {
        let t_par = self.t_par();
        if t_par == 0.0 {
            1.0
        } else {
            self.t_seq() / t_par
        }
    }
}

/// Distributed-processing simulator over a partitioned string.
pub struct ClusterSim<'a> {
    ap: &'a ApString,
    /// Partition-id sequence, rebuilt from the mark vectors; used by the
    /// broker-based baseline.
    t_seq: WaveletMatrix,
}

impl<'a> ClusterSim<'a> {
    pub fn new(ap: &'a ApString) -> Self {
        let p = ap.num_partitions();
        let mut t = vec![0usize; ap.len()];
        for l in 0..p {
            let (mark, _) = ap.partition_components(l);
            for pos in mark.iter_ones() {
                t[pos - 1] = l;
            }
        }
        let t_seq = WaveletMatrix::new(&t, p.max(1)).expect("partition ids fit the alphabet");
        ClusterSim { ap, t_seq }
    }

    pub fn num_nodes(&self) -> usize {
        self.ap.num_partitions()
    }

    /// Routing decision for a query under the replicated-map scheme.
    pub fn route(&self, query: Query) -> Route {
        match query {
            Query::Rank { symbol, .. } | Query::Select { symbol, .. } => {
                match self.ap.map().map(symbol) {
                    Ok((part, _)) => Route::Node(part),
                    Err(_) => Route::Unrouted,
                }
            }
            Query::Access { .. } | Query::Snippet { .. } => Route::Broadcast,
        }
    }

    /// Runs a batch under the replicated-map scheme. Answers are identical
    /// to single-node execution and independent of the cost model.
    pub fn run(&self, batch: &[Query], model: CostModel) -> (Vec<Answer>, SimReport) {
        let p = self.num_nodes();
        let mut cost = vec![0.0f64; p];
        let mut answers = Vec::with_capacity(batch.len());
        for &query in batch {
            match self.route(query) {
                Route::Unrouted => {
                    answers.push(match query {
                        Query::Rank { pos, .. } if pos > self.ap.len() => {
                            Answer::Error(Error::OutOfRange {
                                what: "rank index",
                                got: pos,
                                min: 0,
                                max: self.ap.len(),
                            })
                        }
                        Query::Rank { .. } => Answer::Count(0),
                        Query::Select { symbol, .. } => Answer::Error(Error::UnknownSymbol(symbol)),
                        _ => unreachable!("only symbol queries can be unrouted"),
                    });
                }
                Route::Node(owner) => {
                    answers.push(charge(model, &mut cost[owner], || {
                        crate::batch::execute(self.ap, query)
                    }));
                }
                Route::Broadcast => match query {
                    Query::Access { pos } => {
                        if pos < 1 || pos > self.ap.len() {
                            answers.push(Answer::Error(Error::OutOfRange {
                                what: "position",
                                got: pos,
                                min: 1,
                                max: self.ap.len(),
                            }));
                            continue;
                        }
                        let mut answer = None;
                        for l in 0..p {
                            let got = charge(model, &mut cost[l], || self.node_probe(l, pos));
                            if let Some(sym) = got {
                                answer = Some(sym);
                            }
                        }
                        answers.push(Answer::Symbol(answer.expect("some node owns the position")));
                    }
                    Query::Snippet { pos, len } => {
                        if len < 1 || pos < 1 || pos + len - 1 > self.ap.len() {
                            answers.push(Answer::Error(Error::OutOfRange {
                                what: "snippet window",
                                got: pos + len.max(1) - 1,
                                min: 1,
                                max: self.ap.len(),
                            }));
                            continue;
                        }
                        let mut out = vec![0usize; len];
                        for l in 0..p {
                            charge(model, &mut cost[l], || {
                                self.node_snippet_part(l, pos, len, &mut out)
                            });
                        }
                        answers.push(Answer::Snippet(out));
                    }
                    _ => unreachable!("rank/select are never broadcast"),
                },
            }
        }
        (
            answers,
            SimReport {
                cost_model: model,
                node_cost: cost,
                broker_cost: 0.0,
                queries: batch.len(),
            },
        )
    }

    /// One node's share of an access broadcast: check its bit vector, and
    /// finish the query if it owns the position.
    fn node_probe(&self, l: usize, pos: usize) -> Option<usize> {
        let (mark, seq) = self.ap.partition_components(l);
        let k = mark.rank1_unchecked(pos);
        if k > 0 && mark.select1_unchecked(k) == pos {
            let code = seq.access(k).expect("in range");
            Some(self.ap.map().unmap(l, code).expect("valid code"))
        } else {
            None
        }
    }

    /// One node's share of a snippet broadcast: place its partition's
    /// symbols into the output window.
    fn node_snippet_part(&self, l: usize, pos: usize, len: usize, out: &mut [usize]) {
        let (mark, seq) = self.ap.partition_components(l);
        let mut cur = mark.rank1_unchecked(pos - 1);
        let count = mark.rank1_unchecked(pos + len - 1) - cur;
        for _ in 0..count {
            cur += 1;
            let p = mark.select1_unchecked(cur);
            let code = seq.access(cur).expect("in range");
            out[p - pos] = self.ap.map().unmap(l, code).expect("valid code");
        }
    }

    /// Runs a batch under the broker-based baseline: a dedicated broker
    /// executes every query's partition-id work serially, the owning node
    /// the sub-alphabet work.
    pub fn run_broker_baseline(
        &self,
        batch: &[Query],
        model: CostModel,
    ) -> (Vec<Answer>, SimReport) {
        let p = self.num_nodes();
        let mut cost = vec![0.0f64; p];
        let mut broker = 0.0f64;
        let mut answers = Vec::with_capacity(batch.len());
        for &query in batch {
            match query {
                Query::Rank { symbol, pos } => {
                    if pos > self.ap.len() {
                        answers.push(Answer::Error(Error::OutOfRange {
                            what: "rank index",
                            got: pos,
                            min: 0,
                            max: self.ap.len(),
                        }));
                        continue;
                    }
                    match self.ap.map().map(symbol) {
                        Err(_) => answers.push(Answer::Count(0)),
                        Ok((part, code)) => {
                            let k = charge(model, &mut broker, || {
                                self.t_seq.rank(part, pos).expect("in range")
                            });
                            let v = charge(model, &mut cost[part], || {
                                self.ap
                                    .partition_components(part)
                                    .1
                                    .rank(code, k)
                                    .expect("in range")
                            });
                            answers.push(Answer::Count(v));
                        }
                    }
                }
                Query::Select { symbol, j } => match self.ap.map().map(symbol) {
                    Err(e) => answers.push(Answer::Error(e)),
                    Ok((part, code)) => {
                        let k = charge(model, &mut cost[part], || {
                            self.ap.partition_components(part).1.select(code, j)
                        });
                        match k {
                            Err(e) => answers.push(Answer::Error(e)),
                            Ok(k) => {
                                let v = charge(model, &mut broker, || {
                                    self.t_seq.select(part, k).expect("in range")
                                });
                                answers.push(Answer::Position(v));
                            }
                        }
                    }
                },
                Query::Access { pos } => {
                    if pos < 1 || pos > self.ap.len() {
                        answers.push(Answer::Error(Error::OutOfRange {
                            what: "position",
                            got: pos,
                            min: 1,
                            max: self.ap.len(),
                        }));
                        continue;
                    }
                    let (part, k) = charge(model, &mut broker, || {
                        let part = self.t_seq.access(pos).expect("in range");
                        (part, self.t_seq.rank(part, pos).expect("in range"))
                    });
                    let v = charge(model, &mut cost[part], || {
                        let code = self
                            .ap
                            .partition_components(part)
                            .1
                            .access(k)
                            .expect("in range");
                        self.ap.map().unmap(part, code).expect("valid code")
                    });
                    answers.push(Answer::Symbol(v));
                }
                Query::Snippet { pos, len } => {
                    if len < 1 || pos < 1 || pos + len - 1 > self.ap.len() {
                        answers.push(Answer::Error(Error::OutOfRange {
                            what: "snippet window",
                            got: pos + len.max(1) - 1,
                            min: 1,
                            max: self.ap.len(),
                        }));
                        continue;
                    }
                    let parts_and_ranks: Vec<(usize, usize)> = charge(model, &mut broker, || {
                        (pos..pos + len)
                            .map(|i| {
                                let part = self.t_seq.access(i).expect("in range");
                                (part, self.t_seq.rank(part, i).expect("in range"))
                            })
                            .collect()
                    });
                    let mut out = vec![0usize; len];
                    for l in 0..p {
                        charge(model, &mut cost[l], || {
                            for (slot, &(part, k)) in parts_and_ranks.iter().enumerate() {
                                if part == l {
                                    let code = self
                                        .ap
                                        .partition_components(l)
                                        .1
                                        .access(k)
                                        .expect("in range");
                                    out[slot] = self.ap.map().unmap(l, code).expect("valid code");
                                }
                            }
                        });
                    }
                    answers.push(Answer::Snippet(out));
                }
            }
        }
        (
            answers,
            SimReport {
                cost_model: model,
                node_cost: cost,
                broker_cost: broker,
                queries: batch.len(),
            },
        )
    }
}

/// Charges `f`'s cost to `slot` under the chosen model.
fn charge<T>(model: CostModel, slot: &mut f64, f: impl FnOnce() -> T) -> T {
    match model {
        CostModel::OpCount => {
            *slot += 1.0;
            f()
        }
        CostModel::Measured => {
            let start = Instant::now();
            let out = f();
            *slot += start.elapsed().as_nanos() as f64;
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::batch;
    use crate::partition::{PartitionScheme, SymbolMap};
    use rand::{Rng, SeedableRng};

    fn build(seq: &[usize], sigma: usize) -> ApString {
        ApString::new(seq, sigma, PartitionScheme::Dense { l_min: 1 }).unwrap()
    }

    #[test]
    fn routing() {
        let mut codes = std::collections::HashMap::new();
        let seq: Vec<usize> = "alabar_a_la_alabarda"
            .chars()
            .map(|ch| {
                let next = codes.len();
                *codes.entry(ch).or_insert(next)
            })
            .collect();
        let map = SymbolMap::from_explicit(&[Some(0), Some(1), Some(2), Some(2), Some(1), Some(3)])
            .unwrap();
        let ap = ApString::with_map(&seq, 6, map).unwrap();
        let sim = ClusterSim::new(&ap);
        // rank('a', i) goes to the node owning {a}.
        assert_eq!(sim.route(Query::Rank { symbol: 0, pos: 5 }), Route::Node(0));
        assert_eq!(sim.route(Query::Access { pos: 3 }), Route::Broadcast);
        assert_eq!(
            sim.route(Query::Snippet { pos: 1, len: 4 }),
            Route::Broadcast
        );
        assert_eq!(
            sim.route(Query::Select { symbol: 17, j: 1 }),
            Route::Unrouted
        );
    }

    #[test]
    fn answers_match_single_node() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        let n = 3000;
        let sigma = 40;
        let seq: Vec<usize> = (0..n).map(|_| rng.random_range(0..sigma)).collect();
        let ap = build(&seq, sigma);
        let sim = ClusterSim::new(&ap);
        let queries = crate::batch::tests::random_batch(&mut rng, n, sigma + 3, 1500);
        let expect = batch::run_sequential(&ap, &queries);
        for model in [CostModel::OpCount, CostModel::Measured] {
            let (answers, report) = sim.run(&queries, model);
            assert_eq!(answers, expect);
            assert_eq!(report.queries, queries.len());
            let (answers, _) = sim.run_broker_baseline(&queries, model);
            assert_eq!(answers, expect);
        }
        // Op-count reports are deterministic.
        let (_, r1) = sim.run(&queries, CostModel::OpCount);
        let (_, r2) = sim.run(&queries, CostModel::OpCount);
        assert_eq!(r1, r2);
    }

    #[test]
    fn single_node_speedup_is_one() {
        let ap = build(&[1; 64], 2);
        assert_eq!(ap.num_partitions(), 1);
        let sim = ClusterSim::new(&ap);
        let batch: Vec<Query> = (1..=64).map(|pos| Query::Rank { symbol: 1, pos }).collect();
        let (_, report) = sim.run(&batch, CostModel::OpCount);
        assert_eq!(report.speedup(), 1.0);
    }

    #[test]
    fn balanced_batch_perfect_speedup() {
        // 8 equally loaded partitions via an explicit map of 8 symbols.
        let mut seq = Vec::new();
        for i in 0..800 {
            seq.push(i % 8);
        }
        let map = SymbolMap::from_explicit(&(0..8).map(Some).collect::<Vec<_>>()).unwrap();
        let ap = ApString::with_map(&seq, 8, map).unwrap();
        let sim = ClusterSim::new(&ap);
        assert_eq!(sim.num_nodes(), 8);
        let batch: Vec<Query> = (0..8000)
            .map(|i| Query::Rank {
                symbol: i % 8,
                pos: 400,
            })
            .collect();
        let (_, report) = sim.run(&batch, CostModel::OpCount);
        assert_eq!(report.speedup(), 8.0);
        assert!(report.speedup() <= sim.num_nodes() as f64);
    }

    #[test]
    fn broadcast_costs_every_node() {
        let ap = build(&(0..100).map(|i| i % 10).collect::<Vec<_>>(), 10);
        let sim = ClusterSim::new(&ap);
        let (_, report) = sim.run(&[Query::Access { pos: 7 }], CostModel::OpCount);
        for l in 0..sim.num_nodes() {
            assert_eq!(report.node_cost[l], 1.0);
        }
    }
}
