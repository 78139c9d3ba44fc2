//! Rank/select bit vectors in three flavors: plain, sparse (Elias-Fano), and
//! run-length. All positions are 1-based; `rank1(i)` accepts `i` in
//! `[0, len]` with `rank1(0) = 0`, `select1(j)` accepts `j` in
//! `[1, count_ones()]`. All flavors answer identically for the same bits.

pub mod plain;
pub mod run;
pub mod sparse;

pub use plain::PlainBitVector;
pub use run::RunBitVector;
pub use sparse::SparseBitVector;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_equivalent(bits: &[bool]) {
        let p = PlainBitVector::from_bits(bits.iter().copied());
        let s = SparseBitVector::from_bits(bits.iter().copied()).unwrap();
        let r = RunBitVector::from_bits(bits.iter().copied()).unwrap();
        let m = p.count_ones();
        assert_eq!(s.count_ones(), m);
        assert_eq!(r.count_ones(), m);
        for i in 0..=bits.len() {
            let expect = p.rank1(i).unwrap();
            assert_eq!(s.rank1(i).unwrap(), expect, "sparse rank1({i})");
            assert_eq!(r.rank1(i).unwrap(), expect, "run rank1({i})");
            if i >= 1 {
                assert_eq!(s.get(i).unwrap(), bits[i - 1]);
                assert_eq!(r.get(i).unwrap(), bits[i - 1]);
                assert_eq!(p.get(i).unwrap(), bits[i - 1]);
            }
        }
        for j in 1..=m {
            let expect = p.select1(j).unwrap();
            assert_eq!(s.select1(j).unwrap(), expect, "sparse select1({j})");
            assert_eq!(r.select1(j).unwrap(), expect, "run select1({j})");
            // Inverse laws.
            assert_eq!(p.rank1(expect).unwrap(), j);
            assert!(p.select1(p.rank1(expect).unwrap()).unwrap() <= expect);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn flavors_agree_on_random_bits(bits in proptest::collection::vec(any::<bool>(), 0..700)) {
            check_equivalent(&bits);
        }

        #[test]
        fn flavors_agree_on_runs(runs in proptest::collection::vec((any::<bool>(), 1usize..80), 0..40)) {
            let bits: Vec<bool> = runs.iter().flat_map(|&(b, l)| std::iter::repeat_n(b, l)).collect();
            check_equivalent(&bits);
        }

        #[test]
        fn flavors_agree_sparse(positions in proptest::collection::btree_set(1usize..4096, 0..40)) {
            let mut bits = vec![false; 4096];
            for &p in &positions {
                bits[p - 1] = true;
            }
            check_equivalent(&bits);
        }
    }

    #[test]
    fn cross_flavor_large_random_queries() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let u = 1_000_000;
        // Clustered bits so all three flavors get nontrivial structure.
        let mut bits = vec![false; u];
        let mut i = 0usize;
        while i < u {
            let run = rng.random_range(1..200);
            let val = rng.random_bool(0.4);
            for k in i..(i + run).min(u) {
                bits[k] = val;
            }
            i += run;
        }
        let p = PlainBitVector::from_bits(bits.iter().copied());
        let s = SparseBitVector::from_bits(bits.iter().copied()).unwrap();
        let r = RunBitVector::from_bits(bits.iter().copied()).unwrap();
        let m = p.count_ones();
        for _ in 0..10_000 {
            let i = rng.random_range(0..=u);
            let expect = p.rank1(i).unwrap();
            assert_eq!(s.rank1(i).unwrap(), expect);
            assert_eq!(r.rank1(i).unwrap(), expect);
            if m > 0 {
                let j = rng.random_range(1..=m);
                let expect = p.select1(j).unwrap();
                assert_eq!(s.select1(j).unwrap(), expect);
                assert_eq!(r.select1(j).unwrap(), expect);
            }
        }
    }
}
