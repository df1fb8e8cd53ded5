use std::collections::BTreeSet;
use std::sync::Arc;

use ksbicat::algebra::Algebra;
use ksbicat::io::scramble;
use ksbicat::kstheory::{
    adjointify, frobenius_from_splitting, ks_decompose, ks_decompose_seeded, verify_direct_sum, RawDirectSum, Twist,
};
use ksbicat::linalg::{Field, Matrix, Scalar};
use proptest::prelude::*;

/// Factors with connected center, so the block count is the factor count.
#[derive(Clone, Debug)]
enum Block {
    Ground,
    Matrix(usize),
    Truncated(usize),
}

fn block() -> impl Strategy<Value = Block> {
    prop_oneof![Just(Block::Ground), (2usize..=2).prop_map(Block::Matrix), (2usize..=3).prop_map(Block::Truncated)]
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::prime(2).unwrap()), Just(Field::prime(5).unwrap())]
}

fn build(f: Field, blocks: &[Block]) -> Algebra {
    let parts: Vec<Algebra> = blocks
        .iter()
        .map(|b| match b {
            Block::Ground => Algebra::ground(f),
            Block::Matrix(n) => Algebra::matrix(f, *n).unwrap(),
            Block::Truncated(n) => Algebra::truncated_polynomial(f, *n).unwrap(),
        })
        .collect();
    Algebra::product(&parts.iter().collect::<Vec<_>>()).unwrap()
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn decomposition_finds_every_block(
        f in field(),
        blocks in prop::collection::vec(block(), 1..=3),
        seed in any::<u64>(),
    ) {
        let x = Arc::new(scramble(&build(f, &blocks), seed).unwrap());
        let d = ks_decompose(&x).unwrap();
        prop_assert!(d.complete);
        prop_assert_eq!(d.len(), blocks.len());
        let mut total = x.zero();
        for (i, e) in d.idempotents.iter().enumerate() {
            prop_assert!(x.is_idempotent(e) && x.is_central(e));
            for g in d.idempotents.iter().skip(i + 1) {
                prop_assert!(x.mul(e, g).iter().all(|c| c.is_zero()));
            }
            total = add(&total, e);
        }
        prop_assert!(x.is_unit_element(&total));
        let mut dims: Vec<usize> = d.summands().iter().map(|s| s.y.dim()).collect();
        let mut expected: Vec<usize> = blocks.iter().map(|b| match b {
            Block::Ground => 1,
            Block::Matrix(n) => n * n,
            Block::Truncated(n) => *n,
        }).collect();
        dims.sort();
        expected.sort();
        prop_assert_eq!(dims, expected);
    }

    #[test]
    fn seeded_decomposition_has_the_same_idempotents(
        f in field(),
        blocks in prop::collection::vec(block(), 1..=3),
        seed in any::<u64>(),
    ) {
        let x = Arc::new(build(f, &blocks));
        let a: BTreeSet<Vec<Scalar>> = ks_decompose(&x).unwrap().idempotents.into_iter().collect();
        let b: BTreeSet<Vec<Scalar>> = ks_decompose_seeded(&x, seed).unwrap().idempotents.into_iter().collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn every_summand_is_a_special_frobenius_splitting(f in field(), blocks in prop::collection::vec(block(), 1..=2)) {
        let x = Arc::new(build(f, &blocks));
        for s in ks_decompose(&x).unwrap().summands() {
            let fr = frobenius_from_splitting(s).unwrap();
            prop_assert!(fr.report.passed(), "{:?}", fr.report.failures());
        }
    }

    #[test]
    fn scalar_twists_are_corrected(c in 1i64..5, k in 0usize..2) {
        let f = Field::prime(5).unwrap();
        let x = Arc::new(build(f, &[Block::Ground, Block::Truncated(2)]));
        let d = ks_decompose(&x).unwrap();
        let mut raw = RawDirectSum::from_diagram(&d.diagram);
        let y = raw.summands[k].y.clone();
        let z: Vec<Scalar> = y.unit().iter().map(|u| u * &f.from_i64(c)).collect();
        raw.twist(k, &Twist::Counit(z)).unwrap();
        let broken = !verify_direct_sum(&raw.as_diagram().unwrap()).unwrap().passed();
        prop_assert_eq!(broken, c != 1);
        prop_assert!(verify_direct_sum(&adjointify(&raw).unwrap()).unwrap().passed());
    }

    #[test]
    fn inverse_and_rank_nullity(entries in prop::collection::vec(-4i64..=4, 16)) {
        let q = Field::Rationals;
        let m = Matrix::from_fn(q, 4, 4, |i, j| q.from_i64(entries[4 * i + j]));
        prop_assert_eq!(m.rank() + m.kernel().len(), 4);
        match m.inverse() {
            Some(inv) => prop_assert!((&m * &inv).is_identity() && (&inv * &m).is_identity()),
            None => prop_assert!(m.rank() < 4),
        }
    }
}
