use std::sync::Arc;

use proptest::prelude::*;

use tautilt::field::Fp;
use tautilt::rep::{decompose, hom_dim, hom_space_direct, is_isomorphic, projective, tau, Rep, TrialBudget};
use tautilt::samples;
use tautilt::{Algebra, BoundQuiver, Error, Field, Matrix};

type F7 = Fp<7>;

fn kronecker() -> Arc<Algebra<F7>> {
    Algebra::new(BoundQuiver::parse(samples::KRONECKER).unwrap()).unwrap()
}

fn matrix(rows: usize, cols: usize, e: &[i64]) -> Matrix<F7> {
    Matrix::from_fn(rows, cols, |r, c| F7::from_i64(e[(r * cols + c) % e.len().max(1)]))
}

/// A representation of `1 => 2` with the given dimensions and entries.
fn rep() -> impl Strategy<Value = Rep<F7>> {
    (
        0usize..3,
        0usize..3,
        proptest::collection::vec(0i64..7, 1..10),
        proptest::collection::vec(0i64..7, 1..10),
    )
        .prop_map(|(d1, d2, a, b)| {
            Rep::new(kronecker(), vec![d1, d2], vec![matrix(d2, d1, &a), matrix(d2, d1, &b)]).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_routes_agree(m in rep(), n in rep()) {
        let m = m.rehome(&kronecker());
        let n = n.rehome(m.algebra());
        let direct = hom_space_direct(&m, &n).unwrap();
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), direct.len());
        for f in direct {
            prop_assert!(f.intertwines());
        }
    }

    #[test]
    fn decomposition_splits_direct_sums(m in rep(), n in rep()) {
        let alg = kronecker();
        let (m, n) = (m.rehome(&alg), n.rehome(&alg));
        let (sum, _, _) = Rep::direct_sum(&alg, &[m.clone(), n.clone()]);
        let d = decompose(&sum, TrialBudget::default());
        // regular summands whose endomorphism field is larger than F_7
        prop_assume!(!matches!(d, Err(Error::FieldTooSmall)));
        let d = d.unwrap();
        let total: usize = d.modules().iter().map(Rep::total_dim).sum();
        prop_assert_eq!(total, sum.total_dim());
        prop_assert!(d.witness().is_iso());
        let parts = decompose(&m, TrialBudget::default()).unwrap().summands.len()
            + decompose(&n, TrialBudget::default()).unwrap().summands.len();
        prop_assert_eq!(d.summands.len(), parts);
    }

    #[test]
    fn translate_kills_projectives_only(m in rep()) {
        let alg = kronecker();
        let m = m.rehome(&alg);
        let t = tau(&m);
        prop_assume!(decompose(&m, TrialBudget::default()).is_ok());
        // over a hereditary algebra τM = 0 iff M is projective
        let proj = Rep::direct_sum(&alg, &[projective(&alg, 0), projective(&alg, 1)]).0;
        let is_proj = m.is_zero() || decompose(&m, TrialBudget::default()).unwrap().modules().iter().all(|s| {
            [projective(&alg, 0), projective(&alg, 1)]
                .iter()
                .any(|p| is_isomorphic(s, p, TrialBudget::default()).unwrap().is_iso())
        });
        prop_assert_eq!(t.is_zero(), is_proj);
        prop_assert!(hom_dim(&proj, &t).unwrap() == t.total_dim());
    }
}
