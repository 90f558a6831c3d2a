use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::field::Rational;
use crate::quiver::BoundQuiver;
use crate::samples;

type Q = Rational;

fn alg(text: &str) -> Arc<Algebra<Q>> {
    Algebra::new(BoundQuiver::parse(text).unwrap()).unwrap()
}

fn m(rows: &[&[i64]]) -> Matrix<Q> {
    Matrix::from_i64(rows)
}

fn rep(alg: &Arc<Algebra<Q>>, dims: &[usize], maps: Vec<Matrix<Q>>) -> Rep<Q> {
    Rep::new(alg.clone(), dims.to_vec(), maps).unwrap()
}

fn iso(a: &Rep<Q>, b: &Rep<Q>) -> bool {
    is_isomorphic(a, b, TrialBudget::default()).unwrap().is_iso()
}

#[test]
fn projectives_of_the_example() {
    let a = alg(samples::EXAMPLE);
    let dims: Vec<Vec<usize>> = (0..4).map(|x| projective(&a, x).dims().to_vec()).collect();
    assert_eq!(
        dims,
        vec![vec![1, 1, 1, 2], vec![0, 1, 1, 1], vec![0, 0, 1, 1], vec![0, 0, 0, 1]]
    );
    assert_eq!(projective(&alg(samples::DUAL_NUMBERS), 0).total_dim(), 2);
    assert_eq!(projective(&alg(samples::A2), 1).dims(), &[0, 1]);
}

#[test]
fn relations_are_checked() {
    let a = alg(samples::DUAL_NUMBERS);
    assert!(Rep::new(a.clone(), vec![1], vec![m(&[&[1]])]).is_err());
    assert!(Rep::new(a.clone(), vec![2], vec![m(&[&[0, 1], &[0, 0]])]).is_ok());
    assert!(Rep::new(a, vec![2], vec![m(&[&[1]])]).is_err());
}

#[test]
fn hom_dimensions() {
    let a = alg(samples::EXAMPLE);
    let p1 = projective(&a, 0);
    assert_eq!(hom_dim(&p1, &p1).unwrap(), 1);
    let a2 = alg(samples::A2);
    let s1 = Rep::simple(a2.clone(), 0);
    let s2 = Rep::simple(a2.clone(), 1);
    assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
    assert_eq!(hom_dim(&projective(&a2, 1), &projective(&a2, 0)).unwrap(), 1);
    assert!(hom_space(&s1, &Rep::simple(a, 0)).is_err());
}

#[test]
fn projectives_probe_dimensions() {
    let a = alg(samples::EXAMPLE);
    let mods: Vec<Rep<Q>> = (0..4)
        .flat_map(|x| {
            [
                projective(&a, x),
                Rep::simple(a.clone(), x),
                tau(&Rep::simple(a.clone(), x)),
            ]
        })
        .collect();
    for mm in &mods {
        for x in 0..4 {
            assert_eq!(hom_dim(&projective(&a, x), mm).unwrap(), mm.dim_at(x));
        }
    }
}

#[test]
fn hom_routes_agree_on_the_example() {
    let a = alg(samples::EXAMPLE);
    let mut mods = Vec::new();
    for x in 0..4 {
        let p = projective(&a, x);
        mods.push(tau_inverse(&Rep::simple(a.clone(), x)));
        mods.push(dual(&projective(&a.opposite(), x)).rehome(&a));
        mods.push(p);
    }
    for x in &mods {
        for y in &mods {
            let fast = hom_space(x, y).unwrap();
            assert_eq!(fast.len(), hom_space_direct(x, y).unwrap().len());
            assert!(fast.iter().all(RepMap::intertwines));
        }
    }
}

#[test]
fn exact_sequences() {
    let a = alg(samples::A2);
    let f = hom_space(&projective(&a, 1), &projective(&a, 0)).unwrap().remove(0);
    let c = f.cokernel();
    assert_eq!(c.module.dims(), &[1, 0]);
    assert!(c.map.is_epi() && c.map.after(&f).is_zero());
    assert!(f.kernel().module.is_zero());
    let id = RepMap::identity(&projective(&a, 0));
    assert!(id.kernel().module.is_zero() && id.cokernel().module.is_zero());
    let z = RepMap::zero(projective(&a, 0), projective(&a, 1));
    assert_eq!(z.kernel().module.dims(), &[1, 1]);
    assert!(z.image().module.is_zero());
}

#[test]
fn radical_and_top() {
    let a = alg(samples::EXAMPLE);
    for x in 0..4 {
        let rt = projective(&a, x).radical_top();
        let mut unit = vec![0; 4];
        unit[x] = 1;
        assert_eq!(rt.top.module.dims(), unit.as_slice());
        assert!(rt.top.module.maps().iter().all(Matrix::is_zero));
        assert!(Rep::simple(a.clone(), x).radical_top().radical.module.is_zero());
    }
    let d = projective(&alg(samples::DUAL_NUMBERS), 0);
    assert_eq!(d.radical_top().radical.module.total_dim(), 1);
}

#[test]
fn presentations() {
    let a = alg(samples::A2);
    let p = min_proj_presentation(&Rep::simple(a.clone(), 0));
    assert_eq!((p.p0.clone(), p.p1.clone()), (vec![0], vec![1]));
    assert!(p.cover.after(&p.map).is_zero() && p.cover.is_epi());
    let proj = min_proj_presentation(&projective(&a, 0));
    assert!(proj.p1.is_empty());
    let d = alg(samples::DUAL_NUMBERS);
    let s = min_proj_presentation(&Rep::simple(d, 0));
    assert_eq!((s.p0.len(), s.p1.len()), (1, 1));
    // image in the radical of P0
    let e = alg(samples::EXAMPLE);
    let mm = tau_inverse(&Rep::simple(e.clone(), 3));
    let pr = min_proj_presentation(&mm);
    let rad = pr.map.target.radical_bases();
    for x in 0..4 {
        let img = pr.map.comp(x);
        let both = Matrix::hstack(&[&rad[x], img], img.rows());
        assert_eq!(both.rank(), rad[x].cols());
    }
    assert!(pr.cover.after(&pr.map).is_zero());
    assert_eq!(pr.map.cokernel().module.dims(), mm.dims());
}

#[test]
fn transposes_and_translates() {
    let a = alg(samples::A2);
    let s1 = Rep::simple(a.clone(), 0);
    let s2 = Rep::simple(a.clone(), 1);
    assert!(transpose(&projective(&a, 0)).is_zero());
    assert!(tau(&projective(&a, 1)).is_zero());
    assert!(iso(&tau(&s1), &s2));
    let tr = transpose(&s1);
    assert_eq!(tr.dims(), &[0, 1]);
    assert!(iso(&transpose(&tr).rehome(&a), &s1));
    let d = alg(samples::DUAL_NUMBERS);
    let s = Rep::simple(d, 0);
    assert!(iso(&tau(&s), &s));
    assert!(dual(&Rep::zero(a.clone())).is_zero());
}

#[test]
fn kronecker_preprojectives() {
    let k = alg(samples::KRONECKER);
    let p2 = projective(&k, 1);
    let p1 = projective(&k, 0);
    assert_eq!(p1.dims(), &[1, 2]);
    let m3 = tau_inverse(&p2);
    let m4 = tau_inverse(&p1);
    assert_eq!(m3.dims(), &[2, 3]);
    assert_eq!(m4.dims(), &[3, 4]);
    assert!(iso(&tau(&m3), &p2));
    assert!(iso(&tau(&m4), &p1));
    assert!(iso(&tau(&tau_inverse(&m3)), &m3));
}

#[test]
fn decomposition_and_witness() {
    let a = alg(samples::A2);
    let (s, _, _) = Rep::direct_sum(&a, &[Rep::simple(a.clone(), 0), Rep::simple(a.clone(), 1)]);
    assert_eq!(decompose(&s, TrialBudget::default()).unwrap().summands.len(), 2);
    let d = projective(&alg(samples::DUAL_NUMBERS), 0);
    assert_eq!(decompose(&d, TrialBudget::default()).unwrap().summands.len(), 1);

    let (sum, _, _) = Rep::direct_sum(
        &a,
        &[projective(&a, 0), Rep::simple(a.clone(), 0), Rep::simple(a.clone(), 0)],
    );
    let change = vec![m(&[&[1, 2, 1], &[0, 1, 3], &[1, 1, 1]]), m(&[&[2]])];
    let mixed = sum.conjugate(&change).unwrap();
    let dec = decompose(&mixed, TrialBudget::default()).unwrap();
    assert_eq!(dec.summands.len(), 3);
    let w = dec.witness();
    assert!(w.intertwines() && w.is_iso());
    let mut grouped: Vec<(Vec<usize>, usize)> = dec
        .grouped()
        .unwrap()
        .into_iter()
        .map(|(r, k)| (r.dims().to_vec(), k))
        .collect();
    grouped.sort();
    assert_eq!(grouped, vec![(vec![1, 0], 2), (vec![1, 1], 1)]);
}

#[test]
fn isomorphism_tests() {
    let a = alg(samples::A2);
    let p1 = projective(&a, 0);
    match is_isomorphic(&p1, &p1, TrialBudget::default()).unwrap() {
        IsoResult::Iso(f) => assert!(f.is_iso() && f.intertwines()),
        IsoResult::NotIso(_) => panic!("identity"),
    }
    assert!(!iso(&Rep::simple(a.clone(), 0), &Rep::simple(a.clone(), 1)));
    let (split, _, _) = Rep::direct_sum(&a, &[Rep::simple(a.clone(), 0), Rep::simple(a.clone(), 1)]);
    assert!(!iso(&split, &p1));
    let k = alg(samples::KRONECKER);
    let band = |l: i64| rep(&k, &[1, 1], vec![m(&[&[1]]), m(&[&[l]])]);
    assert!(!iso(&band(0), &band(1)));
    let e = alg(samples::EXAMPLE);
    let x = tau_inverse(&Rep::simple(e.clone(), 3));
    let change: Vec<Matrix<Q>> = x
        .dims()
        .iter()
        .map(|&d| {
            Matrix::from_fn(d, d, |r, c| {
                Q::from_i64(if r <= c { 1 + (r + 2 * c) as i64 } else { 0 })
            })
        })
        .collect();
    assert!(iso(&x, &x.conjugate(&change).unwrap()));
}

#[test]
fn factor_modules() {
    let a = alg(samples::A2);
    let p1 = projective(&a, 0);
    let s1 = Rep::simple(a.clone(), 0);
    assert!(fac_contains(std::slice::from_ref(&p1), &p1).unwrap());
    assert!(fac_contains(std::slice::from_ref(&p1), &s1).unwrap());
    assert!(!fac_contains(&[s1], &p1).unwrap());
}

#[test]
fn left_approximations() {
    let a = alg(samples::A2);
    let p1 = projective(&a, 0);
    let p2 = projective(&a, 1);
    let f = min_left_approx(&p2, std::slice::from_ref(&p1)).unwrap();
    assert_eq!(f.copies, vec![0]);
    assert_eq!(f.map.cokernel().module.dims(), &[1, 0]);
    let g = min_left_approx(&p1, &[p1.clone(), p2.clone()]).unwrap();
    assert_eq!(g.copies, vec![0]);
    assert!(g.map.is_mono());
    let z = min_left_approx(&p1, &[p2]).unwrap();
    assert!(z.target().is_zero());

    // minimality on a module with several maps to the same target
    let e = alg(samples::EXAMPLE);
    let x = projective(&e, 3);
    let us = [projective(&e, 0), projective(&e, 1), projective(&e, 2)];
    let ap = min_left_approx(&x, &us).unwrap();
    assert_eq!(ap.copies, vec![1, 2]);
    for u in &us {
        for h in hom_space(&x, u).unwrap() {
            let fs = hom_space(ap.target(), u).unwrap();
            let span: Vec<Vec<Q>> = fs.iter().map(|g| g.after(&ap.map).flatten()).collect();
            let cols = Matrix::from_rows(span, h.flatten().len()).transpose();
            assert!(cols.solve(&Matrix::column_vector(h.flatten())).is_some());
        }
    }
}

#[test]
fn module_text_round_trip() {
    let a = alg(samples::EXAMPLE);
    let text = "module over example.alg\ndim 1 1\ndim 2 1\ndim 4 1\nmap a 1\nmap e 2/3\n";
    assert_eq!(module_header(text).unwrap(), "example.alg");
    let x = parse_module(text, &a).unwrap();
    assert_eq!(x.dims(), &[1, 1, 0, 1]);
    let back = parse_module(&format_module(&x, "example.alg"), &a).unwrap();
    assert!(back.same_as(&x));
    assert!(parse_module("dim 2 1\ndim 3 1\nmap b 1\ndim 1 1\nmap a 1\n", &a).is_err());
    let err = parse_module("dim 1 1\ndim 2 1\nmap a x\n", &a).unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, col: 7, .. }));
}

/// Over `1 -> 2` a representation is classified by its dimension vector and
/// the rank of its matrix.
#[test]
fn a2_classification_by_rank() {
    let a = alg(samples::A2);
    let mut reps = Vec::new();
    for d1 in 0..=2usize {
        for d2 in 0..=2usize {
            for seed in 0..4i64 {
                let mat = Matrix::from_fn(d2, d1, |r, c| {
                    Q::from_i64((seed * (r as i64 + 1) + c as i64 * seed * seed) % 3)
                });
                let rk = mat.rank();
                reps.push(((d1, d2, rk), rep(&a, &[d1, d2], vec![mat])));
            }
        }
    }
    for (ka, ra) in &reps {
        let dec = decompose(ra, TrialBudget::default()).unwrap();
        assert_eq!(dec.summands.len(), ka.0 + ka.1 - ka.2);
        for (kb, rb) in &reps {
            assert_eq!(iso(ra, rb), ka == kb, "{ka:?} vs {kb:?}");
        }
    }
}

fn a3_rep() -> impl Strategy<Value = (Vec<usize>, Vec<Vec<i64>>)> {
    prop::collection::vec(0usize..3, 3).prop_flat_map(|dims| {
        let sizes = vec![dims[1] * dims[0], dims[2] * dims[1]];
        let entries = sizes
            .into_iter()
            .map(|n| prop::collection::vec(-2i64..3, n))
            .collect::<Vec<_>>();
        (Just(dims), entries)
    })
}

fn build_a3(a: &Arc<Algebra<Q>>, dims: &[usize], e: &[Vec<i64>]) -> Rep<Q> {
    let ma = Matrix::from_fn(dims[1], dims[0], |r, c| Q::from_i64(e[0][r * dims[0] + c]));
    let mb = Matrix::from_fn(dims[2], dims[1], |r, c| Q::from_i64(e[1][r * dims[1] + c]));
    rep(a, dims, vec![ma, mb])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn hom_routes_agree((d1, e1) in a3_rep(), (d2, e2) in a3_rep()) {
        let a = alg(samples::A3);
        let x = build_a3(&a, &d1, &e1);
        let y = build_a3(&a, &d2, &e2);
        let fast = hom_space(&x, &y).unwrap();
        prop_assert_eq!(fast.len(), hom_space_direct(&x, &y).unwrap().len());
        prop_assert!(fast.iter().all(RepMap::intertwines));
    }

    #[test]
    fn decomposition_resums((d, e) in a3_rep()) {
        let a = alg(samples::A3);
        let x = build_a3(&a, &d, &e);
        let dec = decompose(&x, TrialBudget::default()).unwrap();
        let w = dec.witness();
        prop_assert!(w.intertwines() && w.is_iso());
        let t = tau(&x);
        let parts: Vec<Rep<Q>> = dec.modules().iter().map(tau).collect();
        let (sum, _, _) = Rep::direct_sum(&a, &parts);
        prop_assert!(iso(&t, &sum));
    }
}
