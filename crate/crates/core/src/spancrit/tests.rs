use super::*;
use crate::error::Error;
use crate::gf::{make_prime_field, Elem, Field, Poly};
use crate::linalg::Mat;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f(p: u64) -> Field {
    make_prime_field(p).unwrap()
}

fn m(field: &Field, rows: usize, cols: usize, e: &[i64]) -> Mat {
    Mat::from_ints(field, rows, cols, e)
}

fn companion(field: &Field, c: &[i64]) -> Mat {
    Mat::companion(&Poly::from_ints(field, c)).unwrap()
}

/// Every matrix of the given shape over a prime field, in counting order.
fn all_mats(field: &Field, rows: usize, cols: usize) -> Vec<Mat> {
    let q = field.order() as usize;
    let total = q.pow((rows * cols) as u32);
    (0..total)
        .map(|mut t| {
            Mat::from_fn(field, rows, cols, |_, _| {
                let e = field.from_int((t % q) as i64);
                t /= q;
                e
            })
        })
        .collect()
}

fn check_witness(a: &Mat, b: &Mat, s: &Mat, w: &Witness) {
    let ext = &w.field;
    let (a, b, s) = (
        a.embed_into(ext).unwrap(),
        b.embed_into(ext).unwrap(),
        s.embed_into(ext).unwrap(),
    );
    assert!(!w.u.is_zero() && !w.v.is_zero());
    assert_eq!(w.u.mul(&a).unwrap(), w.u.scale(w.alpha));
    assert_eq!(b.mul(&w.v).unwrap(), w.v.scale(w.beta));
    assert_eq!(
        w.u.mul(&s).unwrap().mul(&w.v).unwrap().get(0, 0),
        w.value_usv
    );
    assert!(w.value_usv.is_zero());
}

#[test]
fn build_r_small_cases() {
    let f2 = f(2);
    let i1 = Mat::identity(&f2, 1);
    assert_eq!(build_r(&i1, &i1, &i1).unwrap(), i1);
    let f3 = f(3);
    let a = Mat::random(&f3, 2, 2, &mut ChaCha8Rng::seed_from_u64(1));
    let b = Mat::random(&f3, 3, 3, &mut ChaCha8Rng::seed_from_u64(2));
    assert!(build_r(&a, &b, &Mat::zeros(&f3, 2, 3)).unwrap().is_zero());
}

#[test]
fn build_r_of_shift_example_is_identity() {
    for p in [2, 3] {
        for mm in 2..=4 {
            for nn in 2..=4 {
                let (a, b, s) = shift_example(&f(p), mm, nn);
                assert_eq!(build_r(&a, &b, &s).unwrap(), Mat::identity(&f(p), mm * nn));
            }
        }
    }
}

#[test]
fn build_r_shape_errors() {
    let f2 = f(2);
    let a = Mat::identity(&f2, 2);
    let b = Mat::identity(&f2, 3);
    assert!(matches!(
        build_r(&a, &b, &Mat::zeros(&f2, 3, 2)),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(matches!(
        build_r(&Mat::zeros(&f2, 2, 3), &b, &Mat::zeros(&f2, 2, 3)),
        Err(Error::NotSquare { .. })
    ));
    let f3 = f(3);
    assert_eq!(
        build_r(&a, &b, &Mat::zeros(&f3, 2, 3)).unwrap_err(),
        Error::FieldMismatch
    );
}

#[test]
fn span_dimension_examples() {
    let f2 = f(2);
    let (a, b, s) = shift_example(&f2, 3, 2);
    assert_eq!(span_dimension(&a, &b, &s).unwrap(), 6);
    assert_eq!(span_dimension(&a, &b, &Mat::zeros(&f2, 3, 2)).unwrap(), 0);
    let i2 = Mat::identity(&f2, 2);
    assert_eq!(span_dimension(&i2, &i2, &i2).unwrap(), 1);
}

#[test]
fn span_dimension_counts_all_powers() {
    // higher powers add nothing beyond i < m, j < n
    let f3 = f(3);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let a = Mat::random(&f3, 2, 2, &mut rng);
        let b = Mat::random(&f3, 3, 3, &mut rng);
        let s = Mat::random(&f3, 2, 3, &mut rng);
        let mut cols = Mat::zeros(&f3, 6, 0);
        for i in 0..5 {
            for j in 0..6 {
                let t = a
                    .pow(i)
                    .unwrap()
                    .mul(&s)
                    .unwrap()
                    .mul(&b.pow(j).unwrap())
                    .unwrap();
                cols = cols.hstack(&t.vec()).unwrap();
            }
        }
        assert_eq!(span_dimension(&a, &b, &s).unwrap(), cols.rank());
    }
}

#[test]
fn spans_full_examples() {
    let f2 = f(2);
    for (mm, nn) in [(2, 2), (3, 5), (4, 2)] {
        let (a, b, s) = shift_example(&f2, mm, nn);
        assert!(spans_full(&a, &b, &s).unwrap());
    }
    let (_, b, s) = shift_example(&f2, 2, 2);
    assert!(!spans_full(&Mat::identity(&f2, 2), &b, &s).unwrap());
    let one = Mat::identity(&f2, 1);
    assert!(spans_full(&Mat::zeros(&f2, 1, 1), &one, &one).unwrap());
}

#[test]
fn pbh_examples() {
    let f2 = f(2);
    let z = Mat::zeros(&f2, 2, 2);
    assert!(pbh_test(&z, &Mat::identity(&f2, 2), 2).unwrap());
    assert!(!pbh_test(&z, &m(&f2, 2, 1, &[1, 0]), 2).unwrap());
    let c = companion(&f2, &[1, 1, 1]);
    assert!(pbh_test(&c, &m(&f2, 2, 1, &[1, 0]), 2).unwrap());
    assert_eq!(
        pbh_test(&c, &m(&f2, 2, 1, &[1, 0]), 1).unwrap_err(),
        Error::DTooSmall { d: 1, min: 2 }
    );
    // the zero matrix has minimal polynomial x, so d = 1 is admissible
    assert!(pbh_test(&z, &Mat::identity(&f2, 2), 1).unwrap());
}

#[test]
fn pbh_random_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in [2, 3, 5] {
        let field = f(p);
        for _ in 0..100 {
            let pp = rand::Rng::gen_range(&mut rng, 1..=4);
            let qq = rand::Rng::gen_range(&mut rng, 1..=3);
            let h = Mat::random(&field, pp, pp, &mut rng);
            let k = Mat::random(&field, pp, qq, &mut rng);
            let min = h.minpoly().unwrap().degree().unwrap();
            for d in min..=pp {
                pbh_test(&h, &k, d).unwrap();
            }
        }
    }
}

#[test]
fn condition_c_examples() {
    let f2 = f(2);
    let (a, b, s) = shift_example(&f2, 3, 2);
    let cc = condition_c(&a, &b, &s).unwrap();
    assert!(cc.holds && cc.witness.is_none());

    let zero = Mat::zeros(&f2, 3, 2);
    let cc = condition_c(&a, &b, &zero).unwrap();
    assert!(!cc.holds);
    check_witness(&a, &b, &zero, cc.witness.as_ref().unwrap());

    let c = companion(&f2, &[1, 1, 1]);
    let i2 = Mat::identity(&f2, 2);
    let cc = condition_c(&c, &c, &i2).unwrap();
    assert!(!cc.holds);
    let w = cc.witness.unwrap();
    assert_eq!(w.field.order(), 4);
    check_witness(&c, &c, &i2, &w);
}

#[test]
fn condition_c_derogatory_witness() {
    let f3 = f(3);
    let i2 = Mat::identity(&f3, 2);
    let s = m(&f3, 2, 2, &[1, 2, 0, 1]);
    let cc = condition_c(&i2, &i2, &s).unwrap();
    assert!(!cc.holds);
    check_witness(&i2, &i2, &s, cc.witness.as_ref().unwrap());
    let b = companion(&f3, &[1, 0, 1]);
    let cc = condition_c(&b, &i2, &s).unwrap();
    check_witness(&b, &i2, &s, cc.witness.as_ref().unwrap());
}

#[test]
fn verdict_examples() {
    let f2 = f(2);
    let (a, b, s) = shift_example(&f2, 2, 2);
    let r = theorem1_verdict(&a, &b, &s).unwrap();
    assert_eq!(
        (
            r.span_dim,
            r.spans_full,
            r.a_cyclic,
            r.b_cyclic,
            r.condition_c
        ),
        (4, true, true, true, true)
    );
    assert!(r.consistency_ok && r.witness.is_none());

    let f3 = f(3);
    let i2 = Mat::identity(&f3, 2);
    let r = theorem1_verdict(&i2, &i2, &i2).unwrap();
    assert_eq!(
        (
            r.span_dim,
            r.spans_full,
            r.a_cyclic,
            r.b_cyclic,
            r.condition_c
        ),
        (1, false, false, false, false)
    );
    assert!(r.consistency_ok);
    check_witness(&i2, &i2, &i2, r.witness.as_ref().unwrap());
}

#[test]
fn verdict_exhaustive_f2_with_witnesses() {
    let f2 = f(2);
    let mats = all_mats(&f2, 2, 2);
    for a in &mats {
        for b in &mats {
            for s in &mats {
                let r = theorem1_verdict(a, b, s).unwrap();
                assert!(r.consistency_ok, "{a:?} {b:?} {s:?}");
                assert_eq!(r.witness.is_some(), !r.condition_c);
                if let Some(w) = &r.witness {
                    check_witness(a, b, s, w);
                }
            }
        }
    }
}

#[test]
fn rabs_examples() {
    let f5 = f(5);
    let a = m(&f5, 2, 2, &[1, 0, 0, 2]);
    let b = m(&f5, 3, 3, &[3, 0, 0, 0, 4, 0, 0, 0, 0]);
    let s = Mat::random(&f5, 2, 3, &mut ChaCha8Rng::seed_from_u64(3));
    assert!(
        rabs_identity_check(&a, &b, &s, &Mat::identity(&f5, 2), &Mat::identity(&f5, 3)).unwrap()
    );

    // a single pair with uSv = 0 makes both sides the zero row
    let s0 = m(&f5, 2, 3, &[0, 1, 1, 1, 1, 1]);
    let u = m(&f5, 1, 2, &[1, 0]);
    let v = m(&f5, 3, 1, &[1, 0, 0]);
    assert!(rabs_identity_check(&a, &b, &s0, &u, &v).unwrap());
    let lhs = v
        .transpose()
        .kron(&u)
        .unwrap()
        .mul(&build_r(&a, &b, &s0).unwrap())
        .unwrap();
    assert!(lhs.is_zero());

    let bad = m(&f5, 1, 2, &[1, 1]);
    let i3 = Mat::identity(&f5, 3);
    assert!(matches!(
        rabs_identity_check(&a, &b, &s0, &bad, &i3),
        Err(Error::NotEigenvectors(_))
    ));

    let f2 = f(2);
    let (a, b, s) = shift_example(&f2, 3, 2);
    let u = m(&f2, 1, 3, &[1, 0, 0]);
    let v = m(&f2, 2, 1, &[1, 0]);
    assert!(rabs_identity_check(&a, &b, &s, &u, &v).unwrap());
}

#[test]
fn rabs_over_extension() {
    let f3 = f(3);
    let a = companion(&f3, &[1, 0, 1]);
    let b = companion(&f3, &[2, 1, 1]);
    let s = m(&f3, 2, 2, &[1, 2, 0, 1]);
    let (u, v) = eigenvector_matrices(&a, &b).unwrap();
    assert_eq!(u.field().order(), 9);
    assert!(rabs_identity_check(&a, &b, &s, &u, &v).unwrap());
}

#[test]
fn gdsm_examples() {
    let f5 = f(5);
    let d = m(&f5, 2, 2, &[1, 0, 0, 2]);
    let s = m(&f5, 2, 2, &[1, 0, 0, 0]);
    assert_eq!(gdsm_dimension(&d, &d, &s).unwrap(), 1);
    assert_eq!(span_dimension(&d, &d, &s).unwrap(), 1);
    assert_eq!(gdsm_dimension(&d, &d, &Mat::zeros(&f5, 2, 2)).unwrap(), 0);
    let full = m(&f5, 2, 2, &[1, 1, 1, 1]);
    assert_eq!(gdsm_dimension(&d, &d, &full).unwrap(), 4);
    let j = m(&f5, 2, 2, &[1, 1, 0, 1]);
    assert_eq!(
        gdsm_dimension(&j, &d, &s).unwrap_err(),
        Error::NotDiagonalizableCyclic
    );
}

#[test]
fn gdsm_matches_rank_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let field = f(7);
    let mut checked = 0;
    while checked < 40 {
        let mm = rand::Rng::gen_range(&mut rng, 1..=3);
        let nn = rand::Rng::gen_range(&mut rng, 1..=3);
        let a = Mat::random(&field, mm, mm, &mut rng);
        let b = Mat::random(&field, nn, nn, &mut rng);
        let s = Mat::random(&field, mm, nn, &mut rng);
        match gdsm_dimension(&a, &b, &s) {
            Ok(d) => {
                assert_eq!(d, span_dimension(&a, &b, &s).unwrap());
                checked += 1;
            }
            Err(Error::NotDiagonalizableCyclic) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn commutator_examples() {
    let f3 = f(3);
    let a = m(&f3, 2, 2, &[0, 1, 0, 0]);
    let b = m(&f3, 2, 2, &[0, 0, 1, 0]);
    assert_eq!(commutator_2x2_test(&a, &b).unwrap(), (true, true));
    assert_eq!(commutator_2x2_test(&a, &a).unwrap(), (false, false));
    let scalar = Mat::identity(&f3, 2).scale(f3.from_int(2));
    assert_eq!(commutator_2x2_test(&scalar, &b).unwrap(), (false, false));
    assert_eq!(
        commutator_2x2_test(&Mat::identity(&f3, 3), &b).unwrap_err(),
        Error::Not2x2
    );
}

#[test]
fn irreducible_criterion_examples() {
    let f2 = f(2);
    let a = companion(&f2, &[1, 1, 1]);
    let b = companion(&f2, &[1, 1, 0, 1]);
    assert!(irreducible_criterion(&a, &b).unwrap());
    for s in all_mats(&f2, 2, 3).iter().skip(1) {
        assert!(spans_full(&a, &b, s).unwrap());
    }
    assert!(!irreducible_criterion(&a, &a).unwrap());
    assert!(all_mats(&f2, 2, 2)
        .iter()
        .skip(1)
        .any(|s| !spans_full(&a, &a, s).unwrap()));
    let one = Mat::identity(&f2, 1);
    assert!(irreducible_criterion(&one, &one).unwrap());
    assert!(matches!(
        irreducible_criterion(&Mat::identity(&f2, 2), &b),
        Err(Error::NotIrreducible(_))
    ));
}

#[test]
fn psi_examples() {
    let f3 = f(3);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = Mat::random(&f3, 2, 2, &mut rng);
    let b = Mat::random(&f3, 3, 3, &mut rng);
    let s = Mat::random(&f3, 2, 3, &mut rng);
    let e00 = Mat::unit(&f3, 2, 3, 0, 0);
    assert_eq!(psi_apply(&e00, &a, &b, &s).unwrap(), s);
    let z = Mat::zeros(&f3, 2, 3);
    assert!(psi_apply(&z, &a, &b, &s).unwrap().is_zero());
    assert!(psi_matrix(&z, &a, &b).unwrap().is_zero());
    assert!(matches!(
        psi_apply(&Mat::zeros(&f3, 3, 2), &a, &b, &s),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn psi_injective_iff_full_span() {
    let f2 = f(2);
    let mats = all_mats(&f2, 2, 2);
    let c = companion(&f2, &[1, 1, 1]);
    let (sa, sb, _) = shift_example(&f2, 2, 2);
    for (a, b) in [(&c, &c), (&sa, &sb), (&c, &sb)] {
        for s in &mats {
            let injective = mats
                .iter()
                .skip(1)
                .all(|z| !psi_apply(z, a, b, s).unwrap().is_zero());
            assert_eq!(injective, spans_full(a, b, s).unwrap());
        }
    }
}

fn sorted(field: &Field, mut v: Vec<Elem>) -> Vec<Vec<u32>> {
    v.sort_by_key(|&e| field.coeffs(e));
    v.into_iter().map(|e| field.coeffs(e)).collect()
}

#[test]
fn kron_eigenvalue_examples() {
    let f2 = f(2);
    let a = companion(&f2, &[1, 1, 1]);
    let b = companion(&f2, &[1, 1, 0, 1]);
    let (ext, vals) = kron_eigenvalue_set(&Mat::unit(&f2, 2, 3, 0, 0), &a, &b).unwrap();
    assert_eq!(ext.order(), 64);
    assert!(vals.iter().all(|&v| v == ext.one()));
    let (_, vals) = kron_eigenvalue_set(&Mat::zeros(&f2, 2, 3), &a, &b).unwrap();
    assert!(vals.iter().all(|v| v.is_zero()));

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let z = Mat::random(&f2, 2, 3, &mut rng);
        let (ext, vals) = kron_eigenvalue_set(&z, &a, &b).unwrap();
        let nonzero = vals.iter().all(|v| !v.is_zero());
        assert_eq!(nonzero, !z.is_zero());
        assert_eq!(
            nonzero,
            psi_matrix(&z, &a, &b).unwrap().right_nullspace().is_empty()
        );
        let roots = crate::gf::roots_in(&psi_matrix(&z, &a, &b).unwrap().charpoly().unwrap(), &ext)
            .unwrap();
        let expanded: Vec<Elem> = roots
            .iter()
            .flat_map(|&(r, k)| std::iter::repeat_n(r, k))
            .collect();
        assert_eq!(sorted(&ext, vals), sorted(&ext, expanded));
    }
}

fn triple_strategy() -> impl Strategy<Value = (u64, usize, usize, u64)> {
    (
        prop::sample::select(vec![2u64, 3, 5, 7]),
        1usize..=3,
        1usize..=3,
        any::<u64>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn psi_matrix_represents_psi((p, mm, nn, seed) in triple_strategy()) {
        let field = f(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::random(&field, mm, mm, &mut rng);
        let b = Mat::random(&field, nn, nn, &mut rng);
        let s = Mat::random(&field, mm, nn, &mut rng);
        let z = Mat::random(&field, mm, nn, &mut rng);
        let lhs = psi_apply(&z, &a, &b, &s).unwrap().vec();
        let rhs = psi_matrix(&z, &a, &b).unwrap().mul(&s.vec()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn span_dimension_bounded_and_consistent((p, mm, nn, seed) in triple_strategy()) {
        let field = f(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Mat::random(&field, mm, mm, &mut rng);
        let b = Mat::random(&field, nn, nn, &mut rng);
        let s = Mat::random(&field, mm, nn, &mut rng);
        let r = theorem1_verdict(&a, &b, &s).unwrap();
        prop_assert!(r.span_dim <= mm * nn);
        prop_assert_eq!(r.spans_full, r.span_dim == mm * nn);
        prop_assert!(r.consistency_ok);
        if let Some(w) = &r.witness {
            check_witness(&a, &b, &s, w);
        }
    }
}
