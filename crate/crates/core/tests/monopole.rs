use std::sync::OnceLock;

use verlinde_core::closed::*;
use verlinde_core::exact::{int, YCoeff};
use verlinde_core::lattice::SurfaceLattice;
use verlinde_core::localize::EpsSpec;
use verlinde_core::monopole::*;
use verlinde_core::qseries::{coeff_at, invert_y};
use verlinde_core::toric::{fixed_points, EquivChar, HilbFixedPoint, ToricSurfaceModel};
use verlinde_core::universal::UniversalSeries;

const ORDER: usize = 4;

fn universal() -> &'static (UniversalSeries<YCoeff>, Vec<YSeries>) {
    static B: OnceLock<(UniversalSeries<YCoeff>, Vec<YSeries>)> = OnceLock::new();
    B.get_or_init(|| solve_universal_b(&MonopoleRequest { order: ORDER, seed: 7 }).unwrap())
}

fn bs() -> Vec<YSeries> {
    b_series(&universal().0).unwrap()
}

fn lat(name: &str) -> SurfaceLattice {
    SurfaceLattice::builtin(name).unwrap()
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

#[test]
fn empty_fixed_point_gives_v00() {
    let m = ToricSurfaceModel::p2();
    let e = HilbFixedPoint::empty(m.num_charts());
    let k = m.canonical();
    for b in [-2, 0, 3] {
        let beta = m.divisor(&[b]);
        let g = |d: &verlinde_core::toric::EquivDivisor, s: i64| m.rgamma(d).unwrap().twist([0, 0, s]);
        let expect = g(&beta, 0)
            .sub(&g(&m.trivial(), 0))
            .add(&g(&k.scale(2).sub(&beta), 2))
            .add(&g(&k, 1))
            .sub(&g(&beta.sub(&k), -1))
            .sub(&g(&k.sub(&beta), 1));
        assert_eq!(v_char(&m, &e, &e, &beta).unwrap(), expect, "beta = O({})", b);
        assert_eq!(gt_char(&m, &e, &e, &beta).unwrap(), EquivChar::zero());
    }
}

#[test]
fn weight_zero_part_is_the_first_two_lines() {
    let m = ToricSurfaceModel::p1xp1();
    let beta = m.divisor(&[1, 2]);
    for z0 in fixed_points(&m, 1) {
        for z1 in fixed_points(&m, 1) {
            let v = v_char(&m, &z0, &z1, &beta).unwrap();
            let fixed = v.graded_part(0);
            let o = m.trivial();
            let p = |a: &HilbFixedPoint, b: &HilbFixedPoint, d| verlinde_core::toric::ideal_pair_char(&m, a, b, d).unwrap();
            let expect = p(&z0, &z1, &beta).add(&m.rgamma(&o).unwrap()).sub(&p(&z0, &z0, &o)).sub(&p(&z1, &z1, &o));
            assert_eq!(fixed, expect);
        }
    }
}

#[test]
fn nested_class_character_has_rank_n_and_no_higher_chern_classes() {
    for m in [ToricSurfaceModel::p2(), ToricSurfaceModel::p1xp1()] {
        let classes: Vec<Vec<i64>> = if m.basis.len() == 1 { vec![vec![0], vec![1], vec![-1], vec![3]] } else { vec![vec![0, 0], vec![1, 0], vec![1, -2]] };
        for class in classes {
            let beta = m.divisor(&class);
            for n in 0..=2u32 {
                for n0 in 0..=n {
                    for z0 in fixed_points(&m, n0) {
                        for z1 in fixed_points(&m, n - n0) {
                            let gt = gt_char(&m, &z0, &z1, &beta).unwrap();
                            assert_eq!(gt.rank(), n as i64);
                            let c = chern_classes(&gt, n + 2).unwrap();
                            assert!(c[n as usize + 1].is_zero(), "{} {:?} c_{}", m.name, class, n + 1);
                            assert!(c[n as usize + 2].is_zero());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn series_are_normalized_with_laurent_coefficients() {
    let (_, zs) = universal();
    for (t, z) in reference_tuples().iter().zip(zs) {
        assert!(z.coeff1(0).is_one(), "{}", t.label());
        assert!(laurent_coefficients(z), "{}", t.label());
    }
    for b in bs() {
        assert!(b.coeff1(0).is_one());
        assert!(laurent_coefficients(&b));
    }
}

#[test]
fn specialization_independent() {
    let m = ToricSurfaceModel::p2();
    let t = MonopoleTuple::new("P2", &[-3], &[-6]);
    let req = MonopoleRequest { order: 3, seed: 0 };
    let a = z_mon_with(&m, &t, &req, &EpsSpec::new(int(1), int(3))).unwrap();
    let b = z_mon_with(&m, &t, &req, &EpsSpec::draw(99, 0)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn localized_universal_series_match_closed_forms() {
    let cs = c_from_b(&universal().0).unwrap();
    let closed = closed_c(ORDER as i64).unwrap();
    for (i, (a, b)) in cs.iter().zip(&closed).enumerate() {
        for k in 0..ORDER as i64 {
            assert_eq!(a.coeff1(k), b.coeff1(k), "C{} q^{}", i + 1, k);
        }
    }
}

#[test]
fn reconstruction_and_held_out_prediction() {
    let (b, zs) = universal();
    for (v, z) in b.vectors.iter().zip(zs) {
        assert_eq!(&b.eval_at(v).unwrap(), z);
    }
    let t = held_out_tuple();
    let m = ToricSurfaceModel::p1xp1();
    let direct = z_mon(&m, &t, &MonopoleRequest { order: 3, seed: 3 }).unwrap();
    let predicted = b.eval_at(&chern_vector(&m, &t)).unwrap();
    for k in 0..3 {
        assert_eq!(direct.coeff1(k), predicted.coeff1(k), "q^{}", k);
    }
}

#[test]
fn k3_diagonal_agrees_with_universality() {
    let b = &universal().0;
    for l2 in [0, 2, -2] {
        // (L^2, L beta, beta^2, LK, beta K, K^2, chi) for K3 with beta = 0
        let z = b.eval_at(&[l2, 0, 0, 0, 0, 0, 2]).unwrap();
        let d = k3_monopole_diagonal(l2, ORDER as i64).unwrap();
        for k in 0..ORDER as i64 {
            assert_eq!(z.coeff1(k), d.coeff1(k), "L^2 = {} q^{}", l2, k);
        }
    }
}

fn check_against_closed(s: &SurfaceLattice, l: &[i64], c1: &[i64]) {
    let b = bs();
    let cs = c_from_b(&universal().0).unwrap();
    let lc = lemma_c_series(&b, s, l, c1, 40).unwrap();
    let t1 = thm1_series(&cs, s, l, c1, 40).unwrap();
    assert_eq!(lc.hi1(), t1.hi1());
    let c3 = conj3_series(s, l, c1, lc.hi1() + 1).unwrap();
    assert!(lc.hi1() >= 4, "{}", s.name);
    for vd in lc.lo1()..=lc.hi1() {
        let a = coeff_at(&lc, vd).unwrap();
        assert_eq!(a, minus_x_coeff(&t1, vd).unwrap(), "{} vd {}", s.name, vd);
        assert_eq!(a, minus_x_coeff(&c3, vd).unwrap(), "{} vd {}", s.name, vd);
        assert_eq!(lemma_c_predict(&b, s, l, c1, vd).unwrap(), a);
    }
}

#[test]
fn lemma_c_agrees_with_closed_monopole_series() {
    for name in ["k3", "k3-blowup", "general-type-k1-chi2"] {
        let s = lat(name);
        let r = s.rank();
        let z = s.zero();
        check_against_closed(&s, &z, &z);
        check_against_closed(&s, &unit(r, 0), &s.canonical.clone());
        check_against_closed(&s, &s.canonical.clone(), &unit(r, r - 1));
    }
}

#[test]
fn k3_odd_first_chern_class_vanishes() {
    let s = lat("k3");
    let c1 = unit(s.rank(), 0);
    let l = unit(s.rank(), 1);
    let b = bs();
    let series = lemma_c_series(&b, &s, &l, &c1, 12).unwrap();
    assert!(series.is_zero());
    for vd in [-6, -2, 2, 6] {
        assert!(lemma_c_predict(&b, &s, &l, &c1, vd).unwrap().is_zero());
    }
    assert!(conj3_series(&s, &l, &c1, 24).unwrap().is_zero());
}

#[test]
fn predictions_symmetric_in_y() {
    let b = bs();
    for name in ["k3-blowup", "general-type-k1-chi2"] {
        let s = lat(name);
        let c1 = s.canonical.clone();
        let l = unit(s.rank(), 0);
        let neg: Vec<i64> = l.iter().map(|x| -x).collect();
        let z = s.zero();
        let a = lemma_c_series(&b, &s, &z, &c1, 8).unwrap();
        assert_eq!(a, invert_y(&a));
        let p = lemma_c_series(&b, &s, &l, &c1, 8).unwrap();
        let m = lemma_c_series(&b, &s, &neg, &c1, 8).unwrap();
        assert_eq!(invert_y(&p), m);
    }
}
