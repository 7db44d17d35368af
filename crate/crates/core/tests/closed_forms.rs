use verlinde_core::closed::*;
use verlinde_core::exact::{int, rat, Rat, YCoeff};
use verlinde_core::lattice::SurfaceLattice;
use verlinde_core::qseries::{coeff_at, invert_y, theta2, theta3, Grid, LogProduct};

fn lat(name: &str) -> SurfaceLattice {
    SurfaceLattice::builtin(name).unwrap()
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = 1;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A few (L, c1) pairs per lattice, including odd and non-trivial classes.
fn samples(l: &SurfaceLattice) -> Vec<(Vec<i64>, Vec<i64>)> {
    let n = l.rank();
    let z = l.zero();
    let mut out = vec![(z.clone(), z.clone()), (unit(n, 0), unit(n, n.min(2) - 1))];
    if n > 2 {
        out.push((add(&unit(n, 0), &unit(n, 1)), unit(n, n - 1)));
    }
    out.push((l.canonical.clone(), z));
    out
}

#[test]
fn jacobi_triple_product() {
    let g = Grid::new("x", 1, 50);
    let y = YCoeff::y_pow(1);
    let sum = theta3(&g, 1, 1, &y);
    let mut lp = LogProduct::new(&g);
    lp.product(|n| 2 * n, |_| YCoeff::one(), |_| int(1));
    for n in (1..).take_while(|n| 2 * n - 1 < 50) {
        lp.factor_plus(&y, 2 * n - 1, &int(1));
        lp.factor_plus(&y.inv().unwrap(), 2 * n - 1, &int(1));
    }
    assert_eq!(sum, lp.exp().unwrap());
}

#[test]
fn thetas_symmetric_in_y() {
    let g = Grid::new("x", 4, 20);
    let t2 = theta2(&g, 4, &YCoeff::h_pow(1));
    assert_eq!(invert_y(&t2), t2);
    let t3 = theta3(&g, 4, 1, &YCoeff::y_pow(1));
    assert_eq!(invert_y(&t3), t3);
}

#[test]
fn psi_examples() {
    let k3 = lat("k3");
    let z = k3.zero();
    let p = psi(&k3, &z, &z, 12).unwrap();
    let mut lp = LogProduct::new(&Grid::new("x", 1, 12));
    lp.factor(&int(1), 2, &int(-2));
    assert_eq!(p, lp.exp().unwrap());

    let mut empty = k3.clone();
    empty.sw.clear();
    assert!(psi(&empty, &z, &z, 12).unwrap().is_zero());

    // two SW classes collapse to a two-term bracket
    let gt = lat("general-type-k1-chi2");
    let l = unit(gt.rank(), 0);
    let c1 = unit(gt.rank(), 2);
    let k = gt.canonical.clone();
    let e = gt.dot(&k, &l.iter().zip(&k).map(|(a, b)| a - b).collect::<Vec<_>>());
    let g = Grid::new("x", 1, 16);
    let mut plus = LogProduct::new(&g);
    plus.factor_plus(&int(1), 1, &int(e));
    let mut minus = LogProduct::new(&g);
    minus.factor(&int(1), 1, &int(e));
    let sgn = if (gt.dot(&c1, &k) + gt.chi_o) % 2 == 0 { int(1) } else { int(-1) };
    let chi_l = Numbers::of(&gt, &l).chi_l();
    let mut b = LogProduct::new(&g);
    b.factor(&int(1), 2, &int(-chi_l));
    let expect = plus
        .exp()
        .unwrap()
        .add(&minus.exp().unwrap().scale(&sgn))
        .unwrap()
        .mul(&b.exp().unwrap())
        .unwrap()
        .scale(&verlinde_core::instanton::two_pow(2 - gt.chi_o + gt.k2()));
    assert_eq!(psi(&gt, &l, &c1, 16).unwrap(), expect);
}

#[test]
fn chi_y_series_degenerates_to_psi() {
    for name in ["k3", "k3-blowup", "general-type-k1-chi2"] {
        let s = lat(name);
        for (l, c1) in samples(&s) {
            let y0 = y0_specialize(&conj2_series(&s, &l, &c1, 20).unwrap()).unwrap();
            assert_eq!(y0, psi(&s, &l, &c1, 20).unwrap(), "{} L={:?} c1={:?}", name, l, c1);
        }
    }
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

// y <-> 1/y exchanges mu(L) with its dual, so the symmetry pairs L with -L
// and is a plain symmetry for L = O.
#[test]
fn chi_y_series_symmetric() {
    for name in ["k3", "k3-blowup", "general-type-k1-chi2", "quintic"] {
        let s = lat(name);
        for (l, c1) in samples(&s) {
            let c = conj2_series(&s, &l, &c1, 14).unwrap();
            assert_eq!(invert_y(&c), conj2_series(&s, &neg(&l), &c1, 14).unwrap(), "{} L={:?}", name, l);
        }
    }
}

#[test]
fn monopole_series_symmetric_and_k3_odd_vanishes() {
    for name in ["k3", "general-type-k1-chi2", "quintic"] {
        let s = lat(name);
        for (l, c1) in samples(&s) {
            let c = conj3_series(&s, &l, &c1, 16).unwrap();
            assert_eq!(invert_y(&c), conj3_series(&s, &neg(&l), &c1, 16).unwrap(), "{} L={:?}", name, l);
        }
    }
    let k3 = lat("k3");
    let c1 = unit(22, 0);
    assert!(conj3_series(&k3, &unit(22, 1), &c1, 24).unwrap().is_zero());
}

#[test]
fn monopole_series_matches_universal_assembly() {
    for name in ["k3", "k3-blowup", "general-type-k1-chi2", "quintic"] {
        let s = lat(name);
        let cs = closed_c(thm1_q_order(&s, 24)).unwrap();
        for (l, c1) in samples(&s) {
            let a = conj3_series(&s, &l, &c1, 24).unwrap();
            let b = thm1_series(&cs, &s, &l, &c1, 24).unwrap();
            assert_eq!(b.hi1(), 23);
            for k in a.lo1().min(b.lo1())..24 {
                assert_eq!(coeff_at(&a, k).unwrap(), coeff_at(&b, k).unwrap(), "{} L={:?} c1={:?} x^{}", name, l, c1, k);
            }
        }
    }
}

#[test]
fn k3_diagonal_gives_c1_c3() {
    let (c1, c3) = k3_diagonal_c1_c3(24).unwrap();
    let cs = closed_c(24).unwrap();
    assert_eq!(c1, cs[0]);
    assert_eq!(c3, cs[2]);
    let (r1, r3) = higher_rank_c1_c3(2, 24).unwrap();
    assert_eq!(r1, cs[0]);
    assert_eq!(r3, cs[2]);
}

#[test]
fn k3_instanton_first_coefficient() {
    let s = k3_instanton_series(0, 4).unwrap();
    let expect = YCoeff::from_int(20).add(&YCoeff::y_pow(1).scale(&int(2))).add(&YCoeff::y_pow(-1).scale(&int(2)));
    assert_eq!(s.coeff1(1), expect);
}

#[test]
fn higher_rank_leading_term() {
    // C3^(r) = 1 + (r^2/2) (y^r + y^{-r} - 2) q^r + ...
    for r in 2..=4 {
        let (_, c3) = higher_rank_c1_c3(r, r + 1).unwrap();
        let yr = YCoeff::y_pow(r).add(&YCoeff::y_pow(-r));
        let expect = yr.sub(&YCoeff::from_int(2)).scale(&rat(r * r, 2));
        assert_eq!(c3.coeff1(r), expect);
    }
}

#[test]
fn limit_identities_hold() {
    for (name, lhs, rhs) in limit_identities(30).unwrap() {
        assert_eq!(lhs, rhs, "{}", name);
    }
}

#[test]
fn general_type_residue_classes() {
    for name in ["general-type-k1-chi2", "quintic"] {
        let s = lat(name);
        for (l, c1) in samples(&s) {
            let p = psi(&s, &l, &c1, 24).unwrap();
            let f = phi_general_type(&s, &l, 24).unwrap();
            assert_eq!(vd_progression(&p, &s, &c1).unwrap(), vd_progression(&f, &s, &c1).unwrap(), "{}", name);
        }
    }
}

/// `sum_k i^{k c} f(i^k x) / 4` on the coefficient list.
fn root_of_unity_average(f: &verlinde_core::closed::XSeries, c: i64) -> Vec<Rat> {
    // i^m as (re, im)
    let ipow = |m: i64| match m.rem_euclid(4) {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    };
    (0..=f.hi1())
        .map(|n| {
            let (mut re, mut im) = (0, 0);
            for k in 0..4 {
                let (a, b) = ipow(k * c + k * n);
                re += a;
                im += b;
            }
            assert_eq!(im, 0);
            f.coeff1(n) * rat(re, 4)
        })
        .collect()
}

#[test]
fn progression_is_root_of_unity_average() {
    let s = lat("general-type-k1-chi2");
    let l = unit(s.rank(), 0);
    let c1 = unit(s.rank(), 3);
    let p = psi(&s, &l, &c1, 24).unwrap();
    let c = s.dot(&c1, &c1) + 3 * s.chi_o;
    let avg = root_of_unity_average(&p, c);
    let filt = vd_progression(&p, &s, &c1).unwrap();
    for (n, v) in avg.iter().enumerate() {
        assert_eq!(*v, filt.coeff1(n as i64));
    }
}

#[test]
fn blowup_relation() {
    for name in ["k3", "general-type-k1-chi2"] {
        let base = lat(name);
        let up = base.blow_up();
        for (l, c1) in samples(&base) {
            for ell in -1..=2 {
                for k in 0..=1 {
                    let lt: Vec<i64> = l.iter().copied().chain([-ell]).collect();
                    let ct: Vec<i64> = c1.iter().copied().chain([-k]).collect();
                    let lhs = psi(&up, &lt, &ct, 20).unwrap();
                    let rhs = blowup_factor(ell, k, 20).unwrap().mul(&psi(&base, &l, &c1, 20).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{} l={} k={}", name, ell, k);
                }
            }
        }
    }
}

#[test]
fn blowup_sw_transform() {
    let up = lat("k3").blow_up();
    assert_eq!(up.sw.len(), 2);
    assert_eq!(up.sw_value(&up.zero()), 1);
    assert_eq!(up.sw_value(&unit(23, 22)), 1);
    assert_eq!(up, SurfaceLattice { name: up.name.clone(), ..lat("k3-blowup") });
}

#[test]
fn disconnected_canonical_divisor() {
    let gram = vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]];
    let c = (vec![1, 0, 0, 0], 1);
    let d = (vec![0, 0, 1, 0], 0);
    for curves in [vec![c.clone()], vec![c, d]] {
        let s = SurfaceLattice::disconnected_canonical("t", 3, gram.clone(), &curves).unwrap();
        for l in [vec![0, 0, 0, 0], vec![0, 1, 0, 2], vec![1, 1, 0, 1]] {
            for c1 in [vec![0, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 1, 0, 1]] {
                let a = disconnected_formula(&s, &curves, &l, &c1, 20).unwrap();
                assert_eq!(a, psi(&s, &l, &c1, 20).unwrap());
            }
        }
    }
    let bad = SurfaceLattice::disconnected_canonical("t", 3, gram, &[(vec![1, 0, 0, 0], 0), (vec![0, 1, 0, 0], 0)]);
    assert!(bad.is_err());
}

#[test]
fn gn_without_l_dependence_at_zero_weight() {
    let s = lat("general-type-k1-chi2");
    let z = s.zero();
    let a = gn_series(&s, &unit(s.rank(), 0), &int(0), &z, 16).unwrap();
    let b = gn_series(&s, &z, &int(1), &z, 16).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.coeff1(0), verlinde_core::instanton::two_pow(2 - s.chi_o + s.k2()) * int(2));
}
