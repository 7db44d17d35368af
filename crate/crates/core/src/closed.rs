//! Closed-form generating functions in `x` (and `q = x^4` for the monopole
//! universal series): the K-theoretic Donaldson series `psi`, its chi_y
//! refinement, the Higgs monopole series, the twisted chi_y product of
//! Hilbert schemes and the specializations built from them.

use crate::error::{Error, Result};
use crate::exact::{int, rat, Coeff, Rat, YCoeff};
use crate::instanton::two_pow;
use crate::lattice::SurfaceLattice;
use crate::qseries::{self, coeff_at, eta_bar, rename, rescale, theta2, theta2_reduced, theta3, Grid, LogProduct};
use crate::series::TruncatedSeries;

pub type XSeries = TruncatedSeries<Rat>;
pub type YSeries = TruncatedSeries<YCoeff>;

fn h(k: i64) -> YCoeff {
    YCoeff::h_pow(k)
}

fn sign(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Intersection numbers entering every formula.
#[derive(Clone, Copy, Debug)]
pub struct Numbers {
    pub chi: i64,
    pub k2: i64,
    pub l2: i64,
    pub lk: i64,
}

impl Numbers {
    pub fn of(lat: &SurfaceLattice, l: &[i64]) -> Self {
        Numbers { chi: lat.chi_o, k2: lat.k2(), l2: lat.dot(l, l), lk: lat.dot(l, &lat.canonical) }
    }

    /// `chi(L) = (L^2 - LK)/2 + chi(O)`.
    pub fn chi_l(&self) -> i64 {
        (self.l2 - self.lk) / 2 + self.chi
    }
}

fn check(lat: &SurfaceLattice, l: &[i64], c1: &[i64]) -> Result<()> {
    lat.check_class(l)?;
    lat.check_class(c1)
}

/// `sum_a SW(a) (-1)^{a c1} (1+x)^{(K-a)(L-K)} (1-x)^{a(L-K)}` times
/// `2^{2-chi+K^2} (1-x^2)^{-chi(L)}`, modulo `x^n`.
pub fn psi(lat: &SurfaceLattice, l: &[i64], c1: &[i64], n: i64) -> Result<XSeries> {
    check(lat, l, c1)?;
    let g = Grid::new("x", 1, n);
    let num = Numbers::of(lat, l);
    let lk = sub(l, &lat.canonical);
    let mut acc = g.zero();
    for (a, v) in &lat.sw {
        let mut lp = LogProduct::new(&g);
        lp.factor_plus(&int(1), 1, &int(lat.dot(&sub(&lat.canonical, a), &lk)));
        lp.factor(&int(1), 1, &int(lat.dot(a, &lk)));
        lp.factor(&int(1), 2, &int(-num.chi_l()));
        acc = acc.add(&lp.exp()?.scale(&(sign(lat.dot(a, c1)) * int(*v))))?;
    }
    Ok(acc.scale(&two_pow(2 - num.chi + num.k2)))
}

/// `2^{3-chi+K^2} (1+x)^{K(L-K)} / (1-x^2)^{chi(L)}`.
pub fn phi_general_type(lat: &SurfaceLattice, l: &[i64], n: i64) -> Result<XSeries> {
    lat.check_class(l)?;
    let g = Grid::new("x", 1, n);
    let num = Numbers::of(lat, l);
    let mut lp = LogProduct::new(&g);
    lp.factor_plus(&int(1), 1, &int(lat.dot(&lat.canonical, &sub(l, &lat.canonical))));
    lp.factor(&int(1), 2, &int(-num.chi_l()));
    Ok(lp.exp()?.scale(&two_pow(3 - num.chi + num.k2)))
}

/// Coefficients with `n = -(c1^2 + 3 chi) mod 4`, the only degrees that are
/// virtual dimensions for this `c1`.
pub fn vd_progression(s: &XSeries, lat: &SurfaceLattice, c1: &[i64]) -> Result<XSeries> {
    s.extract_progression("x", 4, -(lat.dot(c1, c1) + 3 * lat.chi_o))
}

/// Multiplies by `2 log(1 - z m) - log(1 - y z m) - log(1 - z m / y)` type
/// blocks: `w * (2 log(1-u) - log(1-u y) - log(1-u/y))` with `u = var^m`.
fn add_hilb_block(lp: &mut LogProduct<YCoeff>, y: &YCoeff, m: i64, w: &Rat) {
    lp.factor(&YCoeff::one(), m, &(w * int(2)));
    lp.factor(y, m, &-w.clone());
    lp.factor(&y.inv().unwrap(), m, &-w.clone());
}

/// `w * (log(1 - u/y) - log(1 - u y))`.
fn add_ratio_minus(lp: &mut LogProduct<YCoeff>, y: &YCoeff, m: i64, w: &Rat) {
    lp.factor(&y.inv().unwrap(), m, w);
    lp.factor(y, m, &-w.clone());
}

/// `w * (log(1 + u/y) - log(1 + u y))`.
fn add_ratio_plus(lp: &mut LogProduct<YCoeff>, y: &YCoeff, m: i64, w: &Rat) {
    lp.factor_plus(&y.inv().unwrap(), m, w);
    lp.factor_plus(y, m, &-w.clone());
}

/// The chi_y refinement of `psi` as a series in `x` with coefficients in
/// `Q(y^{1/2})`, modulo `x^n`.
pub fn conj2_series(lat: &SurfaceLattice, l: &[i64], c1: &[i64], n: i64) -> Result<YSeries> {
    check(lat, l, c1)?;
    let g = Grid::new("x", 1, n);
    let num = Numbers::of(lat, l);
    let y = h(2);
    let mut lp = LogProduct::new(&g);
    for k in (1..).take_while(|k| 2 * k <= g.hi) {
        let m = 2 * k;
        lp.factor(&YCoeff::one(), m, &int(-10 * num.chi));
        lp.factor(&y, m, &int(-num.chi));
        lp.factor(&y.inv().unwrap(), m, &int(-num.chi));
        add_hilb_block(&mut lp, &y, m, &(rat(num.l2, 2) * int(k * k)));
        add_ratio_minus(&mut lp, &y, m, &int(num.lk * k));
    }
    let th = theta3(&g, 1, 1, &h(1));
    let th_neg = theta3(&g, 1, -1, &h(1));
    let eta4 = eta_bar::<YCoeff>(&g, 4)?.pow_int(2)?;
    let k2_part = eta4.mul(&th.invert()?)?.pow_int(num.k2)?;
    let pre = YCoeff::from_rat(two_pow(2 - num.chi + num.k2));
    let common = lp.exp()?.mul(&k2_part)?.scale(&pre);

    let ratio = th.mul(&th_neg.invert()?)?;
    let mut acc = g.zero();
    for (a, v) in &lat.sw {
        let mut la = LogProduct::new(&g);
        let w = rat(lat.dot(l, &sub(&lat.canonical, &a.iter().map(|x| 2 * x).collect::<Vec<_>>())), 2);
        for k in (1..).take_while(|k| 2 * k - 1 <= g.hi) {
            let m = 2 * k - 1;
            let wk = &w * int(m);
            la.factor(&h(1), m, &wk);
            la.factor_plus(&h(-1), m, &wk);
            la.factor(&h(-1), m, &-wk.clone());
            la.factor_plus(&h(1), m, &-wk.clone());
        }
        let t = ratio.pow_int(lat.dot(a, &lat.canonical))?.mul(&la.exp()?)?;
        acc = acc.add(&t.scale(&YCoeff::from_rat(sign(lat.dot(c1, a)) * int(*v))))?;
    }
    common.mul(&acc)
}

/// `x -> x y^{1/2}` followed by `y = 0`.
pub fn y0_specialize(s: &YSeries) -> Result<XSeries> {
    let mut out = TruncatedSeries::zero(s.vars().to_vec(), s.window().to_vec());
    for (e, c) in s.terms() {
        let v = c
            .mul(&h(e[0]))
            .eval_at_zero()
            .ok_or_else(|| Error::DegenerateSpecialization(format!("pole at y = 0 in degree {}", e[0])))?;
        out.add_term(e.clone(), v);
    }
    Ok(out)
}

/// Extra exact degrees needed so that Laurent prefactors of total order
/// `-shift` still leave `x^{n-1}` exact.
pub fn monopole_shift(lat: &SurfaceLattice) -> i64 {
    let max_ak = lat.sw.iter().map(|(a, _)| (lat.dot(a, &lat.canonical)).abs()).max().unwrap_or(0);
    3 * lat.chi_o.abs() + 2 * lat.k2().abs() + 2 * max_ak + 4
}

/// The Higgs monopole series in `x`, modulo `x^n`; the invariant in virtual
/// dimension `vd` is its coefficient of `(-x)^{vd}`.
pub fn conj3_series(lat: &SurfaceLattice, l: &[i64], c1: &[i64], n: i64) -> Result<YSeries> {
    check(lat, l, c1)?;
    let g = Grid::new("x", 1, n).extended(monopole_shift(lat));
    let num = Numbers::of(lat, l);
    let (y, y2) = (h(2), h(4));
    let mut lp = LogProduct::new(&g);
    for k in (1..).take_while(|k| 4 * k <= g.hi) {
        if 8 * k <= g.hi {
            lp.factor(&YCoeff::one(), 8 * k, &int(-10 * num.chi));
            lp.factor(&y2, 8 * k, &int(-num.chi));
            lp.factor(&y2.inv().unwrap(), 8 * k, &int(-num.chi));
            add_hilb_block(&mut lp, &y2, 8 * k, &int(2 * num.l2 * k * k));
        }
        add_ratio_minus(&mut lp, &y, 4 * k, &int(2 * num.lk * k));
    }
    let th2 = theta2(&g, 4, &h(1));
    let th3 = theta3(&g, 4, 1, &y);
    let eta4 = eta_bar::<YCoeff>(&g, 4)?.pow_int(2)?;
    let common = lp.exp()?.mul(&eta4.mul(&th2.invert()?)?.pow_int(num.k2)?)?;
    let ratio = th2.mul(&th3.invert()?)?;

    let mut acc: Option<YSeries> = None;
    for (a, v) in &lat.sw {
        if lat.delta(c1, &sub(&lat.canonical, a)) == 0 {
            continue;
        }
        let al = lat.dot(a, l);
        let mut la = LogProduct::new(&g);
        for k in (1..).take_while(|k| 4 * k <= g.hi) {
            if 8 * k - 4 <= g.hi {
                add_ratio_plus(&mut la, &y, 8 * k - 4, &int(2 * al * (2 * k - 1)));
            }
            if 8 * k <= g.hi {
                add_ratio_plus(&mut la, &y, 8 * k, &int(4 * (num.lk - al) * k));
            }
            add_ratio_plus(&mut la, &y, 4 * k, &int(num.lk * k));
        }
        let ka = h(1).add(&h(-1)).pow_i(-num.chi).unwrap().mul(&h(al - num.lk)).mul(&YCoeff::from_int(*v));
        let t = ratio.pow_int(lat.dot(a, &lat.canonical))?.mul(&la.exp()?)?.scale(&ka).shift_exps(&[-3 * num.chi]);
        acc = Some(match acc {
            None => t,
            Some(s) => s.add(&t)?,
        });
    }
    match acc {
        None => Ok(Grid::new("x", 1, n).zero()),
        Some(s) => Ok(common.mul(&s)?.truncate(&[n - 1])),
    }
}

/// Coefficient of `(-x)^{vd}`.
pub fn minus_x_coeff(s: &YSeries, vd: i64) -> Result<YCoeff> {
    let c = coeff_at(s, vd)?;
    Ok(if vd % 2 == 0 { c } else { c.neg() })
}

/// The six monopole universal series in closed form, as series in `q`
/// modulo `q^n`: `[C1, ..., C6]`.
pub fn closed_c(n: i64) -> Result<Vec<YSeries>> {
    let g = Grid::new("q", 1, n);
    let (y, y2) = (h(2), h(4));
    let mut c1 = LogProduct::new(&g);
    let mut c3 = LogProduct::new(&g);
    let mut c4 = LogProduct::new(&g);
    let mut c6 = LogProduct::new(&g);
    for k in (1..).take_while(|k| *k <= g.hi) {
        let m2 = 2 * k;
        if m2 <= g.hi {
            c1.factor(&YCoeff::one(), m2, &int(-10));
            c1.factor(&y2, m2, &int(-1));
            c1.factor(&y2.inv().unwrap(), m2, &int(-1));
            add_hilb_block(&mut c3, &y2, m2, &int(2 * k * k));
            add_ratio_minus(&mut c4, &y2, m2, &int(k));
            add_ratio_plus(&mut c4, &y, m2, &int(4 * k));
        }
        add_ratio_minus(&mut c4, &y, k, &int(k));
        let alt = YCoeff::from_rat(sign(k));
        add_ratio_minus(&mut c6, &y.mul(&alt), k, &int(2 * k));
        // (1 - q^{4k} y^2)/(1 - q^{4k} y^{-2}) is the inverse orientation.
        if 4 * k <= g.hi {
            add_ratio_minus(&mut c6, &y2, 4 * k, &int(-4 * k));
        }
    }
    let th2 = theta2_reduced(&g, 1, &h(1))?;
    let th3 = theta3(&g, 1, 1, &y);
    let eta2 = eta_bar::<YCoeff>(&g, 1)?.pow_int(2)?;
    Ok(vec![
        c1.exp()?,
        eta2.mul(&th2.invert()?)?,
        c3.exp()?,
        c4.exp()?,
        th2.mul(&th3.invert()?)?,
        c6.exp()?,
    ])
}

/// `q -> x^4` for a series in `q`.
pub fn q_to_x4(s: &YSeries) -> YSeries {
    rename(&rescale(s, 4, 1), "x")
}

/// Precision in `q` needed by [`thm1_series`] for an answer modulo `x^n`.
pub fn thm1_q_order(lat: &SurfaceLattice, n: i64) -> i64 {
    (n + monopole_shift(lat)) / 4 + 1
}

/// Assembles the monopole series from universal series `cs = [C1..C6]` in
/// `q`, substituting `q = x^4`; the result is modulo `x^n` when the inputs
/// are precise enough and otherwise as precise as they allow.
pub fn thm1_series(cs: &[YSeries], lat: &SurfaceLattice, l: &[i64], c1: &[i64], n: i64) -> Result<YSeries> {
    check(lat, l, c1)?;
    if cs.len() != 6 {
        return Err(Error::Config("six universal series expected".into()));
    }
    let num = Numbers::of(lat, l);
    let cx: Vec<YSeries> = cs.iter().map(q_to_x4).collect();
    let common = cx[0]
        .pow_int(num.chi)?
        .mul(&cx[1].pow_int(num.k2)?)?
        .mul(&cx[2].pow_int(num.l2)?)?
        .mul(&cx[3].pow_int(num.lk)?)?;
    let mut acc: Option<YSeries> = None;
    for (a, v) in &lat.sw {
        if lat.delta(c1, &sub(&lat.canonical, a)) == 0 {
            continue;
        }
        let ak = lat.dot(a, &lat.canonical);
        let al = lat.dot(a, l);
        let la = h(1)
            .add(&h(-1))
            .pow_i(ak - num.k2 - num.chi)
            .unwrap()
            .mul(&h(al - num.lk))
            .mul(&YCoeff::from_int(*v));
        let t = cx[4].pow_int(ak)?.mul(&cx[5].pow_int(al)?)?.scale(&la).shift_exps(&[ak - num.k2 - 3 * num.chi]);
        acc = Some(match acc {
            None => t,
            Some(s) => s.add(&t)?,
        });
    }
    match acc {
        None => Ok(Grid::new("x", 1, n).zero()),
        Some(s) => {
            let s = common.mul(&s)?;
            let hi = s.hi1().min(n - 1);
            Ok(s.truncate(&[hi]))
        }
    }
}

/// `sum_n chi(S^[n], Lambda_{-y} Omega (x) mu(L)) (Q/y)^n` from the product
/// formula, with `y` given as a coefficient and `Q = var^step`.
pub fn twisted_chi_y(g: &Grid, y: &YCoeff, step: i64, num: Numbers) -> Result<YSeries> {
    let mut lp = LogProduct::new(g);
    for k in (1..).take_while(|k| step * k <= g.hi) {
        let m = step * k;
        lp.factor(&YCoeff::one(), m, &int(-10 * num.chi + num.k2));
        lp.factor(y, m, &int(-num.chi));
        lp.factor(&y.inv().unwrap(), m, &int(-num.chi));
        add_hilb_block(&mut lp, y, m, &(rat(num.l2, 2) * int(k * k)));
        add_ratio_minus(&mut lp, y, m, &(rat(num.lk, 2) * int(k)));
    }
    lp.exp()
}

/// `C1`, `C3` from the K3 diagonal: the monopole series of a K3 surface with
/// `beta = 0` is the twisted chi_y series at `y -> y^2`, `Q -> q^2`,
/// `L -> -2L`, and equals `C1^2 C3^{L^2}`.
pub fn k3_diagonal_c1_c3(n: i64) -> Result<(YSeries, YSeries)> {
    let g = Grid::new("q", 1, n);
    let k3 = |l2| Numbers { chi: 2, k2: 0, l2, lk: 0 };
    let z0 = twisted_chi_y(&g, &h(4), 2, k3(0))?;
    let z1 = twisted_chi_y(&g, &h(4), 2, k3(4))?;
    Ok((z0.pow_rational(&rat(1, 2))?, z1.mul(&z0.invert()?)?))
}

/// Monopole series of a K3 surface with `beta = 0` in `q` (only even powers).
pub fn k3_monopole_diagonal(l2: i64, n: i64) -> Result<YSeries> {
    twisted_chi_y(&Grid::new("q", 1, n), &h(4), 2, Numbers { chi: 2, k2: 0, l2: 4 * l2, lk: 0 })
}

/// `C1^{(r)}`, `C3^{(r)}` in `q`, modulo `q^n`.
pub fn higher_rank_c1_c3(r: i64, n: i64) -> Result<(YSeries, YSeries)> {
    if r < 2 {
        return Err(Error::Config("rank must be at least 2".into()));
    }
    let g = Grid::new("q", 1, n);
    let yr = h(2 * r);
    let mut c1 = LogProduct::new(&g);
    let mut c3 = LogProduct::new(&g);
    for k in (1..).take_while(|k| r * k <= g.hi) {
        c1.factor(&YCoeff::one(), r * k, &int(-10));
        c1.factor(&yr, r * k, &int(-1));
        c1.factor(&yr.inv().unwrap(), r * k, &int(-1));
        add_hilb_block(&mut c3, &yr, r * k, &rat(r * r * k * k, 2));
    }
    Ok((c1.exp()?, c3.exp()?))
}

/// Instanton series of a K3 surface in any rank; the invariant in virtual
/// dimension `vd` is the coefficient of `q^{vd/2}`.
pub fn k3_instanton_series(l2: i64, n: i64) -> Result<YSeries> {
    let g = Grid::new("q", 1, n);
    let y = h(2);
    let mut lp = LogProduct::new(&g);
    for k in (1..).take_while(|k| *k <= g.hi) {
        lp.factor(&YCoeff::one(), k, &int(-20));
        lp.factor(&y, k, &int(-2));
        lp.factor(&y.inv().unwrap(), k, &int(-2));
        add_hilb_block(&mut lp, &y, k, &(rat(l2, 2) * int(k * k)));
    }
    lp.exp()
}

/// The interpolation between Donaldson invariants and virtual Euler numbers,
/// with rational weight `lambda` on `L`, modulo `x^n`. The theta quotient
/// is taken at `y = 1`.
pub fn gn_series(lat: &SurfaceLattice, l: &[i64], lambda: &Rat, c1: &[i64], n: i64) -> Result<XSeries> {
    check(lat, l, c1)?;
    let g = Grid::new("x", 1, n);
    let num = Numbers::of(lat, l);
    let one = int(1);
    let mut lp = LogProduct::new(&g);
    lp.product(|k| 2 * k, |_| one.clone(), |_| int(-12 * num.chi));
    let th = theta3(&g, 1, 1, &one);
    let th_neg = theta3(&g, 1, -1, &one);
    let eta4 = eta_bar::<Rat>(&g, 4)?.pow_int(2)?;
    let lam2 = lambda * lambda;
    let ex = qseries::dg2::<Rat>(&g, 2)
        .scale(&(lam2 * rat(num.l2, 2)))
        .sub(&qseries::g2_bar::<Rat>(&g, 2).scale(&(lambda * int(2 * num.lk))))?;
    let common = lp
        .exp()?
        .mul(&eta4.mul(&th.invert()?)?.pow_int(num.k2)?)?
        .mul(&ex.exp()?)?
        .scale(&two_pow(2 - num.chi + num.k2));
    let odd = qseries::g2_bar::<Rat>(&g, 1).sub(&rescale(&qseries::g2_bar::<Rat>(&g, 1), 1, -1))?;
    let ratio = th.mul(&th_neg.invert()?)?;
    let mut acc = g.zero();
    for (a, v) in &lat.sw {
        let w = lambda * rat(lat.dot(l, &sub(&lat.canonical, &a.iter().map(|x| 2 * x).collect::<Vec<_>>())), 2);
        let t = ratio.pow_int(lat.dot(a, &lat.canonical))?.mul(&odd.scale(&w).exp()?)?;
        acc = acc.add(&t.scale(&(sign(lat.dot(c1, a)) * int(*v))))?;
    }
    common.mul(&acc)
}

/// Divides every coefficient by `d` and evaluates at `y = 1`.
fn limit_at_one(s: &YSeries, d: &YCoeff) -> Result<XSeries> {
    let di = d.inv().ok_or_else(|| Error::NotInvertible("zero divisor".into()))?;
    let mut out = TruncatedSeries::zero(s.vars().to_vec(), s.window().to_vec());
    for (e, c) in s.terms() {
        let v = c
            .mul(&di)
            .eval_h(&int(1))
            .ok_or_else(|| Error::DegenerateSpecialization(format!("no limit at y = 1 in degree {}", e[0])))?;
        out.add_term(e.clone(), v);
    }
    Ok(out)
}

/// The three `y -> 1` limits that turn the chi_y series into the
/// Eisenstein-series exponents, each as `(name, lhs, rhs)` modulo `x^n`.
pub fn limit_identities(n: i64) -> Result<Vec<(&'static str, XSeries, XSeries)>> {
    let g = Grid::new("x", 1, n);
    let y = h(2);
    let d = h(-1).sub(&h(1));

    let mut l1 = LogProduct::new(&g);
    let mut l2 = LogProduct::new(&g);
    let mut l3 = LogProduct::new(&g);
    for k in (1..).take_while(|k| *k <= g.hi) {
        if 2 * k <= g.hi {
            add_hilb_block(&mut l1, &y, 2 * k, &int(k * k));
            add_ratio_minus(&mut l2, &y, 2 * k, &int(k));
        }
        if k % 2 == 1 {
            let w = int(k);
            l3.factor(&h(1), k, &w);
            l3.factor_plus(&h(-1), k, &w);
            l3.factor(&h(-1), k, &-w.clone());
            l3.factor_plus(&h(1), k, &-w.clone());
        }
    }
    let odd = qseries::g2_bar::<Rat>(&g, 1).sub(&rescale(&qseries::g2_bar::<Rat>(&g, 1), 1, -1))?;
    Ok(vec![
        ("DG2(x^2)", qseries::dg2::<Rat>(&g, 2), limit_at_one(&l1.log(), &d.mul(&d))?),
        ("G2bar(x^2)", qseries::g2_bar::<Rat>(&g, 2), limit_at_one(&l2.log(), &d)?.scale(&rat(-1, 2))),
        ("G2(x)-G2(-x)", odd, limit_at_one(&l3.log(), &d)?),
    ])
}

/// `1/2 (1-x^2)^{binom(l+1,2)} [(1+x)^{l+1} + (-1)^k (1-x)^{l+1}]`, the
/// factor relating `psi` on a blow-up with `L - l E`, `c1 - k E` to `psi`
/// on the base.
pub fn blowup_factor(ell: i64, k: i64, n: i64) -> Result<XSeries> {
    let g = Grid::new("x", 1, n);
    let mut p = LogProduct::new(&g);
    p.factor_plus(&int(1), 1, &int(ell + 1));
    let mut m = LogProduct::new(&g);
    m.factor(&int(1), 1, &int(ell + 1));
    let mut b = LogProduct::new(&g);
    b.factor(&int(1), 2, &int((ell + 1) * ell / 2));
    p.exp()?.add(&m.exp()?.scale(&sign(k)))?.mul(&b.exp()?).map(|s| s.scale(&rat(1, 2)))
}

/// The product formula for a disconnected canonical divisor
/// `K = C_1 + ... + C_m`, curves given as `(class, h^0(N))`.
pub fn disconnected_formula(
    lat: &SurfaceLattice,
    curves: &[(Vec<i64>, i64)],
    l: &[i64],
    c1: &[i64],
    n: i64,
) -> Result<XSeries> {
    check(lat, l, c1)?;
    let total = curves.iter().fold(lat.zero(), |acc, (c, _)| acc.iter().zip(c).map(|(x, y)| x + y).collect());
    if total != lat.canonical {
        return Err(Error::Config("curve classes do not sum to K".into()));
    }
    let g = Grid::new("x", 1, n);
    let num = Numbers::of(lat, l);
    let mut b = LogProduct::new(&g);
    b.factor(&int(1), 2, &int(-num.chi_l()));
    let mut acc = b.exp()?.scale(&two_pow(2 - num.chi + num.k2));
    for (c, h0) in curves {
        let e = lat.dot(c, &sub(l, c));
        let mut p = LogProduct::new(&g);
        p.factor_plus(&int(1), 1, &int(e));
        let mut m = LogProduct::new(&g);
        m.factor(&int(1), 1, &int(e));
        acc = acc.mul(&p.exp()?.add(&m.exp()?.scale(&sign(lat.dot(c, c1) + h0)))?)?;
    }
    Ok(acc)
}
