//! Verification targets shared by the command line and the acceptance tests.
//! Each target returns one outcome per comparison it makes.

use std::fmt;

use crate::cache::{self, Cache};
use crate::closed::{self, XSeries};
use crate::error::{Error, Result};
use crate::exact::{int, Rat, YCoeff};
use crate::instanton::{mainprop_predict, ChiYGenus, Genus, HolomorphicGenus, InstantonRequest, PredictionInput};
use crate::lattice::SurfaceLattice;
use crate::monopole::{self, MonopoleRequest};
use crate::qseries::{coeff_at, invert_y, theta3, Grid, LogProduct};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The comparison does not apply to the given surface.
    Skip,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Outcome {
    pub fn compare<T: PartialEq + fmt::Display>(name: impl Into<String>, got: &T, want: &T) -> Self {
        let ok = got == want;
        let detail = if ok { format!("{}", got) } else { format!("got {} want {}", got, want) };
        Outcome { name: name.into(), verdict: if ok { Verdict::Pass } else { Verdict::Fail }, detail }
    }

    pub fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Outcome { name: name.into(), verdict: if ok { Verdict::Pass } else { Verdict::Fail }, detail: detail.into() }
    }

    pub fn skip(name: impl Into<String>, why: impl Into<String>) -> Self {
        Outcome { name: name.into(), verdict: Verdict::Skip, detail: why.into() }
    }

    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skip => "SKIP",
        };
        if self.detail.is_empty() {
            write!(f, "{} {}", tag, self.name)
        } else {
            write!(f, "{} {}: {}", tag, self.name, self.detail)
        }
    }
}

/// Surface data and range for one verification run.
#[derive(Debug, Clone)]
pub struct Target {
    pub lattice: SurfaceLattice,
    pub l: Vec<i64>,
    pub c1: Vec<i64>,
    pub max_vd: i64,
    pub strong_form: bool,
}

impl Target {
    /// Virtual dimensions `0..=max_vd` compatible with `c1`.
    pub fn vds(&self) -> Vec<i64> {
        (0..=self.max_vd).filter(|vd| self.lattice.c2_for(&self.c1, *vd).is_some()).collect()
    }

    fn input(&self, vd: i64) -> PredictionInput<'_> {
        PredictionInput { lattice: &self.lattice, l: &self.l, c1: &self.c1, vd, strong_form: self.strong_form }
    }

    fn label(&self) -> String {
        format!("{} L^2={} c1^2={}", self.lattice.name, self.lattice.dot(&self.l, &self.l), self.lattice.dot(&self.c1, &self.c1))
    }
}

/// Where the universal series come from.
#[derive(Debug, Clone, Default)]
pub struct Engine {
    pub cache: Option<Cache>,
    pub seed: u64,
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn instanton_predictions<G: Genus>(genus: &G, t: &Target, e: &Engine) -> Result<Vec<(i64, G::Out)>> {
    let vds = t.vds();
    let (mut order, mut window) = (1, 0);
    for vd in &vds {
        let (o, w) = t.input(*vd).requirements()?;
        order = order.max(o);
        window = window.max(w);
    }
    let req = InstantonRequest { order, s_window: window, seed: e.seed };
    let (entry, _) = cache::universal_a(e.cache.as_ref(), genus, &req)?;
    let u = entry.universal();
    vds.into_iter().map(|vd| Ok((vd, mainprop_predict(genus, &u, &t.input(vd))?))).collect()
}

/// Localized holomorphic invariants against `psi`.
pub fn conj1(t: &Target, e: &Engine) -> Result<Vec<Outcome>> {
    let psi = closed::psi(&t.lattice, &t.l, &t.c1, t.max_vd + 1)?;
    instanton_predictions(&HolomorphicGenus, t, e)?
        .into_iter()
        .map(|(vd, v)| Ok(Outcome::compare(format!("conj1 {} vd={}", t.label(), vd), &v, &coeff_at(&psi, vd)?)))
        .collect()
}

/// Localized chi_y invariants against the refined series, plus their
/// `y = 0` degeneration and the `y <-> 1/y` symmetry at `L = O`.
pub fn conj2(t: &Target, e: &Engine) -> Result<Vec<Outcome>> {
    let series = closed::conj2_series(&t.lattice, &t.l, &t.c1, t.max_vd + 1)?;
    let mut out = Vec::new();
    for (vd, v) in instanton_predictions(&ChiYGenus, t, e)? {
        out.push(Outcome::compare(format!("conj2 {} vd={}", t.label(), vd), &v, &coeff_at(&series, vd)?));
        if t.l.iter().all(|x| *x == 0) {
            out.push(Outcome::compare(format!("conj2 y<->1/y vd={}", vd), &v.invert_y(), &v));
        }
    }
    out.push(degeneration(&t.lattice, &t.l, &t.c1, 20)?);
    Ok(out)
}

/// `x -> x y^{1/2}`, `y = 0` on the refined series recovers `psi` mod `x^n`.
pub fn degeneration(lat: &SurfaceLattice, l: &[i64], c1: &[i64], n: i64) -> Result<Outcome> {
    let y0 = closed::y0_specialize(&closed::conj2_series(lat, l, c1, n)?)?;
    let p = closed::psi(lat, l, c1, n)?;
    Ok(Outcome::check(format!("conj2 at y=0 is conj1 on {} mod x^{}", lat.name, n), y0 == p, ""))
}

/// Smallest `q`-order of the localized monopole series that determines every
/// invariant up to `max_vd`.
pub fn monopole_order(lat: &SurfaceLattice, max_vd: i64) -> usize {
    closed::thm1_q_order(lat, max_vd + 1).max(2) as usize
}

/// Monopole invariants from the localized universal series against the
/// closed formula, and the `L <-> -L` symmetry.
pub fn conj3(t: &Target, e: &Engine) -> Result<Vec<Outcome>> {
    let lat = &t.lattice;
    let req = MonopoleRequest { order: monopole_order(lat, t.max_vd), seed: e.seed };
    let (entry, _) = cache::universal_b(e.cache.as_ref(), &req)?;
    let bs = monopole::b_series(&entry.universal())?;
    let n = t.max_vd + 1;
    let lc = monopole::lemma_c_series(&bs, lat, &t.l, &t.c1, n)?;
    if lc.hi1() < t.max_vd && !lc.is_zero() {
        return Err(Error::InsufficientOrder(format!("monopole series known to x^{} only", lc.hi1())));
    }
    let closed = closed::conj3_series(lat, &t.l, &t.c1, n)?;
    let mut out = Vec::new();
    for vd in t.vds() {
        let got = monopole::lemma_c_predict(&bs, lat, &t.l, &t.c1, vd)?;
        let want = closed::minus_x_coeff(&closed, vd)?;
        out.push(Outcome::compare(format!("conj3 {} vd={}", t.label(), vd), &got, &want));
    }
    let flipped = monopole::lemma_c_series(&bs, lat, &neg(&t.l), &t.c1, n)?;
    out.push(Outcome::check("conj3 y<->1/y exchanges L and -L", invert_y(&lc) == flipped, ""));
    Ok(out)
}

/// The rank two K3 diagonal reproduces `C1` and `C3` mod `q^n`.
pub fn thm2(n: i64) -> Result<Vec<Outcome>> {
    let (c1, c3) = closed::k3_diagonal_c1_c3(n)?;
    let cs = closed::closed_c(n)?;
    Ok(vec![
        Outcome::check(format!("thm2 C1 mod q^{}", n), c1 == cs[0], ""),
        Outcome::check(format!("thm2 C3 mod q^{}", n), c3 == cs[2], ""),
    ])
}

/// Jacobi triple product `sum y^n x^{n^2} = prod (1-x^{2n})(1+y x^{2n-1})(1+x^{2n-1}/y)` mod `x^n`.
pub fn jacobi(n: i64) -> Result<Outcome> {
    let g = Grid::new("x", 1, n);
    let y = YCoeff::y_pow(1);
    let sum = theta3(&g, 1, 1, &y);
    let mut lp = LogProduct::new(&g);
    lp.product(|k| 2 * k, |_| YCoeff::one(), |_| int(1));
    for k in (1..).take_while(|k| 2 * k - 1 < n) {
        lp.factor_plus(&y, 2 * k - 1, &int(1));
        lp.factor_plus(&y.inv().expect("y is a unit"), 2 * k - 1, &int(1));
    }
    Ok(Outcome::check(format!("jacobi triple product mod x^{}", n), sum == lp.exp()?, ""))
}

/// Closed-form identities on one surface: Jacobi, the rank two diagonal,
/// the monopole assembly from `C1..C6` and the `y = 0` degeneration.
pub fn closed_forms(t: &Target) -> Result<Vec<Outcome>> {
    let lat = &t.lattice;
    let mut out = vec![jacobi(50)?];
    out.extend(thm2(24)?);
    let n = 24;
    let cs = closed::closed_c(closed::thm1_q_order(lat, n))?;
    let a = closed::conj3_series(lat, &t.l, &t.c1, n)?;
    let b = closed::thm1_series(&cs, lat, &t.l, &t.c1, n)?;
    let lo = a.lo1().min(b.lo1());
    let same = (lo..n).map(|k| Ok(coeff_at(&a, k)? == coeff_at(&b, k)?)).collect::<Result<Vec<_>>>()?;
    out.push(Outcome::check(format!("monopole assembly from C1..C6 on {} mod x^{}", lat.name, n), same.iter().all(|x| *x), ""));
    out.push(degeneration(lat, &t.l, &t.c1, 20)?);
    Ok(out)
}

/// The three `y -> 1` limits mod `x^n`.
pub fn limits(n: i64) -> Result<Vec<Outcome>> {
    Ok(closed::limit_identities(n)?
        .into_iter()
        .map(|(name, lhs, rhs)| Outcome::check(format!("limit {} mod x^{}", name, n), lhs == rhs, ""))
        .collect())
}

/// `psi` on the blow-up with `L - l E`, `c1 - k E` equals the blow-up factor
/// times `psi` on the surface, mod `x^n`.
pub fn blowup(t: &Target, n: i64) -> Result<Vec<Outcome>> {
    let base = &t.lattice;
    let up = base.blow_up();
    let p = closed::psi(base, &t.l, &t.c1, n)?;
    let mut out = Vec::new();
    for ell in -1..=2 {
        for k in 0..=1 {
            let lt: Vec<i64> = t.l.iter().copied().chain([-ell]).collect();
            let ct: Vec<i64> = t.c1.iter().copied().chain([-k]).collect();
            let lhs = closed::psi(&up, &lt, &ct, n)?;
            let rhs = closed::blowup_factor(ell, k, n)?.mul(&p)?;
            out.push(Outcome::check(format!("blowup of {} l={} k={} mod x^{}", base.name, ell, k, n), lhs == rhs, ""));
        }
    }
    Ok(out)
}

/// Residue classes of `psi` and the general type closed form agree mod `x^n`.
pub fn general_type(lat: &SurfaceLattice, l: &[i64], c1: &[i64], n: i64) -> Result<Outcome> {
    let name = format!("general type residue class on {} mod x^{}", lat.name, n);
    if lat.k2() <= 0 {
        return Ok(Outcome::skip(name, "needs K^2 > 0"));
    }
    let g = lat.clone().with_general_type_sw();
    let p = closed::vd_progression(&closed::psi(&g, l, c1, n)?, &g, c1)?;
    let f = closed::vd_progression(&closed::phi_general_type(&g, l, n)?, &g, c1)?;
    Ok(Outcome::check(name, p == f, ""))
}

/// Surface with `K` a single curve `C` of genus 2 on `U + U`, `h^0(N_C) = 1`.
pub fn one_curve_surface() -> Result<(SurfaceLattice, Vec<(Vec<i64>, i64)>)> {
    let gram = vec![vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]];
    let curves = vec![(vec![1, 1, 0, 0], 1)];
    Ok((SurfaceLattice::disconnected_canonical("one-curve", 3, gram, &curves)?, curves))
}

/// The disconnected-canonical-divisor formula with one component equals `psi`.
pub fn disconnected(n: i64) -> Result<Outcome> {
    let (s, curves) = one_curve_surface()?;
    let mut ok = true;
    for l in [vec![0, 0, 0, 0], vec![0, 1, 0, 2], vec![1, 1, 0, 1]] {
        for c1 in [vec![0, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 1]] {
            ok &= closed::disconnected_formula(&s, &curves, &l, &c1, n)? == closed::psi(&s, &l, &c1, n)?;
        }
    }
    Ok(Outcome::check(format!("disconnected K with one curve equals psi mod x^{}", n), ok, ""))
}

/// Applications of the closed formula: residue classes, blow-ups, the
/// disconnected canonical divisor and the `y -> 1` limits.
pub fn apps(t: &Target) -> Result<Vec<Outcome>> {
    let mut out = vec![general_type(&t.lattice, &t.l, &t.c1, 24)?];
    out.extend(blowup(t, 20)?);
    out.push(disconnected(20)?);
    out.extend(limits(30)?);
    Ok(out)
}

/// Invariants of a closed formula, one per `vd` in `0..=max_vd`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    Conj1,
    Conj2,
    Conj3,
    Gn,
}

impl std::str::FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conj1" => Ok(Formula::Conj1),
            "conj2" => Ok(Formula::Conj2),
            "conj3" => Ok(Formula::Conj3),
            "gn" => Ok(Formula::Gn),
            _ => Err(Error::Config(format!("unknown formula {:?}", s))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TableSeries {
    X(XSeries),
    Y(closed::YSeries),
}

/// The generating series of `formula` mod `x^{max_vd+1}` and its invariant
/// in each degree.
pub fn table(formula: Formula, t: &Target, lambda: &Rat) -> Result<(TableSeries, Vec<(i64, String)>)> {
    let (lat, l, c1, n) = (&t.lattice, &t.l[..], &t.c1[..], t.max_vd + 1);
    fn rows<C: fmt::Display>(hi: i64, f: impl Fn(i64) -> Result<C>) -> Result<Vec<(i64, String)>> {
        (0..=hi).map(|k| Ok((k, f(k)?.to_string()))).collect()
    }
    Ok(match formula {
        Formula::Conj1 => {
            let s = closed::psi(lat, l, c1, n)?;
            let r = rows(t.max_vd, |k| coeff_at(&s, k))?;
            (TableSeries::X(s), r)
        }
        Formula::Gn => {
            let s = closed::gn_series(lat, l, lambda, c1, n)?;
            let r = rows(t.max_vd, |k| coeff_at(&s, k))?;
            (TableSeries::X(s), r)
        }
        Formula::Conj2 => {
            let s = closed::conj2_series(lat, l, c1, n)?;
            let r = rows(t.max_vd, |k| coeff_at(&s, k))?;
            (TableSeries::Y(s), r)
        }
        Formula::Conj3 => {
            let s = closed::conj3_series(lat, l, c1, n)?;
            let r = rows(t.max_vd, |k| closed::minus_x_coeff(&s, k))?;
            (TableSeries::Y(s), r)
        }
    })
}
