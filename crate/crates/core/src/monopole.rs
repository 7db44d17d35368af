//! Monopole-branch generating series on toric surfaces.
//!
//! A monopole component is a nested Hilbert scheme inside
//! `S^[n0] x S^[n1] x |beta|`; its virtual class is the degree `n0 + n1`
//! Chern class of `RGamma(beta) - RHom(I0, I1(beta))`, so the series is an
//! integral over `S^[n0] x S^[n1]` evaluated by localization. The auxiliary
//! `C*` grading of [`EquivChar`] records powers of `t` with `y = e^t`.

use rayon::prelude::*;

use crate::closed::YSeries;
use crate::error::{Error, Result};
use crate::exact::{int, rat, BiPoly, Rat, YCoeff};
use crate::lattice::SurfaceLattice;
use crate::localize::{check_generic, specialize, EpsSpec};
use crate::qseries::{coeff_at, Grid};
use crate::toric::{fixed_points, ideal_pair_char, tangent_char, EquivChar, EquivDivisor, HilbFixedPoint, ToricSurfaceModel};
use crate::universal::UniversalSeries;

/// `(S, L, beta)` with classes in the surface's divisor basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonopoleTuple {
    pub surface: String,
    pub l: Vec<i64>,
    pub beta: Vec<i64>,
}

impl MonopoleTuple {
    pub fn new(surface: &str, l: &[i64], beta: &[i64]) -> Self {
        MonopoleTuple { surface: surface.into(), l: l.to_vec(), beta: beta.to_vec() }
    }

    pub fn label(&self) -> String {
        format!("{}:L{:?}:b{:?}", self.surface, self.l, self.beta)
    }
}

/// The seven reference tuples whose intersection vectors form a basis.
pub fn reference_tuples() -> Vec<MonopoleTuple> {
    let p = "P2";
    vec![
        MonopoleTuple::new(p, &[0], &[0]),
        MonopoleTuple::new(p, &[-3], &[0]),
        MonopoleTuple::new(p, &[-6], &[0]),
        MonopoleTuple::new(p, &[0], &[6]),
        MonopoleTuple::new(p, &[0], &[-6]),
        MonopoleTuple::new(p, &[-3], &[-6]),
        MonopoleTuple::new("P1xP1", &[0, 0], &[0, 0]),
    ]
}

/// A tuple outside the reference set, used to test predictions.
pub fn held_out_tuple() -> MonopoleTuple {
    MonopoleTuple::new("P1xP1", &[1, -1], &[2, 0])
}

/// Intersection vector `(L^2, L beta, beta^2, LK, beta K, K^2, chi)`.
pub fn chern_vector(model: &ToricSurfaceModel, t: &MonopoleTuple) -> Vec<i64> {
    let k = &model.canonical_class;
    let d = |x: &[i64], y: &[i64]| model.dot(x, y);
    vec![d(&t.l, &t.l), d(&t.l, &t.beta), d(&t.beta, &t.beta), d(&t.l, k), d(&t.beta, k), d(k, k), model.chi_o]
}

fn graded(ch: &EquivChar, k: i64) -> EquivChar {
    ch.twist([0, 0, k])
}

/// The deformation-obstruction character at a fixed point `(Z0, Z1)` of
/// `S^[n0] x S^[n1]`, with the `t`-exponent in the grading slot.
pub fn v_char(model: &ToricSurfaceModel, z0: &HilbFixedPoint, z1: &HilbFixedPoint, beta: &EquivDivisor) -> Result<EquivChar> {
    let o = model.trivial();
    let k = model.canonical();
    let p = |a: &HilbFixedPoint, b: &HilbFixedPoint, d: &EquivDivisor| ideal_pair_char(model, a, b, d);
    let fixed = p(z0, z1, beta)?.add(&model.rgamma(&o)?).sub(&p(z0, z0, &o)?).sub(&p(z1, z1, &o)?);
    let t2 = graded(&p(z1, z0, &k.scale(2).sub(beta))?, 2);
    let t1 = p(z0, z0, &k)?
        .add(&p(z1, z1, &k)?)
        .sub(&model.rgamma(&k)?)
        .sub(&p(z1, z0, &k.sub(beta))?);
    let tm1 = p(z0, z1, &beta.sub(&k))?;
    Ok(fixed.add(&t2).add(&graded(&t1, 1)).sub(&graded(&tm1, -1)))
}

/// `RGamma(beta) - RHom(I0, I1(beta))`, whose top Chern class is the virtual
/// class of the nested Hilbert scheme.
pub fn gt_char(model: &ToricSurfaceModel, z0: &HilbFixedPoint, z1: &HilbFixedPoint, beta: &EquivDivisor) -> Result<EquivChar> {
    Ok(model.rgamma(beta)?.sub(&ideal_pair_char(model, z0, z1, beta)?))
}

/// Equivariant Chern classes `c_0 .. c_deg` of an ungraded character as
/// polynomials in `(eps1, eps2)`.
pub fn chern_classes(ch: &EquivChar, deg: u32) -> Result<Vec<BiPoly>> {
    let mut g = vec![BiPoly::zero(); deg as usize + 1];
    for (w, c) in ch.terms() {
        if w[2] != 0 {
            return Err(Error::Config("Chern classes need an ungraded character".into()));
        }
        let mut lin = BiPoly::monomial(int(w[0]), 1, 0);
        lin.add_term(0, 1, int(w[1]));
        let mut pw = BiPoly::constant(int(1));
        for (j, gj) in g.iter_mut().enumerate().skip(1) {
            pw = pw.mul(&lin);
            let sign = if j % 2 == 1 { 1 } else { -1 };
            gj.add_scaled(&pw, &rat(sign * c, j as i64));
        }
    }
    Ok(graded_exp(&g, deg as usize))
}

/// `exp(sum_j g_j)` through index `n`, with `g_0 = 0`.
fn graded_exp(g: &[BiPoly], n: usize) -> Vec<BiPoly> {
    let mut f = vec![BiPoly::constant(int(1))];
    for m in 1..=n {
        let mut acc = BiPoly::zero();
        for k in 1..=m {
            if !g[k].is_zero() {
                acc.add_scaled(&g[k].mul(&f[m - k]), &int(k as i64));
            }
        }
        f.push(acc.scale(&rat(1, m as i64)));
    }
    f
}

/// Logarithm of a series with constant term 1, coefficients in `Q[v]`.
fn log_series(f: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = f.len();
    let poly_mul = |a: &[Rat], b: &[Rat]| {
        let mut out = vec![int(0); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut g: Vec<Vec<Rat>> = vec![vec![int(0)]; n];
    for m in 1..n {
        let mut acc = f[m].clone();
        for k in 1..m {
            let t = poly_mul(&g[k], &f[m - k]);
            if acc.len() < t.len() {
                acc.resize(t.len(), int(0));
            }
            for (i, c) in t.into_iter().enumerate() {
                acc[i] -= c * int(k as i64) / int(m as i64);
            }
        }
        g[m] = acc;
    }
    g
}

/// Expansion tables for the per-weight factors.
struct Kernels {
    /// `log(sinh(x/2) / (x/2)) = sum s_j x^j`.
    fixed: Vec<Rat>,
    /// `log(cosh u + rho sinh u) = sum g_j(rho) u^j`, `g_j` as coefficients in `rho`.
    moving: Vec<Vec<Rat>>,
}

impl Kernels {
    fn new(n: usize) -> Self {
        let mut fact = int(1);
        let mut sinhc = Vec::new();
        let mut ch = Vec::new();
        for j in 0..=n {
            if j > 0 {
                fact *= int(j as i64);
            }
            // sinh(z)/z at z = x/2: x^j coefficient is (1/2)^j / (j+1)! for even j
            let s = if j % 2 == 0 { crate::instanton::two_pow(-(j as i64)) / (&fact * int(j as i64 + 1)) } else { int(0) };
            sinhc.push(vec![s]);
            ch.push(if j % 2 == 0 { vec![int(1) / &fact] } else { vec![int(0), int(1) / &fact] });
        }
        let fixed = log_series(&sinhc).into_iter().map(|v| v[0].clone()).collect();
        Kernels { fixed, moving: log_series(&ch) }
    }
}

/// `rho_k = (h^k + h^-k) / (h^k - h^-k)` for `k = 1, 2`.
fn rho(k: i64) -> YCoeff {
    let (a, b) = (YCoeff::h_pow(k), YCoeff::h_pow(-k));
    a.add(&b).mul(&a.sub(&b).inv().unwrap())
}

fn d_k(k: i64) -> YCoeff {
    YCoeff::h_pow(k).sub(&YCoeff::h_pow(-k))
}

struct PointData {
    scalar: Rat,
    series: Vec<BiPoly>,
    ranks: [i64; 3],
}

/// Per fixed point: `c_n(GT) / e(T)` as a rational multiple of `eps^{-n}`,
/// and the expansion in `eps` of the remaining factors with coefficients in
/// `Q[rho_1, rho_2]`; `ranks` are the multiplicities of `t^{-1}, t, t^2`.
#[allow(clippy::too_many_arguments)]
fn point_data(
    model: &ToricSurfaceModel,
    z0: &HilbFixedPoint,
    z1: &HilbFixedPoint,
    beta: &EquivDivisor,
    l: &EquivDivisor,
    eps: &EpsSpec,
    ker: &Kernels,
    n: usize,
) -> Result<Option<PointData>> {
    let gt = specialize(&gt_char(model, z0, z1, beta)?, eps);
    let tan = specialize(&tangent_char(model, z0).add(&tangent_char(model, z1)), eps);
    let v = specialize(&v_char(model, z0, z1, beta)?, eps);
    check_generic(&gt, eps)?;
    check_generic(&tan, eps)?;
    check_generic(&v, eps)?;
    // c_n along the line: coefficient of eps^n in prod (1 + w eps)^c.
    let mut lg = vec![BiPoly::zero(); n + 1];
    for w in &gt {
        let mut pw = int(1);
        for (j, g) in lg.iter_mut().enumerate().skip(1) {
            pw *= &w.w;
            let sign = if j % 2 == 1 { 1 } else { -1 };
            g.add_term(0, 0, &pw * rat(sign * w.c, j as i64));
        }
    }
    let cn = graded_exp(&lg, n)[n].coeff(0, 0);
    if cn == int(0) {
        return Ok(None);
    }
    let mut scalar = cn;
    for w in &tan {
        if w.trivial_torus || w.k != 0 || w.c < 0 {
            return Err(Error::Consistency("tangent space is not a genuine torus representation".into()));
        }
        scalar /= crate::localize::rat_pow(&w.w, w.c as usize);
    }

    let mut fixed_ps = vec![int(0); n + 1];
    // power sums of -m (w/2)^j per grading -1, 1, 2
    let mut mov_ps = vec![vec![int(0); n + 1]; 3];
    let mut ranks = [0i64; 3];
    for w in &v {
        let slot = match w.k {
            0 => None,
            -1 => Some(0),
            1 => Some(1),
            2 => Some(2),
            k => return Err(Error::Consistency(format!("unexpected C* weight {}", k))),
        };
        match slot {
            None => {
                let mut pw = int(1);
                for p in fixed_ps.iter_mut().skip(1) {
                    pw *= &w.w;
                    *p -= &pw * int(w.c);
                }
            }
            Some(s) => {
                ranks[s] += w.c;
                let half = &w.w / int(2);
                let mut pw = int(1);
                for p in mov_ps[s].iter_mut().skip(1) {
                    pw *= &half;
                    *p -= &pw * int(w.c);
                }
            }
        }
    }
    let mut g = vec![BiPoly::zero(); n + 1];
    for j in 1..=n {
        g[j].add_term(0, 0, &fixed_ps[j] * &ker.fixed[j]);
        // rho_{-1} = -rho_1
        let gj = &ker.moving[j];
        for (s, (var, sign)) in [(0usize, -1i64), (0, 1), (1, 1)].into_iter().enumerate() {
            if mov_ps[s][j] == int(0) {
                continue;
            }
            for (d, c) in gj.iter().enumerate() {
                let sg = if sign < 0 && d % 2 == 1 { -int(1) } else { int(1) };
                let e = d as u32;
                let (a, b) = if var == 0 { (e, 0) } else { (0, e) };
                g[j].add_term(a, b, c * &mov_ps[s][j] * sg);
            }
        }
    }
    if n >= 1 {
        let (s0, s1) = (z0.local_sizes(), z1.local_sizes());
        let mut mu = int(0);
        for (i, lin) in l.lin.iter().enumerate() {
            mu += eps.omega(lin[0], lin[1]) * int(s0[i] + s1[i]);
        }
        g[1].add_term(0, 0, mu);
    }
    Ok(Some(PointData { scalar, series: graded_exp(&g, n), ranks }))
}

fn bipoly_to_y(p: &BiPoly) -> YCoeff {
    let (r1, r2) = (rho(1), rho(2));
    let mut acc = YCoeff::zero();
    for ((a, b), c) in p.terms() {
        let t = r1.pow(*a as i64).unwrap().mul(&r2.pow(*b as i64).unwrap()).scale(c);
        acc = acc.add(&t);
    }
    acc
}

/// Integral over `S^[n0] x S^[n1]` (without the global normalization).
fn stratum(
    model: &ToricSurfaceModel,
    beta: &EquivDivisor,
    l: &EquivDivisor,
    n0: u32,
    n1: u32,
    eps: &EpsSpec,
    ker: &Kernels,
) -> Result<YCoeff> {
    let z0s = fixed_points(model, n0);
    let z1s = fixed_points(model, n1);
    let pairs: Vec<(&HilbFixedPoint, &HilbFixedPoint)> = z0s.iter().flat_map(|a| z1s.iter().map(move |b| (a, b))).collect();
    let n = (n0 + n1) as usize;
    let data: Vec<Result<Option<PointData>>> =
        pairs.par_iter().map(|(a, b)| point_data(model, a, b, beta, l, eps, ker, n)).collect();
    let mut total = vec![BiPoly::zero(); n + 1];
    let mut ranks: Option<[i64; 3]> = None;
    for d in data {
        let Some(d) = d? else { continue };
        match ranks {
            None => ranks = Some(d.ranks),
            Some(r) if r != d.ranks => return Err(Error::Consistency("fixed points disagree on ranks".into())),
            _ => {}
        }
        for (t, s) in total.iter_mut().zip(&d.series) {
            t.add_scaled(s, &d.scalar);
        }
    }
    let Some(r) = ranks else { return Ok(YCoeff::zero()) };
    for (j, t) in total.iter().enumerate().take(n) {
        if !t.is_zero() {
            return Err(Error::Consistency(format!(
                "equivariant parameter power {} does not cancel in stratum ({}, {})",
                j as i64 - n as i64,
                n0,
                n1
            )));
        }
    }
    // (h^-1 - h^1)^{-r_-1} (h - h^-1)^{-r_1} (h^2 - h^-2)^{-r_2}
    let pref = d_k(-1).pow(-r[0]).unwrap().mul(&d_k(1).pow(-r[1]).unwrap()).mul(&d_k(2).pow(-r[2]).unwrap());
    Ok(bipoly_to_y(&total[n]).mul(&pref))
}

fn chi_of(model: &ToricSurfaceModel, d: &[i64]) -> i64 {
    let k = &model.canonical_class;
    (model.dot(d, d) - model.dot(d, k)) / 2 + model.chi_o
}

/// Parameters of a monopole computation.
#[derive(Debug, Clone)]
pub struct MonopoleRequest {
    /// Number of `q`-coefficients (`q^0 .. q^{order-1}`).
    pub order: usize,
    pub seed: u64,
}

/// The normalized monopole series of a tuple in `q`, with coefficients in
/// `Q(y^{1/2})`. Retries with a fresh specialization on degeneracy.
pub fn z_mon(model: &ToricSurfaceModel, tuple: &MonopoleTuple, req: &MonopoleRequest) -> Result<YSeries> {
    let mut attempt = 0;
    loop {
        let eps = EpsSpec::draw(req.seed, attempt);
        match z_mon_with(model, tuple, req, &eps) {
            Err(Error::DegenerateSpecialization(_)) if attempt < 64 => attempt += 1,
            other => return other,
        }
    }
}

/// As [`z_mon`] with an explicit specialization.
pub fn z_mon_with(model: &ToricSurfaceModel, tuple: &MonopoleTuple, req: &MonopoleRequest, eps: &EpsSpec) -> Result<YSeries> {
    if model.name != tuple.surface {
        return Err(Error::Config(format!("tuple {} does not live on {}", tuple.label(), model.name)));
    }
    if req.order == 0 {
        return Err(Error::Config("order must be at least 1".into()));
    }
    let beta = model.divisor(&tuple.beta);
    let l = model.divisor(&tuple.l);
    let bk: Vec<i64> = tuple.beta.iter().zip(&model.canonical_class).map(|(b, k)| b - k).collect();
    let hp = YCoeff::h_pow(1).add(&YCoeff::h_pow(-1));
    let norm = hp
        .neg()
        .inv()
        .unwrap()
        .pow(-chi_of(model, &bk))
        .unwrap()
        .mul(&d_k(1).pow(model.chi_o - chi_of(model, &tuple.beta)).unwrap());
    let ker = Kernels::new(req.order);
    let grid = Grid::new("q", 1, req.order as i64);
    let mut out: YSeries = grid.zero();
    for n in 0..req.order as u32 {
        let mut acc = YCoeff::zero();
        for n0 in 0..=n {
            acc = acc.add(&stratum(model, &beta, &l, n0, n - n0, eps, &ker)?);
        }
        out.add_term(vec![n as i64], acc.mul(&norm));
    }
    Ok(out)
}

/// Computes the reference tuples and solves for `log B_1 .. log B_7`.
pub fn solve_universal_b(req: &MonopoleRequest) -> Result<(UniversalSeries<YCoeff>, Vec<YSeries>)> {
    let p2 = ToricSurfaceModel::p2();
    let q = ToricSurfaceModel::p1xp1();
    let mut zs = Vec::new();
    let mut vecs = Vec::new();
    for t in reference_tuples() {
        let m = if t.surface == p2.name { &p2 } else { &q };
        zs.push(z_mon(m, &t, req)?);
        vecs.push(chern_vector(m, &t));
    }
    Ok((UniversalSeries::solve(vecs, &zs)?, zs))
}

/// `[C1 .. C6]` from `B`: `C1 = B7`, `C2 = B6`, `C3 = B1`, `C4 = B4`,
/// `C5 = B3 B5`, `C6 = B2`.
pub fn c_from_b(b: &UniversalSeries<YCoeff>) -> Result<Vec<YSeries>> {
    let s = |j: usize| b.series(j);
    Ok(vec![s(6)?, s(5)?, s(0)?, s(3)?, b.logs[2].add(&b.logs[4])?.exp()?, s(1)?])
}

/// The monopole series assembled from `B1 .. B7` (series in `q`), as a
/// series in `X = -x` modulo `X^n`: the invariant in virtual dimension `vd`
/// is its coefficient of `X^{vd}`.
pub fn lemma_c_series(bs: &[YSeries], lat: &SurfaceLattice, l: &[i64], c1: &[i64], n: i64) -> Result<YSeries> {
    if bs.len() != 7 {
        return Err(Error::Config("seven universal series expected".into()));
    }
    lat.check_class(l)?;
    lat.check_class(c1)?;
    let k = &lat.canonical;
    let dot = |a: &[i64], b: &[i64]| lat.dot(a, b);
    let bx: Vec<YSeries> = bs.iter().map(crate::closed::q_to_x4).collect();
    let hp = YCoeff::h_pow(1).add(&YCoeff::h_pow(-1));
    let m = hp.neg().inv().unwrap();
    let (l2, lk, k2, chi) = (dot(l, l), dot(l, k), dot(k, k), lat.chi_o);
    let common = bx[0].pow_int(l2)?.mul(&bx[3].pow_int(lk)?)?.mul(&bx[5].pow_int(k2)?)?.mul(&bx[6].pow_int(chi)?)?;
    let mut acc: Option<YSeries> = None;
    for (beta, sw) in &lat.sw {
        let kb: Vec<i64> = k.iter().zip(beta).map(|(a, b)| a - b).collect();
        if *sw == 0 || lat.delta(c1, &kb) == 0 {
            continue;
        }
        let (lb, b2, bk) = (dot(l, beta), dot(beta, beta), dot(beta, k));
        if (b2 - bk) % 2 != 0 || (b2 + bk) % 2 != 0 {
            return Err(Error::Config("beta^2 and beta K must have the same parity".into()));
        }
        let m_pow = (b2 - 3 * bk) / 2 + k2 + chi;
        let d_pow = (b2 - bk) / 2;
        let x_pow = -b2 + 2 * bk - k2 - 3 * chi;
        let scal = m
            .pow(m_pow)
            .unwrap()
            .mul(&d_k(1).pow(d_pow).unwrap())
            .mul(&YCoeff::h_pow(lb - lk))
            .mul(&YCoeff::from_int(*sw));
        let t = bx[1].pow_int(lb)?.mul(&bx[2].pow_int(b2)?)?.mul(&bx[4].pow_int(bk)?)?.scale(&scal).shift_exps(&[x_pow]);
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

/// The monopole contribution in virtual dimension `vd` predicted by the
/// universal series `B`.
pub fn lemma_c_predict(bs: &[YSeries], lat: &SurfaceLattice, l: &[i64], c1: &[i64], vd: i64) -> Result<YCoeff> {
    coeff_at(&lemma_c_series(bs, lat, l, c1, vd + 1)?, vd)
}

/// `B1 .. B7` as series.
pub fn b_series(b: &UniversalSeries<YCoeff>) -> Result<Vec<YSeries>> {
    (0..7).map(|j| b.series(j)).collect()
}

/// True when every coefficient is a Laurent polynomial in `y^{1/2}`.
pub fn laurent_coefficients(s: &YSeries) -> bool {
    s.terms().values().all(|c| c.is_laurent())
}
