//! Multivariate truncated Laurent series with exact coefficients.
//!
//! Exponents are stored as integers in units of `1/denom` per variable. The
//! window `[lo, hi]` of a variable means: no term has exponent below `lo`, and
//! every coefficient with all exponents inside the box is exact. `hi` may be
//! [`UNBOUNDED`] for variables in which the series is exact (a polynomial).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{format_rat, int, parse_rat, Coeff, Rat};

pub const UNBOUNDED: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub name: String,
    pub denom: u32,
}

impl Variable {
    pub fn new(name: &str) -> Self {
        Variable { name: name.to_string(), denom: 1 }
    }

    pub fn with_denom(name: &str, denom: u32) -> Self {
        Variable { name: name.to_string(), denom }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<C> {
    vars: Vec<Variable>,
    window: Vec<(i64, i64)>,
    terms: BTreeMap<Vec<i64>, C>,
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= UNBOUNDED || b >= UNBOUNDED {
        UNBOUNDED
    } else {
        a + b
    }
}

/// A monomial substitution target: `coeff * prod var^exp` with rational
/// exponents given per target variable name.
#[derive(Clone, Debug)]
pub struct MonomialImage<C> {
    pub coeff: C,
    pub exps: Vec<(String, Rat)>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn zero(vars: Vec<Variable>, window: Vec<(i64, i64)>) -> Self {
        assert_eq!(vars.len(), window.len());
        TruncatedSeries { vars, window, terms: BTreeMap::new() }
    }

    /// Exact constant.
    pub fn constant(vars: Vec<Variable>, c: C) -> Self {
        let n = vars.len();
        let mut s = Self::zero(vars, vec![(0, UNBOUNDED); n]);
        s.add_term(vec![0; n], c);
        s
    }

    /// Single-variable series from dense coefficients starting at exponent `lo`
    /// (integer grid), exact through `hi`.
    pub fn univariate(name: &str, lo: i64, hi: i64, coeffs: Vec<C>) -> Self {
        let mut s = Self::zero(vec![Variable::new(name)], vec![(lo, hi)]);
        for (i, c) in coeffs.into_iter().enumerate() {
            let e = lo + i as i64;
            if e <= hi {
                s.add_term(vec![e], c);
            }
        }
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<i64>, C)>>(
        vars: Vec<Variable>,
        window: Vec<(i64, i64)>,
        terms: I,
    ) -> Self {
        let mut s = Self::zero(vars, window);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn window(&self) -> &[(i64, i64)] {
        &self.window
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, C> {
        &self.terms
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    fn in_window(&self, e: &[i64]) -> bool {
        e.iter().zip(&self.window).all(|(x, (lo, hi))| x >= lo && x <= hi)
    }

    /// Adds `c * x^e` (in grid units); terms above the window are dropped.
    pub fn add_term(&mut self, e: Vec<i64>, c: C) {
        if c.is_zero() {
            return;
        }
        for (x, (lo, _)) in e.iter().zip(&self.window) {
            assert!(x >= lo, "term below the window minimum");
        }
        if !self.in_window(&e) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                v.add_assign(&c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    /// Coefficient at exponent vector `e` in grid units.
    pub fn coeff(&self, e: &[i64]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient at `e` if it lies in the exact window.
    pub fn checked_coeff(&self, e: &[i64]) -> Result<C> {
        for (i, (x, (_, hi))) in e.iter().zip(&self.window).enumerate() {
            if x > hi {
                return Err(Error::InsufficientOrder(format!(
                    "exponent {} of {} beyond window {}",
                    x, self.vars[i].name, hi
                )));
            }
        }
        Ok(self.coeff(e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compat(&self, o: &Self) -> Result<()> {
        if self.vars != o.vars {
            return Err(Error::IncompatibleVariables(format!("{:?} vs {:?}", self.vars, o.vars)));
        }
        Ok(())
    }

    /// Lowers the window maxima to `hi` (componentwise minimum).
    pub fn truncate(&self, hi: &[i64]) -> Self {
        let window: Vec<(i64, i64)> =
            self.window.iter().zip(hi).map(|(&(lo, h), &m)| (lo, h.min(m))).collect();
        let mut s = Self::zero(self.vars.clone(), window);
        for (e, c) in &self.terms {
            if s.in_window(e) {
                s.terms.insert(e.clone(), c.clone());
            }
        }
        s
    }

    /// Replaces the lower window bounds; every term must still respect them.
    pub fn with_lower_bounds(&self, lo: &[i64]) -> Self {
        let mut s = self.clone();
        for (i, w) in s.window.iter_mut().enumerate() {
            w.0 = lo[i];
        }
        for e in s.terms.keys() {
            for (x, l) in e.iter().zip(lo) {
                assert!(x >= l, "term below requested lower bound");
            }
        }
        s
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_compat(o)?;
        let window: Vec<(i64, i64)> = self
            .window
            .iter()
            .zip(&o.window)
            .map(|(a, b)| (a.0.min(b.0), a.1.min(b.1)))
            .collect();
        let mut s = Self::zero(self.vars.clone(), window);
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            s.add_term(e.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for v in s.terms.values_mut() {
            *v = v.neg();
        }
        s
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut s = Self::zero(self.vars.clone(), self.window.clone());
        for (e, v) in &self.terms {
            s.add_term(e.clone(), v.mul(c));
        }
        s
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&C::from_rat(r))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_compat(o)?;
        let window: Vec<(i64, i64)> = self
            .window
            .iter()
            .zip(&o.window)
            .map(|(a, b)| {
                let lo = a.0 + b.0;
                let hi = sat_add(a.1, b.0).min(sat_add(b.1, a.0));
                (lo, hi)
            })
            .collect();
        let mut acc: BTreeMap<Vec<i64>, C> = BTreeMap::new();
        let n = self.vars.len();
        let mut e = vec![0i64; n];
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &o.terms {
                for i in 0..n {
                    e[i] = ea[i] + eb[i];
                    if e[i] > window[i].1 {
                        continue 'inner;
                    }
                }
                let p = ca.mul(cb);
                match acc.get_mut(&e) {
                    Some(v) => v.add_assign(&p),
                    None => {
                        acc.insert(e.clone(), p);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(TruncatedSeries { vars: self.vars.clone(), window, terms: acc })
    }

    pub fn pow_int(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut acc = Self::constant(self.vars.clone(), C::one());
        let mut b = base;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Componentwise minimum exponent over all terms.
    fn lowest(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let mut m = it.next()?.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        Some(m)
    }

    /// Splits `self = c * x^m * (1 + r)` where `r` has only nonnegative
    /// exponents and no constant term.
    fn split_leading(&self) -> Result<(C, Vec<i64>, Self)> {
        let m = self.lowest().ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let c = self
            .terms
            .get(&m)
            .cloned()
            .ok_or_else(|| Error::NotInvertible("lowest-order part is not a single monomial".into()))?;
        if self.vars.len() > 1 {
            for (i, (lo, _)) in self.window.iter().enumerate() {
                if *lo != m[i] {
                    return Err(Error::NotInvertible(format!(
                        "valuation bound of {} is not attained",
                        self.vars[i].name
                    )));
                }
            }
        }
        let cinv = c.inv().ok_or_else(|| Error::NotInvertible("leading coefficient has no inverse".into()))?;
        let window: Vec<(i64, i64)> =
            self.window.iter().zip(&m).map(|(&(_, hi), &mi)| (0, if hi >= UNBOUNDED { UNBOUNDED } else { hi - mi })).collect();
        let mut r = Self::zero(self.vars.clone(), window);
        for (e, v) in &self.terms {
            if *e == m {
                continue;
            }
            let d: Vec<i64> = e.iter().zip(&m).map(|(a, b)| a - b).collect();
            r.add_term(d, v.mul(&cinv));
        }
        Ok((c, m, r))
    }

    /// Coefficients of exponents `0..=hi` of a one-variable series.
    fn dense1(&self, hi: i64) -> Vec<C> {
        let mut v = vec![C::zero(); hi as usize + 1];
        for (e, c) in &self.terms {
            if e[0] >= 0 && e[0] <= hi {
                v[e[0] as usize] = c.clone();
            }
        }
        v
    }

    fn from_dense1(vars: Vec<Variable>, hi: i64, v: Vec<C>) -> Self {
        let mut s = Self::zero(vars, vec![(0, hi)]);
        for (i, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                s.terms.insert(vec![i as i64], c);
            }
        }
        s
    }

    /// Multiplies by the monomial `x^m` (grid units).
    pub fn shift_exps(&self, m: &[i64]) -> Self {
        let window: Vec<(i64, i64)> =
            self.window.iter().zip(m).map(|(&(lo, hi), &d)| (lo + d, sat_add(hi, d))).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
            .collect();
        TruncatedSeries { vars: self.vars.clone(), window, terms }
    }

    /// Number of Horner steps needed for a series `r` with positive-degree
    /// terms to exhaust its window.
    fn horner_depth(r: &Self) -> Result<usize> {
        let mut depth = 0i64;
        for &(lo, hi) in &r.window {
            if lo < 0 {
                return Err(Error::NotExpandable("negative exponents present".into()));
            }
            if hi >= UNBOUNDED {
                if !r.is_zero() {
                    return Err(Error::NotExpandable("unbounded window; truncate first".into()));
                }
            } else {
                depth += hi;
            }
        }
        Ok(depth.max(0) as usize)
    }

    /// `1 / self`.
    pub fn invert(&self) -> Result<Self> {
        let (c, m, r) = self.split_leading()?;
        if r.window.iter().any(|w| w.1 >= UNBOUNDED) && !r.is_zero() {
            return Err(Error::NotInvertible("inverse of an exact non-monomial is not a finite series".into()));
        }
        if self.vars.len() == 1 && r.window[0].1 < UNBOUNDED {
            Self::horner_depth(&r)?;
            let hi = r.window[0].1;
            let rv = r.dense1(hi);
            let mut b = vec![C::one()];
            for n in 1..=hi as usize {
                let mut acc = C::zero();
                for k in 1..=n {
                    if !rv[k].is_zero() && !b[n - k].is_zero() {
                        acc.add_assign(&rv[k].mul(&b[n - k]));
                    }
                }
                b.push(acc.neg());
            }
            let acc = Self::from_dense1(self.vars.clone(), hi, b);
            let neg: Vec<i64> = m.iter().map(|x| -x).collect();
            return Ok(acc.scale(&c.inv().unwrap()).shift_exps(&neg));
        }
        let depth = Self::horner_depth(&r)?;
        // 1/(1+r) = 1 - r(1 - r(1 - ...))
        let one = Self::constant(self.vars.clone(), C::one());
        let mut acc = one.clone();
        for _ in 0..depth {
            acc = one.sub(&r.mul(&acc)?)?;
        }
        let acc = acc.truncate(&r.window.iter().map(|w| w.1).collect::<Vec<_>>());
        let cinv = c.inv().unwrap();
        let neg: Vec<i64> = m.iter().map(|x| -x).collect();
        Ok(acc.scale(&cinv).shift_exps(&neg))
    }

    /// `exp(self)`; requires nonnegative exponents and no constant term.
    pub fn exp(&self) -> Result<Self> {
        let zero = vec![0; self.vars.len()];
        if !self.coeff(&zero).is_zero() {
            return Err(Error::NotExpandable("constant term in exp argument".into()));
        }
        if self.vars.len() == 1 && self.window[0].1 < UNBOUNDED {
            Self::horner_depth(self)?;
            // n f_n = sum_k k g_k f_{n-k}
            let hi = self.window[0].1;
            let g = self.dense1(hi);
            let mut f = vec![C::one()];
            for n in 1..=hi as usize {
                let mut acc = C::zero();
                for k in 1..=n {
                    if !g[k].is_zero() && !f[n - k].is_zero() {
                        acc.add_assign(&g[k].mul(&f[n - k]).scale(&Rat::from_integer(BigInt::from(k))));
                    }
                }
                f.push(acc.scale(&Rat::new(BigInt::one(), BigInt::from(n))));
            }
            return Ok(Self::from_dense1(self.vars.clone(), hi, f));
        }
        let depth = Self::horner_depth(self)?;
        let one = Self::constant(self.vars.clone(), C::one());
        let mut acc = one.clone();
        for k in (1..=depth).rev() {
            let t = self.mul(&acc)?.scale_rat(&Rat::new(BigInt::one(), BigInt::from(k)));
            acc = one.add(&t)?;
        }
        let lo = vec![0; self.vars.len()];
        Ok(acc.with_lower_bounds(&lo).truncate(&self.window.iter().map(|w| w.1).collect::<Vec<_>>()))
    }

    /// `log(self)`; requires constant term 1 and nonnegative exponents.
    pub fn log(&self) -> Result<Self> {
        let zero = vec![0; self.vars.len()];
        if !self.coeff(&zero).is_one() {
            return Err(Error::NotExpandable("log argument must have constant term 1".into()));
        }
        let one = Self::constant(self.vars.clone(), C::one());
        let mut r = self.sub(&one)?;
        for (i, w) in r.window.iter_mut().enumerate() {
            w.0 = 0;
            w.1 = self.window[i].1;
        }
        if self.vars.len() == 1 && r.window[0].1 < UNBOUNDED {
            Self::horner_depth(&r)?;
            // n g_n = n f_n - sum_{k<n} k g_k f_{n-k}
            let hi = r.window[0].1;
            let f = r.dense1(hi);
            let mut g = vec![C::zero()];
            for n in 1..=hi as usize {
                let mut acc = f[n].scale(&Rat::from_integer(BigInt::from(n)));
                for k in 1..n {
                    if !g[k].is_zero() && !f[n - k].is_zero() {
                        acc = acc.sub(&g[k].mul(&f[n - k]).scale(&Rat::from_integer(BigInt::from(k))));
                    }
                }
                g.push(acc.scale(&Rat::new(BigInt::one(), BigInt::from(n))));
            }
            return Ok(Self::from_dense1(self.vars.clone(), hi, g));
        }
        let depth = Self::horner_depth(&r)?;
        // log(1+r) = r(1 - r(1/2 - r(1/3 - ...)))
        let mut acc = Self::zero(self.vars.clone(), r.window.clone());
        for k in (1..=depth).rev() {
            let inv_k = Self::constant(self.vars.clone(), C::from_rat(&Rat::new(BigInt::one(), BigInt::from(k))));
            acc = inv_k.sub(&r.mul(&acc)?)?;
        }
        let out = r.mul(&acc)?;
        Ok(out.with_lower_bounds(&vec![0; self.vars.len()]).truncate(&self.window.iter().map(|w| w.1).collect::<Vec<_>>()))
    }

    /// `self^p` for rational `p`, defined when the leading monomial and its
    /// coefficient admit an exact root.
    pub fn pow_rational(&self, p: &Rat) -> Result<Self> {
        if p.is_integer() {
            return self.pow_int(p.to_integer().to_i64().ok_or_else(|| Error::OffGrid("huge exponent".into()))?);
        }
        let (c, m, r) = self.split_leading()?;
        let q = p.denom().to_u32().ok_or_else(|| Error::OffGrid("huge root".into()))?;
        let pn = p.numer().to_i64().unwrap();
        let croot = c.root(q).ok_or_else(|| Error::InexactRoot(format!("{:?}", c)))?;
        let cpow = croot.pow_i(pn).ok_or_else(|| Error::NotInvertible("zero leading coefficient".into()))?;
        let mut mp = Vec::new();
        for (i, x) in m.iter().enumerate() {
            let v = Rat::from_integer(BigInt::from(*x)) * p;
            if !v.is_integer() {
                return Err(Error::OffGrid(format!("{}^{} leaves the grid", self.vars[i].name, v)));
            }
            mp.push(v.to_integer().to_i64().unwrap());
        }
        let body = if r.is_zero() {
            Self::constant(self.vars.clone(), C::one()).truncate(&r.window.iter().map(|w| w.1).collect::<Vec<_>>())
        } else {
            let one = Self::constant(self.vars.clone(), C::one());
            one.add(&r)?.log()?.scale_rat(p).exp()?
        };
        Ok(body.scale(&cpow).shift_exps(&mp))
    }

    /// Keeps terms whose exponent in `var` is an integer congruent to
    /// `residue` modulo `modulus`.
    pub fn extract_progression(&self, var: &str, modulus: i64, residue: i64) -> Result<Self> {
        let i = self.var_index(var).ok_or_else(|| Error::IncompatibleVariables(var.into()))?;
        let d = self.vars[i].denom as i64;
        let mut s = Self::zero(self.vars.clone(), self.window.clone());
        for (e, c) in &self.terms {
            if e[i] % d == 0 && (e[i] / d - residue).rem_euclid(modulus) == 0 {
                s.terms.insert(e.clone(), c.clone());
            }
        }
        Ok(s)
    }

    pub fn map_coeffs<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> TruncatedSeries<D> {
        let mut s = TruncatedSeries::zero(self.vars.clone(), self.window.clone());
        for (e, c) in &self.terms {
            s.add_term(e.clone(), f(c));
        }
        s
    }

    /// Substitutes `var -> image`. Target variables absent from `self` are
    /// appended; grid denominators are refined as needed.
    pub fn substitute_monomial(&self, var: &str, image: &MonomialImage<C>) -> Result<Self> {
        let vi = self.var_index(var).ok_or_else(|| Error::IncompatibleVariables(var.into()))?;
        let dv = self.vars[vi].denom as i64;
        let (vlo, vhi) = self.window[vi];
        // Result variable list: everything but `var`, then new image variables.
        let mut names: Vec<String> = self.vars.iter().filter(|v| v.name != var).map(|v| v.name.clone()).collect();
        for (n, _) in &image.exps {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        let old_pos = |n: &str| self.vars.iter().position(|v| v.name == n && v.name != var);
        let img_exp = |n: &str| -> Rat {
            image.exps.iter().find(|(m, _)| m == n).map(|(_, e)| e.clone()).unwrap_or_else(|| int(0))
        };
        // Actual rational exponents of every term after substitution.
        let mut coeff_pow_cache: BTreeMap<Rat, C> = BTreeMap::new();
        let mut new_terms: Vec<(Vec<Rat>, C)> = Vec::new();
        for (e, c) in &self.terms {
            let k = Rat::new(BigInt::from(e[vi]), BigInt::from(dv));
            let cp = match coeff_pow_cache.get(&k) {
                Some(v) => v.clone(),
                None => {
                    let q = k.denom().to_u32().unwrap();
                    let root = image
                        .coeff
                        .root(q)
                        .ok_or_else(|| Error::InexactRoot(format!("{:?}^(1/{})", image.coeff, q)))?;
                    let v = root
                        .pow_i(k.numer().to_i64().unwrap())
                        .ok_or_else(|| Error::NotInvertible("zero substitution coefficient".into()))?;
                    coeff_pow_cache.insert(k.clone(), v.clone());
                    v
                }
            };
            let exps: Vec<Rat> = names
                .iter()
                .map(|n| {
                    let base = match old_pos(n) {
                        Some(j) => Rat::new(BigInt::from(e[j]), BigInt::from(self.vars[j].denom)),
                        None => int(0),
                    };
                    base + &k * img_exp(n)
                })
                .collect();
            new_terms.push((exps, c.mul(&cp)));
        }
        // Denominators.
        let mut denoms: Vec<BigInt> = names
            .iter()
            .map(|n| BigInt::from(old_pos(n).map(|j| self.vars[j].denom).unwrap_or(1)))
            .collect();
        for (exps, _) in &new_terms {
            for (d, x) in denoms.iter_mut().zip(exps) {
                *d = d.lcm(x.denom());
            }
        }
        // Windows as rationals.
        let step_v = Rat::new(BigInt::one(), BigInt::from(dv));
        let to_rat = |u: i64, d: u32| Rat::new(BigInt::from(u), BigInt::from(d));
        let mut windows: Vec<(Rat, Option<Rat>)> = Vec::new();
        for (ti, n) in names.iter().enumerate() {
            let (tlo, thi) = match old_pos(n) {
                Some(j) => {
                    let (lo, hi) = self.window[j];
                    let d = self.vars[j].denom;
                    (to_rat(lo, d), if hi >= UNBOUNDED { None } else { Some(to_rat(hi, d)) })
                }
                None => (int(0), None),
            };
            let f = img_exp(n);
            let vlo_r = to_rat(vlo, dv as u32);
            let mut lo = tlo.clone();
            let mut hi = thi.clone().map(|h| h + &f * &vlo_r);
            let dt = Rat::new(BigInt::one(), denoms[ti].clone());
            if f.is_positive() {
                lo += &f * &vlo_r;
                if vhi < UNBOUNDED {
                    let cand = &tlo + &f * (to_rat(vhi, dv as u32) + &step_v) - &dt;
                    hi = Some(match hi {
                        Some(h) if h < cand => h,
                        _ => cand,
                    });
                }
            } else if f.is_negative() {
                if vhi < UNBOUNDED {
                    return Err(Error::OffGrid(format!("negative power substitution into truncated variable {}", var)));
                }
                let vmax = self.terms.keys().map(|e| e[vi]).max().unwrap_or(vlo);
                lo += &f * to_rat(vmax, dv as u32);
                hi = thi.clone().map(|h| h + &f * to_rat(vmax, dv as u32));
            }
            windows.push((lo, hi));
        }
        let vars: Vec<Variable> = names
            .iter()
            .zip(&denoms)
            .map(|(n, d)| Variable::with_denom(n, d.to_u32().unwrap()))
            .collect();
        let window: Vec<(i64, i64)> = windows
            .iter()
            .zip(&denoms)
            .map(|((lo, hi), d)| {
                let d = Rat::from_integer(d.clone());
                let l = (lo * &d).ceil().to_integer().to_i64().unwrap();
                let h = match hi {
                    None => UNBOUNDED,
                    Some(h) => (h * &d).floor().to_integer().to_i64().unwrap(),
                };
                (l, h)
            })
            .collect();
        let mut s = Self::zero(vars, window);
        for (exps, c) in new_terms {
            let e: Vec<i64> = exps
                .iter()
                .zip(&denoms)
                .map(|(x, d)| (x * Rat::from_integer(d.clone())).to_integer().to_i64().unwrap())
                .collect();
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// True when both series agree on the common exact window.
    pub fn agrees_with(&self, o: &Self) -> bool {
        if self.vars != o.vars {
            return false;
        }
        let hi: Vec<i64> = self.window.iter().zip(&o.window).map(|(a, b)| a.1.min(b.1)).collect();
        let a = self.truncate(&hi);
        let b = o.truncate(&hi);
        a.terms == b.terms
    }

    pub fn to_json(&self) -> Value {
        let s = |x: i64| if x >= UNBOUNDED { "inf".to_string() } else { x.to_string() };
        let pairs = |v: Vec<(i64, Rat)>| -> Value {
            Value::Array(v.into_iter().map(|(e, c)| json!([e.to_string(), format_rat(&c)])).collect())
        };
        json!({
            "variables": self.vars.iter().map(|v| v.name.clone()).collect::<Vec<_>>(),
            "denominators": self.vars.iter().map(|v| v.denom.to_string()).collect::<Vec<_>>(),
            "window": self.window.iter().map(|(a, b)| json!([s(*a), s(*b)])).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(|(e, c)| {
                let (n, d) = c.to_parts();
                json!([e.iter().map(|x| x.to_string()).collect::<Vec<_>>(), pairs(n), pairs(d)])
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let strs = |v: &Value| -> Result<Vec<String>> {
            v.as_array()
                .ok_or_else(|| bad("expected array"))?
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("expected string")))
                .collect()
        };
        let int_of = |s: &str| -> Result<i64> {
            if s == "inf" {
                Ok(UNBOUNDED)
            } else {
                s.parse::<i64>().map_err(|_| bad("bad integer"))
            }
        };
        let names = strs(&v["variables"])?;
        let denoms = strs(&v["denominators"])?;
        if names.len() != denoms.len() {
            return Err(bad("variables/denominators length mismatch"));
        }
        let vars: Vec<Variable> = names
            .iter()
            .zip(&denoms)
            .map(|(n, d)| Ok(Variable::with_denom(n, d.parse().map_err(|_| bad("bad denominator"))?)))
            .collect::<Result<_>>()?;
        let window: Vec<(i64, i64)> = v["window"]
            .as_array()
            .ok_or_else(|| bad("window"))?
            .iter()
            .map(|w| {
                let p = strs(w)?;
                if p.len() != 2 {
                    return Err(bad("window pair"));
                }
                Ok((int_of(&p[0])?, int_of(&p[1])?))
            })
            .collect::<Result<_>>()?;
        if window.len() != vars.len() {
            return Err(bad("window length"));
        }
        let pairs = |v: &Value| -> Result<Vec<(i64, Rat)>> {
            v.as_array()
                .ok_or_else(|| bad("coefficient list"))?
                .iter()
                .map(|p| {
                    let p = strs(p)?;
                    if p.len() != 2 {
                        return Err(bad("coefficient pair"));
                    }
                    Ok((int_of(&p[0])?, parse_rat(&p[1]).ok_or_else(|| bad("bad rational"))?))
                })
                .collect()
        };
        let mut s = Self::zero(vars, window);
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let t = t.as_array().ok_or_else(|| bad("term"))?;
            if t.len() != 3 {
                return Err(bad("term arity"));
            }
            let e: Vec<i64> = strs(&t[0])?.iter().map(|x| int_of(x)).collect::<Result<_>>()?;
            if e.len() != s.vars.len() {
                return Err(bad("exponent arity"));
            }
            let c = C::from_parts(&pairs(&t[1])?, &pairs(&t[2])?).ok_or_else(|| bad("coefficient"))?;
            if !s.in_window(&e) {
                return Err(bad("term outside window"));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }
}

/// Convenience accessors for one-variable series on the integer grid.
impl<C: Coeff> TruncatedSeries<C> {
    pub fn coeff1(&self, k: i64) -> C {
        self.coeff(&[k])
    }

    pub fn hi1(&self) -> i64 {
        self.window[0].1
    }

    pub fn lo1(&self) -> i64 {
        self.window[0].0
    }
}

/// `sum_k a_k x^k` with rational coefficients, `k` in `[lo, hi]`.
pub fn rat_series(name: &str, lo: i64, hi: i64, f: impl Fn(i64) -> i64) -> TruncatedSeries<Rat> {
    TruncatedSeries::univariate(name, lo, hi, (lo..=hi).map(|k| int(f(k))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, YCoeff};

    fn geom(hi: i64) -> TruncatedSeries<Rat> {
        rat_series("x", 0, hi, |_| 1)
    }

    #[test]
    fn inverse_of_geometric() {
        let g = geom(10);
        let inv = g.invert().unwrap();
        assert_eq!(inv.coeff1(0), int(1));
        assert_eq!(inv.coeff1(1), int(-1));
        for k in 2..=10 {
            assert_eq!(inv.coeff1(k), int(0));
        }
        assert_eq!(inv.hi1(), 10);
    }

    #[test]
    fn exp_log_roundtrip() {
        let x = TruncatedSeries::from_terms(vec![Variable::new("x")], vec![(0, 12)], vec![(vec![1], int(1)), (vec![3], rat(2, 3))]);
        let back = x.exp().unwrap().log().unwrap();
        assert_eq!(back.terms(), x.terms());
    }

    #[test]
    fn half_power_example() {
        // (4 s^2 y u)^{1/2} = 2 s y^{1/2} u^{1/2}
        let vars = vec![Variable::new("s"), Variable::with_denom("u", 2)];
        let a = TruncatedSeries::from_terms(vars, vec![(2, 2), (2, 2)], vec![(vec![2, 2], YCoeff::h_monomial(int(4), 2))]);
        let r = a.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(r.coeff(&[1, 1]), YCoeff::h_monomial(int(2), 1));
    }

    #[test]
    fn substitute_q_to_x4() {
        let q = geom(5);
        let img = MonomialImage { coeff: int(2), exps: vec![("x".into(), int(4))] };
        let mut q = q;
        q.vars[0].name = "q".into();
        let s = q.substitute_monomial("q", &img).unwrap();
        assert_eq!(s.vars()[0].name, "x");
        assert_eq!(s.window()[0], (0, 23));
        assert_eq!(s.coeff1(8), int(4));
        assert_eq!(s.coeff1(7), int(0));
    }
}
