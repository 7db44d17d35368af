//! Shared machinery for evaluating fixed-point contributions.
//!
//! Torus weights are specialized along a line `eps1 = p*eps, eps2 = r*eps`.
//! A character `t1^a t2^b g^k` then has weight `k*g + w*eps` with
//! `w = a*p + b*r`; `g` is the weight of the auxiliary `C*`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{int, Coeff, LaurentPoly, Rat};
use crate::series::{TruncatedSeries, Variable};
use crate::toric::EquivChar;

/// A generic line through the origin of the torus Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EpsSpec {
    pub p: Rat,
    pub r: Rat,
}

impl EpsSpec {
    pub fn new(p: Rat, r: Rat) -> Self {
        EpsSpec { p, r }
    }

    /// Deterministic draw of small rationals from `(seed, attempt)`.
    pub fn draw(seed: u64, attempt: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(attempt as u64));
        let pick = |rng: &mut ChaCha8Rng| -> Rat {
            let mut n: i64 = 0;
            while n == 0 {
                n = rng.random_range(-13..=13);
            }
            let d: i64 = rng.random_range(1..=7);
            Rat::new(BigInt::from(n), BigInt::from(d))
        };
        loop {
            let p = pick(&mut rng);
            let r = pick(&mut rng);
            if p != r && p != -r.clone() {
                return EpsSpec { p, r };
            }
        }
    }

    pub fn label(&self) -> String {
        format!("{}:{}", self.p, self.r)
    }

    pub fn omega(&self, a: i64, b: i64) -> Rat {
        &self.p * int(a) + &self.r * int(b)
    }
}

/// A specialized character term: multiplicity `c` of weight `k*g + w*eps`.
#[derive(Debug, Clone)]
pub struct SpecWeight {
    pub k: i64,
    pub w: Rat,
    pub c: i64,
    pub trivial_torus: bool,
}

pub fn specialize(ch: &EquivChar, eps: &EpsSpec) -> Vec<SpecWeight> {
    ch.terms()
        .map(|(wt, c)| SpecWeight { k: wt[2], w: eps.omega(wt[0], wt[1]), c: *c, trivial_torus: wt[0] == 0 && wt[1] == 0 })
        .collect()
}

/// Errors out when a nontrivial torus character lands on weight zero.
pub fn check_generic(ws: &[SpecWeight], eps: &EpsSpec) -> Result<()> {
    for w in ws {
        if w.k == 0 && !w.trivial_torus && w.w.is_zero() {
            return Err(Error::DegenerateSpecialization(eps.label()));
        }
    }
    Ok(())
}

/// Coefficients `l_1, l_2, ...` of `log(w / (1 - e^{-w})) = sum l_j w^j`.
pub fn log_todd_coeffs(jmax: usize) -> Vec<Rat> {
    let hi = jmax as i64 + 1;
    // (1 - e^{-w}) / w = sum_{k>=0} (-1)^k w^k / (k+1)!
    let mut fact = int(1);
    let mut coeffs = Vec::new();
    for k in 0..=hi {
        fact *= int(k + 1);
        let sign = if k % 2 == 0 { int(1) } else { -int(1) };
        coeffs.push(sign / &fact);
    }
    let s = TruncatedSeries::univariate("w", 0, hi, coeffs);
    let l = s.log().expect("constant term 1").neg();
    (0..=jmax as i64).map(|j| l.coeff1(j)).collect()
}

/// Coefficients of `log(1 + k(1 - e^{-w}))` as polynomials in `k`.
pub fn log_kappa_coeffs(jmax: usize) -> Vec<LaurentPoly> {
    let hi = jmax as i64;
    let mut fact = int(1);
    let mut u = vec![LaurentPoly::zero()];
    for k in 1..=hi {
        fact *= int(k);
        let sign = if k % 2 == 1 { int(1) } else { -int(1) };
        // 1 - e^{-w} = sum_{k>=1} (-1)^{k+1} w^k / k!
        u.push(LaurentPoly::monomial(sign / &fact, 1));
    }
    let mut coeffs = u;
    coeffs[0] = LaurentPoly::one();
    let s = TruncatedSeries::univariate("w", 0, hi, coeffs);
    let l = s.log().expect("constant term 1");
    (0..=hi).map(|j| l.coeff1(j)).collect()
}

/// Dense truncated polynomials in one variable.
pub fn poly_mul<C: Coeff>(a: &[C], b: &[C], len: usize) -> Vec<C> {
    let mut out = vec![C::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if !y.is_zero() {
                out[i + j].add_assign(&x.mul(y));
            }
        }
    }
    out
}

/// `exp(g)` for a dense univariate `g` with `g[0] = 0`, truncated to `len`.
pub fn poly_exp<C: Coeff>(g: &[C], len: usize) -> Vec<C> {
    let mut e = vec![C::zero(); len];
    if len == 0 {
        return e;
    }
    e[0] = C::one();
    for n in 1..len {
        let mut acc = C::zero();
        for k in 1..=n {
            if k < g.len() && !g[k].is_zero() {
                acc.add_assign(&g[k].mul(&e[n - k]).scale(&int(k as i64)));
            }
        }
        e[n] = acc.scale(&Rat::new(BigInt::from(1), BigInt::from(n)));
    }
    e
}

/// `exp(G)` for `G[a][j]` (coefficient of `e^a s^j`), truncated to
/// `a < alen`, `j < slen`. Requires `G[0][0] = 0`.
pub fn biv_exp<C: Coeff>(g: &[Vec<C>], alen: usize, slen: usize) -> Vec<Vec<C>> {
    // Split off the s-free part.
    let pure: Vec<C> = (0..alen).map(|a| g[a][0].clone()).collect();
    let e0 = poly_exp(&pure, alen);
    // H_j(e) for j >= 1, then j F_j = sum_i i H_i F_{j-i} in C[e]/e^alen.
    let h: Vec<Vec<C>> = (0..slen).map(|j| (0..alen).map(|a| g[a][j].clone()).collect()).collect();
    let mut f: Vec<Vec<C>> = vec![vec![C::zero(); alen]; slen];
    if slen > 0 {
        f[0][0] = C::one();
    }
    for j in 1..slen {
        let mut acc = vec![C::zero(); alen];
        for i in 1..=j {
            if h[i].iter().all(|c| c.is_zero()) {
                continue;
            }
            let p = poly_mul(&h[i], &f[j - i], alen);
            let w = int(i as i64);
            for (x, y) in acc.iter_mut().zip(p) {
                x.add_assign(&y.scale(&w));
            }
        }
        let inv = Rat::new(BigInt::from(1), BigInt::from(j));
        f[j] = acc.into_iter().map(|c| c.scale(&inv)).collect();
    }
    // Result indexed [a][j].
    let mut out = vec![vec![C::zero(); slen]; alen];
    for j in 0..slen {
        let p = poly_mul(&e0, &f[j], alen);
        for (a, c) in p.into_iter().enumerate() {
            out[a][j] = c;
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> Rat {
    let mut r = int(1);
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

pub fn rat_pow(x: &Rat, n: usize) -> Rat {
    let mut r = int(1);
    for _ in 0..n {
        r *= x;
    }
    r
}

/// One-variable series in `s` from `val` with dense coefficients.
pub fn s_series<C: Coeff>(val: i64, coeffs: Vec<C>) -> TruncatedSeries<C> {
    let hi = val + coeffs.len() as i64 - 1;
    TruncatedSeries::univariate("s", val, hi, coeffs)
}

pub fn s_var() -> Vec<Variable> {
    vec![Variable::new("s")]
}
