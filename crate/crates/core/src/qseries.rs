//! One-variable q-series building blocks on a fixed truncation grid: theta
//! functions, the eta product, Eisenstein-type divisor sums and general
//! infinite products accumulated through their logarithms.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact::{int, rat, Coeff, Rat, YCoeff};
use crate::series::{TruncatedSeries, Variable};

/// Variable name, grid denominator and the last exact exponent (grid units).
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub var: String,
    pub denom: u32,
    pub hi: i64,
}

impl Grid {
    /// Series in `var` known modulo `var^n` on the `1/denom` grid.
    pub fn new(var: &str, denom: u32, n: i64) -> Self {
        Grid { var: var.to_string(), denom, hi: n * denom as i64 - 1 }
    }

    /// Same grid with `extra` more exact units.
    pub fn extended(&self, extra: i64) -> Self {
        Grid { hi: self.hi + extra, ..self.clone() }
    }

    pub fn vars(&self) -> Vec<Variable> {
        vec![Variable::with_denom(&self.var, self.denom)]
    }

    pub fn series<C: Coeff>(&self, lo: i64, terms: BTreeMap<i64, C>) -> TruncatedSeries<C> {
        TruncatedSeries::from_terms(self.vars(), vec![(lo, self.hi)], terms.into_iter().map(|(e, c)| (vec![e], c)))
    }

    pub fn zero<C: Coeff>(&self) -> TruncatedSeries<C> {
        TruncatedSeries::zero(self.vars(), vec![(0, self.hi)])
    }

    pub fn constant<C: Coeff>(&self, c: C) -> TruncatedSeries<C> {
        let mut s = self.zero();
        s.add_term(vec![0], c);
        s
    }

    /// `c * var^e` with `e` in grid units, truncated like everything else.
    pub fn monomial<C: Coeff>(&self, c: C, e: i64) -> TruncatedSeries<C> {
        let mut s = TruncatedSeries::zero(self.vars(), vec![(e, self.hi.max(e))]);
        if e <= self.hi {
            s.add_term(vec![e], c);
        }
        s
    }
}

/// Accumulates `log prod (1 - c var^m)^w`.
#[derive(Clone, Debug)]
pub struct LogProduct<C: Coeff> {
    grid: Grid,
    acc: BTreeMap<i64, C>,
}

impl<C: Coeff> LogProduct<C> {
    pub fn new(grid: &Grid) -> Self {
        LogProduct { grid: grid.clone(), acc: BTreeMap::new() }
    }

    /// Multiplies by `(1 - c var^m)^w`, `m > 0` in grid units.
    pub fn factor(&mut self, c: &C, m: i64, w: &Rat) -> &mut Self {
        assert!(m > 0);
        if w == &int(0) || c.is_zero() {
            return self;
        }
        let mut cl = c.clone();
        let mut l = 1;
        while m * l <= self.grid.hi {
            let t = cl.scale(&(-w / int(l)));
            self.acc.entry(m * l).or_insert_with(C::zero).add_assign(&t);
            cl = cl.mul(c);
            l += 1;
        }
        self
    }

    /// Multiplies by `(1 + c var^m)^w`.
    pub fn factor_plus(&mut self, c: &C, m: i64, w: &Rat) -> &mut Self {
        self.factor(&c.neg(), m, w)
    }

    /// Multiplies by `prod_{n >= 1} (1 - c(n) var^{m(n)})^{w(n)}` over all `n`
    /// with `m(n)` inside the grid; `m` must be increasing.
    pub fn product<M, F, W>(&mut self, m: M, c: F, w: W) -> &mut Self
    where
        M: Fn(i64) -> i64,
        F: Fn(i64) -> C,
        W: Fn(i64) -> Rat,
    {
        let mut n = 1;
        while m(n) <= self.grid.hi {
            self.factor(&c(n), m(n), &w(n));
            n += 1;
        }
        self
    }

    /// Adds `w` times another accumulated logarithm.
    pub fn absorb(&mut self, o: &LogProduct<C>, w: &Rat) -> &mut Self {
        for (e, c) in &o.acc {
            self.acc.entry(*e).or_insert_with(C::zero).add_assign(&c.scale(w));
        }
        self
    }

    pub fn log(&self) -> TruncatedSeries<C> {
        self.grid.series(0, self.acc.iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (*e, c.clone())).collect())
    }

    pub fn exp(&self) -> Result<TruncatedSeries<C>> {
        self.log().exp()
    }
}

/// `sum_{n in Z} sign^{n^2} var^{s n^2} z^n`, `s` in grid units.
pub fn theta3<C: Coeff>(grid: &Grid, s: i64, sign: i64, z: &C) -> TruncatedSeries<C> {
    let zi = z.inv().expect("theta3: z must be invertible");
    let mut t = BTreeMap::new();
    t.insert(0, C::one());
    let mut n = 1;
    while s * n * n <= grid.hi {
        let sg = if sign < 0 && n % 2 == 1 { rat(-1, 1) } else { int(1) };
        let c = z.pow_i(n).unwrap().add(&zi.pow_i(n).unwrap()).scale(&sg);
        t.insert(s * n * n, c);
        n += 1;
    }
    grid.series(0, t)
}

/// `sum_{n in Z + 1/2} var^{s n^2} z^n` with `zh = z^{1/2}`; `s` in grid
/// units must be divisible by 4.
pub fn theta2<C: Coeff>(grid: &Grid, s: i64, zh: &C) -> TruncatedSeries<C> {
    assert!(s % 4 == 0, "theta2 needs s n^2 on the grid");
    let mut t = BTreeMap::new();
    theta2_terms(grid, s, zh, s / 4, &mut t);
    grid.series(s / 4, t)
}

fn theta2_terms<C: Coeff>(grid: &Grid, s: i64, zh: &C, quarter: i64, t: &mut BTreeMap<i64, C>) {
    let zi = zh.inv().expect("theta2: z must be invertible");
    // n = m + 1/2 and n = -m - 1/2 share the exponent s (m^2 + m) + s/4.
    let mut m = 0;
    while s * (m * m + m) + quarter <= grid.hi {
        let c = zh.pow_i(2 * m + 1).unwrap().add(&zi.pow_i(2 * m + 1).unwrap());
        t.insert(s * (m * m + m) + quarter, c);
        m += 1;
    }
}

/// `theta2(var^s, z) / (var^{s/4} (z^{1/2} + z^{-1/2}))`, which has constant
/// term 1 and needs no quarter grid.
pub fn theta2_reduced(grid: &Grid, s: i64, zh: &YCoeff) -> Result<TruncatedSeries<YCoeff>> {
    let mut t = BTreeMap::new();
    theta2_terms(grid, s, zh, 0, &mut t);
    let norm = zh.add(&zh.inv().unwrap()).inv().unwrap();
    Ok(grid.series(0, t).scale(&norm))
}

/// `prod_{n >= 1} (1 - var^{s n})`.
pub fn eta_bar<C: Coeff>(grid: &Grid, s: i64) -> Result<TruncatedSeries<C>> {
    LogProduct::new(grid).product(|n| s * n, |_| C::one(), |_| int(1)).exp()
}

fn sigma1(d: i64) -> i64 {
    (1..=d).filter(|k| d % k == 0).sum()
}

/// `sum_{d >= 1} d^p sigma_1(d) var^{s d}`; `p = 0` gives `G2 + 1/24` and
/// `p = 1` its `q d/dq` derivative.
pub fn divisor_sum<C: Coeff>(grid: &Grid, s: i64, p: u32) -> TruncatedSeries<C> {
    let mut t = BTreeMap::new();
    let mut d = 1;
    while s * d <= grid.hi {
        t.insert(s * d, C::from_rat(&int(d.pow(p) * sigma1(d))));
        d += 1;
    }
    grid.series(0, t)
}

pub fn g2_bar<C: Coeff>(grid: &Grid, s: i64) -> TruncatedSeries<C> {
    divisor_sum(grid, s, 0)
}

/// `G2(q) = -1/24 + sum sigma_1(d) q^d` at `q = var^s`.
pub fn g2<C: Coeff>(grid: &Grid, s: i64) -> Result<TruncatedSeries<C>> {
    g2_bar::<C>(grid, s).add(&grid.constant(C::from_rat(&rat(-1, 24))))
}

/// `(D G2)(var^s)` with `D = q d/dq`.
pub fn dg2<C: Coeff>(grid: &Grid, s: i64) -> TruncatedSeries<C> {
    divisor_sum(grid, s, 1)
}

/// `var -> sign * var^k` on a one-variable series (`k >= 1`).
pub fn rescale<C: Coeff>(s: &TruncatedSeries<C>, k: i64, sign: i64) -> TruncatedSeries<C> {
    let (lo, hi) = s.window()[0];
    let hi = if hi >= crate::series::UNBOUNDED { hi } else { hi * k + (k - 1) };
    let terms = s.terms().iter().map(|(e, c)| {
        let c = if sign < 0 && e[0] % 2 != 0 { c.neg() } else { c.clone() };
        (vec![e[0] * k], c)
    });
    TruncatedSeries::from_terms(s.vars().to_vec(), vec![(lo * k, hi)], terms)
}

/// Renames the single variable of a series.
pub fn rename<C: Coeff>(s: &TruncatedSeries<C>, var: &str) -> TruncatedSeries<C> {
    let v = Variable::with_denom(var, s.vars()[0].denom);
    TruncatedSeries::from_terms(vec![v], s.window().to_vec(), s.terms().iter().map(|(e, c)| (e.clone(), c.clone())))
}

/// Coefficient of `var^k` (integer exponent), failing when it lies beyond the
/// exact window.
pub fn coeff_at<C: Coeff>(s: &TruncatedSeries<C>, k: i64) -> Result<C> {
    let d = s.vars()[0].denom as i64;
    s.checked_coeff(&[k * d])
}

/// `y -> 1/y` on every coefficient.
pub fn invert_y(s: &TruncatedSeries<YCoeff>) -> TruncatedSeries<YCoeff> {
    s.map_coeffs(|c| c.invert_y())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta3_low_terms() {
        let g = Grid::new("x", 1, 10);
        let h = YCoeff::h_pow(2);
        let t = theta3(&g, 1, 1, &h);
        assert_eq!(t.coeff1(1), YCoeff::y_pow(1).add(&YCoeff::y_pow(-1)));
        assert_eq!(t.coeff1(4), YCoeff::y_pow(2).add(&YCoeff::y_pow(-2)));
        assert!(t.coeff1(2).is_zero());
    }

    #[test]
    fn theta2_lowest_term_on_quarter_grid() {
        let g = Grid::new("x", 4, 6);
        let t = theta2(&g, 4, &YCoeff::h_pow(1));
        assert_eq!(t.lo1(), 1);
        assert_eq!(t.coeff1(1), YCoeff::h_pow(1).add(&YCoeff::h_pow(-1)));
        assert_eq!(t.coeff1(9), YCoeff::h_pow(3).add(&YCoeff::h_pow(-3)));
    }

    #[test]
    fn divisor_sums() {
        let g = Grid::new("q", 1, 5);
        let s = g2_bar::<Rat>(&g, 1);
        assert_eq!((1..=4).map(|k| s.coeff1(k)).collect::<Vec<_>>(), vec![int(1), int(3), int(4), int(7)]);
        assert_eq!(g2::<Rat>(&g, 1).unwrap().coeff1(0), rat(-1, 24));
    }

    #[test]
    fn eta_is_pentagonal() {
        let g = Grid::new("x", 1, 30);
        let e = eta_bar::<Rat>(&g, 1).unwrap();
        let mut expect = BTreeMap::new();
        for k in -5i64..=5 {
            let p = k * (3 * k - 1) / 2;
            if p < 30 {
                expect.insert(p, if k % 2 == 0 { int(1) } else { int(-1) });
            }
        }
        for n in 0..30 {
            assert_eq!(e.coeff1(n), expect.get(&n).cloned().unwrap_or(int(0)), "n={}", n);
        }
    }
}
