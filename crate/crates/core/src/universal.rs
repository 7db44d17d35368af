//! Extraction of universal series from generating series on a basis of
//! examples: if `Z(w) = prod_j A_j^{w_j}` for every intersection vector `w`,
//! then `log A_j = sum_i (W^{-1})_{ij} log Z(w_i)` where `W` has columns `w_i`.

use crate::error::{Error, Result};
use crate::exact::{int, Coeff, Rat};
use crate::series::TruncatedSeries;

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert_matrix(m: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n).map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect()).collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != int(0))
            .ok_or_else(|| Error::NotInvertible("intersection matrix is singular".into()))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && a[r][col] != int(0) {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Ok(inv)
}

/// Logarithms of a family of universal series together with the data they
/// were extracted from.
#[derive(Debug, Clone)]
pub struct UniversalSeries<C: Coeff> {
    /// Intersection vectors of the input examples, one per row.
    pub vectors: Vec<Vec<i64>>,
    /// `log A_j`.
    pub logs: Vec<TruncatedSeries<C>>,
}

impl<C: Coeff> UniversalSeries<C> {
    /// Solves for `log A_j` from the series `zs[i] = Z(vectors[i])`.
    pub fn solve(vectors: Vec<Vec<i64>>, zs: &[TruncatedSeries<C>]) -> Result<Self> {
        let n = vectors.len();
        if zs.len() != n || vectors.iter().any(|v| v.len() != n) {
            return Err(Error::Config(format!("need {} examples with vectors of length {}", n, n)));
        }
        // W[r][i] = w_i[r]
        let w: Vec<Vec<Rat>> = (0..n).map(|r| (0..n).map(|i| int(vectors[i][r])).collect()).collect();
        let m = invert_matrix(&w)?;
        let logz = zs.iter().map(|z| z.log()).collect::<Result<Vec<_>>>()?;
        let mut logs = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc: Option<TruncatedSeries<C>> = None;
            for i in 0..n {
                if m[i][j] == int(0) {
                    continue;
                }
                let t = logz[i].scale_rat(&m[i][j]);
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t)?,
                });
            }
            logs.push(acc.unwrap_or_else(|| logz[0].scale_rat(&int(0))));
        }
        Ok(UniversalSeries { vectors, logs })
    }

    /// `sum_j w_j log A_j`.
    pub fn log_at(&self, w: &[Rat]) -> Result<TruncatedSeries<C>> {
        if w.len() != self.logs.len() {
            return Err(Error::Config("intersection vector length".into()));
        }
        let mut acc = self.logs[0].scale_rat(&w[0]);
        for (l, c) in self.logs.iter().zip(w).skip(1) {
            acc = acc.add(&l.scale_rat(c))?;
        }
        Ok(acc)
    }

    /// `prod_j A_j^{w_j}`.
    pub fn eval_at(&self, w: &[i64]) -> Result<TruncatedSeries<C>> {
        let w: Vec<Rat> = w.iter().map(|x| int(*x)).collect();
        self.log_at(&w)?.exp()
    }

    /// `A_j` itself.
    pub fn series(&self, j: usize) -> Result<TruncatedSeries<C>> {
        self.logs[j].exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m: Vec<Vec<Rat>> = vec![vec![int(2), int(1)], vec![int(7), int(4)]];
        let i = invert_matrix(&m).unwrap();
        assert_eq!(i, vec![vec![int(4), int(-1)], vec![int(-7), int(2)]]);
        assert!(invert_matrix(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_err());
    }
}
