//! Torus-fixed points of Hilbert schemes of points and their characters.
//!
//! A fixed point of `S^[n]` is a tuple of partitions, one per chart. A
//! partition `p` (nonincreasing row lengths) encodes the monomial ideal whose
//! complement is `{x^a y^b : a < p[b]}`; the box `x^a y^b` has character
//! `a*u + b*v` in the chart's coordinate characters.

use super::character::{EquivChar, Weight};
use super::model::{Chart, EquivDivisor, ToricSurfaceModel};
use crate::error::Result;

pub type Partition = Vec<u32>;

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn boxes(p: &Partition) -> impl Iterator<Item = (i64, i64)> + '_ {
    p.iter().enumerate().flat_map(|(b, &len)| (0..len as i64).map(move |a| (a, b as i64)))
}

/// Minimal monomial generators `x^a y^b` of the ideal of `p`.
pub fn generators(p: &Partition) -> Vec<(i64, i64)> {
    let mut g = Vec::new();
    let rows = p.len();
    for b in 0..=rows {
        let len = if b < rows { p[b] as i64 } else { 0 };
        let prev = if b == 0 { i64::MAX } else { p[b - 1] as i64 };
        if len < prev {
            g.push((len, b as i64));
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HilbFixedPoint {
    pub parts: Vec<Partition>,
}

impl HilbFixedPoint {
    pub fn empty(charts: usize) -> Self {
        HilbFixedPoint { parts: vec![Vec::new(); charts] }
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().map(|p| p.iter().sum::<u32>()).sum()
    }

    /// Number of points supported at each chart.
    pub fn local_sizes(&self) -> Vec<i64> {
        self.parts.iter().map(|p| p.iter().sum::<u32>() as i64).collect()
    }
}

/// All torus-fixed points of `S^[n]`.
pub fn fixed_points(model: &ToricSurfaceModel, n: u32) -> Vec<HilbFixedPoint> {
    let charts = model.num_charts();
    let parts_by_size: Vec<Vec<Partition>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    fn rec(
        i: usize,
        left: u32,
        charts: usize,
        pbs: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<HilbFixedPoint>,
    ) {
        if i == charts - 1 {
            for p in &pbs[left as usize] {
                cur.push(p.clone());
                out.push(HilbFixedPoint { parts: cur.clone() });
                cur.pop();
            }
            return;
        }
        for k in 0..=left {
            for p in &pbs[k as usize] {
                cur.push(p.clone());
                rec(i + 1, left - k, charts, pbs, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, n, charts, &parts_by_size, &mut Vec::new(), &mut out);
    out
}

fn box_weight(c: &Chart, a: i64, b: i64) -> Weight {
    [a * c.u[0] + b * c.v[0], a * c.u[1] + b * c.v[1], 0]
}

/// Local character of `O_Z` at a chart.
pub fn local_struct_char(chart: &Chart, p: &Partition) -> EquivChar {
    EquivChar::from_terms(boxes(p).map(|(a, b)| (box_weight(chart, a, b), 1)))
}

fn one_minus_dual(w: [i64; 2]) -> EquivChar {
    EquivChar::one().sub(&EquivChar::torus(-w[0], -w[1]))
}

fn lin_weight(d: &EquivDivisor, chart: usize) -> Weight {
    [d.lin[chart][0], d.lin[chart][1], 0]
}

/// Character of `H^0(O_Z(D))`.
pub fn struct_sheaf_char(model: &ToricSurfaceModel, z: &HilbFixedPoint, d: &EquivDivisor) -> EquivChar {
    let mut acc = EquivChar::zero();
    for (i, c) in model.charts.iter().enumerate() {
        acc = acc.add(&local_struct_char(c, &z.parts[i]).twist(lin_weight(d, i)));
    }
    acc
}

/// Local `chi(O_Z, O_W)` on a chart: `conj(Q_Z) Q_W (1 - t^-u)(1 - t^-v)`.
pub fn local_ext_pair(chart: &Chart, z: &Partition, w: &Partition) -> EquivChar {
    local_struct_char(chart, z)
        .dual()
        .mul(&local_struct_char(chart, w))
        .mul(&one_minus_dual(chart.u))
        .mul(&one_minus_dual(chart.v))
}

/// `chi(O_Z, O_W(D)) = sum_i (-1)^i Ext^i(O_Z, O_W(D))` as a character.
pub fn ext_pair_char(model: &ToricSurfaceModel, z: &HilbFixedPoint, w: &HilbFixedPoint, d: &EquivDivisor) -> EquivChar {
    let mut acc = EquivChar::zero();
    for (i, c) in model.charts.iter().enumerate() {
        acc = acc.add(&local_ext_pair(c, &z.parts[i], &w.parts[i]).twist(lin_weight(d, i)));
    }
    acc
}

/// `chi(O_Z, O(D))`.
pub fn ext_to_line_char(model: &ToricSurfaceModel, z: &HilbFixedPoint, d: &EquivDivisor) -> EquivChar {
    let mut acc = EquivChar::zero();
    for (i, c) in model.charts.iter().enumerate() {
        let kdual = [-(c.u[0] + c.v[0]), -(c.u[1] + c.v[1]), 0];
        acc = acc.add(&local_struct_char(c, &z.parts[i]).dual().twist(kdual).twist(lin_weight(d, i)));
    }
    acc
}

/// `chi(I_Z, I_W(D))` via the four-term decomposition.
pub fn ideal_pair_char(model: &ToricSurfaceModel, z: &HilbFixedPoint, w: &HilbFixedPoint, d: &EquivDivisor) -> Result<EquivChar> {
    Ok(model
        .rgamma(d)?
        .sub(&struct_sheaf_char(model, w, d))
        .sub(&ext_to_line_char(model, z, d))
        .add(&ext_pair_char(model, z, w, d)))
}

/// Tangent space `Ext^1(I_Z, I_Z)` as a genuine character of rank `2n`.
pub fn tangent_char(model: &ToricSurfaceModel, z: &HilbFixedPoint) -> EquivChar {
    let o = model.trivial();
    struct_sheaf_char(model, z, &o).add(&ext_to_line_char(model, z, &o)).sub(&ext_pair_char(model, z, z, &o))
}

/// Local `chi(O_Z, O_W)` from the Taylor resolution of the monomial ideal of
/// `Z`, independent of the closed formula used by [`local_ext_pair`].
pub fn taylor_ext_pair(chart: &Chart, z: &Partition, w: &Partition) -> EquivChar {
    let gens = generators(z);
    let qw = local_struct_char(chart, w);
    let mut acc = EquivChar::zero();
    for mask in 0u32..(1 << gens.len()) {
        let mut lcm = (0i64, 0i64);
        let mut count = 0;
        for (i, g) in gens.iter().enumerate() {
            if mask & (1 << i) != 0 {
                lcm = (lcm.0.max(g.0), lcm.1.max(g.1));
                count += 1;
            }
        }
        let sign = if count % 2 == 0 { 1 } else { -1 };
        let wt = box_weight(chart, lcm.0, lcm.1);
        acc = acc.add(&qw.twist([-wt[0], -wt[1], 0]).scale(sign));
    }
    acc
}
