//! Browser bindings: closed-form tables, series arithmetic and a small
//! monopole localization. Every function returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use verlinde_core::checks::{self, Formula, TableSeries, Target};
use verlinde_core::exact::{format_rat, int, parse_rat, Rat};
use verlinde_core::lattice::{parse_class, SurfaceLattice};
use verlinde_core::monopole::{self, MonopoleRequest};
use verlinde_core::series::TruncatedSeries;
use verlinde_core::{Error, Result};

/// Largest q-order accepted by [`localized_c`]; order 3 already takes a
/// few seconds in a browser.
pub const MAX_LOCAL_ORDER: usize = 3;

fn to_js(r: Result<Value>) -> std::result::Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e.to_string()))
}

fn class(s: &str, rank: usize) -> Result<Vec<i64>> {
    let mut v = parse_class(s, rank)?;
    if v.len() < rank {
        v.resize(rank, 0);
    }
    Ok(v)
}

pub fn table_json(lattice: &str, l: &str, c1: &str, formula: &str, max_vd: i64) -> Result<Value> {
    let lat = SurfaceLattice::builtin(lattice)?;
    let r = lat.rank();
    if !(0..=40).contains(&max_vd) {
        return Err(Error::Config("max_vd must lie in 0..=40".into()));
    }
    let t = Target { l: class(l, r)?, c1: class(c1, r)?, lattice: lat, max_vd, strong_form: true };
    t.lattice.check_class(&t.l)?;
    t.lattice.check_class(&t.c1)?;
    let f: Formula = formula.parse()?;
    let (series, rows) = checks::table(f, &t, &int(1))?;
    let series = match series {
        TableSeries::X(s) => s.to_json(),
        TableSeries::Y(s) => s.to_json(),
    };
    Ok(json!({
        "lattice": t.lattice.name,
        "rows": rows.iter().map(|(vd, v)| json!({ "vd": vd.to_string(), "value": v })).collect::<Vec<_>>(),
        "series": series,
    }))
}

/// Invariants of a closed formula (`conj1`, `conj2`, `conj3` or `gn`) on a
/// shipped lattice, one row per degree.
#[wasm_bindgen]
pub fn closed_table(lattice: &str, l: &str, c1: &str, formula: &str, max_vd: i32) -> std::result::Result<String, JsError> {
    to_js(table_json(lattice, l, c1, formula, max_vd as i64))
}

fn parse_coeffs(s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .map(|x| parse_rat(x.trim()).ok_or_else(|| Error::Parse(format!("bad coefficient {:?}", x))))
        .collect()
}

pub fn series_json(coeffs: &str, op: &str, arg: &str) -> Result<Value> {
    let c = parse_coeffs(coeffs)?;
    if c.is_empty() || c.len() > 64 {
        return Err(Error::Config("give between 1 and 64 coefficients".into()));
    }
    let s = TruncatedSeries::univariate("x", 0, c.len() as i64 - 1, c);
    let out = match op {
        "inverse" => s.invert()?,
        "log" => s.log()?,
        "exp" => s.exp()?,
        "pow" => {
            let p = parse_rat(arg.trim()).ok_or_else(|| Error::Parse(format!("bad exponent {:?}", arg)))?;
            s.pow_rational(&p)?
        }
        _ => return Err(Error::Config(format!("unknown operation {:?}", op))),
    };
    let coeffs: Vec<String> = (out.lo1()..=out.hi1()).map(|k| format_rat(&out.coeff1(k))).collect();
    Ok(json!({ "lo": out.lo1().to_string(), "coefficients": coeffs }))
}

/// `1/f`, `log f`, `exp f` or `f^p` of `f = c0 + c1 x + ...` known mod
/// `x^{len}`; coefficients are comma-separated rationals.
#[wasm_bindgen]
pub fn series_op(coeffs: &str, op: &str, arg: &str) -> std::result::Result<String, JsError> {
    to_js(series_json(coeffs, op, arg))
}

pub fn localized_json(order: usize) -> Result<Value> {
    if !(1..=MAX_LOCAL_ORDER).contains(&order) {
        return Err(Error::Config(format!("order must lie in 1..={}", MAX_LOCAL_ORDER)));
    }
    let (u, _) = monopole::solve_universal_b(&MonopoleRequest { order, seed: 0 })?;
    let local = monopole::c_from_b(&u)?;
    let closed = verlinde_core::closed::closed_c(order as i64)?;
    let series: Vec<Value> = local
        .iter()
        .zip(&closed)
        .enumerate()
        .map(|(i, (a, b))| {
            let terms: Vec<String> = (0..order as i64).map(|k| a.coeff1(k).to_string()).collect();
            json!({ "name": format!("C{}", i + 1), "q": terms, "matches_closed_form": a == b })
        })
        .collect();
    Ok(json!({ "order": order.to_string(), "series": series }))
}

/// Localizes the seven reference tuples to q-order `order`, extracts
/// `C1..C6` and compares them with the closed product formulas.
#[wasm_bindgen]
pub fn localized_c(order: u32) -> std::result::Result<String, JsError> {
    to_js(localized_json(order as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_table_rows() {
        let v = table_json("k3", "0", "0", "conj1", 4).unwrap();
        let rows: Vec<&str> = v["rows"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
        assert_eq!(rows, ["1", "0", "2", "0", "3"]);
    }

    #[test]
    fn geometric_series_inverse() {
        let v = series_json("1,-1", "inverse", "").unwrap();
        assert_eq!(v["coefficients"], json!(["1", "1"]));
        let v = series_json("1,2,1", "pow", "1/2").unwrap();
        assert_eq!(v["coefficients"], json!(["1", "1", "0"]));
        assert!(series_json("0,1", "log", "").is_err());
    }

    #[test]
    fn small_localization_matches() {
        let v = localized_json(2).unwrap();
        for s in v["series"].as_array().unwrap() {
            assert_eq!(s["matches_closed_form"], json!(true), "{}", s["name"]);
        }
        assert!(localized_json(9).is_err());
    }
}
