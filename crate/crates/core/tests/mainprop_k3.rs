use verlinde_core::exact::int;
use verlinde_core::instanton::{mainprop_predict, solve_universal_a, HolomorphicGenus, InstantonRequest, PredictionInput};
use verlinde_core::lattice::SurfaceLattice;

#[test]
fn k3_holomorphic() {
    let k3 = SurfaceLattice::builtin("k3").unwrap();
    let mut c1 = k3.zero();
    c1[0] = 1;
    let o = k3.zero();
    let mut l = k3.zero();
    l[0] = 1;
    l[1] = 1;
    let cases = [(&o, 2, 2), (&o, 6, 4), (&l, 2, 3), (&l, 6, 10)];
    let mut order = 0;
    let mut window = 0;
    for (ll, vd, _) in cases {
        let input = PredictionInput { lattice: &k3, l: ll, c1: &c1, vd, strong_form: true };
        let (o, w) = input.requirements().unwrap();
        order = order.max(o);
        window = window.max(w);
    }
    let t = std::time::Instant::now();
    let req = InstantonRequest { order, s_window: window, seed: 7 };
    let (univ, _) = solve_universal_a(&HolomorphicGenus, &req).unwrap();
    eprintln!("order {} window {} in {:?}", order, window, t.elapsed());
    for (ll, vd, want) in cases {
        let input = PredictionInput { lattice: &k3, l: ll, c1: &c1, vd, strong_form: true };
        let v = mainprop_predict(&HolomorphicGenus, &univ, &input).unwrap();
        eprintln!("vd {} L^2 {} -> {}", vd, k3.dot(ll, ll), v);
        assert_eq!(v, int(want));
    }
}

#[test]
fn k3_chi_y_matches_closed_form() {
    use verlinde_core::closed::conj2_series;
    use verlinde_core::instanton::ChiYGenus;
    use verlinde_core::qseries::coeff_at;
    let k3 = SurfaceLattice::builtin("k3").unwrap();
    let mut c1 = k3.zero();
    c1[0] = 1;
    let o = k3.zero();
    let mut l = k3.zero();
    l[0] = 1;
    l[1] = 1;
    let cases = [(&o, 2), (&l, 2), (&o, 6), (&l, 6)];
    let (mut order, mut window) = (0, 0);
    for (ll, vd) in cases {
        let (o, w) = PredictionInput { lattice: &k3, l: ll, c1: &c1, vd, strong_form: true }.requirements().unwrap();
        order = order.max(o);
        window = window.max(w);
    }
    let t = std::time::Instant::now();
    let (univ, _) = solve_universal_a(&ChiYGenus, &InstantonRequest { order, s_window: window, seed: 7 }).unwrap();
    eprintln!("order {} window {} in {:?}", order, window, t.elapsed());
    for (ll, vd) in cases {
        let v = mainprop_predict(&ChiYGenus, &univ, &PredictionInput { lattice: &k3, l: ll, c1: &c1, vd, strong_form: true }).unwrap();
        let want = coeff_at(&conj2_series(&k3, ll, &c1, vd + 1).unwrap(), vd).unwrap();
        eprintln!("vd {} L^2 {} -> {}", vd, k3.dot(ll, ll), v);
        assert_eq!(v, want);
        assert_eq!(v, v.invert_y());
    }
}
