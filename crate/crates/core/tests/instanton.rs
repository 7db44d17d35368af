use verlinde_core::exact::{int, rat};
use verlinde_core::instanton::*;
use verlinde_core::localize::EpsSpec;
use verlinde_core::toric::ToricSurfaceModel;

#[test]
fn reference_solve_reconstructs_and_predicts() {
    let req = InstantonRequest { order: 2, s_window: 4, seed: 11 };
    for chi_y in [false, true] {
        let ok = if chi_y { check(&ChiYGenus, &req) } else { check(&HolomorphicGenus, &req) };
        assert!(ok, "chi_y = {}", chi_y);
    }
}

fn check<G: Genus>(g: &G, req: &InstantonRequest) -> bool {
    let (univ, zs) = solve_universal_a(g, req).unwrap();
    for (v, z) in univ.vectors.iter().zip(&zs) {
        assert_eq!(&univ.eval_at(v).unwrap(), z);
    }
    let p2 = ToricSurfaceModel::p2();
    let t = held_out_tuple();
    let direct = z_inst(&p2, &t, g, req).unwrap();
    let predicted = univ.eval_at(&chern_vector(&p2, &t)).unwrap();
    direct == predicted
}

#[test]
fn specialization_independent() {
    let q = ToricSurfaceModel::p1xp1();
    let t = InstantonTuple::new("P1xP1", &[0, 1], &[0, 1], &[0, 2]);
    let req = InstantonRequest { order: 3, s_window: 6, seed: 0 };
    let a = z_inst_with(&q, &t, &ChiYGenus, &req, &EpsSpec::new(int(2), rat(-1, 3))).unwrap();
    let b = z_inst_with(&q, &t, &ChiYGenus, &req, &EpsSpec::draw(5, 0)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn wrong_surface_is_a_config_error() {
    let q = ToricSurfaceModel::p1xp1();
    let t = held_out_tuple();
    let req = InstantonRequest { order: 1, s_window: 0, seed: 0 };
    assert!(matches!(z_inst(&q, &t, &HolomorphicGenus, &req), Err(verlinde_core::Error::Config(_))));
}
