//! Betti numbers and Tor computed through the Tate construction, compared
//! with minimal resolutions built directly over `Q` and over `R`.

use ezd_core::eisenbud::{ExactPairSetup, Pipeline};
use ezd_core::resolution::FreeResolution;
use ezd_core::{FDModule, LocalAlgebra};

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn reference(cap: usize) -> ExactPairSetup {
    let q = LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap();
    let x = q.basis_elem(1);
    ExactPairSetup::new(&q, &x, &x, cap).unwrap()
}

#[test]
fn betti_of_k_over_q_by_minimal_resolution() {
    let s = reference(8);
    let k = s.residue_field();
    let min = FreeResolution::minimal(&k, 8).unwrap();
    assert_eq!(min.ranks(), &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
    assert_eq!(min.check().unwrap(), vec![0; 7]);
    let tor = min.tor_dims(&k).unwrap();
    assert_eq!(tor, vec![1, 2, 3, 4, 5, 6, 7, 8]);
}

#[test]
fn tate_route_agrees_with_minimal_resolution_over_q() {
    let s = reference(8);
    let k = s.residue_field();
    let p = Pipeline::build(&s, &k, 0).unwrap();
    let via_u: Vec<usize> = p.tor_q(&k).unwrap().iter().map(|h| h.dim()).collect();
    let direct = FreeResolution::minimal(&k, 8).unwrap().tor_dims(&k).unwrap();
    assert_eq!(via_u, direct);
}

#[test]
fn betti_of_r_over_q_is_constant() {
    let s = reference(10);
    let p = Pipeline::build(&s, &s.r_module(), 0).unwrap();
    let dims: Vec<usize> = p.tor_q(&s.residue_field()).unwrap().iter().map(|h| h.dim()).collect();
    assert_eq!(dims, vec![1; 10]);
}

#[test]
fn betti_of_k_over_r() {
    let s = reference(8);
    let kr = FDModule::residue_field(&s.r().quotient);
    let min = FreeResolution::minimal(&kr, 9).unwrap();
    assert_eq!(min.tor_dims(&kr).unwrap(), vec![1; 9]);
    let p = Pipeline::build(&s, &s.residue_field(), 0).unwrap();
    let via_v: Vec<usize> = p.tor_r(&s.residue_field()).unwrap().iter().map(|h| h.dim()).collect();
    assert_eq!(via_v, vec![1; 8]);
}

#[test]
fn tor_zero_is_the_tensor_product() {
    let s = reference(5);
    let mods = [s.residue_field(), s.r_module(), s.s_module()];
    for m in &mods {
        let p = Pipeline::build(&s, m, 0).unwrap();
        for n in &mods {
            let t0 = p.tor_q(n).unwrap()[0].dim();
            assert_eq!(t0, m.tensor_over(n).unwrap().dim());
            assert_eq!(p.tor_r(n).unwrap()[0].dim(), t0);
        }
    }
}

#[test]
fn tor_over_q_with_free_second_argument_vanishes() {
    let s = reference(6);
    let q_mod = FDModule::regular(s.q());
    let min = FreeResolution::minimal(&s.residue_field(), 6).unwrap();
    let t = min.tor_dims(&q_mod).unwrap();
    assert_eq!(t[0], 1);
    assert!(t[1..].iter().all(|&d| d == 0));
}

#[test]
fn lifting_resolves_over_r_for_several_modules() {
    let s = reference(7);
    let y = s.q().basis_elem(2);
    for m in [s.residue_field(), s.r_module(), s.r_mod(&y).unwrap()] {
        let p = Pipeline::build(&s, &m, 0).unwrap();
        let higher = p.lifted().verify_resolution(s.r()).unwrap();
        assert!(higher.iter().all(|&d| d == 0));
        let res_r = p.lifted().over_quotient(s.r()).unwrap();
        let direct = FreeResolution::minimal(&res_r.module, 7).unwrap();
        let n = FDModule::residue_field(&s.r().quotient);
        assert_eq!(res_r.tor_dims(&n).unwrap(), direct.tor_dims(&n).unwrap());
    }
}
