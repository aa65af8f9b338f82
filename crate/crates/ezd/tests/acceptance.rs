//! The nine acceptance criteria on the reference instance
//! `Q = ℚ[x,y]/(x², y²)`, `f = g = x`, `R = S = Q/(x)`, cap 8.
//! Prints one line per criterion and exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use ezd_core::eisenbud::{connecting_maps_check, lifting_independence};
use ezd_core::poincare::{check_final_formula, check_n2_formula, check_poincare1, check_poincare2};
use ezd_core::resolution::FreeResolution;
use ezd_core::tate::TateAlgebra;
use ezd_core::{AlgElem, ExactPairSetup, FDModule, LocalAlgebra, Pipeline, Rat, TruncatedSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn q_ring() -> LocalAlgebra {
    LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap()
}

fn setup(cap: usize) -> ExactPairSetup {
    let q = q_ring();
    let x = q.basis_elem(1);
    ExactPairSetup::new(&q, &x, &x, cap).unwrap()
}

/// `k`, `R` and `R/(y)` as `Q`-modules.
fn three_modules(s: &ExactPairSetup) -> Vec<(&'static str, FDModule)> {
    let y = s.q().basis_elem(2);
    vec![("k", s.residue_field()), ("R", s.r_module()), ("R/(y)", s.r_mod(&y).unwrap())]
}

fn job(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "jobs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

/// Runs the binary, returning exit code, stdout and stderr.
fn ezd(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ezd")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn machine(cmd: &str, file: &str) -> (i32, Value) {
    let (code, out, err) = ezd(&[cmd, "--input", &job(file), "--format", "machine"]);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad report ({}): {}\n{}", e, out, err));
    (code, v)
}

fn criterion_1() {
    let q = q_ring();
    let x = q.basis_elem(1);
    assert!(q.is_exact_pair(&x, &x).holds());
    assert_eq!(q.hilbert_series_ring().trimmed().coeffs(), &[1, 2, 1]);
    let rep = q.check_short_ring(&x, &x).unwrap();
    assert!(rep.all_hold() && rep.fm_is_m2 && rep.f_not_in_m2);
    assert!(q.is_conca_generator(&x).unwrap());
    // exact self-pair iff Conca generator, on basis elements and random f ∈ m
    for i in 0..q.dim() {
        let f = q.basis_elem(i);
        let exact = q.check_self_pair(&f).unwrap();
        assert_eq!(exact, i == 1 || i == 2, "basis element {}", i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut exact_seen = 0;
    for _ in 0..50 {
        let mut c = vec![Rat::zero()];
        c.extend((1..q.dim()).map(|_| Rat::from_int(rng.gen_range(-2..=2))));
        let f = AlgElem::new(c);
        let exact = q.check_self_pair(&f).unwrap();
        assert_eq!(exact, q.is_exact_pair(&f, &f).holds());
        assert_eq!(exact, q.is_conca_generator(&f).unwrap());
        exact_seen += exact as usize;
    }
    assert!(exact_seen > 0 && exact_seen < 50, "random sample should hit both cases");
    let (code, v) = machine("check-ezd", "reference.json");
    assert_eq!(code, 0);
    let sec = &v["sections"][0]["data"];
    assert_eq!(sec["exact_pair"]["holds"], true);
    assert_eq!(sec["conca_generator"], true);
    assert_eq!(v["ring"]["hilbert"], "1 + 2t + t^2");
}

fn criterion_2() {
    let q = q_ring();
    let x = q.basis_elem(1);
    let a = TateAlgebra::build(&q, &x, &x, 10).unwrap();
    let rep = a.verify().unwrap();
    assert!(rep.d_squared_zero && rep.leibniz && rep.graded_commutative && rep.divided_powers);
    assert!(rep.associative && rep.unit && rep.odd_squares_zero);
    assert!(rep.h0_is_r);
    assert_eq!(rep.homology_dims.len(), 10);
    assert!(rep.homology_dims[1..].iter().all(|&d| d == 0), "{:?}", rep.homology_dims);
    assert!(rep.all_hold());
}

fn criterion_3() {
    let s = setup(8);
    for (name, m) in three_modules(&s) {
        let p = Pipeline::build(&s, &m, 0).unwrap();
        let rr = p.resolution().verify().unwrap();
        assert!(rr.all_hold(), "{}: {:?}", name, rr);
        assert!(rr.l_stable, "{}", name);
        p.lifted().check_square().unwrap();
        let st = p.structure().unwrap();
        assert!(st.square_identity && st.tau_is_y_component && st.tau_chain_map, "{}", name);
        assert!(st.cap >= 8);
    }
}

fn criterion_4() {
    let s = setup(8);
    for (name, m) in three_modules(&s) {
        let p = Pipeline::build(&s, &m, 0).unwrap();
        let st = p.structure().unwrap();
        assert!(st.w_squared_zero && st.w_is_cone, "{}", name);
        assert!(st.short_exact && st.y2_short_exact, "{}", name);
        assert!(st.omega_chain_map && st.omega_surjective && st.ker_omega_is_l, "{}", name);
        assert!(st.alpha_injective && st.im_alpha_is_l, "{}", name);
        assert!(st.ker_omega_dims.len() >= 7);
        for (n, (got, want)) in st.ker_omega_dims.iter().enumerate() {
            assert_eq!(got, want, "{}: ker ω in degree {}", name, n);
        }
        assert!(st.all_hold());
    }
}

fn criterion_5() {
    let s = setup(8);
    let k = s.residue_field();
    for (name, m) in three_modules(&s) {
        let p = Pipeline::build(&s, &m, 0).unwrap();
        let rep = p.sequences(&k).unwrap();
        assert!(rep.window >= 6);
        assert!(rep.defects1.is_empty() && rep.defects2.is_empty(), "{}: {:?}", name, rep.failures());
        assert!(rep.nodes_checked > 0);
        assert!(rep.psi_phi_is_projection, "{}", name);
        assert!(rep.all_hold(), "{}: {:?}", name, rep.failures());
    }
}

fn series(dims: &[usize]) -> TruncatedSeries {
    TruncatedSeries::truncated(dims.iter().map(|&d| d as i64).collect())
}

fn criterion_6() {
    let s = setup(8);
    let k = s.residue_field();
    // oracles from minimal resolutions over Q and over R
    let over_q = FreeResolution::minimal(&k, 9).unwrap().tor_dims(&k).unwrap();
    assert_eq!(over_q[..9], [1, 2, 3, 4, 5, 6, 7, 8, 9]);
    let kr = FDModule::residue_field(&s.r().quotient);
    let over_r = FreeResolution::minimal(&kr, 9).unwrap().tor_dims(&kr).unwrap();
    assert_eq!(over_r[..9], [1; 9]);
    // the pipeline agrees through degree 8
    let wide = setup(10);
    let pk = Pipeline::build(&wide, &wide.residue_field(), 0).unwrap();
    let rep = pk.sequences(&wide.residue_field()).unwrap();
    assert_eq!(rep.window, 8);
    assert_eq!(rep.tor_q[..9], over_q[..9]);
    assert_eq!(rep.tor_r[..9], over_r[..9]);
    assert!(check_poincare1(&rep).holds());
    let p2 = check_poincare2(&rep);
    assert!(p2.holds() && p2.equality() && p2.maps_vanish);
    assert_eq!(p2.lhs, series(&over_q[..9]));
    let c = connecting_maps_check(&pk, &wide.residue_field()).unwrap();
    assert!(c.applies && c.all_zero);
    // closed formula through degree 6
    for m in [s.residue_field(), s.r_module()] {
        let p = Pipeline::build(&s, &m, 0).unwrap();
        let f = check_final_formula(&p, &k).unwrap();
        assert!(f.holds(), "{:?}", f);
        assert_eq!(f.computed.as_ref().unwrap().precision(), Some(7));
        let rep = p.sequences(&k).unwrap();
        assert!(check_poincare1(&rep).holds());
        assert!(check_poincare2(&rep).holds());
    }
}

fn criterion_7() {
    let r = LocalAlgebra::from_monomial_quotient(&names(&["u", "v"]), &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let draw = |rng: &mut ChaCha8Rng| {
        let (rank, rels) = (rng.gen_range(1..=2), rng.gen_range(0..=3));
        FDModule::random_quotient(&r, rng, rank, rels)
    };
    let mut checked = 0;
    while checked < 20 {
        let m = draw(&mut rng);
        let mut n = draw(&mut rng);
        if m.dim() == 0 || n.dim() == 0 {
            continue;
        }
        if m.tensor_over(&n).unwrap().m_times().dim() != 0 {
            n = n.projection_pi().unwrap().0;
        }
        let rep = check_n2_formula(&r, &m, &n, 8).unwrap();
        assert!(rep.applies, "case {}", checked);
        assert!(rep.side_conditions, "case {}: Tor(M, ν_N) ≠ 0", checked);
        assert!(rep.holds(), "case {}: {:?}", checked, rep);
        assert_eq!(rep.computed.unwrap().precision(), Some(7));
        checked += 1;
    }
}

fn criterion_8() {
    let s = setup(8);
    let k = s.residue_field();
    let p1 = Pipeline::build(&s, &k, 0).unwrap();
    let p2 = (1..20)
        .map(|seed| Pipeline::build(&s, &k, seed).unwrap())
        .find(|p| (0..=8).any(|n| p.lifted().dv(n) != p1.lifted().dv(n)))
        .expect("some seed changes the lifting");
    for n in [k.clone(), s.s_module()] {
        let rep = lifting_independence(&p1, &p2, &n).unwrap();
        assert!(rep.window >= 6);
        assert!(rep.liftings_differ);
        assert!(rep.all_hold(), "{:?}", rep);
        let d1 = p1.sequences(&n).unwrap();
        let d2 = p2.sequences(&n).unwrap();
        assert_eq!(d1.delta_ranks(), d2.delta_ranks());
    }
}

fn criterion_9() {
    let q = q_ring();
    let xy = q.basis_elem(3);
    let x = q.basis_elem(1);
    for (f, g) in [(&xy, &xy), (&xy, &x), (&x, &xy)] {
        let e = ExactPairSetup::new(&q, f, g, 8).unwrap_err();
        assert_eq!(e.kind(), ezd_core::ErrorKind::Precondition);
    }
    let (code, v) = machine("verify", "not_exact.json");
    assert_eq!(code, 1);
    assert_eq!(v["sections"][0]["status"], "precondition");
    let (code, v) = machine("verify", "g_acts.json");
    assert_eq!(code, 1);
    assert_eq!(v["status"], "hypothesis");
    let kr = v["sections"].as_array().unwrap().iter().find(|s| s["id"] == "kr").unwrap();
    assert_eq!(kr["status"], "hypothesis");
    assert!(kr["notes"][0].as_str().unwrap().contains("gN"));
    let (code, _, err) = ezd(&["verify", "--input", &job("corrupt_table.json")]);
    assert_eq!(code, 3);
    assert!(err.contains("non-associative basis triple (1,1,2)"), "{}", err);
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 9] = [
        ("exact pair and short-ring identities", criterion_1),
        ("Tate algebra axioms at cap 10", criterion_2),
        ("semi-free resolutions and the operator", criterion_3),
        ("mapping cone and the two short exact sequences", criterion_4),
        ("both long exact sequences", criterion_5),
        ("Poincaré series identities", criterion_6),
        ("square-zero maximal ideal", criterion_7),
        ("independence of the lifting", criterion_8),
        ("negative controls", criterion_9),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("    {}", info)));
    let mut failed = 0;
    let start = Instant::now();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        failed += !ok as usize;
        println!(
            "criterion {} ({}): {} [{:.2}s]",
            i + 1,
            name,
            if ok { "pass" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
    }
    println!("{} of 9 criteria pass in {:.1}s", 9 - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
