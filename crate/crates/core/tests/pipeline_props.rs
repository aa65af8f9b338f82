//! Random modules through the whole construction, on a ring other than the
//! reference one, and the closed formula over rings with `m² = 0`.

use ezd_core::eisenbud::{ExactPairSetup, Pipeline};
use ezd_core::poincare::{check_n2_formula, check_poincare1, check_poincare2};
use ezd_core::{FDModule, LocalAlgebra};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// `ℚ[x,y,z]/(x², y², z², yz)` with the exact pair `(x, x)`; `m³ = 0`.
fn wider(cap: usize) -> ExactPairSetup {
    let q = LocalAlgebra::from_monomial_quotient(
        &names(&["x", "y", "z"]),
        &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![0, 1, 1]],
    )
    .unwrap();
    let x = q.basis_elem(1);
    ExactPairSetup::new(&q, &x, &x, cap).unwrap()
}

#[test]
fn wider_ring_shape() {
    let s = wider(4);
    assert_eq!(s.q().dim(), 6);
    assert_eq!(s.q().hilbert_series_ring().trimmed().coeffs(), &[1, 3, 2]);
    assert!(s.q().is_short());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn random_modules_satisfy_every_identity(
        seed in any::<u64>(),
        m_rels in 1usize..3,
        n_rels in 0usize..3,
    ) {
        let s = wider(5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = FDModule::random_quotient(&s.r().quotient, &mut rng, 1, m_rels)
            .restrict_scalars(s.r())
            .unwrap();
        let n = FDModule::random_quotient(&s.s().quotient, &mut rng, 1, n_rels)
            .restrict_scalars(s.s())
            .unwrap();
        prop_assume!(m.dim() > 0 && n.dim() > 0);
        let p = Pipeline::build(&s, &m, seed).unwrap();
        let st = p.structure().unwrap();
        prop_assert!(st.all_hold(), "{:?}", st.failures());
        let rep = p.sequences(&n).unwrap();
        prop_assert!(rep.all_hold(), "{:?}", rep.failures());
        prop_assert!(check_poincare1(&rep).holds());
        prop_assert!(check_poincare2(&rep).holds());
    }

    #[test]
    fn square_zero_formula(
        seed in any::<u64>(),
        vars in 2usize..4,
        ranks in (1usize..3, 1usize..3),
        rels in (0usize..4, 0usize..4),
    ) {
        let r = square_zero(vars);
        // Betti numbers grow like vars^n
        let cap = if vars == 2 { 6 } else { 4 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = FDModule::random_quotient(&r, &mut rng, ranks.0, rels.0);
        let mut n = FDModule::random_quotient(&r, &mut rng, ranks.1, rels.1);
        prop_assume!(m.dim() > 0 && n.dim() > 0);
        if m.tensor_over(&n).unwrap().m_times().dim() != 0 {
            n = n.projection_pi().unwrap().0;
        }
        let rep = check_n2_formula(&r, &m, &n, cap).unwrap();
        prop_assert!(rep.applies);
        prop_assert!(rep.holds(), "{:?}", rep);
    }
}

/// `ℚ[u₁..u_e]/(u₁..u_e)²`.
fn square_zero(e: usize) -> LocalAlgebra {
    let vars: Vec<String> = (1..=e).map(|i| format!("u{}", i)).collect();
    let mut rels = Vec::new();
    for i in 0..e {
        for j in i..e {
            let mut m = vec![0; e];
            m[i] += 1;
            m[j] += 1;
            rels.push(m);
        }
    }
    LocalAlgebra::from_monomial_quotient(&vars, &rels).unwrap()
}
