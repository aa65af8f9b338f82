//! Poincaré series of Tor, the change-of-rings inequalities, and closed
//! formulas in terms of Hilbert series.

use alloc::string::String;

use crate::eisenbud::{tor_of_map, Pipeline, SequencesReport};
use crate::error::{ensure, Result};
use crate::linalg::Mat;
use crate::modules::FDModule;
use crate::resolution::FreeResolution;
use crate::series::{SeriesComparison, TruncatedSeries};
use crate::LocalAlgebra;

/// `Σ_{n ≤ through} dims[n] tⁿ` as a truncated series.
pub fn poincare_series(dims: &[usize], through: usize) -> TruncatedSeries {
    TruncatedSeries::truncated(dims[..=through].iter().map(|&d| d as i64).collect())
}

/// `P^R(t) ≼ (1 − t + t²)/(1 − t) · P^Q(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poincare1Report {
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub comparison: SeriesComparison,
}

impl Poincare1Report {
    pub fn holds(&self) -> bool {
        self.comparison.leq
    }
}

pub fn check_poincare1(rep: &SequencesReport) -> Poincare1Report {
    let w = rep.window as usize;
    let pq = poincare_series(&rep.tor_q, w);
    let pr = poincare_series(&rep.tor_r, w);
    let rhs = pq.mul(&TruncatedSeries::new(alloc::vec![1, -1, 1])).div_one_minus_t(w + 1);
    Poincare1Report { comparison: pr.compare(&rhs), lhs: pr, rhs }
}

/// `P^Q(t) ≼ P^R(t)/(1 − t)` with equality in the window exactly when
/// `μ` and `δ` vanish one degree beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poincare2Report {
    pub lhs: TruncatedSeries,
    pub rhs: TruncatedSeries,
    pub comparison: SeriesComparison,
    /// `μ_n = 0 = δ_n` for `n ≤ window + 1`.
    pub maps_vanish: bool,
    /// `[(1+t)P^R − (1−t²)P^Q]_n = rk μ_n + rk μ_{n+1} + rk δ_n + rk δ_{n+1}`.
    pub rank_identity: bool,
}

impl Poincare2Report {
    pub fn holds(&self) -> bool {
        self.comparison.leq && self.rank_identity && self.comparison.equal == self.maps_vanish
    }

    pub fn equality(&self) -> bool {
        self.comparison.equal
    }
}

pub fn check_poincare2(rep: &SequencesReport) -> Poincare2Report {
    let w = rep.window as usize;
    let pq = poincare_series(&rep.tor_q, w);
    let pr = poincare_series(&rep.tor_r, w);
    let rhs = pr.div_one_minus_t(w + 1);
    let diff = TruncatedSeries::linear(1, 1).mul(&pr).sub(&TruncatedSeries::new(alloc::vec![1, 0, -1]).mul(&pq));
    let (mu, delta) = (rep.mu_ranks(), rep.delta_ranks());
    let r = |v: &[usize], n: usize| v.get(n).copied().unwrap_or(0) as i64;
    let rank_identity =
        (0..=w).all(|n| diff.coeff(n) == Some(r(&mu, n) + r(&mu, n + 1) + r(&delta, n) + r(&delta, n + 1)));
    Poincare2Report {
        comparison: pq.compare(&rhs),
        lhs: pq,
        rhs,
        maps_vanish: rep.maps_vanish_through(rep.window + 1),
        rank_identity,
    }
}

/// A closed-form check that applies only under its hypotheses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaReport {
    pub applies: bool,
    pub reason: Option<String>,
    pub computed: Option<TruncatedSeries>,
    pub formula: Option<TruncatedSeries>,
    /// Auxiliary identities required along the way.
    pub side_conditions: bool,
}

impl FormulaReport {
    fn not_applicable(reason: &str) -> FormulaReport {
        FormulaReport {
            applies: false,
            reason: Some(String::from(reason)),
            computed: None,
            formula: None,
            side_conditions: false,
        }
    }

    pub fn holds(&self) -> bool {
        self.applies && self.side_conditions && self.computed.is_some() && self.computed == self.formula
    }
}

fn hilbert(m: &FDModule) -> TruncatedSeries {
    m.hilbert_series_module()
}

/// `P^R_{M,N}(t) = H_M(−t)H_N(−t)/H_R(−t)` over a ring with `m² = 0`
/// when `m(M ⊗ N) = 0`; also checks `Tor^R(M, ν_N) = 0` in the window.
pub fn check_n2_formula(r: &LocalAlgebra, m: &FDModule, n: &FDModule, cap: usize) -> Result<FormulaReport> {
    ensure!(cap >= 3, Precondition, "cap must be at least 3");
    ensure!(m.algebra() == r && n.algebra() == r, Precondition, "modules over a different ring");
    if r.m_power(2).dim() != 0 {
        return Ok(FormulaReport::not_applicable("m² ≠ 0"));
    }
    if m.tensor_over(n)?.m_times().dim() != 0 {
        return Ok(FormulaReport::not_applicable("m(M ⊗ N) ≠ 0"));
    }
    let w = cap - 2;
    let res = FreeResolution::minimal(m, cap)?;
    let computed = poincare_series(&res.tor_dims(n)?, w);
    let formula = hilbert(m).at_neg_t().mul(&hilbert(n).at_neg_t()).div(&r.hilbert_series_ring().at_neg_t(), w + 1)?;
    let (mn, nu) = n.submodule_m_m()?;
    let maps = tor_of_map(&res.complex, &mn, n, &nu.matrix, w as i64)?;
    Ok(FormulaReport {
        applies: true,
        reason: None,
        computed: Some(computed),
        formula: Some(formula),
        side_conditions: maps.iter().all(Mat::is_zero),
    })
}

/// `P^R_M(t) = H_M(−t)/H_R(−t)` for Koszul modules; only the `m² = 0`
/// certificate of Koszulness is recognised.
pub fn check_koszul_formula(r: &LocalAlgebra, m: &FDModule, cap: usize) -> Result<FormulaReport> {
    ensure!(cap >= 3, Precondition, "cap must be at least 3");
    ensure!(m.algebra() == r, Precondition, "module over a different ring");
    if r.m_power(2).dim() != 0 {
        return Ok(FormulaReport::not_applicable("not decidable here: Koszulness is only certified when m² = 0"));
    }
    let w = cap - 2;
    let res = FreeResolution::minimal(m, cap)?;
    let k = FDModule::residue_field(r);
    let computed = poincare_series(&res.tor_dims(&k)?, w);
    let formula = hilbert(m).at_neg_t().div(&r.hilbert_series_ring().at_neg_t(), w + 1)?;
    Ok(FormulaReport {
        applies: true,
        reason: None,
        computed: Some(computed),
        formula: Some(formula),
        side_conditions: true,
    })
}

/// `P^Q_{M,N}(t) = H_M(−t)H_N(−t)/H_Q(−t)` when `m³ = 0`, `m(M⊗N) = 0`
/// and `gN = 0`, together with `H_Q(t) = (1 + t)H_R(t)`.
pub fn check_final_formula(p: &Pipeline, n: &FDModule) -> Result<FormulaReport> {
    let s = p.setup();
    let q = s.q();
    if q.m_power(3).dim() != 0 {
        return Ok(FormulaReport::not_applicable("m³ ≠ 0"));
    }
    if !n.annihilates(s.g()) || !n.annihilates(s.f()) {
        return Ok(FormulaReport::not_applicable("N is not killed by (f, g)"));
    }
    if p.module().tensor_over(n)?.m_times().dim() != 0 {
        return Ok(FormulaReport::not_applicable("m(M ⊗ N) ≠ 0"));
    }
    let w = s.window();
    let hq = q.hilbert_series_ring();
    let hr = s.r().quotient.hilbert_series_ring();
    let side = TruncatedSeries::linear(1, 1).mul(&hr).trimmed() == hq.trimmed();
    let rep = p.sequences(n)?;
    let computed = poincare_series(&rep.tor_q, w);
    let formula = hilbert(p.module()).at_neg_t().mul(&hilbert(n).at_neg_t()).div(&hq.at_neg_t(), w + 1)?;
    Ok(FormulaReport {
        applies: true,
        reason: None,
        computed: Some(computed),
        formula: Some(formula),
        side_conditions: side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenbud::ExactPairSetup;
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn setup(cap: usize) -> ExactPairSetup {
        let q = LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap();
        let x = q.basis_elem(1);
        ExactPairSetup::new(&q, &x, &x, cap).unwrap()
    }

    #[test]
    fn inequalities_for_k_k() {
        let s = setup(8);
        let k = s.residue_field();
        let p = Pipeline::build(&s, &k, 0).unwrap();
        let rep = p.sequences(&k).unwrap();
        assert!(check_poincare1(&rep).holds());
        let p2 = check_poincare2(&rep);
        assert!(p2.holds() && p2.equality() && p2.maps_vanish);
    }

    #[test]
    fn final_formula_for_r_k() {
        let s = setup(8);
        let p = Pipeline::build(&s, &s.r_module(), 0).unwrap();
        let f = check_final_formula(&p, &s.residue_field()).unwrap();
        assert!(f.holds(), "{:?}", f);
        assert_eq!(f.computed.unwrap().coeffs(), &[1; 7]);
        let rr = check_final_formula(&p, &s.r_module()).unwrap();
        assert!(!rr.applies);
    }

    #[test]
    fn koszul_on_m_over_square_zero_ring() {
        let r =
            LocalAlgebra::from_monomial_quotient(&names(&["u", "v"]), &[vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
        let m = FDModule::maximal_ideal(&r).unwrap();
        let rep = check_koszul_formula(&r, &m, 7).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.computed.unwrap().coeffs(), &[2, 4, 8, 16, 32, 64]);
    }

    #[test]
    fn koszul_outside_certificate() {
        let q = setup(4);
        let rep = check_koszul_formula(q.q(), &q.residue_field(), 5).unwrap();
        assert!(!rep.applies);
    }
}
