//! Integer power series known through a finite degree, with the comparisons
//! used for Poincaré and Hilbert series.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{ensure, Result};

/// A power series with integer coefficients.
///
/// `prec = None` marks a polynomial: every coefficient past the stored ones
/// is zero. `prec = Some(n)` means only degrees `< n` are known.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<i64>,
    prec: Option<usize>,
}

impl TruncatedSeries {
    /// An exact polynomial.
    pub fn new(coeffs: Vec<i64>) -> TruncatedSeries {
        TruncatedSeries { coeffs, prec: None }
    }

    /// A series known through degree `coeffs.len() - 1`.
    pub fn truncated(coeffs: Vec<i64>) -> TruncatedSeries {
        let n = coeffs.len();
        TruncatedSeries { coeffs, prec: Some(n) }
    }

    pub fn one() -> TruncatedSeries {
        TruncatedSeries::new(vec![1])
    }

    /// `1 + c·t` (a polynomial).
    pub fn linear(c0: i64, c1: i64) -> TruncatedSeries {
        TruncatedSeries::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn precision(&self) -> Option<usize> {
        self.prec
    }

    pub fn is_polynomial(&self) -> bool {
        self.prec.is_none()
    }

    pub fn coeff(&self, n: usize) -> Option<i64> {
        match (self.coeffs.get(n), self.prec) {
            (Some(&c), _) => Some(c),
            (None, None) => Some(0),
            (None, Some(_)) => None,
        }
    }

    /// Number of known coefficients, or `None` for polynomials.
    fn known(&self) -> Option<usize> {
        self.prec
    }

    /// Drops trailing zero coefficients of a polynomial.
    pub fn trimmed(&self) -> TruncatedSeries {
        let mut c = self.coeffs.clone();
        if self.prec.is_none() {
            while c.last() == Some(&0) {
                c.pop();
            }
        }
        TruncatedSeries { coeffs: c, prec: self.prec }
    }

    /// Keeps only degrees `< n`.
    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        let coeffs = (0..n.min(self.known().unwrap_or(usize::MAX))).map(|k| self.coeff(k).unwrap()).collect::<Vec<_>>();
        TruncatedSeries::truncated(coeffs)
    }

    fn combine_prec(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(x), Some(y)) => Some(x.min(y)),
        }
    }

    fn result_len(&self, other: &TruncatedSeries, prec: Option<usize>) -> usize {
        match prec {
            Some(p) => p,
            None => self.coeffs.len().max(other.coeffs.len()),
        }
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let prec = Self::combine_prec(self.prec, other.prec);
        let n = self.result_len(other, prec);
        let coeffs = (0..n)
            .map(|k| self.coeff(k).unwrap().checked_add(other.coeff(k).unwrap()).expect("series coefficient overflow"))
            .collect();
        TruncatedSeries { coeffs, prec }
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), prec: self.prec }
    }

    pub fn sub(&self, other: &TruncatedSeries) -> TruncatedSeries {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let prec = Self::combine_prec(self.prec, other.prec);
        let n = match prec {
            Some(p) => p,
            None => (self.coeffs.len() + other.coeffs.len()).saturating_sub(1),
        };
        let mut coeffs = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 || i >= n {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                let p = a.checked_mul(b).expect("series coefficient overflow");
                coeffs[i + j] = coeffs[i + j].checked_add(p).expect("series coefficient overflow");
            }
        }
        TruncatedSeries { coeffs, prec }
    }

    /// `self / other` through `max_terms` coefficients (fewer when either
    /// operand is truncated). The constant term of `other` must be `±1`.
    pub fn div(&self, other: &TruncatedSeries, max_terms: usize) -> Result<TruncatedSeries> {
        let c0 = other.coeff(0).unwrap_or(0);
        ensure!(c0 == 1 || c0 == -1, Precondition, "division by a series with constant term {}", c0);
        let n = Self::combine_prec(self.prec, other.prec).unwrap_or(max_terms).min(max_terms);
        let mut q = vec![0i64; n];
        for k in 0..n {
            let mut acc = self.coeff(k).unwrap() as i128;
            for j in 1..=k {
                let b = other.coeff(j).unwrap() as i128;
                if b != 0 {
                    acc -= b * q[k - j] as i128;
                }
            }
            let v = acc * c0 as i128;
            q[k] = i64::try_from(v).expect("series coefficient overflow");
        }
        Ok(TruncatedSeries::truncated(q))
    }

    /// Substitutes `t ↦ −t`.
    pub fn at_neg_t(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().enumerate().map(|(k, &c)| if k % 2 == 1 { -c } else { c }).collect(),
            prec: self.prec,
        }
    }

    /// `(1 − t)^{-1}` times this series, through `max_terms`.
    pub fn div_one_minus_t(&self, max_terms: usize) -> TruncatedSeries {
        self.div(&TruncatedSeries::linear(1, -1), max_terms).expect("unit constant term")
    }

    /// Coefficientwise comparison over the degrees known for both.
    pub fn compare(&self, other: &TruncatedSeries) -> SeriesComparison {
        let through = match Self::combine_prec(self.prec, other.prec) {
            Some(p) => p,
            None => self.coeffs.len().max(other.coeffs.len()),
        };
        let mut cmp =
            SeriesComparison { degrees: through, leq: true, equal: true, first_strict: None, first_violation: None };
        for k in 0..through {
            let (a, b) = (self.coeff(k).unwrap(), other.coeff(k).unwrap());
            if a > b && cmp.first_violation.is_none() {
                cmp.first_violation = Some(k);
                cmp.leq = false;
            }
            if a != b {
                cmp.equal = false;
                if a < b && cmp.first_strict.is_none() {
                    cmp.first_strict = Some(k);
                }
            }
        }
        cmp
    }

    /// Coefficientwise `self ≼ other` over common known degrees.
    pub fn leq(&self, other: &TruncatedSeries) -> bool {
        self.compare(other).leq
    }

    /// Searches for `numerator / ((1−t)^a (1+t)^b (1−2t)^c)` with small
    /// exponents that reproduces the known coefficients, using at most
    /// half of them to fix the numerator.
    pub fn match_rational_form(&self) -> Option<RationalForm> {
        let n = self.prec.unwrap_or(self.coeffs.len());
        if n < 4 {
            return None;
        }
        let mut best: Option<RationalForm> = None;
        for total in 0..=6u32 {
            for a in 0..=total.min(4) {
                for b in 0..=(total - a).min(3) {
                    let c = total - a - b;
                    if c > 2 {
                        continue;
                    }
                    let den = denominator(a, b, c);
                    let prod = self.mul(&den).truncate(n);
                    let coeffs = prod.coeffs();
                    let deg = coeffs.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
                    // the numerator must vanish over the second half
                    if deg > n / 2 {
                        continue;
                    }
                    let cand = RationalForm {
                        numerator: coeffs[..deg].to_vec(),
                        one_minus_t: a,
                        one_plus_t: b,
                        one_minus_2t: c,
                    };
                    let better = match &best {
                        None => true,
                        Some(bst) => cand.numerator.len() < bst.numerator.len(),
                    };
                    if better {
                        best = Some(cand);
                    }
                }
            }
            if best.is_some() {
                return best;
            }
        }
        None
    }

    /// Heuristic growth diagnostics from the known coefficients.
    pub fn growth(&self) -> Result<GrowthReport> {
        growth_diagnostics(self)
    }
}

fn pow_series(base: TruncatedSeries, e: u32) -> TruncatedSeries {
    (0..e).fold(TruncatedSeries::one(), |acc, _| acc.mul(&base))
}

fn denominator(a: u32, b: u32, c: u32) -> TruncatedSeries {
    pow_series(TruncatedSeries::linear(1, -1), a)
        .mul(&pow_series(TruncatedSeries::linear(1, 1), b))
        .mul(&pow_series(TruncatedSeries::linear(1, -2), c))
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let body = match (k, mag) {
                (0, m) => alloc::format!("{}", m),
                (1, 1) => alloc::string::String::from("t"),
                (1, m) => alloc::format!("{}t", m),
                (k, 1) => alloc::format!("t^{}", k),
                (k, m) => alloc::format!("{}t^{}", m, k),
            };
            if first {
                write!(f, "{}{}", sign, body)?;
            } else {
                write!(f, " {} {}", if c < 0 { "-" } else { "+" }, body)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(p) = self.prec {
            write!(f, " + O(t^{})", p)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesComparison {
    /// Number of compared coefficients (degrees `0..degrees`).
    pub degrees: usize,
    pub leq: bool,
    pub equal: bool,
    pub first_strict: Option<usize>,
    pub first_violation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub numerator: Vec<i64>,
    pub one_minus_t: u32,
    pub one_plus_t: u32,
    pub one_minus_2t: u32,
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", TruncatedSeries::new(self.numerator.clone()))?;
        let parts = [("(1-t)", self.one_minus_t), ("(1+t)", self.one_plus_t), ("(1-2t)", self.one_minus_2t)];
        if parts.iter().all(|p| p.1 == 0) {
            return Ok(());
        }
        write!(f, " / ")?;
        for (name, e) in parts {
            if e == 0 {
                continue;
            }
            if e == 1 {
                write!(f, "{}", name)?;
            } else {
                write!(f, "{}^{}", name, e)?;
            }
        }
        Ok(())
    }
}

/// Complexity (polynomial growth order) and curvature (exponential rate)
/// estimated from a finite window. These are diagnostics, not certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// `None` when the tail grows geometrically.
    pub complexity: Option<usize>,
    pub curvature: f64,
    pub terms_used: usize,
}

/// Needs at least six known coefficients; the estimate uses the upper half.
pub fn growth_diagnostics(s: &TruncatedSeries) -> Result<GrowthReport> {
    let n = s.prec.unwrap_or(s.coeffs.len()).min(s.coeffs.len());
    ensure!(n >= 6, Precondition, "growth estimates need at least 6 coefficients, got {}", n);
    let start = n / 2;
    let tail: Vec<(f64, f64)> = (start.max(1)..n)
        .filter_map(|k| {
            let a = s.coeffs[k];
            (a != 0).then(|| (k as f64, (a.unsigned_abs()) as f64))
        })
        .collect();
    // last consecutive ratio; the root a_k^(1/k) converges far more slowly
    let curvature = match tail.as_slice() {
        [.., (k0, a0), (k1, a1)] if *k1 == *k0 + 1.0 => a1 / a0,
        [.., (k, a)] => libm::pow(*a, 1.0 / k),
        [] => 0.0,
    };
    if tail.is_empty() {
        return Ok(GrowthReport { complexity: Some(0), curvature: 0.0, terms_used: 0 });
    }
    // geometric growth: consecutive ratios well above one
    let ratios: Vec<f64> = tail.windows(2).map(|w| w[1].1 / w[0].1).collect();
    let geometric = ratios.len() >= 2 && ratios.iter().all(|&r| r > 1.45);
    if geometric {
        return Ok(GrowthReport { complexity: None, curvature, terms_used: tail.len() });
    }
    let complexity = if tail.len() < 2 {
        1
    } else {
        let pts: Vec<(f64, f64)> = tail.iter().map(|&(k, a)| (libm::log(k), libm::log(a))).collect();
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
        (libm::round(slope).max(0.0) as usize) + 1
    };
    Ok(GrowthReport { complexity: Some(complexity), curvature, terms_used: tail.len() })
}

/// `H_M(−t)·H_N(−t) / H_R(−t)` through `terms` coefficients.
pub fn hilbert_quotient_formula(
    hm: &TruncatedSeries,
    hn: &TruncatedSeries,
    hr: &TruncatedSeries,
    terms: usize,
) -> Result<TruncatedSeries> {
    hm.at_neg_t().mul(&hn.at_neg_t()).div(&hr.at_neg_t(), terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic() {
        let a = TruncatedSeries::new(vec![1, 1]);
        let b = TruncatedSeries::new(vec![1, -1]);
        assert_eq!(a.mul(&b).trimmed().coeffs(), &[1, 0, -1]);
        let inv = TruncatedSeries::one().div(&b, 5).unwrap();
        assert_eq!(inv.coeffs(), &[1, 1, 1, 1, 1]);
        assert_eq!(inv.coeff(5), None);
        assert_eq!(a.coeff(9), Some(0));
        assert_eq!(a.at_neg_t().coeffs(), &[1, -1]);
        assert!(TruncatedSeries::one().div(&TruncatedSeries::new(vec![2]), 3).is_err());
    }

    #[test]
    fn comparisons() {
        let a = TruncatedSeries::truncated(vec![1, 2, 3]);
        let b = TruncatedSeries::truncated(vec![1, 3, 3, 9]);
        let c = a.compare(&b);
        assert_eq!(c.degrees, 3);
        assert!(c.leq && !c.equal);
        assert_eq!(c.first_strict, Some(1));
        assert!(!b.leq(&a));
    }

    #[test]
    fn display() {
        let s = TruncatedSeries::truncated(vec![1, -2, 0, 1]);
        assert_eq!(alloc::format!("{}", s), "1 - 2t + t^3 + O(t^4)");
        assert_eq!(alloc::format!("{}", TruncatedSeries::new(vec![])), "0");
    }

    #[test]
    fn rational_forms() {
        // 1/(1-t)^2 = 1 + 2t + 3t^2 + ...
        let s = TruncatedSeries::truncated((1..=10).collect());
        let f = s.match_rational_form().unwrap();
        assert_eq!((f.one_minus_t, f.one_plus_t, f.one_minus_2t), (2, 0, 0));
        assert_eq!(f.numerator, vec![1]);
        // (1+t)/(1-2t)
        let s = TruncatedSeries::new(vec![1, 1]).div(&TruncatedSeries::linear(1, -2), 10).unwrap();
        let f = s.match_rational_form().unwrap();
        assert_eq!(f.one_minus_2t, 1);
        assert_eq!(f.numerator, vec![1, 1]);
    }

    #[test]
    fn growth() {
        let ones = TruncatedSeries::truncated(vec![1; 12]);
        let g = ones.growth().unwrap();
        assert_eq!(g.complexity, Some(1));
        assert!((g.curvature - 1.0).abs() < 1e-12);
        let lin = TruncatedSeries::truncated((1..=12).collect());
        assert_eq!(lin.growth().unwrap().complexity, Some(2));
        let geo = TruncatedSeries::truncated((0..12).map(|k| 1i64 << k).collect());
        let g = geo.growth().unwrap();
        assert_eq!(g.complexity, None);
        assert!((g.curvature - 2.0).abs() < 0.2);
        let zero = TruncatedSeries::truncated(vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(zero.growth().unwrap().complexity, Some(0));
        assert!(TruncatedSeries::truncated(vec![1, 1, 1]).growth().is_err());
    }

    proptest! {
        #[test]
        fn division_inverts_multiplication(
            a in proptest::collection::vec(-20i64..20, 1..6),
            b in proptest::collection::vec(-5i64..5, 0..5),
        ) {
            let mut bc = vec![1i64];
            bc.extend(b);
            let pa = TruncatedSeries::new(a);
            let pb = TruncatedSeries::new(bc);
            let q = pa.mul(&pb).div(&pb, 8).unwrap();
            let expected = pa.truncate(8);
            prop_assert_eq!(q.coeffs(), expected.coeffs());
        }

        #[test]
        fn neg_t_is_an_involution(a in proptest::collection::vec(-50i64..50, 0..8)) {
            let s = TruncatedSeries::new(a);
            prop_assert_eq!(s.at_neg_t().at_neg_t(), s);
        }
    }
}
