//! The Tate resolution `A = Q⟨y, t⟩` of `R = Q/(f)` for an exact pair
//! `(f, g)`, on the basis `y₀ = 1, y₁ = y, y₂ = t, y₃ = yt, …`.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{AlgElem, LocalAlgebra};
use crate::error::{ensure, Result};
use crate::free::{FreeComplex, FreeMap};
use crate::linalg::{binomial, Rat};
use crate::modules::FDModule;

/// `∂y_{2n+1} = f·y_{2n}`, `∂y_{2n} = g·y_{2n−1}`; `y_a y_b = 0` for `a, b`
/// both odd, otherwise `C(⌊a/2⌋+⌊b/2⌋, ⌊a/2⌋)·y_{a+b}`.
#[derive(Clone, Debug)]
pub struct TateAlgebra {
    base: LocalAlgebra,
    f: AlgElem,
    g: AlgElem,
    cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateReport {
    pub cap: usize,
    pub d_squared_zero: bool,
    pub unit: bool,
    pub associative: bool,
    pub graded_commutative: bool,
    pub odd_squares_zero: bool,
    pub leibniz: bool,
    pub divided_powers: bool,
    /// `dim H_i(A)` for `0 ≤ i < cap`.
    pub homology_dims: Vec<usize>,
    /// `H₀(A) = Q/(f)` as subspaces.
    pub h0_is_r: bool,
}

impl TateReport {
    pub fn all_hold(&self) -> bool {
        self.d_squared_zero
            && self.unit
            && self.associative
            && self.graded_commutative
            && self.odd_squares_zero
            && self.leibniz
            && self.divided_powers
            && self.h0_is_r
            && self.homology_dims.iter().skip(1).all(|&d| d == 0)
    }
}

impl TateAlgebra {
    /// Requires `(f, g)` to be an exact pair and verifies every axiom
    /// through degree `cap`.
    pub fn build(base: &LocalAlgebra, f: &AlgElem, g: &AlgElem, cap: usize) -> Result<TateAlgebra> {
        ensure!(base.is_exact_pair(f, g).holds(), Precondition, "(f, g) is not an exact pair of zero divisors");
        ensure!(cap >= 1, Precondition, "cap must be at least 1");
        let a = TateAlgebra { base: base.clone(), f: f.clone(), g: g.clone(), cap };
        let rep = a.verify()?;
        ensure!(rep.all_hold(), TheoremViolation, "Tate algebra axioms fail: {:?}", rep);
        Ok(a)
    }

    pub fn base(&self) -> &LocalAlgebra {
        &self.base
    }

    pub fn f(&self) -> &AlgElem {
        &self.f
    }

    pub fn g(&self) -> &AlgElem {
        &self.g
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// `c_i` with `∂y_i = c_i·y_{i−1}`; `None` for `i = 0`.
    pub fn diff_coeff(&self, i: usize) -> Option<&AlgElem> {
        match i {
            0 => None,
            i if i % 2 == 1 => Some(&self.f),
            _ => Some(&self.g),
        }
    }

    /// `y_a·y_b = c·y_{a+b}`; returns `c` (zero when both are odd).
    pub fn product(a: usize, b: usize) -> Rat {
        if a % 2 == 1 && b % 2 == 1 {
            return Rat::ZERO;
        }
        let (ha, hb) = (a as u64 / 2, b as u64 / 2);
        binomial(ha + hb, ha)
    }

    /// `A` as a complex of free `Q`-modules of rank one, degrees `0..=cap`.
    pub fn as_free_complex(&self) -> FreeComplex {
        let mut diffs = Vec::with_capacity(self.cap + 1);
        diffs.push(FreeMap::zeros(&self.base, 0, 1));
        for i in 1..=self.cap {
            let mut m = FreeMap::zeros(&self.base, 1, 1);
            m.set(0, 0, self.diff_coeff(i).expect("positive degree").clone());
            diffs.push(m);
        }
        FreeComplex::new(0, diffs).expect("rank-one shapes")
    }

    /// Checks the dg-algebra axioms on basis elements and the resolution
    /// property by homology.
    pub fn verify(&self) -> Result<TateReport> {
        let q = &self.base;
        let cap = self.cap;
        let c = |i: usize| self.diff_coeff(i).cloned().unwrap_or_else(|| q.zero());
        let d_squared_zero = (2..=cap).all(|i| q.mul(&c(i - 1), &c(i)).is_zero());
        let unit = (0..=cap).all(|a| Self::product(0, a).is_one() && Self::product(a, 0).is_one());
        let mut associative = true;
        for a in 0..=cap {
            for b in 0..=(cap - a) {
                for cc in 0..=(cap - a - b) {
                    let lhs = Self::product(a, b) * Self::product(a + b, cc);
                    let rhs = Self::product(b, cc) * Self::product(a, b + cc);
                    associative &= lhs == rhs;
                }
            }
        }
        let mut graded_commutative = true;
        let mut odd_squares_zero = true;
        for a in 0..=cap {
            for b in 0..=(cap - a) {
                let sign = if (a * b) % 2 == 1 { Rat::from_int(-1) } else { Rat::ONE };
                graded_commutative &= Self::product(a, b) == sign * Self::product(b, a);
            }
            if a % 2 == 1 && 2 * a <= cap {
                odd_squares_zero &= Self::product(a, a).is_zero();
            }
        }
        // ∂(y_a y_b) = ∂(y_a) y_b + (−1)^a y_a ∂(y_b), all sides multiples of y_{a+b−1}
        let mut leibniz = true;
        for a in 0..=cap {
            for b in 0..=(cap - a) {
                if a + b == 0 {
                    continue;
                }
                let lhs = c(a + b).scale(&Self::product(a, b));
                let mut rhs = q.zero();
                if a > 0 {
                    rhs.add_scaled(&Self::product(a - 1, b), &c(a));
                }
                if b > 0 {
                    let s = if a % 2 == 1 { Rat::from_int(-1) } else { Rat::ONE };
                    rhs.add_scaled(&(s * Self::product(a, b - 1)), &c(b));
                }
                leibniz &= lhs == rhs;
            }
        }
        let divided_powers = (0..=cap.saturating_sub(2)).all(|k| {
            let j = k as i64 / 2;
            Self::product(2, k) == Rat::from_int(1 + j)
        });
        let cx = self.as_free_complex().tensor(&FDModule::regular(q))?;
        cx.verify()?;
        let homology_dims = cx.homology_dims(0, cap as i64 - 1)?;
        let h0 = cx.homology(0)?;
        let h0_is_r =
            h0.boundaries == q.principal(&self.f).subspace && h0.dim() == q.dim() - q.principal(&self.f).dim();
        Ok(TateReport {
            cap,
            d_squared_zero,
            unit,
            associative,
            graded_commutative,
            odd_squares_zero,
            leibniz,
            divided_powers,
            homology_dims,
            h0_is_r,
        })
    }

    pub fn describe(&self) -> alloc::string::String {
        format!(
            "A over {:?}: f = {}, g = {}, cap {}",
            self.base,
            self.base.format_elem(&self.f),
            self.base.format_elem(&self.g),
            self.cap
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn q() -> LocalAlgebra {
        LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(TateAlgebra::product(2, 2), Rat::from_int(2));
        assert_eq!(TateAlgebra::product(1, 1), Rat::ZERO);
        assert_eq!(TateAlgebra::product(4, 4), Rat::from_int(6));
        assert_eq!(TateAlgebra::product(2, 5), Rat::from_int(3));
    }

    #[test]
    fn acceptance_ring_axioms() {
        let q = q();
        let x = q.basis_elem(1);
        let a = TateAlgebra::build(&q, &x, &x, 8).unwrap();
        let rep = a.verify().unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.homology_dims[0], 2);
        assert!(a.describe().contains("cap 8"));
    }

    #[test]
    fn non_exact_pair_rejected() {
        let q = q();
        let xy = q.basis_elem(3);
        assert!(TateAlgebra::build(&q, &xy, &xy, 4).is_err());
    }
}
