//! Maps and complexes of finitely generated free modules over a local
//! algebra, with entries in the algebra, and their tensor products with
//! finite modules.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgElem, LocalAlgebra, QuotientData};
use crate::complex::{Complex, CxMap};
use crate::error::{ensure, Result};
use crate::linalg::{Mat, Rat};
use crate::modules::FDModule;

/// A `rows × cols` matrix with entries in a local algebra, acting on
/// column vectors of free-module coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeMap {
    algebra: LocalAlgebra,
    rows: usize,
    cols: usize,
    entries: Vec<AlgElem>,
}

impl fmt::Debug for FreeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FreeMap {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<_> = (0..self.cols).map(|j| self.algebra.format_elem(self.get(i, j))).collect();
            writeln!(f, "  {:?}", row)?;
        }
        write!(f, "]")
    }
}

impl FreeMap {
    pub fn zeros(algebra: &LocalAlgebra, rows: usize, cols: usize) -> FreeMap {
        FreeMap { algebra: algebra.clone(), rows, cols, entries: vec![algebra.zero(); rows * cols] }
    }

    pub fn identity(algebra: &LocalAlgebra, n: usize) -> FreeMap {
        let mut m = FreeMap::zeros(algebra, n, n);
        for i in 0..n {
            m.set(i, i, algebra.one());
        }
        m
    }

    /// Builds a map from its columns.
    pub fn from_cols(algebra: &LocalAlgebra, rows: usize, cols: &[Vec<AlgElem>]) -> FreeMap {
        let mut m = FreeMap::zeros(algebra, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, a) in c.iter().enumerate() {
                m.set(i, j, a.clone());
            }
        }
        m
    }

    pub fn algebra(&self) -> &LocalAlgebra {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: AlgElem) {
        self.entries[i * self.cols + j] = a;
    }

    pub fn col(&self, j: usize) -> Vec<AlgElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgElem::is_zero)
    }

    /// Whether every entry lies in the given subspace of the algebra.
    pub fn entries_in(&self, sub: &crate::linalg::Subspace) -> bool {
        self.entries.iter().all(|a| sub.contains(&a.coeffs))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FreeMap) -> Result<FreeMap> {
        ensure!(self.cols == first.rows, DimensionMismatch, "free map composition");
        let mut out = FreeMap::zeros(&self.algebra, self.rows, first.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..first.cols {
                    let b = first.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let p = self.algebra.mul(a, b);
                    out.entries[i * first.cols + j].add_assign(&p);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FreeMap) -> Result<FreeMap> {
        ensure!(self.rows == other.rows && self.cols == other.cols, DimensionMismatch, "free map sum");
        Ok(FreeMap {
            algebra: self.algebra.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &FreeMap) -> Result<FreeMap> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FreeMap {
        self.map_entries_same(|a| a.neg())
    }

    pub fn scale(&self, c: &Rat) -> FreeMap {
        self.map_entries_same(|a| a.scale(c))
    }

    /// Multiplies every entry by the ring element `a`.
    pub fn times_elem(&self, a: &AlgElem) -> FreeMap {
        let alg = self.algebra.clone();
        self.map_entries_same(|x| alg.mul(a, x))
    }

    fn map_entries_same(&self, f: impl Fn(&AlgElem) -> AlgElem) -> FreeMap {
        FreeMap {
            algebra: self.algebra.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Reduces entries into `Q/I`.
    pub fn project(&self, q: &QuotientData) -> Result<FreeMap> {
        ensure!(self.algebra == q.parent, Precondition, "free map is not over the parent ring");
        Ok(FreeMap {
            algebra: q.quotient.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| q.project(a)).collect(),
        })
    }

    /// Lifts entries from `Q/I` to `Q` through the section.
    pub fn lift(&self, q: &QuotientData) -> Result<FreeMap> {
        ensure!(self.algebra == q.quotient, Precondition, "free map is not over the quotient ring");
        Ok(FreeMap {
            algebra: q.parent.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| q.lift(a)).collect(),
        })
    }

    /// `self ⊗ N`: the `(rows·p) × (cols·p)` matrix whose `(i, j)` block is
    /// the action of entry `(i, j)` on `N`.
    pub fn tensor(&self, n: &FDModule) -> Result<Mat> {
        ensure!(*n.algebra() == self.algebra, Precondition, "module is over a different ring");
        let p = n.dim();
        let mut m = Mat::zeros(self.rows * p, self.cols * p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() {
                    m.set_block(i * p, j * p, &n.act(a));
                }
            }
        }
        Ok(m)
    }

    /// Applies the map to a vector of ring elements.
    pub fn apply(&self, v: &[AlgElem]) -> Vec<AlgElem> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.algebra.zero(); self.rows];
        for i in 0..self.rows {
            for (j, x) in v.iter().enumerate() {
                let a = self.get(i, j);
                if a.is_zero() || x.is_zero() {
                    continue;
                }
                out[i].add_assign(&self.algebra.mul(a, x));
            }
        }
        out
    }

    /// Block matrix from a grid of free maps.
    pub fn from_blocks(algebra: &LocalAlgebra, grid: &[Vec<FreeMap>]) -> Result<FreeMap> {
        let rows: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let cols: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        let mut out = FreeMap::zeros(algebra, rows.iter().sum(), cols.iter().sum());
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                ensure!(b.rows == rows[bi] && b.cols == cols[bj], DimensionMismatch, "block grid shapes");
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += cols[bj];
            }
            r0 += rows[bi];
        }
        Ok(out)
    }
}

/// Flattens a vector of ring elements into ℚ-coordinates.
pub fn flatten(v: &[AlgElem]) -> Vec<Rat> {
    v.iter().flat_map(|a| a.coeffs.iter().cloned()).collect()
}

/// Splits ℚ-coordinates of a free module into ring elements.
pub fn unflatten(v: &[Rat], d: usize) -> Vec<AlgElem> {
    v.chunks(d).map(|c| AlgElem::new(c.to_vec())).collect()
}

/// A complex of free modules: `diffs[k]` maps degree `lo + k` to `lo + k − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub lo: i64,
    pub ranks: Vec<usize>,
    pub diffs: Vec<FreeMap>,
}

impl FreeComplex {
    pub fn new(lo: i64, diffs: Vec<FreeMap>) -> Result<FreeComplex> {
        ensure!(!diffs.is_empty() && diffs[0].rows == 0, Validation, "the lowest differential must map to zero");
        let ranks: Vec<usize> = diffs.iter().map(|d| d.cols).collect();
        for k in 1..diffs.len() {
            ensure!(diffs[k].rows == ranks[k - 1], Validation, "free differential shape in position {}", k);
        }
        Ok(FreeComplex { lo, ranks, diffs })
    }

    pub fn top(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank_at(&self, n: i64) -> usize {
        if n < self.lo || n > self.top() {
            0
        } else {
            self.ranks[(n - self.lo) as usize]
        }
    }

    pub fn d(&self, n: i64) -> Option<&FreeMap> {
        if n < self.lo || n > self.top() {
            None
        } else {
            Some(&self.diffs[(n - self.lo) as usize])
        }
    }

    /// `∂∂ = 0` over the ring, degree by degree.
    pub fn verify(&self) -> Result<()> {
        for k in 1..self.diffs.len() {
            let dd = self.diffs[k - 1].compose(&self.diffs[k])?;
            ensure!(dd.is_zero(), TheoremViolation, "∂∂ ≠ 0 in degree {}", self.lo + k as i64);
        }
        Ok(())
    }

    pub fn tensor(&self, n: &FDModule) -> Result<Complex> {
        let diffs = self.diffs.iter().map(|d| d.tensor(n)).collect::<Result<Vec<_>>>()?;
        Complex::new(self.lo, diffs)
    }

    pub fn project(&self, q: &QuotientData) -> Result<FreeComplex> {
        Ok(FreeComplex {
            lo: self.lo,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|d| d.project(q)).collect::<Result<_>>()?,
        })
    }
}

/// A map of free complexes of a fixed degree; component `n` leaves source
/// degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainMap {
    pub degree: i64,
    pub lo: i64,
    pub comps: Vec<FreeMap>,
}

impl FreeChainMap {
    pub fn top(&self) -> i64 {
        self.lo + self.comps.len() as i64 - 1
    }

    pub fn comp(&self, n: i64) -> Option<&FreeMap> {
        if n < self.lo {
            return None;
        }
        self.comps.get((n - self.lo) as usize)
    }

    pub fn tensor(&self, n: &FDModule) -> Result<CxMap> {
        let comps = self.comps.iter().map(|c| c.tensor(n)).collect::<Result<Vec<_>>>()?;
        Ok(CxMap::new(self.degree, self.lo, comps))
    }

    pub fn lift(&self, q: &QuotientData) -> Result<FreeChainMap> {
        Ok(FreeChainMap {
            degree: self.degree,
            lo: self.lo,
            comps: self.comps.iter().map(|c| c.lift(q)).collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn tensor_with_residue_field_reduces_entries() {
        let q = LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap();
        let mut m = FreeMap::zeros(&q, 1, 2);
        m.set(0, 0, q.elem(&[3, 1, 0, 0]));
        m.set(0, 1, q.elem(&[0, 0, 1, 0]));
        let k = FDModule::residue_field(&q);
        assert_eq!(m.tensor(&k).unwrap(), Mat::from_i64(&[&[3, 0]]));
        let reg = FDModule::regular(&q);
        let t = m.tensor(&reg).unwrap();
        assert_eq!((t.rows(), t.cols()), (4, 8));
    }

    #[test]
    fn composition_matches_realization() {
        let q = LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap();
        let mut a = FreeMap::zeros(&q, 2, 1);
        a.set(0, 0, q.elem(&[1, 1, 0, 0]));
        a.set(1, 0, q.elem(&[0, 0, 1, 0]));
        let mut b = FreeMap::zeros(&q, 1, 2);
        b.set(0, 0, q.elem(&[0, 1, 0, 0]));
        b.set(0, 1, q.elem(&[0, 0, 2, 1]));
        let reg = FDModule::regular(&q);
        let ab = b.compose(&a).unwrap();
        assert_eq!(ab.tensor(&reg).unwrap(), b.tensor(&reg).unwrap().mul(&a.tensor(&reg).unwrap()).unwrap());
    }
}
