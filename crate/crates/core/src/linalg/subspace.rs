use alloc::vec;
use alloc::vec::Vec;

use super::mat::Mat;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Incremental row echelon form. Each stored row has a pivot entry equal to
/// one and is zero at the pivots of all rows inserted before it.
///
/// When `track` is set, every row also carries its expression as a
/// combination of the vectors passed to [`Echelon::insert`], which is what
/// [`Coordinates`] uses to express vectors in a fixed basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
    exprs: Vec<Vec<Rat>>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new(dim: usize) -> Echelon {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new(), exprs: Vec::new(), inserted: 0, track: false }
    }

    fn tracking(dim: usize) -> Echelon {
        Echelon { track: true, ..Echelon::new(dim) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows. Returns the residual and the
    /// multipliers used for each stored row.
    fn reduce(&self, v: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut v = v.to_vec();
        let mut mult = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if !c.is_zero() {
                for (x, r) in v.iter_mut().zip(row).skip(p) {
                    if !r.is_zero() {
                        *x -= &(&c * r);
                    }
                }
            }
            mult.push(c);
        }
        (v, mult)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).0.iter().all(Rat::is_zero)
    }

    /// Adds `v`; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.dim, "echelon dimension");
        let idx = self.inserted;
        self.inserted += 1;
        let (mut res, mult) = self.reduce(v);
        let Some(p) = res.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = res[p].recip();
        for x in res.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        if self.track {
            // res = (v - Σ mult_k row_k) * inv, expressed in inserted vectors
            let mut e = vec![Rat::ZERO; idx + 1];
            e[idx] = Rat::ONE;
            for (k, c) in mult.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (t, x) in self.exprs[k].iter().enumerate() {
                    e[t] -= &(c * x);
                }
            }
            for x in e.iter_mut() {
                *x *= &inv;
            }
            self.exprs.push(e);
        }
        self.rows.push(res);
        self.pivots.push(p);
        true
    }
}

/// Expresses vectors in a fixed linearly independent list of vectors.
#[derive(Clone, Debug)]
pub struct Coordinates {
    len: usize,
    ech: Echelon,
}

impl Coordinates {
    pub fn new(dim: usize, basis: &[Vec<Rat>]) -> Result<Coordinates> {
        let mut ech = Echelon::tracking(dim);
        for b in basis {
            if b.len() != dim {
                return Err(Error::DimensionMismatch("basis vector length"));
            }
            if !ech.insert(b) {
                return Err(Error::DimensionMismatch("basis vectors are dependent"));
            }
        }
        Ok(Coordinates { len: basis.len(), ech })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coefficients `c` with `v = Σ c_i basis_i`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if v.len() != self.ech.dim {
            return None;
        }
        let (res, mult) = self.ech.reduce(v);
        if !res.iter().all(Rat::is_zero) {
            return None;
        }
        let mut c = vec![Rat::ZERO; self.len];
        for (k, m) in mult.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            for (t, x) in self.ech.exprs[k].iter().enumerate() {
                c[t].add_mul(m, x);
            }
        }
        Some(c)
    }
}

/// A linear subspace of `ℚ^n`, kept with both its construction basis and a
/// canonical reduced echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    canon: Mat,
    pivots: Vec<usize>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.canon == other.canon
    }
}

impl Eq for Subspace {}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: Vec::new(), canon: Mat::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rat::ZERO; ambient];
                v[i] = Rat::ONE;
                v
            })
            .collect();
        Subspace::from_independent(ambient, basis)
    }

    /// Span of arbitrary vectors; the kept basis is the independent subset in
    /// input order.
    pub fn span<I: IntoIterator<Item = Vec<Rat>>>(ambient: usize, vectors: I) -> Subspace {
        let mut ech = Echelon::new(ambient);
        let mut basis = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length");
            if ech.insert(&v) {
                basis.push(v);
            }
        }
        Subspace::from_independent(ambient, basis)
    }

    /// Caller guarantees independence.
    pub fn from_independent(ambient: usize, basis: Vec<Vec<Rat>>) -> Subspace {
        let m = if basis.is_empty() {
            Mat::zeros(0, ambient)
        } else {
            Mat::from_rows(basis.clone()).expect("rectangular basis")
        };
        let (r, pivots) = m.rref();
        debug_assert_eq!(pivots.len(), basis.len(), "basis not independent");
        let canon = r.block(0, 0, pivots.len(), ambient);
        Subspace { ambient, basis, canon, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    /// Basis in reduced row-echelon form.
    pub fn canonical_basis(&self) -> Vec<Vec<Rat>> {
        (0..self.canon.rows()).map(|i| self.canon.row(i).to_vec()).collect()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(self.canon.row(i)).skip(p) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        v.iter().all(Rat::is_zero)
    }

    pub fn is_subset_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace sum"));
        }
        Ok(Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned()))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("subspace intersection"));
        }
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.ambient));
        }
        // Σ α_i a_i − Σ β_j b_j = 0
        let mut m = Mat::zeros(self.ambient, a + b);
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        for (j, v) in other.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m[(i, a + j)] = -x;
            }
        }
        let ker = m.kernel_basis();
        let vecs = ker.basis().iter().map(|k| {
            let mut w = vec![Rat::ZERO; self.ambient];
            for (c, v) in k[..a].iter().zip(&self.basis) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in w.iter_mut().zip(v) {
                    x.add_mul(c, y);
                }
            }
            w
        });
        Ok(Subspace::span(self.ambient, vecs))
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Mat) -> Result<Subspace> {
        if m.cols() != self.ambient {
            return Err(Error::DimensionMismatch("image under map"));
        }
        let mut imgs = Vec::with_capacity(self.dim());
        for v in &self.basis {
            imgs.push(m.apply(v)?);
        }
        Ok(Subspace::span(m.rows(), imgs))
    }

    /// The basis as the columns of an `ambient × dim` matrix.
    pub fn as_columns(&self) -> Mat {
        Mat::from_cols(self.ambient, &self.basis).expect("basis lengths")
    }
}

/// Coset representatives of `ambient / sub`: the vectors of `ambient`'s basis,
/// in order, that are independent modulo `sub` and the previously chosen ones.
pub fn quotient_basis(ambient: &Subspace, sub: &Subspace) -> Result<Subspace> {
    if ambient.ambient != sub.ambient {
        return Err(Error::DimensionMismatch("quotient ambient"));
    }
    if !sub.is_subset_of(ambient) {
        return Err(Error::DimensionMismatch("quotient of a non-subspace"));
    }
    let mut ech = Echelon::new(ambient.ambient);
    for v in &sub.basis {
        ech.insert(v);
    }
    let reps: Vec<Vec<Rat>> = ambient.basis.iter().filter(|v| ech.insert(v)).cloned().collect();
    Ok(Subspace::from_independent(ambient.ambient, reps))
}

pub fn subspace_eq(a: &Subspace, b: &Subspace) -> bool {
    a == b
}
