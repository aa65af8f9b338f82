//! Finite-dimensional modules over a [`LocalAlgebra`], given by the action
//! matrices of the basis elements.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::algebra::{AlgElem, AlgIdeal, LocalAlgebra, QuotientData};
use crate::error::{ensure, Error, Result};
use crate::linalg::{quotient_basis, Coordinates, Mat, Rat, Subspace};
use crate::series::TruncatedSeries;

#[derive(Clone)]
pub struct FDModule {
    algebra: LocalAlgebra,
    dim: usize,
    action: Arc<Vec<Mat>>,
}

impl fmt::Debug for FDModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FDModule(dim {} over {:?})", self.dim, self.algebra)
    }
}

impl PartialEq for FDModule {
    fn eq(&self, other: &FDModule) -> bool {
        self.algebra == other.algebra && self.dim == other.dim && self.action == other.action
    }
}

impl FDModule {
    /// Validates that `action[i]` represents multiplication by `b_i`:
    /// `ρ(b₀) = I` and `ρ(b_i)ρ(b_j) = Σ_k c_ij^k ρ(b_k)`.
    pub fn new(algebra: &LocalAlgebra, dim: usize, action: Vec<Mat>) -> Result<FDModule> {
        let d = algebra.dim();
        ensure!(action.len() == d, Validation, "{} action matrices for a {}-dimensional algebra", action.len(), d);
        for (i, m) in action.iter().enumerate() {
            ensure!(
                m.rows() == dim && m.cols() == dim,
                Validation,
                "action matrix {} is {}x{}, expected {}x{}",
                i,
                m.rows(),
                m.cols(),
                dim,
                dim
            );
        }
        ensure!(action[0] == Mat::identity(dim), Validation, "the unit does not act as the identity");
        let table = algebra.table();
        for i in 0..d {
            for j in 0..d {
                let lhs = action[i].mul(&action[j])?;
                let mut rhs = Mat::zeros(dim, dim);
                for (k, c) in table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&action[k].scale(c))?;
                    }
                }
                ensure!(lhs == rhs, Validation, "action is not multiplicative on basis pair ({},{})", i, j);
            }
        }
        Ok(FDModule::from_parts(algebra, dim, action))
    }

    pub(crate) fn from_parts(algebra: &LocalAlgebra, dim: usize, action: Vec<Mat>) -> FDModule {
        FDModule { algebra: algebra.clone(), dim, action: Arc::new(action) }
    }

    pub fn zero(algebra: &LocalAlgebra) -> FDModule {
        FDModule::from_parts(algebra, 0, vec![Mat::zeros(0, 0); algebra.dim()])
    }

    /// The residue field `k = Q/m`.
    pub fn residue_field(algebra: &LocalAlgebra) -> FDModule {
        let mut action = vec![Mat::zeros(1, 1); algebra.dim()];
        action[0] = Mat::identity(1);
        FDModule::from_parts(algebra, 1, action)
    }

    /// `Q` acting on itself.
    pub fn regular(algebra: &LocalAlgebra) -> FDModule {
        let action = (0..algebra.dim()).map(|i| algebra.left_basis(i).clone()).collect();
        FDModule::from_parts(algebra, algebra.dim(), action)
    }

    pub fn free(algebra: &LocalAlgebra, rank: usize) -> FDModule {
        FDModule::direct_sum_of(algebra, &vec![FDModule::regular(algebra); rank])
    }

    /// `Q/I`.
    pub fn cyclic(algebra: &LocalAlgebra, ideal: &AlgIdeal) -> Result<FDModule> {
        Ok(FDModule::regular(algebra).quotient(&ideal.subspace)?.0)
    }

    /// The maximal ideal as a module.
    pub fn maximal_ideal(algebra: &LocalAlgebra) -> Result<FDModule> {
        Ok(FDModule::regular(algebra).submodule(&algebra.m_power(1))?.0)
    }

    pub fn algebra(&self) -> &LocalAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Length over a ring with residue field ℚ is the ℚ-dimension.
    pub fn length(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    pub fn act_basis(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    /// Matrix of multiplication by `a`.
    pub fn act(&self, a: &AlgElem) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ai = &self.action[i];
            for r in 0..self.dim {
                for s in 0..self.dim {
                    let x = &ai[(r, s)];
                    if !x.is_zero() {
                        m[(r, s)].add_mul(c, x);
                    }
                }
            }
        }
        m
    }

    pub fn annihilates(&self, a: &AlgElem) -> bool {
        self.act(a).is_zero()
    }

    /// Whether every element of the ideal kills the module.
    pub fn annihilated_by_ideal(&self, ideal: &AlgIdeal) -> bool {
        ideal.subspace.basis().iter().all(|v| self.annihilates(&AlgElem::new(v.clone())))
    }

    /// Invariance of a subspace under the action.
    pub fn is_submodule(&self, sub: &Subspace) -> bool {
        (1..self.action.len())
            .all(|i| sub.basis().iter().all(|v| sub.contains(&self.action[i].apply(v).expect("square"))))
    }

    /// `I·M` for an ideal `I`.
    pub fn ideal_times(&self, ideal: &AlgIdeal) -> Subspace {
        let vecs = ideal.subspace.basis().iter().flat_map(|a| {
            let m = self.act(&AlgElem::new(a.clone()));
            (0..self.dim).map(move |j| m.col(j))
        });
        Subspace::span(self.dim, vecs)
    }

    /// `m·M`.
    pub fn m_times(&self) -> Subspace {
        self.m_power_times(1)
    }

    /// `m^k·M`.
    pub fn m_power_times(&self, k: usize) -> Subspace {
        let mut cur = Subspace::full(self.dim);
        for _ in 0..k {
            let vecs = (1..self.action.len()).flat_map(|i| {
                let a = &self.action[i];
                cur.basis().iter().map(move |v| a.apply(v).expect("square"))
            });
            cur = Subspace::span(self.dim, vecs.collect::<Vec<_>>());
            if cur.dim() == 0 {
                break;
            }
        }
        cur
    }

    /// Coset representatives of `M/mM`: a minimal generating set.
    pub fn minimal_generators(&self) -> Vec<Vec<Rat>> {
        quotient_basis(&Subspace::full(self.dim), &self.m_times())
            .expect("subspace of the ambient space")
            .basis()
            .to_vec()
    }

    pub fn num_generators(&self) -> usize {
        self.dim - self.m_times().dim()
    }

    /// The submodule spanned by `sub`, with its inclusion.
    pub fn submodule(&self, sub: &Subspace) -> Result<(FDModule, ModMap)> {
        ensure!(
            sub.ambient() == self.dim,
            Precondition,
            "subspace lives in dimension {}, module has {}",
            sub.ambient(),
            self.dim
        );
        ensure!(self.is_submodule(sub), Precondition, "subspace is not closed under the action");
        let basis = sub.basis().to_vec();
        let coords = Coordinates::new(self.dim, &basis)?;
        let k = basis.len();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Rat>> =
                    basis.iter().map(|v| coords.coords(&a.apply(v).expect("square")).expect("invariant")).collect();
                Mat::from_cols(k, &cols).expect("shape")
            })
            .collect();
        let sm = FDModule::from_parts(&self.algebra, k, action);
        let inc = ModMap::from_parts(&sm, self, Mat::from_cols(self.dim, &basis)?);
        Ok((sm, inc))
    }

    /// `M/sub` with its projection.
    pub fn quotient(&self, sub: &Subspace) -> Result<(FDModule, ModMap)> {
        ensure!(
            sub.ambient() == self.dim,
            Precondition,
            "subspace lives in dimension {}, module has {}",
            sub.ambient(),
            self.dim
        );
        ensure!(self.is_submodule(sub), Precondition, "subspace is not closed under the action");
        let reps = quotient_basis(&Subspace::full(self.dim), sub)?;
        let mut all = sub.basis().to_vec();
        all.extend(reps.basis().iter().cloned());
        let coords = Coordinates::new(self.dim, &all)?;
        let skip = sub.dim();
        let e = reps.dim();
        let project = |v: &[Rat]| coords.coords(v).expect("full span")[skip..].to_vec();
        let mut proj = Mat::zeros(e, self.dim);
        for j in 0..self.dim {
            let mut u = vec![Rat::ZERO; self.dim];
            u[j] = Rat::ONE;
            for (i, x) in project(&u).into_iter().enumerate() {
                proj[(i, j)] = x;
            }
        }
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Rat>> = reps.basis().iter().map(|v| project(&a.apply(v).expect("square"))).collect();
                Mat::from_cols(e, &cols).expect("shape")
            })
            .collect();
        let qm = FDModule::from_parts(&self.algebra, e, action);
        let p = ModMap::from_parts(self, &qm, proj);
        Ok((qm, p))
    }

    pub fn direct_sum(&self, other: &FDModule) -> Result<FDModule> {
        ensure!(self.algebra == other.algebra, Precondition, "direct sum of modules over different rings");
        Ok(FDModule::direct_sum_of(&self.algebra, &[self.clone(), other.clone()]))
    }

    pub fn direct_sum_of(algebra: &LocalAlgebra, parts: &[FDModule]) -> FDModule {
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..algebra.dim())
            .map(|i| {
                let mut m = Mat::zeros(dim, dim);
                let mut off = 0;
                for p in parts {
                    m.set_block(off, off, &p.action[i]);
                    off += p.dim;
                }
                m
            })
            .collect();
        FDModule::from_parts(algebra, dim, action)
    }

    /// Views a module over `Q/I` as a module over `Q`.
    pub fn restrict_scalars(&self, q: &QuotientData) -> Result<FDModule> {
        ensure!(self.algebra == q.quotient, Precondition, "module is not over the quotient ring");
        let d = q.parent.dim();
        let action = (0..d)
            .map(|j| {
                let image = AlgElem::new(q.projection.col(j));
                self.act(&image)
            })
            .collect();
        Ok(FDModule::from_parts(&q.parent, self.dim, action))
    }

    /// Views a `Q`-module killed by `I` as a module over `Q/I`.
    pub fn descend(&self, q: &QuotientData) -> Result<FDModule> {
        ensure!(self.algebra == q.parent, Precondition, "module is not over the parent ring");
        let e = q.quotient.dim();
        let action: Vec<Mat> = (0..e).map(|j| self.act(&AlgElem::new(q.section.col(j)))).collect();
        // the action through the section is well defined iff the kernel acts by zero
        let kernel = q.projection.kernel_basis();
        ensure!(
            kernel.basis().iter().all(|v| self.annihilates(&AlgElem::new(v.clone()))),
            Precondition,
            "module is not annihilated by the ideal"
        );
        FDModule::new(&q.quotient, self.dim, action)
    }

    /// `M ⊗_Q N` over the common ring, as the quotient of `M ⊗_ℚ N` by
    /// `span{am ⊗ n − m ⊗ an}`.
    pub fn tensor_over(&self, other: &FDModule) -> Result<FDModule> {
        ensure!(self.algebra == other.algebra, Precondition, "tensor product of modules over different rings");
        let (p, q) = (self.dim, other.dim);
        let ip = Mat::identity(p);
        let iq = Mat::identity(q);
        let d = self.algebra.dim();
        let big: Vec<Mat> = (0..d).map(|i| self.action[i].kron(&iq)).collect();
        let rel_vecs = (1..d).flat_map(|i| {
            let a = self.action[i].kron(&iq).sub(&ip.kron(&other.action[i])).expect("shape");
            (0..p * q).map(move |j| a.col(j))
        });
        let rel = Subspace::span(p * q, rel_vecs.collect::<Vec<_>>());
        let full = FDModule::from_parts(&self.algebra, p * q, big);
        Ok(full.quotient(&rel)?.0)
    }

    /// `mM` with its inclusion `ν`.
    pub fn submodule_m_m(&self) -> Result<(FDModule, ModMap)> {
        self.submodule(&self.m_times())
    }

    /// `M → M/mM`.
    pub fn projection_pi(&self) -> Result<(FDModule, ModMap)> {
        self.quotient(&self.m_times())
    }

    /// Hilbert series of the `m`-adic filtration: `Σ ℓ(mⁱM/mⁱ⁺¹M) tⁱ`.
    pub fn hilbert_series_module(&self) -> TruncatedSeries {
        let mut coeffs = Vec::new();
        let mut prev = self.dim;
        let mut k = 1;
        while prev > 0 {
            let next = self.m_power_times(k).dim();
            coeffs.push((prev - next) as i64);
            prev = next;
            k += 1;
        }
        TruncatedSeries::new(coeffs)
    }

    /// A random quotient of `Q^rank` by `relations` random elements of
    /// `m·Q^rank` with small integer coordinates, so the result always
    /// needs exactly `rank` generators.
    pub fn random_quotient<G: Rng>(algebra: &LocalAlgebra, rng: &mut G, rank: usize, relations: usize) -> FDModule {
        let free = FDModule::free(algebra, rank);
        let d = algebra.dim();
        let gens: Vec<Vec<Rat>> = (0..relations)
            .map(|_| {
                (0..free.dim)
                    .map(|i| if i % d == 0 { Rat::zero() } else { Rat::from_int(rng.gen_range(-2..=2)) })
                    .collect()
            })
            .collect();
        let sub = free.generated_submodule(&gens);
        free.quotient(&sub).expect("generated submodule").0
    }

    /// The submodule generated by the given vectors.
    pub fn generated_submodule(&self, gens: &[Vec<Rat>]) -> Subspace {
        let vecs = gens.iter().flat_map(|g| self.action.iter().map(move |a| a.apply(g).expect("square")));
        Subspace::span(self.dim, vecs.collect::<Vec<_>>())
    }
}

/// A module homomorphism between modules over the same ring.
#[derive(Clone, Debug)]
pub struct ModMap {
    pub source: FDModule,
    pub target: FDModule,
    pub matrix: Mat,
}

impl ModMap {
    /// Validates shape and linearity over the ring.
    pub fn new(source: &FDModule, target: &FDModule, matrix: Mat) -> Result<ModMap> {
        ensure!(source.algebra == target.algebra, Precondition, "map between modules over different rings");
        ensure!(
            matrix.rows() == target.dim && matrix.cols() == source.dim,
            Validation,
            "map matrix is {}x{}, expected {}x{}",
            matrix.rows(),
            matrix.cols(),
            target.dim,
            source.dim
        );
        let m = ModMap::from_parts(source, target, matrix);
        if let Some(i) = m.linearity_failure() {
            return Err(Error::Validation(format!("map does not commute with basis element {}", i)));
        }
        Ok(m)
    }

    pub(crate) fn from_parts(source: &FDModule, target: &FDModule, matrix: Mat) -> ModMap {
        ModMap { source: source.clone(), target: target.clone(), matrix }
    }

    fn linearity_failure(&self) -> Option<usize> {
        (0..self.source.action.len()).find(|&i| {
            let lhs = self.matrix.mul(&self.source.action[i]).expect("shape");
            let rhs = self.target.action[i].mul(&self.matrix).expect("shape");
            lhs != rhs
        })
    }

    pub fn is_linear(&self) -> bool {
        self.linearity_failure().is_none()
    }

    pub fn identity(m: &FDModule) -> ModMap {
        ModMap::from_parts(m, m, Mat::identity(m.dim))
    }

    pub fn compose(&self, first: &ModMap) -> Result<ModMap> {
        ensure!(first.target == self.source, Precondition, "composition of non-composable maps");
        Ok(ModMap::from_parts(&first.source, &self.target, self.matrix.mul(&first.matrix)?))
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use rand::SeedableRng;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn xy() -> LocalAlgebra {
        LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap()
    }

    #[test]
    fn builtins_validate() {
        let q = xy();
        for m in [
            FDModule::residue_field(&q),
            FDModule::regular(&q),
            FDModule::free(&q, 2),
            FDModule::maximal_ideal(&q).unwrap(),
        ] {
            FDModule::new(&q, m.dim(), m.action().to_vec()).unwrap();
        }
        assert_eq!(FDModule::maximal_ideal(&q).unwrap().dim(), 3);
    }

    #[test]
    fn bad_action_rejected() {
        let q = xy();
        let mut action = FDModule::regular(&q).action().to_vec();
        action[1] = Mat::identity(4);
        assert!(FDModule::new(&q, 4, action).is_err());
    }

    #[test]
    fn generators_and_hilbert() {
        let q = xy();
        let reg = FDModule::regular(&q);
        assert_eq!(reg.num_generators(), 1);
        assert_eq!(reg.hilbert_series_module().coeffs(), &[1, 2, 1]);
        let m = FDModule::maximal_ideal(&q).unwrap();
        assert_eq!(m.num_generators(), 2);
        assert_eq!(m.hilbert_series_module().coeffs(), &[2, 1]);
        let k = FDModule::residue_field(&q);
        assert_eq!(k.hilbert_series_module().coeffs(), &[1]);
        let (mm, nu) = reg.submodule_m_m().unwrap();
        assert_eq!(mm.dim(), 3);
        assert!(nu.is_linear() && nu.is_injective());
        let (top, pi) = reg.projection_pi().unwrap();
        assert_eq!(top.dim(), 1);
        assert!(pi.is_linear() && pi.is_surjective());
    }

    #[test]
    fn restriction_and_descent() {
        let q = xy();
        let x = q.basis_elem(1);
        let r = q.quotient(&q.principal(&x)).unwrap();
        let rr = FDModule::regular(&r.quotient);
        let as_q = rr.restrict_scalars(&r).unwrap();
        assert!(as_q.annihilates(&x));
        assert!(!as_q.annihilates(&q.basis_elem(2)));
        let back = as_q.descend(&r).unwrap();
        assert_eq!(back.dim(), 2);
        assert!(FDModule::regular(&q).descend(&r).is_err());
    }

    #[test]
    fn tensor_products() {
        let q = xy();
        let k = FDModule::residue_field(&q);
        let reg = FDModule::regular(&q);
        assert_eq!(reg.tensor_over(&k).unwrap().dim(), 1);
        assert_eq!(reg.tensor_over(&reg).unwrap().dim(), 4);
        let m = FDModule::maximal_ideal(&q).unwrap();
        // m ⊗ k = m/m²
        assert_eq!(m.tensor_over(&k).unwrap().dim(), 2);
    }

    #[test]
    fn random_quotients_are_modules() {
        let q = xy();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let m = FDModule::random_quotient(&q, &mut rng, 2, 2);
            FDModule::new(&q, m.dim(), m.action().to_vec()).unwrap();
            assert_eq!(m.num_generators(), 2);
        }
    }
}
