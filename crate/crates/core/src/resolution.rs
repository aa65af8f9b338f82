//! Semi-free resolutions over the Tate algebra, their liftings, and plain
//! minimal free resolutions used as independent cross-checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElem, LocalAlgebra, QuotientData};
use crate::complex::Complex;
use crate::error::{ensure, Error, Result};
use crate::free::{flatten, unflatten, FreeChainMap, FreeComplex, FreeMap};
use crate::linalg::{quotient_basis, Mat, Rat, Subspace};
use crate::modules::FDModule;
use crate::tate::TateAlgebra;

/// `∂e` for a basis element `e ∈ V_n`, split along
/// `U_{n−1} = V_{n−1} ⊕ y₁V_{n−2} ⊕ L_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOnV {
    pub v: Vec<AlgElem>,
    pub yv: Vec<AlgElem>,
    pub l: Vec<AlgElem>,
}

impl DiffOnV {
    fn concat(&self) -> Vec<AlgElem> {
        let mut out = self.v.clone();
        out.extend(self.yv.iter().cloned());
        out.extend(self.l.iter().cloned());
        out
    }
}

/// A free resolution `U → M` over `Q` with a semi-free dg `A`-module
/// structure: `U_n = ⊕_{i=0..n} y_i V_{n−i}`, generators ordered by `i`
/// and then by the index in `V_{n−i}`.
#[derive(Clone, Debug)]
pub struct SemiFreeRes {
    tate: TateAlgebra,
    module: FDModule,
    cap: usize,
    v_ranks: Vec<usize>,
    /// `diffs[n][k] = ∂` of the `k`-th basis element of `V_n` (empty for `n = 0`).
    diffs: Vec<Vec<DiffOnV>>,
    /// Images in `M` of the basis of `V₀`.
    gens0: Vec<Vec<Rat>>,
}

/// Outcome of the structural checks on a [`SemiFreeRes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub cap: usize,
    pub d_squared_zero: bool,
    pub augmentation_ok: bool,
    /// `dim H_i(U)` for `1 ≤ i ≤ cap − 1`.
    pub higher_homology: Vec<usize>,
    pub leibniz: bool,
    pub l_stable: bool,
}

impl ResolutionReport {
    pub fn all_hold(&self) -> bool {
        self.d_squared_zero
            && self.augmentation_ok
            && self.higher_homology.iter().all(|&d| d == 0)
            && self.leibniz
            && self.l_stable
    }
}

fn random_sign(rng: &mut ChaCha8Rng) -> Rat {
    Rat::from_int(if rng.gen_bool(0.5) { 1 } else { -1 })
}

/// Adds to each rep one vector of `killed` and, half the time, one earlier
/// rep, both with coefficient ±1. Dense random combinations make the
/// entries of later degrees grow quickly.
fn perturb(reps: &mut [Vec<Rat>], killed: &[Vec<Rat>], rng: &mut ChaCha8Rng) {
    for r in 0..reps.len() {
        if !killed.is_empty() {
            let c = random_sign(rng);
            let w = &killed[rng.gen_range(0..killed.len())];
            for (x, y) in reps[r].iter_mut().zip(w) {
                x.add_mul(&c, y);
            }
        }
        if r > 0 && rng.gen_bool(0.5) {
            let c = random_sign(rng);
            let other = reps[rng.gen_range(0..r)].clone();
            for (x, y) in reps[r].iter_mut().zip(&other) {
                x.add_mul(&c, y);
            }
        }
    }
}

/// Reps of `Z / (B + mZ)`, perturbed by elements of `B + mZ` and
/// unitriangular mixing when `rng` is given.
fn pick_generators(
    algebra: &LocalAlgebra,
    cycles: &Subspace,
    old: &Subspace,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<Vec<Vec<Rat>>> {
    let amb = cycles.ambient();
    let d = algebra.dim();
    let m_cycles = (1..d).flat_map(|a| {
        let l = algebra.left_basis(a);
        cycles.basis().iter().map(move |z| chunk_apply(l, z, d))
    });
    let m_z = Subspace::span(amb, m_cycles.collect::<Vec<_>>());
    let killed = old.sum(&m_z)?;
    let mut reps = quotient_basis(cycles, &killed)?.basis().to_vec();
    if let Some(rng) = rng {
        perturb(&mut reps, killed.basis(), rng);
    }
    Ok(reps)
}

/// Applies `l` to each length-`d` chunk of `v`.
fn chunk_apply(l: &Mat, v: &[Rat], d: usize) -> Vec<Rat> {
    v.chunks(d).flat_map(|c| l.apply(c).expect("chunk length")).collect()
}

fn realize_cols(algebra: &LocalAlgebra, cols: &[Vec<AlgElem>], rows: usize) -> Mat {
    let d = algebra.dim();
    let mut out = Mat::zeros(rows * d, cols.len() * d);
    for (j, col) in cols.iter().enumerate() {
        for (i, a) in col.iter().enumerate() {
            if !a.is_zero() {
                out.set_block(i * d, j * d, &algebra.left_mul(a));
            }
        }
    }
    out
}

/// `dim M × (r·dim Q)`: `(b_l·e_k) ↦ b_l·m_k`.
fn augmentation_matrix(module: &FDModule, gens: &[Vec<Rat>]) -> Mat {
    let d = module.algebra().dim();
    let cols: Vec<Vec<Rat>> =
        gens.iter().flat_map(|m| (0..d).map(move |l| module.act_basis(l).apply(m).expect("module vector"))).collect();
    Mat::from_cols(module.dim(), &cols).expect("shape")
}

impl SemiFreeRes {
    /// Kills cycles degree by degree through `cap`. With `seed = 0` the
    /// generators are the pivot-order coset representatives; other seeds
    /// perturb them, giving a different but equally valid resolution.
    pub fn build(tate: &TateAlgebra, module: &FDModule, cap: usize, seed: u64) -> Result<SemiFreeRes> {
        let q = tate.base();
        ensure!(module.algebra() == q, Precondition, "module is not over the base ring of the Tate algebra");
        ensure!(module.annihilates(tate.f()), Precondition, "fM ≠ 0: the module is not an R-module");
        ensure!(cap >= 1, Precondition, "cap must be at least 1");
        ensure!(tate.cap() >= cap + 2, Precondition, "Tate algebra cap {} is below module cap {} + 2", tate.cap(), cap);
        let mut rng = (seed != 0).then(|| ChaCha8Rng::seed_from_u64(seed));
        let d = q.dim();
        let gens0 = pick_generators_module(module, rng.as_mut())?;
        let mut res = SemiFreeRes {
            tate: tate.clone(),
            module: module.clone(),
            cap,
            v_ranks: vec![gens0.len()],
            diffs: vec![Vec::new()],
            gens0,
        };
        for n in 0..cap {
            let dn = if n == 0 { augmentation_matrix(module, &res.gens0) } else { res.realized_diff(n) };
            let cycles = dn.kernel_basis();
            let un = res.u_rank(n);
            // generators y_i V_{n+1−i}, i ≥ 1, are already determined
            let old_cols: Vec<Vec<AlgElem>> = (1..=n + 1)
                .flat_map(|i| (0..res.v_ranks[n + 1 - i]).map(move |k| (i, k)))
                .map(|(i, k)| res.diff_column(n + 1, i, k))
                .collect();
            let old = realize_cols(q, &old_cols, un).image_basis();
            let reps = pick_generators(q, &cycles, &old, rng.as_mut())?;
            let new: Vec<DiffOnV> = reps.iter().map(|z| res.split(n + 1, unflatten(z, d))).collect();
            res.v_ranks.push(new.len());
            res.diffs.push(new);
        }
        Ok(res)
    }

    pub fn tate(&self) -> &TateAlgebra {
        &self.tate
    }

    pub fn module(&self) -> &FDModule {
        &self.module
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn v_ranks(&self) -> &[usize] {
        &self.v_ranks
    }

    pub fn diff_on_v(&self, n: usize) -> &[DiffOnV] {
        &self.diffs[n]
    }

    pub fn generators_in_m(&self) -> &[Vec<Rat>] {
        &self.gens0
    }

    /// `rank U_n = Σ_i rank V_{n−i}`.
    pub fn u_rank(&self, n: usize) -> usize {
        (0..=n).map(|i| self.v_ranks[n - i]).sum()
    }

    /// Position of the block `y_i V_{n−i}` inside `U_n`.
    pub fn u_offset(&self, n: usize, i: usize) -> usize {
        (0..i).map(|j| self.v_ranks[n - j]).sum()
    }

    /// Splits a vector over `U_{n−1}` into its three components.
    fn split(&self, n: usize, v: Vec<AlgElem>) -> DiffOnV {
        let a = self.v_ranks[n - 1];
        let b = if n >= 2 { self.v_ranks[n - 2] } else { 0 };
        DiffOnV { v: v[..a].to_vec(), yv: v[a..a + b].to_vec(), l: v[a + b..].to_vec() }
    }

    /// `∂(y_i e_k)` for `e_k ∈ V_{n−i}`, over the generators of `U_{n−1}`:
    /// `∂(y_i)e + (−1)^i y_i ∂e`.
    pub fn diff_column(&self, n: usize, i: usize, k: usize) -> Vec<AlgElem> {
        let q = self.tate.base();
        let mut col = vec![q.zero(); self.u_rank(n - 1)];
        if let Some(c) = self.tate.diff_coeff(i) {
            col[self.u_offset(n - 1, i - 1) + k] = c.clone();
        }
        let m = n - i;
        if m >= 1 {
            let de = self.diffs[m][k].concat();
            let sign = if i % 2 == 1 { Rat::from_int(-1) } else { Rat::ONE };
            for j in 0..m {
                let off = self.u_offset(m - 1, j);
                let coef = &sign * &TateAlgebra::product(i, j);
                if coef.is_zero() {
                    continue;
                }
                for kk in 0..self.v_ranks[m - 1 - j] {
                    let a = &de[off + kk];
                    if !a.is_zero() {
                        col[self.u_offset(n - 1, i + j) + kk].add_scaled(&coef, a);
                    }
                }
            }
        }
        col
    }

    /// `∂_n: U_n → U_{n−1}` for `1 ≤ n ≤ cap`.
    pub fn diff_u(&self, n: usize) -> FreeMap {
        let q = self.tate.base();
        let cols: Vec<Vec<AlgElem>> = (0..=n)
            .flat_map(|i| (0..self.v_ranks[n - i]).map(move |k| (i, k)))
            .map(|(i, k)| self.diff_column(n, i, k))
            .collect();
        FreeMap::from_cols(q, self.u_rank(n - 1), &cols)
    }

    fn realized_diff(&self, n: usize) -> Mat {
        let cols: Vec<Vec<AlgElem>> = (0..=n)
            .flat_map(|i| (0..self.v_ranks[n - i]).map(move |k| (i, k)))
            .map(|(i, k)| self.diff_column(n, i, k))
            .collect();
        realize_cols(self.tate.base(), &cols, self.u_rank(n - 1))
    }

    /// `U` as a complex of free `Q`-modules in degrees `0..=cap`.
    pub fn as_free_complex(&self) -> FreeComplex {
        let q = self.tate.base();
        let mut diffs = vec![FreeMap::zeros(q, 0, self.u_rank(0))];
        diffs.extend((1..=self.cap).map(|n| self.diff_u(n)));
        FreeComplex::new(0, diffs).expect("consistent ranks")
    }

    /// The augmentation `U₀ ⊗ Q → M` as a ℚ-matrix.
    pub fn augmentation(&self) -> Mat {
        augmentation_matrix(&self.module, &self.gens0)
    }

    /// `y_a · u` for `u ∈ U_n`, landing in `U_{n+a}` (requires `n + a ≤ cap`).
    pub fn mul_y(&self, a: usize, n: usize, u: &[AlgElem]) -> Vec<AlgElem> {
        let q = self.tate.base();
        let mut out = vec![q.zero(); self.u_rank(n + a)];
        for i in 0..=n {
            let c = TateAlgebra::product(a, i);
            if c.is_zero() {
                continue;
            }
            let (src, dst) = (self.u_offset(n, i), self.u_offset(n + a, a + i));
            for k in 0..self.v_ranks[n - i] {
                out[dst + k].add_scaled(&c, &u[src + k]);
            }
        }
        out
    }

    /// Checks `∂∂ = 0`, the augmentation, exactness, the dg Leibniz rule on
    /// `(y_a, y_b e)` pairs, and stability of `L`.
    pub fn verify(&self) -> Result<ResolutionReport> {
        let q = self.tate.base();
        let fc = self.as_free_complex();
        let d_squared_zero = fc.verify().is_ok();
        let cx = fc.tensor(&FDModule::regular(q))?;
        let eps = self.augmentation();
        let augmentation_ok = eps.rank() == self.module.dim()
            && (self.cap == 0 || eps.mul(&cx.d(1))?.is_zero())
            && eps.kernel_basis() == cx.d(1).image_basis();
        let higher_homology = cx.homology_dims(1, self.cap as i64 - 1)?;
        let leibniz = self.check_leibniz();
        let l_stable = self.check_l_stability()?;
        Ok(ResolutionReport { cap: self.cap, d_squared_zero, augmentation_ok, higher_homology, leibniz, l_stable })
    }

    /// `∂(y_a·y_b e) = ∂(y_a) y_b e + (−1)^a y_a ∂(y_b e)` within the cap.
    pub fn check_leibniz(&self) -> bool {
        let q = self.tate.base();
        let ds: Vec<FreeMap> = (0..=self.cap)
            .map(|n| if n == 0 { FreeMap::zeros(q, 0, self.u_rank(0)) } else { self.diff_u(n) })
            .collect();
        for n in 1..=self.cap {
            let dn = &ds[n];
            for a in 1..=n {
                let m = n - a;
                // generators y_b e of U_m
                for b in 0..=m {
                    for k in 0..self.v_ranks[m - b] {
                        let mut u = vec![q.zero(); self.u_rank(m)];
                        u[self.u_offset(m, b) + k] = q.one();
                        let lhs = dn.apply(&self.mul_y(a, m, &u));
                        let c = self.tate.diff_coeff(a).expect("a ≥ 1");
                        let mut rhs: Vec<AlgElem> = self.mul_y(a - 1, m, &u).iter().map(|x| q.mul(c, x)).collect();
                        if m >= 1 {
                            let du = ds[m].apply(&u);
                            let s = if a % 2 == 1 { Rat::from_int(-1) } else { Rat::ONE };
                            for (r, x) in rhs.iter_mut().zip(self.mul_y(a, m - 1, &du)) {
                                r.add_scaled(&s, &x);
                            }
                        }
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `∂(L_n) ⊆ ann(f)·y₁V_{n−2} + L_{n−1}` for every `n ≤ cap`.
    pub fn check_l_stability(&self) -> Result<bool> {
        let q = self.tate.base();
        let ann = q.annihilator(self.tate.f());
        for n in 2..=self.cap {
            let dn = self.diff_u(n);
            let v_prev = self.v_ranks[n - 1];
            let y_block = self.v_ranks[n - 2];
            for col in self.u_offset(n, 2)..self.u_rank(n) {
                let image = dn.col(col);
                // the V component must vanish and the yV component lie in ann(f)
                if image[..v_prev].iter().any(|a| !a.is_zero()) {
                    return Ok(false);
                }
                if image[v_prev..v_prev + y_block].iter().any(|a| !ann.contains(a)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `∂ᵛ` and `τ̃` read off from the stored components.
    pub fn extract_lifting(&self) -> Result<LiftedComplex> {
        let q = self.tate.base();
        let mut dv = vec![FreeMap::zeros(q, 0, self.v_ranks[0])];
        let mut tau = vec![FreeMap::zeros(q, 0, self.v_ranks.get(1).copied().unwrap_or(0))];
        for n in 1..=self.cap {
            let cols: Vec<Vec<AlgElem>> = self.diffs[n].iter().map(|e| e.v.clone()).collect();
            dv.push(FreeMap::from_cols(q, self.v_ranks[n - 1], &cols));
        }
        for n in 1..self.cap {
            // τ̃_n: V_{n+1} → V_{n−1} is minus the y-component of ∂
            let cols: Vec<Vec<AlgElem>> =
                self.diffs[n + 1].iter().map(|e| e.yv.iter().map(AlgElem::neg).collect()).collect();
            tau.push(FreeMap::from_cols(q, self.v_ranks[n - 1], &cols));
        }
        let lifted = LiftedComplex {
            algebra: q.clone(),
            f: self.tate.f().clone(),
            v_ranks: self.v_ranks.clone(),
            dv,
            tau_tilde: tau,
            gens0: self.gens0.clone(),
            module: self.module.clone(),
        };
        lifted.check_square()?;
        Ok(lifted)
    }
}

fn pick_generators_module(module: &FDModule, rng: Option<&mut ChaCha8Rng>) -> Result<Vec<Vec<Rat>>> {
    let full = Subspace::full(module.dim());
    let mm = module.m_times();
    let mut reps = quotient_basis(&full, &mm)?.basis().to_vec();
    if let Some(rng) = rng {
        perturb(&mut reps, mm.basis(), rng);
    }
    Ok(reps)
}

/// The lifting `(V, ∂ᵛ)` of `U ⊗ R` to `Q` together with `τ̃`, where
/// `∂ᵛ∂ᵛ = f·τ̃`.
#[derive(Clone, Debug)]
pub struct LiftedComplex {
    algebra: LocalAlgebra,
    f: AlgElem,
    v_ranks: Vec<usize>,
    /// `dv[n]: V_n → V_{n−1}`.
    dv: Vec<FreeMap>,
    /// `tau_tilde[n]: V_{n+1} → V_{n−1}` for `n ≥ 1`; `tau_tilde[0]` is empty.
    tau_tilde: Vec<FreeMap>,
    gens0: Vec<Vec<Rat>>,
    module: FDModule,
}

impl LiftedComplex {
    pub fn algebra(&self) -> &LocalAlgebra {
        &self.algebra
    }

    pub fn cap(&self) -> usize {
        self.v_ranks.len() - 1
    }

    pub fn v_ranks(&self) -> &[usize] {
        &self.v_ranks
    }

    pub fn rank(&self, n: i64) -> usize {
        if n < 0 || n as usize >= self.v_ranks.len() {
            0
        } else {
            self.v_ranks[n as usize]
        }
    }

    pub fn dv(&self, n: usize) -> &FreeMap {
        &self.dv[n]
    }

    /// `τ̃_n: V_{n+1} → V_{n−1}` for `1 ≤ n ≤ cap − 1`.
    pub fn tau_tilde(&self, n: usize) -> &FreeMap {
        &self.tau_tilde[n]
    }

    pub fn module(&self) -> &FDModule {
        &self.module
    }

    /// `∂ᵛ_n ∘ ∂ᵛ_{n+1} = f·τ̃_n` for `1 ≤ n ≤ cap − 1`.
    pub fn check_square(&self) -> Result<()> {
        for n in 1..self.cap() {
            let sq = self.dv[n].compose(&self.dv[n + 1])?;
            let ft = self.tau_tilde[n].times_elem(&self.f);
            ensure!(sq == ft, TheoremViolation, "∂ᵛ∂ᵛ ≠ f·τ̃ in degree {}", n + 1);
        }
        Ok(())
    }

    /// `V` as a complex of free `Q`-modules (a complex only modulo `f`).
    pub fn as_free_sequence(&self) -> FreeComplex {
        FreeComplex::new(0, self.dv.clone()).expect("consistent ranks")
    }

    /// `V ⊗_Q N`; a complex whenever `fN = 0`.
    pub fn tensor(&self, n: &FDModule) -> Result<Complex> {
        ensure!(n.annihilates(&self.f), Precondition, "fN ≠ 0: V ⊗ N is not a complex");
        let c = self.as_free_sequence().tensor(n)?;
        c.verify()?;
        Ok(c)
    }

    /// `V ⊗ R` as a resolution over `R`.
    pub fn over_quotient(&self, r: &QuotientData) -> Result<FreeResolution> {
        ensure!(r.parent == self.algebra, Precondition, "quotient of a different ring");
        let complex = self.as_free_sequence().project(r)?;
        let module = self.module.descend(r)?;
        Ok(FreeResolution {
            augmentation: augmentation_matrix(&module, &self.gens0),
            gens0: self.gens0.clone(),
            module,
            complex,
        })
    }

    /// `V ⊗ R` is a complex resolving `M`: returns `dim H_i` for
    /// `1 ≤ i ≤ cap−1` after checking `H₀ ≅ M` through the augmentation.
    pub fn verify_resolution(&self, r: &QuotientData) -> Result<Vec<usize>> {
        let res = self.over_quotient(r)?;
        res.check()
    }
}

/// A free resolution `F → M` over a local algebra, truncated at its top degree.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub complex: FreeComplex,
    pub module: FDModule,
    pub augmentation: Mat,
    gens0: Vec<Vec<Rat>>,
}

impl FreeResolution {
    /// Minimal resolution by killing cycles modulo `m·Z`.
    pub fn minimal(module: &FDModule, cap: usize) -> Result<FreeResolution> {
        let q = module.algebra();
        let d = q.dim();
        let gens0 = pick_generators_module(module, None)?;
        let mut diffs = vec![FreeMap::zeros(q, 0, gens0.len())];
        let augmentation = augmentation_matrix(module, &gens0);
        for n in 0..cap {
            let dn = if n == 0 { augmentation.clone() } else { diffs[n].tensor(&FDModule::regular(q))? };
            let cycles = dn.kernel_basis();
            let amb = cycles.ambient();
            let reps = pick_generators(q, &cycles, &Subspace::zero(amb), None)?;
            let rows = if n == 0 { gens0.len() } else { diffs[n].cols() };
            let cols: Vec<Vec<AlgElem>> = reps.iter().map(|z| unflatten(z, d)).collect();
            diffs.push(FreeMap::from_cols(q, rows, &cols));
        }
        Ok(FreeResolution { complex: FreeComplex::new(0, diffs)?, module: module.clone(), augmentation, gens0 })
    }

    pub fn cap(&self) -> usize {
        self.complex.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.complex.ranks
    }

    /// Checks the augmentation and returns `dim H_i` for `1 ≤ i ≤ cap − 1`.
    pub fn check(&self) -> Result<Vec<usize>> {
        self.complex.verify()?;
        let cx = self.complex.tensor(&FDModule::regular(self.module.algebra()))?;
        let eps = &self.augmentation;
        ensure!(eps.rank() == self.module.dim(), TheoremViolation, "augmentation is not surjective");
        if self.cap() >= 1 {
            ensure!(
                eps.kernel_basis() == cx.d(1).image_basis(),
                TheoremViolation,
                "H₀ of the resolution is not the module"
            );
        }
        cx.homology_dims(1, self.cap() as i64 - 1)
    }

    /// `Tor_i(M, N)` dimensions for `0 ≤ i ≤ cap − 1`.
    pub fn tor_dims(&self, n: &FDModule) -> Result<Vec<usize>> {
        let cx = self.complex.tensor(n)?;
        cx.homology_dims(0, self.cap() as i64 - 1)
    }

    /// A chain map `self → other` over the identity of `M`, by
    /// back-substitution.
    pub fn compare_to(&self, other: &FreeResolution) -> Result<FreeChainMap> {
        let q = self.module.algebra();
        ensure!(other.module.algebra() == q, Precondition, "resolutions over different rings");
        ensure!(self.module.dim() == other.module.dim(), Precondition, "resolutions of different modules");
        let d = q.dim();
        let cap = self.cap().min(other.cap());
        let reg = FDModule::regular(q);
        let mut comps: Vec<FreeMap> = Vec::with_capacity(cap + 1);
        // degree 0: ε_other(h(e_k)) = ε_self(e_k)
        let mut cols = Vec::new();
        for m in &self.gens0 {
            let x = other
                .augmentation
                .solve(m)?
                .ok_or_else(|| Error::TheoremViolation("augmentation of the target is not surjective".into()))?;
            cols.push(unflatten(&x, d));
        }
        comps.push(FreeMap::from_cols(q, other.complex.ranks[0], &cols));
        for n in 1..=cap {
            let target_d = other.complex.diffs[n].tensor(&reg)?;
            let mut cols = Vec::new();
            for j in 0..self.complex.ranks[n] {
                let boundary = self.complex.diffs[n].col(j);
                let image = comps[n - 1].apply(&boundary);
                let x = target_d
                    .solve(&flatten(&image))?
                    .ok_or_else(|| Error::TheoremViolation(format!("comparison map does not lift in degree {}", n)))?;
                cols.push(unflatten(&x, d));
            }
            comps.push(FreeMap::from_cols(q, other.complex.ranks[n], &cols));
        }
        Ok(FreeChainMap { degree: 0, lo: 0, comps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn setup() -> (LocalAlgebra, TateAlgebra, QuotientData) {
        let q = LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap();
        let x = q.basis_elem(1);
        let a = TateAlgebra::build(&q, &x, &x, 8).unwrap();
        let r = q.quotient(&q.principal(&x)).unwrap();
        (q, a, r)
    }

    #[test]
    fn resolution_of_r_is_a() {
        let (_, a, r) = setup();
        let rm = FDModule::regular(&r.quotient).restrict_scalars(&r).unwrap();
        let u = SemiFreeRes::build(&a, &rm, 6, 0).unwrap();
        assert_eq!(u.v_ranks(), &[1, 0, 0, 0, 0, 0, 0]);
        assert!(u.verify().unwrap().all_hold());
    }

    #[test]
    fn resolution_of_k() {
        let (q, a, r) = setup();
        let k = FDModule::residue_field(&q);
        for seed in [0, 3] {
            let u = SemiFreeRes::build(&a, &k, 6, seed).unwrap();
            let rep = u.verify().unwrap();
            assert!(rep.all_hold(), "{:?}", rep);
            let v = u.extract_lifting().unwrap();
            assert_eq!(v.verify_resolution(&r).unwrap(), vec![0; 5]);
            // ranks of V are the betti numbers of k over R = ℚ[y]/(y²)
            assert_eq!(u.v_ranks(), &[1; 7]);
        }
    }

    #[test]
    fn non_r_module_rejected() {
        let (q, a, _) = setup();
        let reg = FDModule::regular(&q);
        assert!(matches!(SemiFreeRes::build(&a, &reg, 4, 0), Err(Error::Precondition(_))));
        let k = FDModule::residue_field(&q);
        assert!(SemiFreeRes::build(&a, &k, 7, 0).is_err());
    }

    #[test]
    fn minimal_resolution_of_k_over_r() {
        let (_, _, r) = setup();
        let k = FDModule::residue_field(&r.quotient);
        let f = FreeResolution::minimal(&k, 8).unwrap();
        assert_eq!(f.ranks(), &[1; 9]);
        assert_eq!(f.check().unwrap(), vec![0; 7]);
        assert_eq!(f.tor_dims(&k).unwrap(), vec![1; 8]);
    }

    #[test]
    fn comparison_maps_lift_identity() {
        let (_, _, r) = setup();
        let k = FDModule::residue_field(&r.quotient);
        let f = FreeResolution::minimal(&k, 5).unwrap();
        let h = f.compare_to(&f).unwrap();
        assert_eq!(h.comps.len(), 6);
    }
}
