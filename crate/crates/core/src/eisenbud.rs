//! The Eisenbud operator `τ` on a lifted resolution, its mapping cone `W`,
//! the surjection `ω: U ⊗ S → W`, the `y₂` short exact sequence, and the two
//! long exact sequences relating `Tor^Q(M, N)`, `Tor^R(M, N)` and `H(W ⊗ N)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AlgElem, LocalAlgebra, QuotientData};
use crate::complex::{
    cone, les_from_ses, ses_exact, Complex, CxMap, ExactnessAt, Homology, LesNode, LongExactSequence,
};
use crate::error::{ensure, Error, Result};
use crate::free::{FreeChainMap, FreeComplex, FreeMap};
use crate::linalg::{Mat, Rat, Subspace};
use crate::modules::FDModule;
use crate::resolution::{LiftedComplex, SemiFreeRes};
use crate::tate::TateAlgebra;

/// `Q` with an exact pair `(f, g)`, `R = Q/(f)`, `S = Q/(f, g)` and the
/// Tate algebra of `R`, built to support module resolutions through `cap`.
#[derive(Clone, Debug)]
pub struct ExactPairSetup {
    q: LocalAlgebra,
    f: AlgElem,
    g: AlgElem,
    r: QuotientData,
    s: QuotientData,
    tate: TateAlgebra,
    cap: usize,
}

impl ExactPairSetup {
    /// Fails with a precondition error unless `(f, g)` is an exact pair.
    pub fn new(q: &LocalAlgebra, f: &AlgElem, g: &AlgElem, cap: usize) -> Result<ExactPairSetup> {
        ensure!(f.dim() == q.dim() && g.dim() == q.dim(), Precondition, "f and g must be elements of Q");
        ensure!(q.is_exact_pair(f, g).holds(), Precondition, "(f, g) is not an exact pair of zero divisors");
        ensure!(cap >= 2, Precondition, "cap must be at least 2");
        let tate = TateAlgebra::build(q, f, g, cap + 2)?;
        let r = q.quotient(&q.principal(f))?;
        let s = q.quotient(&q.ideal(&[f.clone(), g.clone()]))?;
        Ok(ExactPairSetup { q: q.clone(), f: f.clone(), g: g.clone(), r, s, tate, cap })
    }

    pub fn q(&self) -> &LocalAlgebra {
        &self.q
    }

    pub fn f(&self) -> &AlgElem {
        &self.f
    }

    pub fn g(&self) -> &AlgElem {
        &self.g
    }

    pub fn r(&self) -> &QuotientData {
        &self.r
    }

    pub fn s(&self) -> &QuotientData {
        &self.s
    }

    pub fn tate(&self) -> &TateAlgebra {
        &self.tate
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Last degree whose homology is reported as trusted.
    pub fn window(&self) -> usize {
        self.cap - 2
    }

    pub fn residue_field(&self) -> FDModule {
        FDModule::residue_field(&self.q)
    }

    /// `R` as a `Q`-module.
    pub fn r_module(&self) -> FDModule {
        FDModule::regular(&self.r.quotient).restrict_scalars(&self.r).expect("module over the quotient")
    }

    /// `S` as a `Q`-module.
    pub fn s_module(&self) -> FDModule {
        FDModule::regular(&self.s.quotient).restrict_scalars(&self.s).expect("module over the quotient")
    }

    /// `R/(a) = Q/(f, a)` as a `Q`-module.
    pub fn r_mod(&self, a: &AlgElem) -> Result<FDModule> {
        FDModule::cyclic(&self.q, &self.q.ideal(&[self.f.clone(), a.clone()]))
    }

    pub fn f_in_m2(&self) -> bool {
        self.q.m_power(2).contains(&self.f.coeffs)
    }
}

/// `c·I` scalar blocks placed into an otherwise zero free map.
fn scalar_blocks(q: &LocalAlgebra, rows: usize, cols: usize, blocks: &[(usize, usize, usize, Rat)]) -> FreeMap {
    let mut m = FreeMap::zeros(q, rows, cols);
    let one = q.one();
    for (r0, c0, len, c) in blocks {
        if c.is_zero() {
            continue;
        }
        for k in 0..*len {
            m.set(r0 + k, c0 + k, one.scale(c));
        }
    }
    m
}

/// `[id_ℚ^r ⊗ ν]` as a block-diagonal matrix matching the free tensor layout.
fn block_diag(r: usize, nu: &Mat) -> Mat {
    Mat::identity(r).kron(nu)
}

/// The maps of the two short exact sequences after `⊗_Q N`:
/// `0 → ΣV⊗N →ζ W⊗N →γ V⊗N → 0` and `0 → Σ²U⊗N →α U⊗N →ω W⊗N → 0`.
#[derive(Clone, Debug)]
pub struct Tensored {
    pub n: FDModule,
    pub vn: Complex,
    pub svn: Complex,
    pub wn: Complex,
    pub un: Complex,
    pub s2un: Complex,
    pub zeta: CxMap,
    pub gamma: CxMap,
    pub alpha: CxMap,
    pub omega: CxMap,
    /// `U⊗N → V⊗N`, the projection onto the `y₀` component.
    pub pi: CxMap,
    /// `τ ⊗ N: V⊗N → V⊗N` of degree `−2`.
    pub tau: CxMap,
    /// The same components read as a degree `−1` map `V⊗N → ΣV⊗N`.
    pub tau_shifted: CxMap,
}

/// Structural checks of `τ`, `W`, `ω` and the `y₂` sequence over `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub cap: usize,
    /// `∂ᵛ∂ᵛ = f·τ̃` over `Q`.
    pub square_identity: bool,
    /// `τ̃` is minus the `y`-component of `∂` on every basis element of `V`.
    pub tau_is_y_component: bool,
    /// Entries of `∂ᵛτ̃ − τ̃∂ᵛ` lie in `ann f`.
    pub commutator_in_ann_f: bool,
    /// `τ ⊗ S` is a chain map.
    pub tau_chain_map: bool,
    pub w_squared_zero: bool,
    /// `W ⊗ S` equals `cone(τ: Σ⁻¹V⊗S → ΣV⊗S)` as matrices.
    pub w_is_cone: bool,
    pub short_exact: bool,
    pub omega_chain_map: bool,
    pub omega_surjective: bool,
    pub ker_omega_is_l: bool,
    /// `dim ker ω_n` against `Σ_{i≥2} rank V_{n−i} · dim S`.
    pub ker_omega_dims: Vec<(usize, usize)>,
    pub alpha_injective: bool,
    pub im_alpha_is_l: bool,
    pub y2_short_exact: bool,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.square_identity
            && self.tau_is_y_component
            && self.commutator_in_ann_f
            && self.tau_chain_map
            && self.w_squared_zero
            && self.w_is_cone
            && self.short_exact
            && self.omega_chain_map
            && self.omega_surjective
            && self.ker_omega_is_l
            && self.ker_omega_dims.iter().all(|(a, b)| a == b)
            && self.alpha_injective
            && self.im_alpha_is_l
            && self.y2_short_exact
    }

    /// Names of the failing checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        let flags = [
            (self.square_identity, "square identity"),
            (self.tau_is_y_component, "tau description"),
            (self.commutator_in_ann_f, "commutator in ann f"),
            (self.tau_chain_map, "tau chain map"),
            (self.w_squared_zero, "W differential squares to zero"),
            (self.w_is_cone, "W is the cone of tau"),
            (self.short_exact, "cone sequence exact"),
            (self.omega_chain_map, "omega chain map"),
            (self.omega_surjective, "omega surjective"),
            (self.ker_omega_is_l, "ker omega = L"),
            (self.ker_omega_dims.iter().all(|(a, b)| a == b), "ker omega dimensions"),
            (self.alpha_injective, "y2 injective"),
            (self.im_alpha_is_l, "image of y2 = L"),
            (self.y2_short_exact, "y2 sequence exact"),
        ];
        for (ok, name) in flags {
            if !ok {
                v.push(name);
            }
        }
        v
    }
}

/// A module `M` over `R` with its semi-free resolution, lifting and operator.
#[derive(Clone, Debug)]
pub struct Pipeline {
    setup: ExactPairSetup,
    module: FDModule,
    seed: u64,
    res: SemiFreeRes,
    lifted: LiftedComplex,
}

impl Pipeline {
    /// Resolves `M` over the Tate algebra through `setup.cap()` and extracts
    /// the lifting, checking `∂ᵛ∂ᵛ = f·τ̃` on the way.
    pub fn build(setup: &ExactPairSetup, module: &FDModule, seed: u64) -> Result<Pipeline> {
        ensure!(module.algebra() == setup.q(), Precondition, "module is over a different ring");
        let res = SemiFreeRes::build(setup.tate(), module, setup.cap(), seed)?;
        let rep = res.verify()?;
        ensure!(rep.all_hold(), TheoremViolation, "semi-free resolution checks fail: {:?}", rep);
        let lifted = res.extract_lifting()?;
        Ok(Pipeline { setup: setup.clone(), module: module.clone(), seed, res, lifted })
    }

    pub fn setup(&self) -> &ExactPairSetup {
        &self.setup
    }

    pub fn module(&self) -> &FDModule {
        &self.module
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn cap(&self) -> usize {
        self.setup.cap()
    }

    pub fn resolution(&self) -> &SemiFreeRes {
        &self.res
    }

    pub fn lifted(&self) -> &LiftedComplex {
        &self.lifted
    }

    fn v(&self, n: i64) -> usize {
        self.lifted.rank(n)
    }

    /// `W̃_n = V_{n−1} ⊕ V_n` over `Q` with `[[−∂ᵛ, −τ̃], [0, ∂ᵛ]]`; a
    /// complex only after tensoring with an `S`-module.
    pub fn w_free(&self) -> Result<FreeComplex> {
        let q = self.setup.q();
        let cap = self.cap();
        let mut diffs = vec![FreeMap::zeros(q, 0, self.v(0))];
        for n in 1..=cap {
            let (a, b, c) = (self.v(n as i64 - 2), self.v(n as i64 - 1), self.v(n as i64));
            let top_left = self.lifted.dv(n - 1).neg();
            let top_right = self.lifted.tau_tilde(n - 1).neg();
            let grid = vec![vec![top_left, top_right], vec![FreeMap::zeros(q, b, b), self.lifted.dv(n).clone()]];
            let d = FreeMap::from_blocks(q, &grid)?;
            ensure!(d.rows() == a + b && d.cols() == b + c, DimensionMismatch, "cone differential shape");
            diffs.push(d);
        }
        FreeComplex::new(0, diffs)
    }

    fn chain_map(&self, degree: i64, comps: Vec<FreeMap>) -> FreeChainMap {
        FreeChainMap { degree, lo: 0, comps }
    }

    /// `ζ_n: V_{n−1} → W_n` onto the first summand.
    fn zeta_free(&self) -> FreeChainMap {
        let q = self.setup.q();
        let comps = (0..=self.cap() as i64)
            .map(|n| {
                let (b, c) = (self.v(n - 1), self.v(n));
                scalar_blocks(q, b + c, b, &[(0, 0, b, Rat::ONE)])
            })
            .collect();
        self.chain_map(0, comps)
    }

    /// `γ_n: W_n → V_n` from the second summand.
    fn gamma_free(&self) -> FreeChainMap {
        let q = self.setup.q();
        let comps = (0..=self.cap() as i64)
            .map(|n| {
                let (b, c) = (self.v(n - 1), self.v(n));
                scalar_blocks(q, c, b + c, &[(0, b, c, Rat::ONE)])
            })
            .collect();
        self.chain_map(0, comps)
    }

    /// Multiplication by `y₂`: `U_{n−2} → U_n`, `y_i e ↦ C(1 + ⌊i/2⌋, 1)·y_{i+2} e`.
    fn alpha_free(&self) -> FreeChainMap {
        let q = self.setup.q();
        let comps = (0..=self.cap())
            .map(|n| {
                let rows = self.res.u_rank(n);
                if n < 2 {
                    return FreeMap::zeros(q, rows, 0);
                }
                let src = n - 2;
                let blocks: Vec<_> = (0..=src)
                    .map(|i| {
                        (
                            self.res.u_offset(n, i + 2),
                            self.res.u_offset(src, i),
                            self.v((src - i) as i64),
                            TateAlgebra::product(2, i),
                        )
                    })
                    .collect();
                scalar_blocks(q, rows, self.res.u_rank(src), &blocks)
            })
            .collect();
        self.chain_map(0, comps)
    }

    /// `ω_n(a + y₁x + l) = (x, a)`.
    fn omega_free(&self) -> FreeChainMap {
        let q = self.setup.q();
        let comps = (0..=self.cap())
            .map(|n| {
                let (b, c) = (self.v(n as i64 - 1), self.v(n as i64));
                let mut blocks = vec![(b, self.res.u_offset(n, 0), c, Rat::ONE)];
                if n >= 1 {
                    blocks.push((0, self.res.u_offset(n, 1), b, Rat::ONE));
                }
                scalar_blocks(q, b + c, self.res.u_rank(n), &blocks)
            })
            .collect();
        self.chain_map(0, comps)
    }

    /// `U_n → V_n`, keeping the `y₀` component.
    fn pi_free(&self) -> FreeChainMap {
        let q = self.setup.q();
        let comps = (0..=self.cap())
            .map(|n| {
                let c = self.v(n as i64);
                scalar_blocks(q, c, self.res.u_rank(n), &[(0, self.res.u_offset(n, 0), c, Rat::ONE)])
            })
            .collect();
        self.chain_map(0, comps)
    }

    /// `τ ⊗ N` components, source degrees `0..=cap`.
    fn tau_comps(&self, n_mod: &FDModule) -> Result<Vec<Mat>> {
        let p = n_mod.dim();
        (0..=self.cap())
            .map(|n| {
                if n < 2 {
                    Ok(Mat::zeros(0, self.v(n as i64) * p))
                } else {
                    self.lifted.tau_tilde(n - 1).tensor(n_mod)
                }
            })
            .collect()
    }

    /// Every complex and map of both short exact sequences, tensored with
    /// `N`. Requires `fN = 0 = gN`.
    pub fn tensored(&self, n_mod: &FDModule) -> Result<Tensored> {
        let q = self.setup.q();
        ensure!(n_mod.algebra() == q, Precondition, "N is over a different ring");
        ensure!(n_mod.annihilates(self.setup.f()), Hypothesis, "fN ≠ 0: N is not an R-module");
        ensure!(n_mod.annihilates(self.setup.g()), Hypothesis, "gN ≠ 0");
        let cap = self.cap() as i64;
        let vn = self.lifted.tensor(n_mod)?;
        let svn = vn.shift(1).truncate_above(cap);
        let wn = self.w_free()?.tensor(n_mod)?;
        let un = self.res.as_free_complex().tensor(n_mod)?;
        let s2un = un.shift(2).truncate_above(cap);
        let comps = self.tau_comps(n_mod)?;
        Ok(Tensored {
            n: n_mod.clone(),
            zeta: self.zeta_free().tensor(n_mod)?,
            gamma: self.gamma_free().tensor(n_mod)?,
            alpha: self.alpha_free().tensor(n_mod)?,
            omega: self.omega_free().tensor(n_mod)?,
            pi: self.pi_free().tensor(n_mod)?,
            tau: CxMap::new(-2, 0, comps.clone()),
            tau_shifted: CxMap::new(-1, 0, comps),
            vn,
            svn,
            wn,
            un,
            s2un,
        })
    }

    /// `τ̃_n` against the `y`-component of `∂` read directly off `U`.
    fn tau_matches_resolution(&self) -> bool {
        (1..self.cap()).all(|n| {
            let tt = self.lifted.tau_tilde(n);
            self.res
                .diff_on_v(n + 1)
                .iter()
                .enumerate()
                .all(|(k, e)| e.yv.iter().enumerate().all(|(i, a)| *tt.get(i, k) == a.neg()))
        })
    }

    /// Free-level `∂ᵛ_{n−1}τ̃_n − τ̃_{n−1}∂ᵛ_{n+1}`, whose entries must lie
    /// in `ann f`.
    fn commutator_in_ann_f(&self) -> Result<bool> {
        let q = self.setup.q();
        let ann = q.annihilator(self.setup.f());
        for n in 2..self.cap() {
            let lhs = self.lifted.dv(n - 1).compose(self.lifted.tau_tilde(n))?;
            let rhs = self.lifted.tau_tilde(n - 1).compose(self.lifted.dv(n + 1))?;
            if !lhs.sub(&rhs)?.entries_in(&ann.subspace) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All structural identities over `S`, degrees `0..=cap`.
    pub fn structure(&self) -> Result<StructureReport> {
        let s_mod = self.setup.s_module();
        let t = self.tensored(&s_mod)?;
        let cap = self.cap() as i64;
        let dim_s = s_mod.dim();
        let square_identity = self.lifted.check_square().is_ok();
        let tau_is_y_component = self.tau_matches_resolution();
        let commutator_in_ann_f = self.commutator_in_ann_f()?;
        let tau_chain_map = t.tau.verify(&t.vn, &t.vn, 0, cap).is_ok();
        let w_squared_zero = t.wn.verify().is_ok();
        let w_is_cone = self.cone_cross_check(&t)?;
        let short_exact = ses_exact(&t.svn, &t.wn, &t.vn, &t.zeta, &t.gamma, 0, cap).is_ok();
        let omega_chain_map = t.omega.verify(&t.un, &t.wn, 0, cap).is_ok();
        let mut omega_surjective = true;
        let mut ker_omega_is_l = true;
        let mut ker_omega_dims = Vec::new();
        let mut alpha_injective = true;
        let mut im_alpha_is_l = true;
        for n in 0..=self.cap() {
            let om = t.omega.comp_or_zero(n as i64, &t.un, &t.wn)?;
            omega_surjective &= om.rank() == t.wn.dim_at(n as i64);
            let ker = om.kernel_basis();
            let l = self.l_subspace(n, dim_s);
            ker_omega_is_l &= ker == l;
            let expected: usize = (2..=n).map(|i| self.v((n - i) as i64) * dim_s).sum();
            ker_omega_dims.push((ker.dim(), expected));
            let al = t.alpha.comp_or_zero(n as i64, &t.s2un, &t.un)?;
            alpha_injective &= al.rank() == t.s2un.dim_at(n as i64);
            im_alpha_is_l &= al.image_basis() == l;
        }
        let y2_short_exact = ses_exact(&t.s2un, &t.un, &t.wn, &t.alpha, &t.omega, 0, cap).is_ok();
        Ok(StructureReport {
            cap: self.cap(),
            square_identity,
            tau_is_y_component,
            commutator_in_ann_f,
            tau_chain_map,
            w_squared_zero,
            w_is_cone,
            short_exact,
            omega_chain_map,
            omega_surjective,
            ker_omega_is_l,
            ker_omega_dims,
            alpha_injective,
            im_alpha_is_l,
            y2_short_exact,
        })
    }

    /// `L_n ⊗ N = ⊕_{i≥2} y_i V_{n−i} ⊗ N` inside `U_n ⊗ N`.
    fn l_subspace(&self, n: usize, p: usize) -> Subspace {
        let amb = self.res.u_rank(n) * p;
        let start = if n >= 2 { self.res.u_offset(n, 2) * p } else { amb };
        let vecs = (start..amb).map(|j| {
            let mut v = vec![Rat::ZERO; amb];
            v[j] = Rat::ONE;
            v
        });
        Subspace::span(amb, vecs.collect::<Vec<_>>())
    }

    /// The generic mapping cone of `τ: Σ⁻¹(V⊗N) → Σ(V⊗N)` compared with `W⊗N`.
    fn cone_cross_check(&self, t: &Tensored) -> Result<bool> {
        let x = t.vn.shift(-1);
        let y = t.vn.shift(1);
        // component at X-degree n is τ̃_n: V_{n+1} → V_{n−1}
        let comps = (-1..self.cap() as i64)
            .map(|n| {
                if n <= 0 {
                    Ok(Mat::zeros(y.dim_at(n), x.dim_at(n)))
                } else {
                    self.lifted.tau_tilde(n as usize).tensor(&t.n)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let phi = CxMap::new(0, -1, comps);
        let c = cone(&phi, &x, &y)?;
        Ok(c.complex == t.wn)
    }

    /// `Tor^Q_n(M, N) = H_n(U ⊗ N)` for `0 ≤ n ≤ cap − 1`.
    pub fn tor_q(&self, n_mod: &FDModule) -> Result<Vec<Homology>> {
        let un = self.res.as_free_complex().tensor(n_mod)?;
        (0..self.cap() as i64).map(|n| un.homology(n)).collect()
    }

    /// `Tor^R_n(M, N) = H_n(V ⊗ N)` for `0 ≤ n ≤ cap − 1`; needs `fN = 0`.
    pub fn tor_r(&self, n_mod: &FDModule) -> Result<Vec<Homology>> {
        let vn = self.lifted.tensor(n_mod)?;
        (0..self.cap() as i64).map(|n| vn.homology(n)).collect()
    }

    /// Both long exact sequences for `N`, with every named map materialized.
    pub fn sequences(&self, n_mod: &FDModule) -> Result<SequencesReport> {
        let t = self.tensored(n_mod)?;
        let trusted = self.setup.window() as i64;
        let les1 = les_from_ses(&t.svn, &t.wn, &t.vn, &t.zeta, &t.gamma, trusted)?;
        let les2 = les_from_ses(&t.s2un, &t.un, &t.wn, &t.alpha, &t.omega, trusted)?;
        SequencesReport::assemble(&t, les1, les2, trusted)
    }
}

fn get_rank(m: &BTreeMap<i64, Mat>, n: i64) -> usize {
    m.get(&n).map_or(0, Mat::rank)
}

/// The two long exact sequences
/// `… → Tor^R_{n−1} →ζ H_n(W⊗N) →ψ Tor^R_n →δ Tor^R_{n−2} → …` and
/// `… → Tor^Q_{n−2} →α Tor^Q_n →φ H_n(W⊗N) →μ Tor^Q_{n−3} → …`.
#[derive(Clone, Debug)]
pub struct SequencesReport {
    /// Degrees `0..=window` are trusted.
    pub window: i64,
    pub tor_q: Vec<usize>,
    pub tor_r: Vec<usize>,
    pub h_w: Vec<usize>,
    pub les1: LongExactSequence,
    pub les2: LongExactSequence,
    /// `δ_n: Tor^R_n → Tor^R_{n−2}`.
    pub delta: BTreeMap<i64, Mat>,
    /// `μ_n: H_n(W⊗N) → Tor^Q_{n−3}`.
    pub mu: BTreeMap<i64, Mat>,
    /// `φ_n: Tor^Q_n → H_n(W⊗N)`.
    pub phi: BTreeMap<i64, Mat>,
    /// `ψ_n: H_n(W⊗N) → Tor^R_n`.
    pub psi: BTreeMap<i64, Mat>,
    /// Interior nodes in the window that fail exactness.
    pub defects1: Vec<(LesNode, ExactnessAt)>,
    pub defects2: Vec<(LesNode, ExactnessAt)>,
    /// Interior nodes checked in the window.
    pub nodes_checked: usize,
    /// `δ = −H(τ)` with the zigzag convention.
    pub delta_is_minus_tau: bool,
    /// `ψ∘φ = H(π)`.
    pub psi_phi_is_projection: bool,
    /// The middle terms of both sequences use the same basis of `H(W⊗N)`.
    pub shared_basis: bool,
    /// Both length counts of `H_j(W⊗N)` in the window.
    pub length_identities: bool,
    pub length_bounds: bool,
}

impl SequencesReport {
    fn assemble(
        t: &Tensored,
        les1: LongExactSequence,
        les2: LongExactSequence,
        window: i64,
    ) -> Result<SequencesReport> {
        let hi = les1.hi;
        ensure!(les2.hi == hi && hi >= window, TheoremViolation, "sequence windows disagree");
        let tor_q: Vec<usize> = (0..=hi).map(|n| les2.hb[&n].dim()).collect();
        let tor_r: Vec<usize> = (0..=hi).map(|n| les1.hc[&n].dim()).collect();
        let h_w: Vec<usize> = (0..=hi).map(|n| les1.hb[&n].dim()).collect();
        let shared_basis = (0..=hi).all(|n| les1.hb[&n].reps == les2.hc[&n].reps);
        let delta = les1.connecting.clone();
        let mu = les2.connecting.clone();
        let phi = les2.p_star.clone();
        let psi = les1.p_star.clone();
        let mut delta_is_minus_tau = true;
        for n in 1..=hi {
            let ht = t.tau_shifted.induced(n, &les1.hc[&n], &les1.ha[&(n - 1)], &t.vn, &t.svn)?;
            delta_is_minus_tau &= delta[&n] == ht.neg();
        }
        let mut psi_phi_is_projection = shared_basis;
        for n in 0..=hi {
            let hp = t.pi.induced(n, &les2.hb[&n], &les1.hc[&n], &t.un, &t.vn)?;
            psi_phi_is_projection &= psi[&n].mul(&phi[&n])? == hp;
        }
        let bq = |n: i64| if n < 0 { 0 } else { tor_q[n as usize] as i64 };
        let br = |n: i64| if n < 0 { 0 } else { tor_r[n as usize] as i64 };
        let mut length_identities = true;
        let mut length_bounds = true;
        for j in 0..=window {
            let h = h_w[j as usize] as i64;
            let via_q = bq(j) - bq(j - 2) + (get_rank(&mu, j) + get_rank(&mu, j + 1)) as i64;
            let via_r = br(j) + br(j - 1) - (get_rank(&delta, j) + get_rank(&delta, j + 1)) as i64;
            length_identities &= h == via_q && h == via_r;
            length_bounds &= br(j) - br(j - 2) <= h && h <= bq(j) + bq(j - 3);
        }
        let exact1 = les1.exactness()?;
        let exact2 = les2.exactness()?;
        let nodes_checked = exact1.iter().chain(&exact2).filter(|(_, e)| !e.unverifiable).count();
        let keep = |v: Vec<(LesNode, ExactnessAt)>| {
            v.into_iter().filter(|(_, e)| !e.unverifiable && !e.is_exact()).collect::<Vec<_>>()
        };
        Ok(SequencesReport {
            window,
            tor_q,
            tor_r,
            h_w,
            defects1: keep(exact1),
            defects2: keep(exact2),
            nodes_checked,
            les1,
            les2,
            delta,
            mu,
            phi,
            psi,
            delta_is_minus_tau,
            psi_phi_is_projection,
            shared_basis,
            length_identities,
            length_bounds,
        })
    }

    pub fn all_hold(&self) -> bool {
        self.defects1.is_empty()
            && self.defects2.is_empty()
            && self.delta_is_minus_tau
            && self.psi_phi_is_projection
            && self.length_identities
            && self.length_bounds
    }

    pub fn failures(&self) -> Vec<String> {
        let mut v = Vec::new();
        for (node, e) in self.defects1.iter() {
            v.push(format!(
                "first sequence not exact at {:?} in degree {} (defect {})",
                node.term, node.degree, e.homology_defect
            ));
        }
        for (node, e) in self.defects2.iter() {
            v.push(format!(
                "second sequence not exact at {:?} in degree {} (defect {})",
                node.term, node.degree, e.homology_defect
            ));
        }
        for (ok, name) in [
            (self.delta_is_minus_tau, "connecting map differs from -H(tau)"),
            (self.psi_phi_is_projection, "psi phi differs from the canonical map"),
            (self.length_identities, "length identities fail"),
            (self.length_bounds, "length bounds fail"),
        ] {
            if !ok {
                v.push(String::from(name));
            }
        }
        v
    }

    /// `rank δ_n` for `0 ≤ n ≤ hi` (zero where the map is not defined).
    pub fn delta_ranks(&self) -> Vec<usize> {
        (0..=self.les1.hi).map(|n| get_rank(&self.delta, n)).collect()
    }

    pub fn mu_ranks(&self) -> Vec<usize> {
        (0..=self.les2.hi).map(|n| get_rank(&self.mu, n)).collect()
    }

    /// `μ_n = 0 = δ_n` for all `n ≤ through`.
    pub fn maps_vanish_through(&self, through: i64) -> bool {
        (0..=through.min(self.les1.hi)).all(|n| get_rank(&self.delta, n) == 0 && get_rank(&self.mu, n) == 0)
    }
}

/// Result of comparing the operators of two resolutions of the same module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub window: i64,
    /// The comparison map is a chain map on `V⊗N`.
    pub comparison_chain_map: bool,
    /// `H(h)` is an isomorphism in every degree of the window.
    pub comparison_iso: bool,
    /// `H(h)·H(τ¹) = H(τ²)·H(h)` in every degree of the window.
    pub commutes: bool,
    /// Whether the two liftings differ as matrices.
    pub liftings_differ: bool,
}

impl IndependenceReport {
    pub fn all_hold(&self) -> bool {
        self.comparison_chain_map && self.comparison_iso && self.commutes
    }
}

/// Builds a comparison map `h: V¹⊗R → V²⊗R` over the identity of `M`,
/// lifts it to `Q`, and checks that `τ` commutes with it on homology
/// after `⊗ N`.
pub fn lifting_independence(p1: &Pipeline, p2: &Pipeline, n_mod: &FDModule) -> Result<IndependenceReport> {
    let setup = p1.setup();
    ensure!(setup.q() == p2.setup().q(), Precondition, "pipelines over different rings");
    ensure!(p1.cap() == p2.cap(), Precondition, "pipelines with different caps");
    ensure!(p1.module() == p2.module(), Precondition, "pipelines resolve different modules");
    let r = setup.r();
    let f1 = p1.lifted().over_quotient(r)?;
    let f2 = p2.lifted().over_quotient(r)?;
    let h = f1.compare_to(&f2)?.lift(r)?;
    let hn = h.tensor(n_mod)?;
    let t1 = p1.tensored(n_mod)?;
    let t2 = p2.tensored(n_mod)?;
    let window = setup.window() as i64;
    let comparison_chain_map = hn.verify(&t1.vn, &t2.vn, 0, p1.cap() as i64).is_ok();
    let h1: Vec<Homology> = (0..=window).map(|n| t1.vn.homology(n)).collect::<Result<_>>()?;
    let h2: Vec<Homology> = (0..=window).map(|n| t2.vn.homology(n)).collect::<Result<_>>()?;
    let mut hh = Vec::new();
    for n in 0..=window {
        let k = n as usize;
        hh.push(hn.induced(n, &h1[k], &h2[k], &t1.vn, &t2.vn)?);
    }
    let comparison_iso = hh.iter().all(|m| m.rows() == m.cols() && m.rank() == m.rows());
    let mut commutes = true;
    for n in 2..=window {
        let k = n as usize;
        let tau1 = t1.tau.induced(n, &h1[k], &h1[k - 2], &t1.vn, &t1.vn)?;
        let tau2 = t2.tau.induced(n, &h2[k], &h2[k - 2], &t2.vn, &t2.vn)?;
        commutes &= hh[k - 2].mul(&tau1)? == tau2.mul(&hh[k])?;
    }
    let liftings_differ = (0..=p1.cap()).any(|n| p1.lifted().dv(n) != p2.lifted().dv(n));
    Ok(IndependenceReport { window, comparison_chain_map, comparison_iso, commutes, liftings_differ })
}

/// Outcome of the vanishing-window consequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingWindowReport {
    pub m: usize,
    pub n: usize,
    /// `Tor^R_i(M, N) = 0` for `m ≤ i ≤ n`.
    pub hypothesis: bool,
    /// `(i, Tor^Q_{i−1} →α Tor^Q_{i+1} is an isomorphism)` for `m ≤ i ≤ n − 2`.
    pub isomorphisms: Vec<(usize, bool)>,
    /// `Tor^Q_{m−2} → Tor^Q_m → Tor^R_{m−1} → Tor^Q_{m−3}` is exact at
    /// both interior terms.
    pub four_term_exact: bool,
    /// For `m = 1`: `dim Tor^Q_i = dim M⊗N` for `1 ≤ i ≤ n − 1`.
    pub m_one: Option<bool>,
}

impl VanishingWindowReport {
    /// Conclusions hold; vacuous when the hypothesis fails.
    pub fn conclusions_hold(&self) -> bool {
        !self.hypothesis
            || (self.isomorphisms.iter().all(|(_, ok)| *ok) && self.four_term_exact && self.m_one != Some(false))
    }
}

/// Checks the consequences of `Tor^R_i(M, N) = 0` for `m ≤ i ≤ n`.
pub fn vanishing_window_check(p: &Pipeline, n_mod: &FDModule, m: usize, n: usize) -> Result<VanishingWindowReport> {
    ensure!(n >= m + 1, Precondition, "need n − m ≥ 1");
    let window = p.setup().window();
    if n > window {
        return Err(Error::Truncation { degree: n as i64, top: window as i64 });
    }
    let rep = p.sequences(n_mod)?;
    let hypothesis = (m..=n).all(|i| rep.tor_r[i] == 0);
    let mut out =
        VanishingWindowReport { m, n, hypothesis, isomorphisms: Vec::new(), four_term_exact: false, m_one: None };
    if !hypothesis {
        return Ok(out);
    }
    // Tor^Q_{i−1} = H_{i+1}(Σ²U⊗N) → H_{i+1}(U⊗N) = Tor^Q_{i+1}
    for i in m..=n.saturating_sub(2) {
        if n < 2 || i + 2 > n {
            break;
        }
        let a = &rep.les2.i_star[&((i + 1) as i64)];
        out.isomorphisms.push((i, a.rows() == a.cols() && a.rank() == a.rows()));
    }
    // ζ: Tor^R_{m−1} = H_m(ΣV⊗N) → H_m(W⊗N) is an isomorphism here
    let mi = m as i64;
    let zeta = &rep.les1.i_star[&mi];
    let zeta_iso = zeta.rows() == zeta.cols() && zeta.rank() == zeta.rows();
    if zeta_iso {
        let zinv = zeta.inverse().expect("square of full rank");
        let a = rep.les2.i_star[&mi].clone();
        let b = zinv.mul(&rep.phi[&mi])?;
        let c = match rep.mu.get(&mi) {
            Some(mu) => mu.mul(zeta)?,
            None => Mat::zeros(0, zeta.cols()),
        };
        let dims = [a.cols(), a.rows(), b.rows(), c.rows()];
        let ex = crate::complex::exactness_report(&dims, &[a, b, c])?;
        out.four_term_exact = ex.iter().all(ExactnessAt::is_exact);
    }
    if m == 1 {
        let mn = p.module().tensor_over(n_mod)?.dim();
        out.m_one = Some((1..n).all(|i| rep.tor_q[i] == mn) && rep.tor_q[0] == mn);
    }
    Ok(out)
}

/// Vanishing of `μ` and `δ` for `f ∉ m²` and `mN = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectingMapsReport {
    pub applies: bool,
    pub reason: Option<String>,
    pub all_zero: bool,
}

pub fn connecting_maps_check(p: &Pipeline, n_mod: &FDModule) -> Result<ConnectingMapsReport> {
    let reason = if p.setup().f_in_m2() {
        Some(String::from("f ∈ m²"))
    } else if n_mod.m_times().dim() != 0 {
        Some(String::from("mN ≠ 0"))
    } else {
        None
    };
    if let Some(reason) = reason {
        return Ok(ConnectingMapsReport { applies: false, reason: Some(reason), all_zero: false });
    }
    let rep = p.sequences(n_mod)?;
    Ok(ConnectingMapsReport {
        applies: true,
        reason: None,
        all_zero: rep.delta.values().chain(rep.mu.values()).all(Mat::is_zero),
    })
}

/// Induced maps `H_i(F⊗A) → H_i(F⊗B)` of `F ⊗ ν` for a module map `ν: A → B`,
/// `0 ≤ i ≤ through`.
pub fn tor_of_map(fc: &FreeComplex, a: &FDModule, b: &FDModule, nu: &Mat, through: i64) -> Result<Vec<Mat>> {
    ensure!(nu.rows() == b.dim() && nu.cols() == a.dim(), DimensionMismatch, "module map shape");
    let ca = fc.tensor(a)?;
    let cb = fc.tensor(b)?;
    let comps = fc.ranks.iter().map(|&r| block_diag(r, nu)).collect();
    let map = CxMap::new(0, fc.lo, comps);
    map.verify(&ca, &cb, fc.lo, fc.top())?;
    (fc.lo..=through)
        .map(|n| {
            let ha = ca.homology(n)?;
            let hb = cb.homology(n)?;
            map.induced(n, &ha, &hb, &ca, &cb)
        })
        .collect()
}

/// Outcome of the `ν_N` vanishing transfer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub applies: bool,
    pub reason: Option<String>,
    pub tor_r_nu_zero: bool,
    pub tor_q_nu_zero: bool,
    pub series_equal: bool,
}

impl VanishingReport {
    pub fn conclusions_hold(&self) -> bool {
        !self.applies || (self.tor_q_nu_zero && self.series_equal)
    }
}

/// If `Tor^R(M, ν_N) = 0` then `Tor^Q(M, ν_N) = 0` and `P^Q = P^R/(1−t)`,
/// given `f ∉ m²` and `m²N = 0 = gN`.
pub fn vanishing_check(p: &Pipeline, n_mod: &FDModule) -> Result<VanishingReport> {
    let mut rep = VanishingReport {
        applies: false,
        reason: None,
        tor_r_nu_zero: false,
        tor_q_nu_zero: false,
        series_equal: false,
    };
    let reason = if p.setup().f_in_m2() {
        Some("f ∈ m²")
    } else if n_mod.m_power_times(2).dim() != 0 {
        Some("m²N ≠ 0")
    } else if !n_mod.annihilates(p.setup().g()) || !n_mod.annihilates(p.setup().f()) {
        Some("N is not killed by (f, g)")
    } else {
        None
    };
    if let Some(r) = reason {
        rep.reason = Some(String::from(r));
        return Ok(rep);
    }
    let window = p.setup().window() as i64;
    let (mn, nu) = n_mod.submodule_m_m()?;
    let v = p.lifted().as_free_sequence();
    let tr = tor_of_map(&v, &mn, n_mod, &nu.matrix, window)?;
    rep.tor_r_nu_zero = tr.iter().all(Mat::is_zero);
    if !rep.tor_r_nu_zero {
        rep.reason = Some(String::from("Tor^R(M, ν_N) ≠ 0"));
        return Ok(rep);
    }
    rep.applies = true;
    let u = p.resolution().as_free_complex();
    let tq = tor_of_map(&u, &mn, n_mod, &nu.matrix, window)?;
    rep.tor_q_nu_zero = tq.iter().all(Mat::is_zero);
    let seqs = p.sequences(n_mod)?;
    let w = window as usize;
    let pq = crate::series::TruncatedSeries::truncated(seqs.tor_q[..=w].iter().map(|&b| b as i64).collect());
    let pr = crate::series::TruncatedSeries::truncated(seqs.tor_r[..=w].iter().map(|&b| b as i64).collect());
    rep.series_equal = pr.div_one_minus_t(w + 1).compare(&pq).equal;
    Ok(rep)
}
