//! Bounded chain complexes of finite-dimensional ℚ-spaces, chain maps,
//! homology, shifts, mapping cones and long exact sequences.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{ensure, Error, Result};
use crate::linalg::{quotient_basis, Coordinates, Mat, Rat, Subspace};

/// A complex `C_top → … → C_lo`, zero outside `[lo, top]`.
///
/// `diffs[k]` maps degree `lo + k` to `lo + k − 1`; `diffs[0]` has zero rows.
/// Homology is only defined through `top − 1`: the differential leaving
/// `top + 1` is unknown for truncated constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<Mat>,
}

impl Complex {
    /// Builds a complex from its differentials, starting at degree `lo`.
    /// The first matrix must have zero rows.
    pub fn new(lo: i64, diffs: Vec<Mat>) -> Result<Complex> {
        ensure!(!diffs.is_empty(), Validation, "a complex needs at least one degree");
        ensure!(diffs[0].rows() == 0, Validation, "the lowest differential must map to zero");
        let dims: Vec<usize> = diffs.iter().map(Mat::cols).collect();
        for k in 1..diffs.len() {
            ensure!(
                diffs[k].rows() == dims[k - 1],
                Validation,
                "differential in degree {} has {} rows, expected {}",
                lo + k as i64,
                diffs[k].rows(),
                dims[k - 1]
            );
        }
        Ok(Complex { lo, dims, diffs })
    }

    /// Spaces of the given dimensions with zero differentials.
    pub fn zero_diffs(lo: i64, dims: &[usize]) -> Complex {
        let diffs =
            dims.iter().enumerate().map(|(k, &d)| Mat::zeros(if k == 0 { 0 } else { dims[k - 1] }, d)).collect();
        Complex { lo, dims: dims.to_vec(), diffs }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn top(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    /// Dimension in degree `n`; zero outside the stored range.
    pub fn dim_at(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.dims[k])
    }

    fn index(&self, n: i64) -> Option<usize> {
        (n >= self.lo && n <= self.top()).then(|| (n - self.lo) as usize)
    }

    /// The differential leaving degree `n`, or a zero matrix of the right
    /// shape outside the stored range.
    pub fn d(&self, n: i64) -> Mat {
        match self.index(n) {
            Some(k) => self.diffs[k].clone(),
            None => Mat::zeros(self.dim_at(n - 1), self.dim_at(n)),
        }
    }

    pub fn diff_ref(&self, n: i64) -> Option<&Mat> {
        self.index(n).map(|k| &self.diffs[k])
    }

    /// Checks `∂_{n−1} ∘ ∂_n = 0`, returning the first failing degree.
    pub fn verify(&self) -> Result<()> {
        for n in (self.lo + 1)..=self.top() {
            let dd = self.d(n - 1).mul(&self.d(n))?;
            ensure!(dd.is_zero(), TheoremViolation, "∂∂ ≠ 0 in degree {}", n);
        }
        Ok(())
    }

    pub fn is_complex(&self) -> bool {
        self.verify().is_ok()
    }

    /// `H_n`. Errors at or beyond `top`, where the incoming differential is
    /// not part of the truncation.
    pub fn homology(&self, n: i64) -> Result<Homology> {
        if n >= self.top() {
            return Err(Error::Truncation { degree: n, top: self.top() });
        }
        let dim = self.dim_at(n);
        let cycles = if n < self.lo { Subspace::zero(0) } else { self.d(n).kernel_basis() };
        let boundaries = if n < self.lo { Subspace::zero(0) } else { self.d(n + 1).image_basis() };
        Homology::new(n, dim, cycles, boundaries)
    }

    pub fn homology_dims(&self, from: i64, to: i64) -> Result<Vec<usize>> {
        (from..=to).map(|n| self.homology(n).map(|h| h.dim())).collect()
    }

    /// `(Σ^i C)_n = C_{n−i}` with differential `(−1)^i ∂_{n−i}`.
    pub fn shift(&self, i: i64) -> Complex {
        let sign = if i.rem_euclid(2) == 1 { Rat::from_int(-1) } else { Rat::ONE };
        Complex { lo: self.lo + i, dims: self.dims.clone(), diffs: self.diffs.iter().map(|m| m.scale(&sign)).collect() }
    }

    /// Restricts to degrees `≤ top`.
    pub fn truncate_above(&self, top: i64) -> Complex {
        let keep = ((top - self.lo + 1).max(1) as usize).min(self.dims.len());
        Complex { lo: self.lo, dims: self.dims[..keep].to_vec(), diffs: self.diffs[..keep].to_vec() }
    }

    /// Alternating sum of dimensions over `[from, to]`.
    pub fn euler_characteristic(&self, from: i64, to: i64) -> i64 {
        (from..=to)
            .map(|n| {
                let d = self.dim_at(n) as i64;
                if n.rem_euclid(2) == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }
}

/// `H_n = cycles / boundaries` with a fixed basis of coset representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub ambient: usize,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    pub reps: Vec<Vec<Rat>>,
    coords: Coordinates,
    nb: usize,
}

impl Homology {
    fn new(degree: i64, ambient: usize, cycles: Subspace, boundaries: Subspace) -> Result<Homology> {
        ensure!(boundaries.is_subset_of(&cycles), TheoremViolation, "boundaries are not cycles in degree {}", degree);
        let reps = quotient_basis(&cycles, &boundaries)?.basis().to_vec();
        let mut basis = boundaries.basis().to_vec();
        basis.extend(reps.iter().cloned());
        let coords = Coordinates::new(ambient, &basis)?;
        Ok(Homology { degree, ambient, nb: boundaries.dim(), cycles, boundaries, reps, coords })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cycle in the representative basis.
    pub fn class_of(&self, z: &[Rat]) -> Result<Vec<Rat>> {
        let c = self
            .coords
            .coords(z)
            .ok_or_else(|| Error::Precondition(format!("vector is not a cycle in degree {}", self.degree)))?;
        Ok(c[self.nb..].to_vec())
    }

    pub fn is_boundary(&self, z: &[Rat]) -> bool {
        self.boundaries.contains(z)
    }
}

/// A map of complexes of degree `degree`: component `n` sends source degree
/// `n` to target degree `n + degree`. Components exist for `n ∈ [lo, lo+len)`.
///
/// Sign convention: a map of degree `k` is a chain map when
/// `∂ ∘ φ = (−1)^k φ ∘ ∂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CxMap {
    pub degree: i64,
    pub lo: i64,
    pub comps: Vec<Mat>,
}

impl CxMap {
    pub fn new(degree: i64, lo: i64, comps: Vec<Mat>) -> CxMap {
        CxMap { degree, lo, comps }
    }

    /// The identity of `c`.
    pub fn identity(c: &Complex) -> CxMap {
        CxMap { degree: 0, lo: c.lo, comps: c.dims.iter().map(|&d| Mat::identity(d)).collect() }
    }

    pub fn top(&self) -> i64 {
        self.lo + self.comps.len() as i64 - 1
    }

    pub fn comp(&self, n: i64) -> Option<&Mat> {
        if n < self.lo {
            return None;
        }
        self.comps.get((n - self.lo) as usize)
    }

    /// Component `n`, or zero when absent and one side vanishes there.
    pub fn comp_or_zero(&self, n: i64, source: &Complex, target: &Complex) -> Result<Mat> {
        let (s, t) = (source.dim_at(n), target.dim_at(n + self.degree));
        match self.comp(n) {
            Some(m) => {
                ensure!(m.rows() == t && m.cols() == s, DimensionMismatch, "chain map component shape");
                Ok(m.clone())
            }
            None if s == 0 || t == 0 => Ok(Mat::zeros(t, s)),
            None => Err(Error::Truncation { degree: n, top: self.top() }),
        }
    }

    /// Checks the chain-map squares for every source degree in
    /// `[from, to]` where both sides are defined.
    pub fn verify(&self, source: &Complex, target: &Complex, from: i64, to: i64) -> Result<()> {
        let sign = if self.degree.rem_euclid(2) == 1 { Rat::from_int(-1) } else { Rat::ONE };
        for n in from..=to {
            let phi_n = self.comp_or_zero(n, source, target)?;
            let phi_n1 = self.comp_or_zero(n - 1, source, target)?;
            let lhs = target.d(n + self.degree).mul(&phi_n)?;
            let rhs = phi_n1.mul(&source.d(n))?.scale(&sign);
            ensure!(lhs == rhs, TheoremViolation, "chain map square fails in degree {}", n);
        }
        Ok(())
    }

    /// Matrix of the induced map `H_n(source) → H_{n+degree}(target)`.
    pub fn induced(&self, n: i64, hs: &Homology, ht: &Homology, source: &Complex, target: &Complex) -> Result<Mat> {
        let phi = self.comp_or_zero(n, source, target)?;
        let cols = hs.reps.iter().map(|z| ht.class_of(&phi.apply(z)?)).collect::<Result<Vec<_>>>()?;
        Mat::from_cols(ht.dim(), &cols)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &CxMap) -> Result<CxMap> {
        let lo = first.lo.max(self.lo - first.degree);
        let top = first.top().min(self.top() - first.degree);
        let comps = (lo..=top)
            .map(|n| {
                let a = first.comp(n).expect("in range");
                let b = self.comp(n + first.degree).expect("in range");
                b.mul(a)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CxMap { degree: self.degree + first.degree, lo, comps })
    }

    pub fn scale(&self, c: &Rat) -> CxMap {
        CxMap { degree: self.degree, lo: self.lo, comps: self.comps.iter().map(|m| m.scale(c)).collect() }
    }
}

/// A mapping cone together with the maps of its short exact sequence
/// `0 → Y → cone(φ) → ΣX → 0`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub inclusion: CxMap,
    pub projection: CxMap,
    /// `ΣX`, the third term.
    pub quotient: Complex,
}

/// `cone(φ)_n = Y_n ⊕ X_{n−1}` with `∂ = [[∂_Y, −φ_{n−1}], [0, −∂_X]]`,
/// for a degree-0 chain map `φ: X → Y`.
pub fn cone(phi: &CxMap, x: &Complex, y: &Complex) -> Result<Cone> {
    ensure!(phi.degree == 0, Precondition, "the cone is built from a degree-0 chain map");
    let lo = y.lo.min(x.lo + 1);
    let top = y.top().min(x.top() + 1);
    ensure!(top >= lo, Precondition, "empty window for the cone");
    phi.verify(x, y, x.lo, (x.top()).min(top - 1))
        .map_err(|e| Error::Precondition(format!("cone of a non-chain map: {}", e)))?;
    let minus = Rat::from_int(-1);
    let mut diffs = Vec::new();
    let (mut inc, mut proj) = (Vec::new(), Vec::new());
    for n in lo..=top {
        let (yn, xn1) = (y.dim_at(n), x.dim_at(n - 1));
        let (yn1, xn2) = (y.dim_at(n - 1), x.dim_at(n - 2));
        let phi_n1 = phi.comp_or_zero(n - 1, x, y)?;
        let mut d = Mat::zeros(if n == lo { 0 } else { yn1 + xn2 }, yn + xn1);
        if n > lo {
            d.set_block(0, 0, &y.d(n));
            d.set_block(0, yn, &phi_n1.scale(&minus));
            d.set_block(yn1, yn, &x.d(n - 1).scale(&minus));
        }
        diffs.push(d);
        let mut i = Mat::zeros(yn + xn1, yn);
        i.set_block(0, 0, &Mat::identity(yn));
        inc.push(i);
        let mut p = Mat::zeros(xn1, yn + xn1);
        p.set_block(0, yn, &Mat::identity(xn1));
        proj.push(p);
    }
    let complex = Complex::new(lo, diffs)?;
    let quotient = x.shift(1);
    Ok(Cone { complex, inclusion: CxMap::new(0, lo, inc), projection: CxMap::new(0, lo, proj), quotient })
}

/// Degreewise exactness of `0 → A →i B →p C → 0` on `[from, to]`,
/// including that `i` and `p` are chain maps there.
pub fn ses_exact(a: &Complex, b: &Complex, c: &Complex, i: &CxMap, p: &CxMap, from: i64, to: i64) -> Result<()> {
    i.verify(a, b, from, to)?;
    p.verify(b, c, from, to)?;
    for n in from..=to {
        let im = i.comp_or_zero(n, a, b)?;
        let pm = p.comp_or_zero(n, b, c)?;
        ensure!(im.rank() == a.dim_at(n), TheoremViolation, "not injective in degree {}", n);
        ensure!(pm.rank() == c.dim_at(n), TheoremViolation, "not surjective in degree {}", n);
        ensure!(pm.mul(&im)?.is_zero(), TheoremViolation, "composite nonzero in degree {}", n);
        ensure!(a.dim_at(n) + c.dim_at(n) == b.dim_at(n), TheoremViolation, "not exact in the middle in degree {}", n);
    }
    Ok(())
}

/// Which term of the short exact sequence a node belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    A,
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub term: Term,
    pub degree: i64,
    pub dim: usize,
}

/// Exactness data at one position of a sequence `U →a V →b W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessAt {
    pub position: usize,
    pub im_in_ker: bool,
    pub ker_in_im: bool,
    /// `rank(b ∘ a)`: zero iff `im a ⊆ ker b`.
    pub composite_rank: usize,
    /// `dim ker b − dim(im a ∩ ker b)`: zero iff `ker b ⊆ im a`.
    pub homology_defect: usize,
    /// Degrees this position touches beyond the trusted window.
    pub unverifiable: bool,
}

impl ExactnessAt {
    pub fn is_exact(&self) -> bool {
        self.im_in_ker && self.ker_in_im
    }
}

/// Per-position exactness of a chain of composable maps.
/// `maps[k]` goes from `dims[k]` to `dims[k+1]`; positions `1..maps.len()`
/// are interior.
pub fn exactness_report(dims: &[usize], maps: &[Mat]) -> Result<Vec<ExactnessAt>> {
    ensure!(dims.len() == maps.len() + 1, DimensionMismatch, "sequence lengths");
    for (k, m) in maps.iter().enumerate() {
        ensure!(m.cols() == dims[k] && m.rows() == dims[k + 1], DimensionMismatch, "sequence map shape");
    }
    let mut out = Vec::new();
    for pos in 1..maps.len() {
        let (a, b) = (&maps[pos - 1], &maps[pos]);
        let composite_rank = b.mul(a)?.rank();
        let ker = b.kernel_basis();
        let im = a.image_basis();
        let inter = im.intersect(&ker)?;
        let homology_defect = ker.dim() - inter.dim();
        out.push(ExactnessAt {
            position: pos,
            im_in_ker: composite_rank == 0,
            ker_in_im: homology_defect == 0,
            composite_rank,
            homology_defect,
            unverifiable: false,
        });
    }
    Ok(out)
}

/// The long exact homology sequence of `0 → A → B → C → 0`, materialized
/// over `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct LongExactSequence {
    pub lo: i64,
    pub hi: i64,
    /// Degrees above this are reported as unverifiable.
    pub trusted_top: i64,
    pub ha: BTreeMap<i64, Homology>,
    pub hb: BTreeMap<i64, Homology>,
    pub hc: BTreeMap<i64, Homology>,
    /// `H_n(A) → H_n(B)`
    pub i_star: BTreeMap<i64, Mat>,
    /// `H_n(B) → H_n(C)`
    pub p_star: BTreeMap<i64, Mat>,
    /// `H_n(C) → H_{n−1}(A)`
    pub connecting: BTreeMap<i64, Mat>,
}

impl LongExactSequence {
    /// Nodes from the top degree down: `H_hi(A), H_hi(B), H_hi(C), H_{hi−1}(A), …`.
    pub fn nodes(&self) -> Vec<LesNode> {
        let mut v = Vec::new();
        for n in (self.lo..=self.hi).rev() {
            v.push(LesNode { term: Term::A, degree: n, dim: self.ha[&n].dim() });
            v.push(LesNode { term: Term::B, degree: n, dim: self.hb[&n].dim() });
            v.push(LesNode { term: Term::C, degree: n, dim: self.hc[&n].dim() });
        }
        v
    }

    /// Maps between consecutive nodes, matching [`nodes`](Self::nodes).
    pub fn maps(&self) -> Vec<Mat> {
        let mut v = Vec::new();
        for n in (self.lo..=self.hi).rev() {
            v.push(self.i_star[&n].clone());
            v.push(self.p_star[&n].clone());
            if n > self.lo {
                v.push(self.connecting[&n].clone());
            }
        }
        v
    }

    /// Exactness at every interior node; nodes above `trusted_top` are
    /// marked unverifiable.
    pub fn exactness(&self) -> Result<Vec<(LesNode, ExactnessAt)>> {
        let nodes = self.nodes();
        let dims: Vec<usize> = nodes.iter().map(|n| n.dim).collect();
        let rep = exactness_report(&dims, &self.maps())?;
        Ok(rep
            .into_iter()
            .map(|mut e| {
                let node = nodes[e.position].clone();
                e.unverifiable = node.degree > self.trusted_top;
                (node, e)
            })
            .collect())
    }

    /// Interior nodes in the trusted window that fail exactness.
    pub fn defects(&self) -> Result<Vec<(LesNode, ExactnessAt)>> {
        Ok(self.exactness()?.into_iter().filter(|(_, e)| !e.unverifiable && !e.is_exact()).collect())
    }
}

/// Builds the long exact sequence of a degreewise short exact sequence,
/// with connecting maps computed by the zigzag: lift through `p`, apply
/// `∂_B`, pull back through `i`.
///
/// Homology is taken through one below the lowest top degree; nodes more
/// than `trusted_top` are flagged unverifiable.
pub fn les_from_ses(
    a: &Complex,
    b: &Complex,
    c: &Complex,
    i: &CxMap,
    p: &CxMap,
    trusted_top: i64,
) -> Result<LongExactSequence> {
    let lo = a.lo.min(b.lo).min(c.lo);
    let top = a.top().min(b.top()).min(c.top());
    let hi = top - 1;
    ensure!(hi >= lo, Precondition, "window too small for a long exact sequence");
    ses_exact(a, b, c, i, p, lo, top)
        .map_err(|e| Error::Precondition(format!("input is not a short exact sequence: {}", e)))?;
    let mut les = LongExactSequence {
        lo,
        hi,
        trusted_top,
        ha: BTreeMap::new(),
        hb: BTreeMap::new(),
        hc: BTreeMap::new(),
        i_star: BTreeMap::new(),
        p_star: BTreeMap::new(),
        connecting: BTreeMap::new(),
    };
    for n in lo..=hi {
        les.ha.insert(n, a.homology(n)?);
        les.hb.insert(n, b.homology(n)?);
        les.hc.insert(n, c.homology(n)?);
    }
    for n in lo..=hi {
        les.i_star.insert(n, i.induced(n, &les.ha[&n], &les.hb[&n], a, b)?);
        les.p_star.insert(n, p.induced(n, &les.hb[&n], &les.hc[&n], b, c)?);
        if n > lo {
            let conn = connecting_map(n, a, b, c, i, p, &les.hc[&n], &les.ha[&(n - 1)])?;
            les.connecting.insert(n, conn);
        }
    }
    Ok(les)
}

#[allow(clippy::too_many_arguments)]
fn connecting_map(
    n: i64,
    a: &Complex,
    b: &Complex,
    c: &Complex,
    i: &CxMap,
    p: &CxMap,
    hc: &Homology,
    ha: &Homology,
) -> Result<Mat> {
    let pn = p.comp_or_zero(n, b, c)?;
    let im1 = i.comp_or_zero(n - 1, a, b)?;
    let db = b.d(n);
    let mut cols = Vec::with_capacity(hc.dim());
    for z in &hc.reps {
        let lift = pn.solve(z)?.ok_or_else(|| Error::TheoremViolation(format!("p not surjective in degree {}", n)))?;
        let bd = db.apply(&lift)?;
        let pre = im1
            .solve(&bd)?
            .ok_or_else(|| Error::TheoremViolation(format!("zigzag leaves the image of i in degree {}", n - 1)))?;
        cols.push(ha.class_of(&pre)?);
    }
    Mat::from_cols(ha.dim(), &cols)
}

/// Matrix rank helper for reports.
pub fn rank_of(m: &Mat) -> usize {
    m.rank()
}

/// A split short exact sequence `0 → A → A ⊕ C → C → 0`, used in tests.
pub fn direct_sum(a: &Complex, c: &Complex) -> Result<(Complex, CxMap, CxMap)> {
    ensure!(a.lo == c.lo && a.top() == c.top(), Precondition, "direct sum needs equal windows");
    let mut diffs = Vec::new();
    let (mut inc, mut proj) = (Vec::new(), Vec::new());
    for n in a.lo..=a.top() {
        let (an, cn) = (a.dim_at(n), c.dim_at(n));
        let rows = if n == a.lo { 0 } else { a.dim_at(n - 1) + c.dim_at(n - 1) };
        let mut d = Mat::zeros(rows, an + cn);
        if n > a.lo {
            d.set_block(0, 0, &a.d(n));
            d.set_block(a.dim_at(n - 1), an, &c.d(n));
        }
        diffs.push(d);
        let mut i = Mat::zeros(an + cn, an);
        i.set_block(0, 0, &Mat::identity(an));
        inc.push(i);
        let mut p = Mat::zeros(cn, an + cn);
        p.set_block(0, an, &Mat::identity(cn));
        proj.push(p);
    }
    Ok((Complex::new(a.lo, diffs)?, CxMap::new(0, a.lo, inc), CxMap::new(0, a.lo, proj)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(rows: &[&[i64]]) -> Mat {
        Mat::from_i64(rows)
    }

    fn iso_complex() -> Complex {
        // 0 → ℚ →id ℚ → 0 in degrees 1, 0, padded by a zero degree 2
        Complex::new(0, vec![Mat::zeros(0, 1), m(&[&[1]]), Mat::zeros(1, 0)]).unwrap()
    }

    #[test]
    fn homology_of_iso_is_zero() {
        let c = iso_complex();
        c.verify().unwrap();
        assert_eq!(c.homology_dims(-1, 1).unwrap(), vec![0, 0, 0]);
        assert!(matches!(c.homology(2), Err(Error::Truncation { .. })));
    }

    #[test]
    fn zero_differentials() {
        let c = Complex::zero_diffs(0, &[2, 3, 1]);
        assert_eq!(c.homology_dims(0, 1).unwrap(), vec![2, 3]);
    }

    #[test]
    fn shifts_compose() {
        let c = Complex::new(0, vec![Mat::zeros(0, 2), m(&[&[1, 2], &[3, 4]]), m(&[&[1], &[0]])]).unwrap();
        assert_eq!(c.shift(1).shift(1), c.shift(2));
        assert_eq!(c.shift(1).lo(), 1);
        assert_eq!(c.shift(1).d(2), c.d(1).neg());
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let x = Complex::new(0, vec![Mat::zeros(0, 1), m(&[&[0]]), Mat::zeros(1, 2)]).unwrap();
        let id = CxMap::identity(&x);
        let cn = cone(&id, &x, &x).unwrap();
        cn.complex.verify().unwrap();
        for n in cn.complex.lo()..cn.complex.top() {
            assert_eq!(cn.complex.homology(n).unwrap().dim(), 0, "degree {}", n);
        }
    }

    #[test]
    fn cone_of_zero_is_a_sum() {
        let x = Complex::zero_diffs(0, &[1, 2, 1]);
        let zero = CxMap::new(0, 0, vec![Mat::zeros(1, 1), Mat::zeros(2, 2), Mat::zeros(1, 1)]);
        let cn = cone(&zero, &x, &x).unwrap();
        // H_n = X_n ⊕ X_{n−1}
        assert_eq!(cn.complex.homology_dims(0, 1).unwrap(), vec![1, 3]);
    }

    #[test]
    fn split_sequence_has_zero_connecting_maps() {
        let a = Complex::zero_diffs(0, &[1, 1, 1, 1]);
        let c = Complex::new(0, vec![Mat::zeros(0, 1), m(&[&[0]]), m(&[&[1]]), m(&[&[0]])]).unwrap();
        let (b, i, p) = direct_sum(&a, &c).unwrap();
        let les = les_from_ses(&a, &b, &c, &i, &p, 2).unwrap();
        for (_, mat) in &les.connecting {
            assert!(mat.is_zero());
        }
        assert!(les.defects().unwrap().is_empty());
    }

    #[test]
    fn cone_sequence_connecting_map_is_phi() {
        // with this cone convention the connecting map is −H(φ)
        let x = Complex::zero_diffs(0, &[1, 1, 1]);
        let phi = CxMap::new(0, 0, vec![m(&[&[2]]), m(&[&[2]]), m(&[&[2]])]);
        let cn = cone(&phi, &x, &x).unwrap();
        let les = les_from_ses(&x, &cn.complex, &cn.quotient, &cn.inclusion, &cn.projection, 5).unwrap();
        // H_n(ΣX) = H_{n−1}(X) → H_{n−1}(X)
        assert_eq!(les.connecting[&1], m(&[&[-2]]));
        assert!(les.defects().unwrap().is_empty());
    }

    #[test]
    fn exactness_reports() {
        let id = m(&[&[1, 0], &[0, 1]]);
        let z = Mat::zeros(2, 2);
        let zero_in = Mat::zeros(2, 0);
        let zero_out = Mat::zeros(0, 2);
        let exact = exactness_report(&[0, 2, 2, 0], &[zero_in.clone(), id, zero_out.clone()]).unwrap();
        assert!(exact.iter().all(ExactnessAt::is_exact));
        let bad = exactness_report(&[0, 2, 2, 0], &[zero_in, z, zero_out]).unwrap();
        assert_eq!(bad[0].homology_defect, 2);
        assert_eq!(bad[1].homology_defect, 2);
    }

    #[test]
    fn chain_map_verification() {
        let x = Complex::new(0, vec![Mat::zeros(0, 1), m(&[&[1]])]).unwrap();
        let good = CxMap::identity(&x);
        good.verify(&x, &x, 0, 1).unwrap();
        let bad = CxMap::new(0, 0, vec![m(&[&[1]]), m(&[&[2]])]);
        assert!(bad.verify(&x, &x, 0, 1).is_err());
    }
}
