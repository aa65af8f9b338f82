//! Finite-dimensional commutative local ℚ-algebras given by structure
//! constants over an adapted basis: `b₀ = 1` and `b₁, …, b_{d−1}` span the
//! maximal ideal.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{ensure, Error, Result};
use crate::linalg::{quotient_basis, Coordinates, Mat, Rat, Subspace};
use crate::series::TruncatedSeries;

/// An element of a [`LocalAlgebra`], as coordinates in its basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgElem {
    pub coeffs: Vec<Rat>,
}

impl AlgElem {
    pub fn new(coeffs: Vec<Rat>) -> AlgElem {
        AlgElem { coeffs }
    }

    pub fn zero(dim: usize) -> AlgElem {
        AlgElem { coeffs: vec![Rat::ZERO; dim] }
    }

    pub fn basis(dim: usize, i: usize) -> AlgElem {
        let mut e = AlgElem::zero(dim);
        e.coeffs[i] = Rat::ONE;
        e
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        AlgElem::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        AlgElem::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rat) -> AlgElem {
        AlgElem::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> AlgElem {
        self.scale(&Rat::from_int(-1))
    }

    pub fn add_assign(&mut self, other: &AlgElem) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rat, other: &AlgElem) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_mul(c, b);
        }
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// An ideal, stored as its underlying ℚ-subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgIdeal {
    pub subspace: Subspace,
}

impl AlgIdeal {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    pub fn contains(&self, a: &AlgElem) -> bool {
        self.subspace.contains(&a.coeffs)
    }
}

#[derive(Debug)]
struct AlgebraData {
    labels: Vec<String>,
    // table[i][j] = b_i · b_j
    table: Vec<Vec<Vec<Rat>>>,
    // left[i] = matrix of multiplication by b_i
    left: Vec<Mat>,
    // mseq[k] = m^(k+1), ending with the zero subspace
    mseq: Vec<Subspace>,
}

/// A validated local algebra. Cloning is cheap; clones share storage.
#[derive(Clone)]
pub struct LocalAlgebra {
    data: Arc<AlgebraData>,
}

impl fmt::Debug for LocalAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalAlgebra{:?}", self.data.labels)
    }
}

impl PartialEq for LocalAlgebra {
    fn eq(&self, other: &LocalAlgebra) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.table == other.data.table
    }
}

impl Eq for LocalAlgebra {}

fn unit_vec(d: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::ZERO; d];
    v[i] = Rat::ONE;
    v
}

fn mul_with_table(table: &[Vec<Vec<Rat>>], a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let d = a.len();
    let mut out = vec![Rat::ZERO; d];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let c = ai * bj;
            for (o, t) in out.iter_mut().zip(&table[i][j]) {
                if !t.is_zero() {
                    o.add_mul(&c, t);
                }
            }
        }
    }
    out
}

fn check_table_shape(d: usize, labels: &[String], table: &[Vec<Vec<Rat>>]) -> Result<()> {
    ensure!(d > 0, Validation, "an algebra needs at least one basis element");
    ensure!(labels.len() == d, Validation, "{} labels for a {}-dimensional table", labels.len(), d);
    ensure!(table.len() == d, Validation, "table has {} rows, expected {}", table.len(), d);
    for (i, row) in table.iter().enumerate() {
        ensure!(row.len() == d, Validation, "table row {} has {} entries, expected {}", i, row.len(), d);
        for (j, v) in row.iter().enumerate() {
            ensure!(v.len() == d, Validation, "product ({},{}) has {} coordinates, expected {}", i, j, v.len(), d);
        }
    }
    Ok(())
}

/// Commutativity and associativity on basis pairs and triples.
fn check_comm_assoc(table: &[Vec<Vec<Rat>>]) -> Result<()> {
    let d = table.len();
    for i in 0..d {
        for j in (i + 1)..d {
            ensure!(table[i][j] == table[j][i], Validation, "non-commutative basis pair ({},{})", i, j);
        }
    }
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = mul_with_table(table, &table[i][j], &unit_vec(d, k));
                let rhs = mul_with_table(table, &unit_vec(d, i), &table[j][k]);
                ensure!(lhs == rhs, Validation, "non-associative basis triple ({},{},{})", i, j, k);
            }
        }
    }
    Ok(())
}

fn format_combination(labels: &[String], v: &[Rat]) -> String {
    let mut s = String::new();
    for (l, c) in labels.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        if !s.is_empty() {
            s.push('+');
        }
        if !c.is_one() {
            s.push_str(&format!("{}*", c));
        }
        s.push_str(l);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl LocalAlgebra {
    /// Builds an algebra from a structure-constant table `table[i][j] = b_i b_j`.
    ///
    /// The input basis need not be adapted: when the unit is not `b₀` or the
    /// remaining basis vectors do not span the radical, the algebra is
    /// re-based onto `(1, basis of m)`.
    pub fn from_structure_constants(labels: Vec<String>, table: Vec<Vec<Vec<Rat>>>) -> Result<LocalAlgebra> {
        let d = table.len();
        check_table_shape(d, &labels, &table)?;
        check_comm_assoc(&table)?;
        let adapted = table[0].iter().enumerate().all(|(j, v)| *v == unit_vec(d, j))
            && (1..d).all(|i| (1..d).all(|j| table[i][j][0].is_zero()));
        if adapted {
            let alg = LocalAlgebra::assemble(labels, table);
            alg.validate()?;
            return Ok(alg);
        }
        LocalAlgebra::rebase(labels, table)
    }

    fn rebase(labels: Vec<String>, table: Vec<Vec<Vec<Rat>>>) -> Result<LocalAlgebra> {
        let d = table.len();
        // unit: u with u·b_j = b_j for all j
        let mut sys = Mat::zeros(d * d, d);
        let mut rhs = vec![Rat::ZERO; d * d];
        for j in 0..d {
            for i in 0..d {
                for k in 0..d {
                    sys[(j * d + k, i)] = table[i][j][k].clone();
                }
            }
            rhs[j * d + j] = Rat::ONE;
        }
        let unit = sys.solve(&rhs)?.ok_or_else(|| Error::Validation("the table has no unit element".to_string()))?;
        // radical = kernel of the trace form (characteristic zero)
        let left: Vec<Mat> = (0..d).map(|i| left_matrix(&table, i)).collect();
        let trace = |m: &Mat| -> Rat { (0..d).map(|i| m[(i, i)].clone()).sum() };
        let mut form = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let prod = &table[i][j];
                let mut m = Mat::zeros(d, d);
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        m = m.add(&left[k].scale(c))?;
                    }
                }
                form[(i, j)] = trace(&m);
            }
        }
        let radical = form.kernel_basis();
        ensure!(
            radical.dim() + 1 == d,
            Validation,
            "not local with residue field ℚ: radical has dimension {} in a {}-dimensional algebra",
            radical.dim(),
            d
        );
        let mut new_basis = vec![unit];
        new_basis.extend(radical.canonical_basis());
        let coords =
            Coordinates::new(d, &new_basis).map_err(|_| Error::Validation("unit lies in the radical".to_string()))?;
        let mut new_table = vec![vec![vec![Rat::ZERO; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let p = mul_with_table(&table, &new_basis[i], &new_basis[j]);
                new_table[i][j] = coords.coords(&p).expect("product lies in the algebra");
            }
        }
        let new_labels = new_basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == 0 {
                    return "1".to_string();
                }
                match v.iter().position(|x| !x.is_zero()) {
                    Some(p) if v.iter().filter(|x| !x.is_zero()).count() == 1 && v[p].is_one() => labels[p].clone(),
                    _ => format!("({})", format_combination(&labels, v)),
                }
            })
            .collect();
        let alg = LocalAlgebra::assemble(new_labels, new_table);
        alg.validate()?;
        Ok(alg)
    }

    fn assemble(labels: Vec<String>, table: Vec<Vec<Vec<Rat>>>) -> LocalAlgebra {
        let d = table.len();
        let left = (0..d).map(|i| left_matrix(&table, i)).collect::<Vec<_>>();
        let mut mseq = Vec::new();
        let mut cur = Subspace::span(d, (1..d).map(|i| unit_vec(d, i)));
        // stops at zero or at a non-shrinking power; validate() rejects the latter
        loop {
            let next = Subspace::span(
                d,
                (1..d).flat_map(|i| {
                    let l = &left[i];
                    cur.basis().iter().map(move |v| l.apply(v).expect("square"))
                }),
            );
            let done = cur.dim() == 0 || next.dim() == cur.dim();
            mseq.push(cur);
            if done {
                break;
            }
            cur = next;
        }
        LocalAlgebra { data: Arc::new(AlgebraData { labels, table, left, mseq }) }
    }

    /// `ℚ[vars]/(monomials)`; each relation is an exponent vector.
    pub fn from_monomial_quotient(vars: &[String], relations: &[Vec<u32>]) -> Result<LocalAlgebra> {
        let n = vars.len();
        for r in relations {
            ensure!(r.len() == n, Validation, "relation exponent vector has length {}, expected {}", r.len(), n);
            ensure!(r.iter().any(|&e| e > 0), Validation, "the relation 1 gives the zero ring");
        }
        let mut bounds = Vec::with_capacity(n);
        for (v, name) in vars.iter().enumerate() {
            let pure =
                relations.iter().filter(|r| r.iter().enumerate().all(|(w, &e)| w == v || e == 0)).map(|r| r[v]).min();
            match pure {
                Some(b) => bounds.push(b),
                None => {
                    return Err(Error::NotArtinian(format!("variable {} has no pure power among the relations", name)))
                }
            }
        }
        let divisible = |m: &[u32]| relations.iter().any(|r| r.iter().zip(m).all(|(a, b)| a <= b));
        let mut monos: Vec<Vec<u32>> = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            if !divisible(&cur) {
                monos.push(cur.clone());
            }
            // odometer over the box ∏ [0, bound)
            let mut k = 0;
            while k < n {
                cur[k] += 1;
                if cur[k] < bounds[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        let deg = |m: &Vec<u32>| m.iter().sum::<u32>();
        monos.sort_by(|a, b| deg(a).cmp(&deg(b)).then_with(|| b.cmp(a)));
        let d = monos.len();
        let single_char = vars.iter().all(|v| v.chars().count() == 1);
        let labels = monos.iter().map(|m| monomial_label(vars, m, single_char)).collect::<Vec<_>>();
        let index_of = |m: &[u32]| monos.iter().position(|x| x.as_slice() == m);
        let mut table = vec![vec![vec![Rat::ZERO; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let prod: Vec<u32> = monos[i].iter().zip(&monos[j]).map(|(a, b)| a + b).collect();
                if !divisible(&prod) {
                    let k = index_of(&prod).expect("standard monomial within bounds");
                    table[i][j][k] = Rat::ONE;
                }
            }
        }
        let alg = LocalAlgebra::assemble(labels, table);
        alg.validate()?;
        Ok(alg)
    }

    /// Checks every standing assumption and returns the least `N` with `mᴺ = 0`.
    pub fn validate(&self) -> Result<usize> {
        let d = self.dim();
        let table = &self.data.table;
        check_table_shape(d, &self.data.labels, table)?;
        for j in 0..d {
            ensure!(table[0][j] == unit_vec(d, j), Validation, "b0 does not act as the unit on b{}", j);
        }
        check_comm_assoc(table)?;
        for i in 1..d {
            for j in 1..d {
                ensure!(
                    table[i][j][0].is_zero(),
                    Validation,
                    "span of b1..b{} is not an ideal: product ({},{}) has a unit component",
                    d - 1,
                    i,
                    j
                );
            }
        }
        let last = self.data.mseq.last().expect("nonempty");
        ensure!(last.dim() == 0, Validation, "the maximal ideal is not nilpotent");
        Ok(self.nilpotency_index())
    }

    pub fn dim(&self) -> usize {
        self.data.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn table(&self) -> &[Vec<Vec<Rat>>] {
        &self.data.table
    }

    /// Matrix of multiplication by the basis element `b_i`.
    pub fn left_basis(&self, i: usize) -> &Mat {
        &self.data.left[i]
    }

    /// Matrix of multiplication by `a`.
    pub fn left_mul(&self, a: &AlgElem) -> Mat {
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for (i, c) in a.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..d {
                for s in 0..d {
                    let x = &self.data.left[i][(r, s)];
                    if !x.is_zero() {
                        m[(r, s)].add_mul(c, x);
                    }
                }
            }
        }
        m
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        AlgElem::new(mul_with_table(&self.data.table, &a.coeffs, &b.coeffs))
    }

    pub fn one(&self) -> AlgElem {
        AlgElem::basis(self.dim(), 0)
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem::zero(self.dim())
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        AlgElem::basis(self.dim(), i)
    }

    pub fn elem(&self, coeffs: &[i64]) -> AlgElem {
        assert_eq!(coeffs.len(), self.dim());
        AlgElem::new(coeffs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    /// `m^k` for `k ≥ 0` (with `m⁰ = Q`).
    pub fn m_power(&self, k: usize) -> Subspace {
        let d = self.dim();
        if k == 0 {
            return Subspace::full(d);
        }
        self.data.mseq.get(k - 1).cloned().unwrap_or_else(|| Subspace::zero(d))
    }

    pub fn maximal_ideal(&self) -> AlgIdeal {
        AlgIdeal { subspace: self.m_power(1) }
    }

    /// Least `N` with `mᴺ = 0`.
    pub fn nilpotency_index(&self) -> usize {
        (0..).find(|&k| self.m_power(k).dim() == 0).expect("validated algebras are nilpotent")
    }

    /// Embedding dimension `dim m/m²`.
    pub fn embedding_dim(&self) -> usize {
        self.m_power(1).dim() - self.m_power(2).dim()
    }

    pub fn in_m(&self, a: &AlgElem) -> bool {
        a.coeffs[0].is_zero()
    }

    pub fn is_short(&self) -> bool {
        self.m_power(3).dim() == 0
    }

    /// The ideal generated by the given elements.
    pub fn ideal(&self, gens: &[AlgElem]) -> AlgIdeal {
        let d = self.dim();
        let vecs = gens.iter().flat_map(|g| {
            let l = self.left_mul(g);
            (0..d).map(move |j| l.col(j))
        });
        AlgIdeal { subspace: Subspace::span(d, vecs) }
    }

    pub fn principal(&self, f: &AlgElem) -> AlgIdeal {
        self.ideal(core::slice::from_ref(f))
    }

    /// `I·J` for ideals.
    pub fn ideal_product(&self, a: &AlgIdeal, b: &AlgIdeal) -> AlgIdeal {
        let d = self.dim();
        let mut vecs = Vec::new();
        for x in a.subspace.basis() {
            for y in b.subspace.basis() {
                vecs.push(mul_with_table(&self.data.table, x, y));
            }
        }
        AlgIdeal { subspace: Subspace::span(d, vecs) }
    }

    pub fn annihilator(&self, f: &AlgElem) -> AlgIdeal {
        AlgIdeal { subspace: self.left_mul(f).kernel_basis() }
    }

    pub fn is_exact_pair(&self, f: &AlgElem, g: &AlgElem) -> ExactPairCertificate {
        let (pf, pg) = (self.principal(f), self.principal(g));
        let (af, ag) = (self.annihilator(f), self.annihilator(g));
        ExactPairCertificate {
            f_nonzero: !f.is_zero(),
            g_nonzero: !g.is_zero(),
            ann_f_in_g: af.subspace.is_subset_of(&pg.subspace),
            g_in_ann_f: pg.subspace.is_subset_of(&af.subspace),
            ann_g_in_f: ag.subspace.is_subset_of(&pf.subspace),
            f_in_ann_g: pf.subspace.is_subset_of(&ag.subspace),
        }
    }

    /// `Q/I` with projection and coset-representative section.
    pub fn quotient(&self, ideal: &AlgIdeal) -> Result<QuotientData> {
        let d = self.dim();
        for i in 0..d {
            for v in ideal.subspace.basis() {
                let w = self.data.left[i].apply(v)?;
                ensure!(ideal.subspace.contains(&w), Precondition, "subspace is not an ideal");
            }
        }
        ensure!(ideal.dim() < d, Precondition, "cannot take the quotient by the unit ideal");
        let reps = quotient_basis(&Subspace::full(d), &ideal.subspace)?;
        let mut basis: Vec<Vec<Rat>> = ideal.subspace.basis().to_vec();
        basis.extend(reps.basis().iter().cloned());
        let coords = Coordinates::new(d, &basis)?;
        let skip = ideal.dim();
        let e = reps.dim();
        let project = |v: &[Rat]| -> Vec<Rat> { coords.coords(v).expect("full span")[skip..].to_vec() };
        let mut projection = Mat::zeros(e, d);
        for j in 0..d {
            let p = project(&unit_vec(d, j));
            for (i, x) in p.into_iter().enumerate() {
                projection[(i, j)] = x;
            }
        }
        let section = reps.as_columns();
        let mut table = vec![vec![vec![Rat::ZERO; e]; e]; e];
        for i in 0..e {
            for j in 0..e {
                table[i][j] = project(&mul_with_table(&self.data.table, &reps.basis()[i], &reps.basis()[j]));
            }
        }
        let labels = reps
            .basis()
            .iter()
            .map(|v| {
                let p = v.iter().position(|x| !x.is_zero()).expect("nonzero rep");
                self.data.labels[p].clone()
            })
            .collect();
        let quotient = LocalAlgebra::assemble(labels, table);
        quotient.validate()?;
        Ok(QuotientData { parent: self.clone(), quotient, projection, section })
    }

    pub fn hilbert_series_ring(&self) -> TruncatedSeries {
        let n = self.nilpotency_index();
        let coeffs = (0..n.max(1)).map(|k| (self.m_power(k).dim() - self.m_power(k + 1).dim()) as i64).collect();
        TruncatedSeries::new(coeffs)
    }

    /// `f² = 0` and `f·m = m²`; only meaningful when `m³ = 0`.
    pub fn is_conca_generator(&self, f: &AlgElem) -> Result<bool> {
        ensure!(self.is_short(), Precondition, "Conca generators are defined for rings with m³ = 0");
        if !self.mul(f, f).is_zero() {
            return Ok(false);
        }
        let fm = self.ideal_product(&self.principal(f), &self.maximal_ideal());
        Ok(fm.subspace == self.m_power(2))
    }

    /// For an exact pair in a short ring: `H_Q(t) = 1 + et + (e−1)t²`,
    /// `fm = m² = gm` and `f, g ∉ m²`.
    pub fn check_short_ring(&self, f: &AlgElem, g: &AlgElem) -> Result<ShortRingReport> {
        ensure!(self.is_exact_pair(f, g).holds(), Precondition, "(f, g) is not an exact pair of zero divisors");
        ensure!(self.is_short(), Precondition, "the ring is not short (m³ ≠ 0)");
        let e = self.embedding_dim();
        let expected = short_hilbert(e);
        let h = self.hilbert_series_ring();
        let m = self.maximal_ideal();
        let m2 = self.m_power(2);
        let report = ShortRingReport {
            e,
            hilbert: h.clone(),
            hilbert_ok: h.trimmed() == expected.trimmed(),
            fm_is_m2: self.ideal_product(&self.principal(f), &m).subspace == m2,
            gm_is_m2: self.ideal_product(&self.principal(g), &m).subspace == m2,
            f_not_in_m2: !m2.contains(&f.coeffs),
            g_not_in_m2: !m2.contains(&g.coeffs),
        };
        ensure!(report.all_hold(), TheoremViolation, "short-ring Hilbert identities fail: {:?}", report);
        Ok(report)
    }

    /// When `H_Q(t) = 1 + et + (e−1)t²`: returns whether `(f, f)` is an exact
    /// pair, after confirming that this agrees with `f` being a Conca generator.
    pub fn check_self_pair(&self, f: &AlgElem) -> Result<bool> {
        let e = self.embedding_dim();
        ensure!(
            self.hilbert_series_ring().trimmed() == short_hilbert(e).trimmed(),
            Precondition,
            "Hilbert series is not 1 + {}t + {}t²",
            e,
            e.saturating_sub(1)
        );
        let exact = self.is_exact_pair(f, f).holds();
        let conca = self.is_conca_generator(f)?;
        ensure!(exact == conca, TheoremViolation, "exact pair ({}) disagrees with Conca generator ({})", exact, conca);
        Ok(exact)
    }

    /// Parses nothing; formats an element over the basis labels.
    pub fn format_elem(&self, a: &AlgElem) -> String {
        format_combination(&self.data.labels, &a.coeffs)
    }
}

fn short_hilbert(e: usize) -> TruncatedSeries {
    TruncatedSeries::new(vec![1, e as i64, e as i64 - 1])
}

fn left_matrix(table: &[Vec<Vec<Rat>>], i: usize) -> Mat {
    let d = table.len();
    let mut m = Mat::zeros(d, d);
    for j in 0..d {
        for k in 0..d {
            m[(k, j)] = table[i][j][k].clone();
        }
    }
    m
}

fn monomial_label(vars: &[String], m: &[u32], single_char: bool) -> String {
    let mut parts = Vec::new();
    for (v, &e) in vars.iter().zip(m) {
        match e {
            0 => {}
            1 => parts.push(v.clone()),
            _ => parts.push(format!("{}^{}", v, e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else if single_char {
        parts.concat()
    } else {
        parts.join("*")
    }
}

/// The four inclusions behind `ann(f) = (g)` and `ann(g) = (f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPairCertificate {
    pub f_nonzero: bool,
    pub g_nonzero: bool,
    pub ann_f_in_g: bool,
    pub g_in_ann_f: bool,
    pub ann_g_in_f: bool,
    pub f_in_ann_g: bool,
}

impl ExactPairCertificate {
    pub fn holds(&self) -> bool {
        self.f_nonzero && self.g_nonzero && self.ann_f_in_g && self.g_in_ann_f && self.ann_g_in_f && self.f_in_ann_g
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortRingReport {
    pub e: usize,
    pub hilbert: TruncatedSeries,
    pub hilbert_ok: bool,
    pub fm_is_m2: bool,
    pub gm_is_m2: bool,
    pub f_not_in_m2: bool,
    pub g_not_in_m2: bool,
}

impl ShortRingReport {
    pub fn all_hold(&self) -> bool {
        self.hilbert_ok && self.fm_is_m2 && self.gm_is_m2 && self.f_not_in_m2 && self.g_not_in_m2
    }
}

/// A quotient `Q → Q/I` with its linear projection and a section picking
/// coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub parent: LocalAlgebra,
    pub quotient: LocalAlgebra,
    /// `dim(Q/I) × dim(Q)`
    pub projection: Mat,
    /// `dim(Q) × dim(Q/I)`
    pub section: Mat,
}

impl QuotientData {
    pub fn project(&self, a: &AlgElem) -> AlgElem {
        AlgElem::new(self.projection.apply(&a.coeffs).expect("parent element"))
    }

    pub fn lift(&self, a: &AlgElem) -> AlgElem {
        AlgElem::new(self.section.apply(&a.coeffs).expect("quotient element"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn xy_ring() -> LocalAlgebra {
        LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0], vec![0, 2]]).unwrap()
    }

    #[test]
    fn monomial_basis_order() {
        let q = xy_ring();
        assert_eq!(q.labels(), &names(&["1", "x", "y", "xy"])[..]);
        let k = LocalAlgebra::from_monomial_quotient(&names(&["x"]), &[vec![1]]).unwrap();
        assert_eq!(k.dim(), 1);
        let err = LocalAlgebra::from_monomial_quotient(&names(&["x", "y"]), &[vec![2, 0]]).unwrap_err();
        assert!(matches!(err, Error::NotArtinian(_)));
    }

    #[test]
    fn nilpotency() {
        assert_eq!(xy_ring().validate().unwrap(), 3);
        let k = LocalAlgebra::from_monomial_quotient(&names(&["x"]), &[vec![1]]).unwrap();
        assert_eq!(k.validate().unwrap(), 1);
    }

    #[test]
    fn corrupted_table_names_triple() {
        let q = xy_ring();
        let mut table = q.table().to_vec();
        // x·y := x stays commutative but (x·y)·y = x while x·(y·y) = 0
        table[1][2] = vec![Rat::ZERO, Rat::ONE, Rat::ZERO, Rat::ZERO];
        table[2][1] = table[1][2].clone();
        let err = LocalAlgebra::from_structure_constants(q.labels().to_vec(), table).unwrap_err();
        match err {
            Error::Validation(msg) => assert!(msg.contains("non-associative basis triple"), "{}", msg),
            e => panic!("unexpected {:?}", e),
        }
    }

    #[test]
    fn annihilators_and_exact_pairs() {
        let q = xy_ring();
        let x = q.basis_elem(1);
        assert_eq!(q.annihilator(&q.zero()).dim(), 4);
        assert_eq!(q.annihilator(&q.one()).dim(), 0);
        let ann = q.annihilator(&x);
        assert_eq!(ann, q.principal(&x));
        assert!(ann.contains(&q.basis_elem(3)));
        assert!(q.is_exact_pair(&x, &x).holds());
        assert!(!q.is_exact_pair(&q.one(), &x).holds());
        assert!(!q.is_exact_pair(&q.zero(), &x).holds());
        assert!(!q.is_exact_pair(&q.basis_elem(3), &q.basis_elem(3)).holds());
    }

    #[test]
    fn quotients() {
        let q = xy_ring();
        let same = q.quotient(&q.ideal(&[q.zero()])).unwrap();
        assert_eq!(same.quotient.dim(), 4);
        let r = q.quotient(&q.principal(&q.basis_elem(1))).unwrap();
        assert_eq!(r.quotient.dim(), 2);
        assert_eq!(r.quotient.labels(), &names(&["1", "y"])[..]);
        let k = q.quotient(&q.maximal_ideal()).unwrap();
        assert_eq!(k.quotient.dim(), 1);
        assert!(q.quotient(&q.ideal(&[q.one()])).is_err());
        // projection is multiplicative
        let y = q.basis_elem(2);
        let p = r.project(&q.mul(&y, &y));
        assert_eq!(p, r.quotient.mul(&r.project(&y), &r.project(&y)));
    }

    #[test]
    fn hilbert_series() {
        assert_eq!(xy_ring().hilbert_series_ring().coeffs(), &[1, 2, 1]);
        let k = LocalAlgebra::from_monomial_quotient(&names(&["x"]), &[vec![1]]).unwrap();
        assert_eq!(k.hilbert_series_ring().coeffs(), &[1]);
        let c = LocalAlgebra::from_monomial_quotient(&names(&["x"]), &[vec![3]]).unwrap();
        assert_eq!(c.hilbert_series_ring().coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn conca_and_short_ring_identities() {
        let q = xy_ring();
        let (x, y, xy) = (q.basis_elem(1), q.basis_elem(2), q.basis_elem(3));
        assert!(q.is_conca_generator(&x).unwrap());
        assert!(!q.is_conca_generator(&q.zero()).unwrap());
        assert!(!q.is_conca_generator(&xy).unwrap());
        let rep = q.check_short_ring(&x, &x).unwrap();
        assert_eq!(rep.e, 2);
        assert!(q.check_self_pair(&x).unwrap());
        assert!(q.check_self_pair(&y).unwrap());
        assert!(!q.check_self_pair(&xy).unwrap());
        assert!(matches!(q.check_short_ring(&xy, &xy), Err(Error::Precondition(_))));

        let line = LocalAlgebra::from_monomial_quotient(&names(&["x"]), &[vec![2]]).unwrap();
        let x = line.basis_elem(1);
        let rep = line.check_short_ring(&x, &x).unwrap();
        assert_eq!(rep.e, 1);
        assert_eq!(rep.hilbert.coeffs(), &[1, 1]);
    }

    #[test]
    fn conca_requires_short_ring() {
        let c = LocalAlgebra::from_monomial_quotient(&names(&["x"]), &[vec![4]]).unwrap();
        assert!(matches!(c.is_conca_generator(&c.basis_elem(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn rebasing_moves_the_unit_to_b0() {
        // ℚ[x]/(x²) written in the basis (x, 1+x)
        let labels = names(&["x", "u"]);
        let r = |a: i64, b: i64| vec![Rat::from_int(a), Rat::from_int(b)];
        // x·x = 0, x·u = x, u·u = 1+2x = -1·x + 1·u ... u² = 1 + 2x = u + x
        let table = vec![vec![r(0, 0), r(1, 0)], vec![r(1, 0), r(1, 1)]];
        let alg = LocalAlgebra::from_structure_constants(labels, table).unwrap();
        assert_eq!(alg.dim(), 2);
        assert_eq!(alg.labels()[0], "1");
        assert_eq!(alg.validate().unwrap(), 2);
        assert_eq!(alg.hilbert_series_ring().coeffs(), &[1, 1]);
    }

    #[test]
    fn non_local_table_is_rejected() {
        // ℚ × ℚ
        let r = |a: i64, b: i64| vec![Rat::from_int(a), Rat::from_int(b)];
        let table = vec![vec![r(1, 0), r(0, 0)], vec![r(0, 0), r(0, 1)]];
        let err = LocalAlgebra::from_structure_constants(names(&["e1", "e2"]), table).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }
}
