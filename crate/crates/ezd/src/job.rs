//! Job files: a JSON document naming a ring, the elements `f` and `g`,
//! a set of modules and a list of tasks.
//!
//! ```json
//! {
//!   "ring": { "monomial": { "vars": ["x", "y"], "relations": ["x^2", "y^2"] } },
//!   "elements": { "f": "x", "g": "x" },
//!   "modules": { "Ry": { "quotient": ["x", "y"] } },
//!   "tasks": [ { "id": "kk", "M": "k", "N": "k" } ],
//!   "cap": 8,
//!   "seed": 0
//! }
//! ```
//!
//! Rationals are written as strings `"p/q"`. Module names `k`, `R`, `S`,
//! `Q` and `m` are builtins and need no definition.

use std::collections::{BTreeMap, BTreeSet};

use ezd_core::{AlgElem, FDModule, LocalAlgebra, Mat, Rat};
use serde::Deserialize;

use crate::JobError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub ring: RingDef,
    #[serde(default)]
    pub elements: Option<Elements>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleEntry>,
    #[serde(default)]
    pub tasks: Vec<TaskDef>,
    #[serde(default)]
    pub cap: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum RingDef {
    /// `ℚ[vars]/(monomials)`; must be Artinian.
    Monomial { vars: Vec<String>, relations: Vec<MonomialDef> },
    /// `table[i][j]` holds the coordinates of `b_i b_j`.
    Table { labels: Vec<String>, table: Vec<Vec<Vec<String>>> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MonomialDef {
    Exponents(Vec<u32>),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Elements {
    pub f: String,
    #[serde(default)]
    pub g: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ModuleEntry {
    Named(String),
    Built(ModuleDef),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ModuleDef {
    /// `Q/(a₁, …, a_r)`.
    Quotient(Vec<String>),
    /// Direct sum of other modules.
    Sum(Vec<String>),
    /// `N/mN` of another module.
    Top(String),
    /// Explicit action matrices, one per basis element of the ring named by
    /// `over` (`Q`, `R` or `S`); modules over `R` or `S` are restricted to `Q`.
    Action {
        dim: usize,
        matrices: Vec<Vec<Vec<String>>>,
        #[serde(default)]
        over: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    /// The full construction over an exact pair.
    #[default]
    Pipeline,
    /// The closed formula over a ring with `m² = 0`.
    N2,
    /// `P^Q_M = H_M(−t)/H_Q(−t)` for Koszul modules.
    Koszul,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDef {
    pub id: String,
    #[serde(default)]
    pub kind: TaskKind,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "N", default)]
    pub n: Option<String>,
    /// Also compare against a second lifting built from `seed + 1`.
    #[serde(default)]
    pub independence: bool,
    /// Check the consequences of `Tor^R_i = 0` for `m ≤ i ≤ n`.
    #[serde(default)]
    pub vanishing: Option<[usize; 2]>,
}

/// Parses a job, reporting syntax errors by byte offset.
pub fn parse_job(text: &str) -> Result<JobFile, JobError> {
    serde_json::from_str(text).map_err(|e| {
        let offset = byte_offset(text, e.line(), e.column());
        JobError::Parse { offset, line: e.line(), column: e.column(), message: strip_position(&e.to_string()) }
    })
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    (start + column.saturating_sub(1)).min(text.len())
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn parse_rat(s: &str, path: &str) -> Result<Rat, JobError> {
    s.trim().parse::<Rat>().map_err(|_| JobError::semantic(path, format!("`{}` is not a rational number", s)))
}

pub fn build_ring(def: &RingDef) -> Result<LocalAlgebra, JobError> {
    match def {
        RingDef::Monomial { vars, relations } => {
            let rels = relations
                .iter()
                .enumerate()
                .map(|(i, r)| match r {
                    MonomialDef::Exponents(e) if e.len() == vars.len() => Ok(e.clone()),
                    MonomialDef::Exponents(e) => Err(JobError::semantic(
                        &format!("ring.monomial.relations[{}]", i),
                        format!("{} exponents for {} variables", e.len(), vars.len()),
                    )),
                    MonomialDef::Text(t) => parse_monomial(vars, t, &format!("ring.monomial.relations[{}]", i)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(LocalAlgebra::from_monomial_quotient(vars, &rels)?)
        }
        RingDef::Table { labels, table } => {
            let parsed = table
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| {
                            v.iter()
                                .map(|c| parse_rat(c, &format!("ring.table[{}][{}]", i, j)))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(LocalAlgebra::from_structure_constants(labels.clone(), parsed)?)
        }
    }
}

/// `x^2*y` style monomials; single-letter variables may be juxtaposed (`x^2y`).
fn parse_monomial(vars: &[String], text: &str, path: &str) -> Result<Vec<u32>, JobError> {
    let mut exps = vec![0u32; vars.len()];
    let bad = |why: &str| JobError::semantic(path, format!("cannot read monomial `{}`: {}", text, why));
    let single = vars.iter().all(|v| v.chars().count() == 1);
    for factor in text.split('*').map(str::trim) {
        if factor.is_empty() || factor == "1" {
            continue;
        }
        let mut pieces: Vec<(String, u32)> = Vec::new();
        if let Some((base, exp)) = split_power(factor) {
            if let Some(i) = vars.iter().position(|v| *v == base) {
                exps[i] += exp;
                continue;
            }
        }
        if !single {
            return Err(bad(&format!("unknown variable or exponent in `{}`", factor)));
        }
        // juxtaposed single-letter variables, each with an optional ^e
        let chars: Vec<char> = factor.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let v = chars[k].to_string();
            k += 1;
            let mut e = 1;
            if k < chars.len() && chars[k] == '^' {
                let start = k + 1;
                k = start;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..k].iter().collect();
                e = digits.parse().map_err(|_| bad("bad exponent"))?;
            }
            pieces.push((v, e));
        }
        for (v, e) in pieces {
            let i = vars.iter().position(|w| *w == v).ok_or_else(|| bad(&format!("unknown variable `{}`", v)))?;
            exps[i] += e;
        }
    }
    Ok(exps)
}

fn split_power(factor: &str) -> Option<(String, u32)> {
    match factor.split_once('^') {
        Some((b, e)) if !b.contains('^') => e.parse().ok().map(|e| (b.to_string(), e)),
        Some(_) => None,
        None => Some((factor.to_string(), 1)),
    }
}

/// Linear combinations of basis labels: `x`, `2*x - 1/2*xy`, `3`.
pub fn parse_elem(q: &LocalAlgebra, text: &str, path: &str) -> Result<AlgElem, JobError> {
    let mut coeffs = vec![Rat::zero(); q.dim()];
    let bad = |why: String| JobError::semantic(path, format!("cannot read element `{}`: {}", text, why));
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '+' || ch == '-' {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.trim().is_empty() {
        return Err(bad(String::from("empty term")));
    }
    terms.push((neg, cur));
    for (neg, term) in terms {
        let term = term.trim();
        let (c, idx) = if let Some(i) = label_index(q, term) {
            (Rat::one(), i)
        } else if let Ok(c) = term.parse::<Rat>() {
            (c, 0)
        } else if let Some((c, l)) = term.split_once('*') {
            let c = c.trim().parse::<Rat>().map_err(|_| bad(format!("bad coefficient `{}`", c)))?;
            let i = label_index(q, l.trim()).ok_or_else(|| bad(format!("unknown basis label `{}`", l.trim())))?;
            (c, i)
        } else {
            return Err(bad(format!("unknown basis label `{}`", term)));
        };
        let c = if neg { -c } else { c };
        coeffs[idx] += c;
    }
    Ok(AlgElem::new(coeffs))
}

fn label_index(q: &LocalAlgebra, s: &str) -> Option<usize> {
    q.labels().iter().position(|l| l == s)
}

/// The ring, its elements and every module a job refers to.
pub struct Resolved {
    pub q: LocalAlgebra,
    pub f: Option<AlgElem>,
    pub g: Option<AlgElem>,
    pub modules: BTreeMap<String, FDModule>,
}

impl Resolved {
    pub fn module(&self, name: &str) -> &FDModule {
        &self.modules[name]
    }
}

pub const BUILTINS: [&str; 5] = ["k", "R", "S", "Q", "m"];

pub fn resolve(job: &JobFile) -> Result<Resolved, JobError> {
    let q = build_ring(&job.ring)?;
    let (f, g) = match &job.elements {
        Some(e) => {
            let f = parse_elem(&q, &e.f, "elements.f")?;
            let g = e.g.as_deref().map(|g| parse_elem(&q, g, "elements.g")).transpose()?;
            (Some(f), g)
        }
        None => (None, None),
    };
    let mut out = Resolved { q, f, g, modules: BTreeMap::new() };
    for name in BUILTINS {
        if job.modules.contains_key(name) {
            return Err(JobError::semantic(&format!("modules.{}", name), "redefines a builtin module"));
        }
    }
    let mut wanted: BTreeSet<String> = job.modules.keys().cloned().collect();
    for (i, t) in job.tasks.iter().enumerate() {
        wanted.insert(t.m.clone());
        if let Some(n) = &t.n {
            wanted.insert(n.clone());
        }
        if t.kind == TaskKind::Pipeline && t.n.is_none() {
            return Err(JobError::semantic(&format!("tasks[{}]", i), "a pipeline task needs both M and N"));
        }
        if t.kind == TaskKind::N2 && t.n.is_none() {
            return Err(JobError::semantic(&format!("tasks[{}]", i), "an n2 task needs both M and N"));
        }
    }
    for name in wanted {
        let mut stack = Vec::new();
        resolve_module(job, &mut out, &name, &mut stack)?;
    }
    Ok(out)
}

fn resolve_module(
    job: &JobFile,
    out: &mut Resolved,
    name: &str,
    stack: &mut Vec<String>,
) -> Result<FDModule, JobError> {
    if let Some(m) = out.modules.get(name) {
        return Ok(m.clone());
    }
    let path = format!("modules.{}", name);
    if stack.iter().any(|s| s == name) {
        return Err(JobError::semantic(&path, "module definitions form a cycle"));
    }
    stack.push(name.to_string());
    let q = out.q.clone();
    let built = match (name, job.modules.get(name)) {
        ("k", _) => FDModule::residue_field(&q),
        ("Q", _) => FDModule::regular(&q),
        ("m", _) => FDModule::maximal_ideal(&q)?,
        ("R", _) => FDModule::cyclic(&q, &q.principal(need(&out.f, "R", "f")?))?,
        ("S", _) => {
            let f = need(&out.f, "S", "f")?.clone();
            let g = need(&out.g, "S", "g")?.clone();
            FDModule::cyclic(&q, &q.ideal(&[f, g]))?
        }
        (_, None) => return Err(JobError::semantic("modules", format!("unknown module `{}`", name))),
        (_, Some(ModuleEntry::Named(other))) => resolve_module(job, out, other, stack)?,
        (_, Some(ModuleEntry::Built(def))) => match def {
            ModuleDef::Quotient(gens) => {
                let gens = gens
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_elem(&q, s, &format!("{}.quotient[{}]", path, i)))
                    .collect::<Result<Vec<_>, _>>()?;
                FDModule::cyclic(&q, &q.ideal(&gens))?
            }
            ModuleDef::Sum(parts) => {
                let parts = parts.iter().map(|p| resolve_module(job, out, p, stack)).collect::<Result<Vec<_>, _>>()?;
                FDModule::direct_sum_of(&q, &parts)
            }
            ModuleDef::Top(inner) => resolve_module(job, out, inner, stack)?.projection_pi()?.0,
            ModuleDef::Action { dim, matrices, over } => {
                let base = match over.as_deref().unwrap_or("Q") {
                    "Q" => None,
                    "R" => Some(q.quotient(&q.principal(need(&out.f, "an R-module", "f")?))?),
                    "S" => {
                        let f = need(&out.f, "an S-module", "f")?.clone();
                        let g = need(&out.g, "an S-module", "g")?.clone();
                        Some(q.quotient(&q.ideal(&[f, g]))?)
                    }
                    other => {
                        return Err(JobError::semantic(&path, format!("`over` must be Q, R or S, not `{}`", other)))
                    }
                };
                let alg = base.as_ref().map_or(&q, |b| &b.quotient);
                let mats = matrices
                    .iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(m, *dim, &format!("{}.action.matrices[{}]", path, i)))
                    .collect::<Result<Vec<_>, _>>()?;
                let m = FDModule::new(alg, *dim, mats)?;
                match base {
                    Some(b) => m.restrict_scalars(&b)?,
                    None => m,
                }
            }
        },
    };
    stack.pop();
    out.modules.insert(name.to_string(), built.clone());
    Ok(built)
}

fn need<'a>(e: &'a Option<AlgElem>, what: &str, which: &str) -> Result<&'a AlgElem, JobError> {
    e.as_ref().ok_or_else(|| JobError::semantic("elements", format!("{} needs the element {}", what, which)))
}

fn parse_matrix(rows: &[Vec<String>], dim: usize, path: &str) -> Result<Mat, JobError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(JobError::semantic(path, format!("expected a {}×{} matrix", dim, dim)));
    }
    let mut m = Mat::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            m[(i, j)] = parse_rat(c, &format!("{}[{}][{}]", path, i, j))?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> LocalAlgebra {
        let def: RingDef =
            serde_json::from_str(r#"{"monomial": {"vars": ["x", "y"], "relations": ["x^2", [0, 2]]}}"#).unwrap();
        build_ring(&def).unwrap()
    }

    #[test]
    fn monomial_text_forms() {
        let vars = vec!["x".to_string(), "y".to_string()];
        assert_eq!(parse_monomial(&vars, "x^2y", "p").unwrap(), vec![2, 1]);
        assert_eq!(parse_monomial(&vars, "x*y^3", "p").unwrap(), vec![1, 3]);
        assert!(parse_monomial(&vars, "z", "p").is_err());
        let long = vec!["u1".to_string(), "u2".to_string()];
        assert_eq!(parse_monomial(&long, "u1^2*u2", "p").unwrap(), vec![2, 1]);
    }

    #[test]
    fn elements() {
        let q = ring();
        let e = parse_elem(&q, "2*x - 1/2*xy + 3", "e").unwrap();
        assert_eq!(e.coeffs, vec![Rat::from_int(3), Rat::from_int(2), Rat::zero(), Rat::new(-1, 2)]);
        assert_eq!(parse_elem(&q, "-y", "e").unwrap(), q.basis_elem(2).neg());
        assert!(parse_elem(&q, "x +", "e").is_err());
        assert!(parse_elem(&q, "z", "e").is_err());
    }

    #[test]
    fn parse_error_offset() {
        let text = "{\n  \"ring\": ,\n}";
        match parse_job(text) {
            Err(JobError::Parse { offset, line, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(&text[offset..offset + 1], ",");
            }
            other => panic!("{:?}", other.err()),
        }
    }

    #[test]
    fn module_definitions() {
        let job = parse_job(
            r#"{"ring": {"monomial": {"vars": ["x", "y"], "relations": ["x^2", "y^2"]}},
                "elements": {"f": "x", "g": "x"},
                "modules": {"A": {"quotient": ["x", "y"]}, "B": {"sum": ["A", "R"]}, "C": {"top": "Q"},
                            "D": {"action": {"dim": 1, "over": "R", "matrices": [[["1"]], [["0"]]]}}},
                "tasks": [{"id": "t", "M": "B", "N": "S"}]}"#,
        )
        .unwrap();
        let r = resolve(&job).unwrap();
        assert_eq!(r.module("A").dim(), 1);
        assert_eq!(r.module("B").dim(), 3);
        assert_eq!(r.module("C").dim(), 1);
        assert_eq!(r.module("D").dim(), 1);
        assert_eq!(r.module("S").dim(), 2);
    }

    #[test]
    fn cyclic_definitions_rejected() {
        let job = parse_job(
            r#"{"ring": {"monomial": {"vars": ["x"], "relations": ["x^2"]}},
                "modules": {"A": {"sum": ["B"]}, "B": {"sum": ["A"]}}}"#,
        )
        .unwrap();
        assert!(matches!(resolve(&job), Err(JobError::Semantic { .. })));
    }
}
