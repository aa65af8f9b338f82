//! Executes a job for one subcommand and assembles the report.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use ezd_core::eisenbud::{connecting_maps_check, lifting_independence, vanishing_check, vanishing_window_check};
use ezd_core::poincare::{
    check_final_formula, check_koszul_formula, check_n2_formula, check_poincare1, check_poincare2, poincare_series,
    FormulaReport,
};
use ezd_core::resolution::FreeResolution;
use ezd_core::{AlgElem, Error, ErrorKind, ExactPairSetup, FDModule, LocalAlgebra, Pipeline};
use serde_json::json;

use crate::job::{parse_job, resolve, Resolved, TaskDef, TaskKind};
use crate::report::{diagnostic_value, series_value, Report, Section, Status, Timing};
use crate::JobError;

pub const DEFAULT_CAP: usize = 8;
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    CheckEzd,
    Verify,
    Series,
    Tor,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckEzd => "check-ezd",
            Command::Verify => "verify",
            Command::Series => "series",
            Command::Tor => "tor",
        }
    }
}

/// Command-line overrides; `None` falls back to the job file, then to the
/// defaults.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub cap: Option<usize>,
    pub seed: Option<u64>,
    pub tasks: Option<Vec<String>>,
}

pub fn execute(cmd: Command, text: &str, opts: &Options) -> Result<Report, JobError> {
    let start = Instant::now();
    let mut job = parse_job(text)?;
    let cap = opts.cap.or(job.cap).unwrap_or(DEFAULT_CAP);
    let seed = opts.seed.or(job.seed).unwrap_or(DEFAULT_SEED);
    if cap < 4 {
        return Err(JobError::semantic("cap", format!("the degree cap must be at least 4, got {}", cap)));
    }
    let mut seen = BTreeSet::new();
    for t in &job.tasks {
        if !seen.insert(t.id.clone()) {
            return Err(JobError::semantic("tasks", format!("duplicate task id `{}`", t.id)));
        }
    }
    if let Some(ids) = &opts.tasks {
        for id in ids {
            if !seen.contains(id) {
                return Err(JobError::semantic("--tasks", format!("no task with id `{}`", id)));
            }
        }
        job.tasks.retain(|t| ids.contains(&t.id));
    }
    job.tasks.sort_by(|a, b| a.id.cmp(&b.id));
    let res = resolve(&job)?;
    if cmd != Command::CheckEzd && job.tasks.iter().any(|t| t.kind == TaskKind::Pipeline) {
        if res.f.is_none() || res.g.is_none() {
            return Err(JobError::semantic("elements", "pipeline tasks need both f and g"));
        }
    }
    let mut runner = Runner { res: &res, cap, seed, setup: None, pipelines: BTreeMap::new() };
    let sections = match cmd {
        Command::CheckEzd => vec![check_ezd(&res)],
        _ => job.tasks.iter().map(|t| runner.task(cmd, t)).collect(),
    };
    let mut report = Report {
        command: cmd.name().to_string(),
        cap,
        seed,
        ring: ring_summary(&res.q),
        sections,
        status: Status::Pass,
        exit_code: 0,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() },
    };
    report.finish();
    Ok(report)
}

fn ring_summary(q: &LocalAlgebra) -> serde_json::Value {
    let h = q.hilbert_series_ring();
    json!({
        "dim": q.dim(),
        "labels": q.labels(),
        "hilbert": h.to_string(),
        "hilbert_coefficients": h.coeffs(),
        "embedding_dim": q.embedding_dim(),
        "short": q.is_short(),
    })
}

fn check_ezd(res: &Resolved) -> Section {
    let q = &res.q;
    let mut sec = Section::new("ring", "check-ezd", None);
    if q.dim() == 1 {
        sec.note("Q is a field: no exact pairs of zero divisors are possible");
    }
    let Some(f) = &res.f else {
        return sec;
    };
    let g = res.g.clone().unwrap_or_else(|| f.clone());
    sec.put("f", q.format_elem(f));
    sec.put("g", q.format_elem(&g));
    let cert = q.is_exact_pair(f, &g);
    sec.put(
        "exact_pair",
        json!({
            "holds": cert.holds(),
            "f_nonzero": cert.f_nonzero,
            "g_nonzero": cert.g_nonzero,
            "ann_f_in_g": cert.ann_f_in_g,
            "g_in_ann_f": cert.g_in_ann_f,
            "ann_g_in_f": cert.ann_g_in_f,
            "f_in_ann_g": cert.f_in_ann_g,
        }),
    );
    if !cert.holds() {
        sec.raise(Status::Hypothesis);
        sec.note("(f, g) is not an exact pair of zero divisors");
    }
    sec.put("f_in_m2", q.m_power(2).contains(&f.coeffs));
    match q.is_conca_generator(f) {
        Ok(c) => sec.put("conca_generator", c),
        Err(e) => sec.fail(&e),
    }
    if cert.holds() && q.is_short() {
        match q.check_short_ring(f, &g) {
            Ok(r) => {
                sec.check("short_ring.hilbert_form", r.hilbert_ok);
                sec.check("short_ring.fm_is_m2", r.fm_is_m2);
                sec.check("short_ring.gm_is_m2", r.gm_is_m2);
                sec.check("short_ring.f_not_in_m2", r.f_not_in_m2);
                sec.check("short_ring.g_not_in_m2", r.g_not_in_m2);
            }
            Err(e) => sec.fail(&e),
        }
    }
    match q.check_self_pair(f) {
        Ok(exact) => {
            sec.check("short_ring.self_pair_iff_conca", true);
            sec.put("self_pair_exact", exact);
        }
        Err(e) if e.kind() == ErrorKind::Precondition => sec.note(format!("self-pair criterion not applicable: {}", e)),
        Err(e) => sec.fail(&e),
    }
    sec
}

struct Runner<'a> {
    res: &'a Resolved,
    cap: usize,
    seed: u64,
    setup: Option<Result<ExactPairSetup, Error>>,
    pipelines: BTreeMap<(String, u64), Result<Pipeline, Error>>,
}

impl<'a> Runner<'a> {
    fn setup(&mut self) -> Result<ExactPairSetup, Error> {
        let (q, cap) = (&self.res.q, self.cap);
        let f: &AlgElem = self.res.f.as_ref().expect("checked before running");
        let g: &AlgElem = self.res.g.as_ref().expect("checked before running");
        self.setup.get_or_insert_with(|| ExactPairSetup::new(q, f, g, cap)).clone()
    }

    fn pipeline(&mut self, m: &str, seed: u64) -> Result<Pipeline, Error> {
        let setup = self.setup()?;
        let module = self.res.module(m).clone();
        self.pipelines.entry((m.to_string(), seed)).or_insert_with(|| Pipeline::build(&setup, &module, seed)).clone()
    }

    fn task(&mut self, cmd: Command, t: &TaskDef) -> Section {
        let kind = match t.kind {
            TaskKind::Pipeline => "pipeline",
            TaskKind::N2 => "n2",
            TaskKind::Koszul => "koszul",
        };
        let mut sec = Section::new(&t.id, kind, Some(self.cap - 2));
        sec.put("M", &t.m);
        if let Some(n) = &t.n {
            sec.put("N", n);
        }
        match t.kind {
            TaskKind::Pipeline => self.pipeline_task(cmd, t, &mut sec),
            TaskKind::N2 | TaskKind::Koszul => self.formula_task(cmd, t, &mut sec),
        }
        sec
    }

    fn pipeline_task(&mut self, cmd: Command, t: &TaskDef, sec: &mut Section) {
        let p = match self.pipeline(&t.m, self.seed) {
            Ok(p) => p,
            Err(e) => return sec.fail(&e),
        };
        let n_name = t.n.as_deref().expect("pipeline tasks have N");
        let n = self.res.module(n_name).clone();
        let out = match cmd {
            Command::Verify => self.verify(&p, &n, t, sec),
            Command::Series => series(&p, &n, sec),
            Command::Tor => tor(&p, &n, sec),
            Command::CheckEzd => unreachable!("ring-level command"),
        };
        if let Err(e) = out {
            sec.fail(&e);
        }
    }

    fn verify(&mut self, p: &Pipeline, n: &FDModule, t: &TaskDef, sec: &mut Section) -> Result<(), Error> {
        let rr = p.resolution().verify()?;
        sec.check("resolution.d_squared_zero", rr.d_squared_zero);
        sec.check("resolution.augmentation", rr.augmentation_ok);
        sec.check("resolution.acyclic", rr.higher_homology.iter().all(|&d| d == 0));
        sec.check("resolution.leibniz", rr.leibniz);
        sec.check("resolution.l_stable", rr.l_stable);
        let st = p.structure()?;
        for (name, ok) in [
            ("square_identity", st.square_identity),
            ("tau_is_y_component", st.tau_is_y_component),
            ("commutator_in_ann_f", st.commutator_in_ann_f),
            ("tau_chain_map", st.tau_chain_map),
            ("w_squared_zero", st.w_squared_zero),
            ("w_is_cone", st.w_is_cone),
            ("cone_sequence_exact", st.short_exact),
            ("omega_chain_map", st.omega_chain_map),
            ("omega_surjective", st.omega_surjective),
            ("ker_omega_is_l", st.ker_omega_is_l),
            ("ker_omega_dims", st.ker_omega_dims.iter().all(|(a, b)| a == b)),
            ("y2_injective", st.alpha_injective),
            ("y2_image_is_l", st.im_alpha_is_l),
            ("y2_sequence_exact", st.y2_short_exact),
        ] {
            sec.check(&format!("structure.{}", name), ok);
        }
        let rep = p.sequences(n)?;
        sec.check("sequences.first_exact", rep.defects1.is_empty());
        sec.check("sequences.second_exact", rep.defects2.is_empty());
        sec.check("sequences.delta_is_minus_tau", rep.delta_is_minus_tau);
        sec.check("sequences.psi_phi_is_projection", rep.psi_phi_is_projection);
        sec.check("sequences.length_identities", rep.length_identities);
        sec.check("sequences.length_bounds", rep.length_bounds);
        for f in rep.failures() {
            sec.note(f);
        }
        sec.put("nodes_checked", rep.nodes_checked);
        let w = rep.window as usize;
        sec.put("tor_q", &rep.tor_q[..=w]);
        sec.put("tor_r", &rep.tor_r[..=w]);
        sec.put("h_w", &rep.h_w[..=w.min(rep.h_w.len() - 1)]);
        sec.put("rank_delta", rep.delta_ranks());
        sec.put("rank_mu", rep.mu_ranks());
        let p1 = check_poincare1(&rep);
        sec.check("series.poincare1", p1.holds());
        let p2 = check_poincare2(&rep);
        sec.check("series.poincare2", p2.comparison.leq);
        sec.check("series.rank_identity", p2.rank_identity);
        sec.check("series.equality_criterion", p2.comparison.equal == p2.maps_vanish);
        sec.put("poincare2_equality", p2.equality());
        let c = connecting_maps_check(p, n)?;
        if c.applies {
            sec.check("connecting.maps_vanish", c.all_zero);
        } else {
            sec.note(format!("vanishing of the connecting maps not applicable: {}", c.reason.unwrap_or_default()));
        }
        let v = vanishing_check(p, n)?;
        if v.applies {
            sec.check("vanish.tor_q_nu_zero", v.tor_q_nu_zero);
            sec.check("vanish.series_equal", v.series_equal);
        } else {
            sec.note(format!("Tor(M, nu_N) transfer not applicable: {}", v.reason.unwrap_or_default()));
        }
        let fin = check_final_formula(p, n)?;
        formula_checks(sec, "final_formula", &fin);
        if t.independence {
            let p2 = self.pipeline(&t.m, self.seed.wrapping_add(1))?;
            let ind = lifting_independence(p, &p2, n)?;
            sec.check("independence.comparison_chain_map", ind.comparison_chain_map);
            sec.check("independence.comparison_iso", ind.comparison_iso);
            sec.check("independence.commutes", ind.commutes);
            sec.put("liftings_differ", ind.liftings_differ);
        }
        if let Some([m, nn]) = t.vanishing {
            match vanishing_window_check(p, n, m, nn) {
                Ok(r) if r.hypothesis => sec.check("vanishing_window.conclusions", r.conclusions_hold()),
                Ok(_) => {
                    sec.raise(Status::Hypothesis);
                    sec.note(format!("Tor^R_i(M, N) does not vanish for {} <= i <= {}", m, nn));
                }
                Err(e) => sec.fail(&e),
            }
        }
        Ok(())
    }

    fn formula_task(&mut self, cmd: Command, t: &TaskDef, sec: &mut Section) {
        let q = &self.res.q;
        let m = self.res.module(&t.m).clone();
        let w = self.cap - 2;
        let out = (|| -> Result<(), Error> {
            match cmd {
                Command::Tor => {
                    let n = match &t.n {
                        Some(n) => self.res.module(n).clone(),
                        None => FDModule::residue_field(q),
                    };
                    let dims = FreeResolution::minimal(&m, self.cap)?.tor_dims(&n)?;
                    sec.put("tor_q", &dims[..=w]);
                }
                _ => {
                    let rep = match (t.kind, &t.n) {
                        (TaskKind::N2, Some(n)) => check_n2_formula(q, &m, self.res.module(n), self.cap)?,
                        _ => check_koszul_formula(q, &m, self.cap)?,
                    };
                    formula_checks(sec, "formula", &rep);
                    if !rep.applies {
                        sec.raise(Status::Hypothesis);
                    }
                    if cmd == Command::Series {
                        if let Some(c) = &rep.computed {
                            sec.put("P^Q", series_value(c));
                            sec.put("estimates", diagnostic_value(&[("P^Q", c)]));
                        }
                    }
                }
            }
            Ok(())
        })();
        if let Err(e) = out {
            sec.fail(&e);
        }
    }
}

fn formula_checks(sec: &mut Section, name: &str, rep: &FormulaReport) {
    if !rep.applies {
        sec.note(format!("{} not applicable: {}", name, rep.reason.clone().unwrap_or_default()));
        return;
    }
    sec.check(&format!("{}.equality", name), rep.computed.is_some() && rep.computed == rep.formula);
    sec.check(&format!("{}.side_conditions", name), rep.side_conditions);
    if let Some(f) = &rep.formula {
        sec.put(&format!("{}.expected", name), f.coeffs());
    }
}

fn series(p: &Pipeline, n: &FDModule, sec: &mut Section) -> Result<(), Error> {
    let rep = p.sequences(n)?;
    let w = rep.window as usize;
    let pq = poincare_series(&rep.tor_q, w);
    let pr = poincare_series(&rep.tor_r, w);
    sec.put("P^Q", series_value(&pq));
    sec.put("P^R", series_value(&pr));
    sec.put("H_Q", series_value(&p.setup().q().hilbert_series_ring()));
    sec.put("H_M", series_value(&p.module().hilbert_series_module()));
    sec.put("H_N", series_value(&n.hilbert_series_module()));
    let p1 = check_poincare1(&rep);
    sec.check("poincare1", p1.holds());
    sec.put("poincare1_bound", series_value(&p1.rhs));
    let p2 = check_poincare2(&rep);
    sec.check("poincare2", p2.comparison.leq);
    sec.check("poincare2_rank_identity", p2.rank_identity);
    sec.check("poincare2_equality_criterion", p2.comparison.equal == p2.maps_vanish);
    sec.put("poincare2_bound", series_value(&p2.rhs));
    sec.put("poincare2_equality", p2.equality());
    let fin = check_final_formula(p, n)?;
    formula_checks(sec, "final_formula", &fin);
    sec.put("estimates", diagnostic_value(&[("P^Q", &pq), ("P^R", &pr)]));
    Ok(())
}

fn tor(p: &Pipeline, n: &FDModule, sec: &mut Section) -> Result<(), Error> {
    let w = p.setup().window();
    let dims = |hs: Vec<ezd_core::complex::Homology>| hs.iter().take(w + 1).map(|h| h.dim()).collect::<Vec<_>>();
    sec.put("tor_q", dims(p.tor_q(n)?));
    if n.annihilates(p.setup().f()) {
        sec.put("tor_r", dims(p.tor_r(n)?));
    } else {
        sec.raise(Status::Hypothesis);
        sec.note("fN ≠ 0: N is not an R-module, Tor^R is not computed");
    }
    Ok(())
}
