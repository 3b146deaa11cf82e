use super::report::{Report, ReportRow};
use crate::audit::socially_fair_cost;
use crate::bounds::{BoundsError, DsBounds, GfBounds};
use crate::instance::Instance;
use crate::metrics::{cost, ds_violation, gf_violation, pof};
use crate::solution::Solution;
use crate::solvers::{alg_ds, ds_to_gfds, gf_to_gfds, gonzalez, assignment_gf, SolverError};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    ColorBlind,
    AlgGf,
    AlgDs,
    GfToGfds,
    DsToGfds,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::ColorBlind,
        Algorithm::AlgGf,
        Algorithm::AlgDs,
        Algorithm::GfToGfds,
        Algorithm::DsToGfds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::ColorBlind => "color-blind",
            Algorithm::AlgGf => "alg-gf",
            Algorithm::AlgDs => "alg-ds",
            Algorithm::GfToGfds => "gf-to-gfds",
            Algorithm::DsToGfds => "ds-to-gfds",
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

fn default_p() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub k_values: Vec<usize>,
    pub delta: f64,
    pub theta: f64,
    /// Exponent of the socially fair cost.
    #[serde(default = "default_p")]
    pub p: u32,
    pub seed: u64,
}

/// On-disk experiment description: a config plus input and output paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentFile {
    pub input: PathBuf,
    pub output: PathBuf,
    #[serde(flatten)]
    pub config: ExperimentConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingRow {
    pub k: usize,
    pub algorithm: Algorithm,
    pub seconds: f64,
}

/// Post-processing time divided by the time of the stage it post-processes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeRatio {
    pub k: usize,
    pub gf_to_gfds: Option<f64>,
    pub ds_to_gfds: Option<f64>,
}

/// Wall-clock measurements, kept apart from the reproducible report.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub rows: Vec<TimingRow>,
    pub ratios: Vec<RuntimeRatio>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub report: Report,
    pub timings: Timings,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

struct Ctx<'a> {
    inst: &'a Instance,
    gfb: &'a GfBounds,
    dsb: Option<&'a DsBounds>,
    p: u32,
    blind_cost: Option<f64>,
}

impl Ctx<'_> {
    fn row(&self, k: usize, algorithm: Algorithm, out: &Result<Solution, SolverError>) -> ReportRow {
        let mut row = ReportRow {
            k,
            algorithm,
            status: "ok".into(),
            message: None,
            cost: None,
            pof: None,
            gf_violation: None,
            ds_violation: None,
            centers: None,
            inactive_centers: None,
            socially_fair_cost: None,
        };
        match out {
            Ok(sol) => {
                let c = cost(self.inst, sol);
                row.cost = Some(c);
                row.pof = self.blind_cost.map(|b| pof(c, b));
                row.gf_violation = Some(gf_violation(self.inst, self.gfb, sol));
                row.ds_violation = self.dsb.map(|d| ds_violation(sol, d, self.inst));
                row.centers = Some(sol.active_centers().len());
                row.inactive_centers = Some(sol.inactive_centers().len());
                row.socially_fair_cost = Some(socially_fair_cost(self.inst, sol, self.p));
            }
            Err(e) => {
                row.status = if e.is_infeasible() { "infeasible" } else { "error" }.into();
                row.message = Some(e.to_string());
            }
        }
        row
    }
}

/// Runs the five algorithms for every `k` with bounds derived from
/// `delta` and `theta`.
///
/// Failures of single algorithms are recorded in their rows. Invalid
/// proportion bounds abort the run since they affect every row.
pub fn run_experiment(inst: &Instance, cfg: &ExperimentConfig) -> Result<ExperimentOutcome, BoundsError> {
    let gfb = GfBounds::from_delta(inst, cfg.delta)?;
    if !(0.0..=1.0).contains(&cfg.theta) {
        return Err(BoundsError::Parameter {
            name: "theta",
            value: cfg.theta,
        });
    }
    let mut rows = Vec::new();
    let mut timings = Timings::default();
    for &k in &cfg.k_values {
        let dsb = DsBounds::from_theta(inst, k, cfg.theta);
        let ds_err = |e: &BoundsError| Err(SolverError::Bounds(e.clone()));

        let (blind, t_blind) = timed(|| gonzalez(inst, k, Some(cfg.seed)));
        let (gf, t_gf) = timed(|| {
            blind
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|b| assignment_gf(inst, b.centers(), &gfb))
                .map(|fa| fa.solution)
        });
        let t_gf = t_gf + t_blind;
        let (ds, t_ds) = timed(|| match &dsb {
            Ok(d) => alg_ds(inst, d),
            Err(e) => ds_err(e),
        });
        let (gf_post, t_gf_post) = timed(|| match (&gf, &dsb) {
            (Ok(s), Ok(d)) => gf_to_gfds(inst, s, &gfb, d).map(|o| o.solution),
            (Err(e), _) => Err(e.clone()),
            (_, Err(e)) => ds_err(e),
        });
        let (ds_post, t_ds_post) = timed(|| match (&ds, &dsb) {
            (Ok(s), Ok(d)) => ds_to_gfds(inst, s, &gfb, d).map(|o| o.solution),
            (Err(e), _) => Err(e.clone()),
            (_, Err(e)) => ds_err(e),
        });

        let ctx = Ctx {
            inst,
            gfb: &gfb,
            dsb: dsb.as_ref().ok(),
            p: cfg.p,
            blind_cost: blind.as_ref().ok().map(|b| cost(inst, b)),
        };
        let results = [
            (Algorithm::ColorBlind, &blind, t_blind),
            (Algorithm::AlgGf, &gf, t_gf),
            (Algorithm::AlgDs, &ds, t_ds),
            (Algorithm::GfToGfds, &gf_post, t_gf + t_gf_post),
            (Algorithm::DsToGfds, &ds_post, t_ds + t_ds_post),
        ];
        for (algorithm, out, seconds) in results {
            rows.push(ctx.row(k, algorithm, out));
            timings.rows.push(TimingRow { k, algorithm, seconds });
        }
        let ratio = |post: &Result<Solution, SolverError>, t_post: f64, t_base: f64| {
            (post.is_ok() && t_base > 0.0).then(|| t_post / t_base)
        };
        timings.ratios.push(RuntimeRatio {
            k,
            gf_to_gfds: ratio(&gf_post, t_gf_post, t_gf),
            ds_to_gfds: ratio(&ds_post, t_ds_post, t_ds),
        });
    }
    let report = Report {
        n: inst.n(),
        m: inst.m(),
        color_counts: inst.color_counts(),
        delta: cfg.delta,
        theta: cfg.theta,
        p: cfg.p,
        seed: cfg.seed,
        k_values: cfg.k_values.clone(),
        rows,
    };
    Ok(ExperimentOutcome { report, timings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_random;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
        }
        assert!("alg-xx".parse::<Algorithm>().is_err());
    }

    #[test]
    fn small_run_has_every_row() {
        let inst = gen_random(30, 2, 2, &[0.6, 0.4], 5).unwrap();
        let cfg = ExperimentConfig {
            k_values: vec![2, 3],
            delta: 0.2,
            theta: 0.8,
            p: 1,
            seed: 1,
        };
        let out = run_experiment(&inst, &cfg).unwrap();
        assert_eq!(out.report.rows.len(), 10);
        for &k in &cfg.k_values {
            let blind = out.report.row(k, Algorithm::ColorBlind).unwrap();
            assert_eq!(blind.pof, Some(1.0));
            for a in [Algorithm::GfToGfds, Algorithm::DsToGfds] {
                let r = out.report.row(k, a).unwrap();
                assert_eq!(r.status, "ok", "{a:?} at k={k}: {:?}", r.message);
                assert_eq!(r.ds_violation, Some(0));
            }
        }
        assert_eq!(out.timings.rows.len(), 10);
    }
}
