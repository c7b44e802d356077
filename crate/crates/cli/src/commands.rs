use deformed_coulomb::ladder::{energy, enumerate_bound_states, leading_levels, BoundStateKey, Spectrum, SpectrumEntry};
use deformed_coulomb::verify::{run_checks, VerifyOptions};
use deformed_coulomb::wavefn::norm_audit;
use deformed_coulomb::{radial_state, Error};

use crate::config::{Cli, Command, RunConfig, WavefnArgs};
use crate::output::{
    emit, env_output_dir, fmt_num, ordering_doc, render, resolve_target, round12, CheckDoc, CountsDoc, SampleDoc,
    SpectrumDoc, StateDoc, VerifyDoc, WavefnDoc,
};
use crate::CliError;

pub const INFINITE_BANNER: &str = "infinite spectrum (alpha=0)";

const DEFAULT_SAMPLES: usize = 200;

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = RunConfig::from_args(&cli.global)?;
    let (bytes, outcome) = match &cli.command {
        Command::Spectrum => {
            let doc = spectrum(&cfg);
            if let Some(banner) = &doc.banner {
                eprintln!("{banner}");
            }
            (render(&doc, cfg.format)?, Ok(()))
        }
        Command::Wavefn(args) => (render(&wavefn(&cfg, args)?, cfg.format)?, Ok(())),
        Command::Verify => {
            let doc = verify(&cfg)?;
            let outcome = match doc.checks.iter().find(|c| !c.passed) {
                Some(c) => Err(CliError::Verification(format!(
                    "first failing check {}: measured {} > tolerance {}",
                    c.name,
                    fmt_num(c.measured.unwrap_or(f64::INFINITY)),
                    fmt_num(c.tolerance)
                ))),
                None => Ok(()),
            };
            (render(&doc, cfg.format)?, outcome)
        }
    };
    let env_dir = env_output_dir();
    let target = resolve_target(cfg.output.as_deref(), env_dir.as_deref(), cli.command.name(), cfg.format);
    emit(&bytes, target.as_deref())?;
    outcome
}

fn state_doc(e: &SpectrumEntry) -> StateDoc {
    StateDoc {
        n: e.key.n(),
        k: e.key.k,
        l: e.key.l,
        energy: round12(e.energy),
        g_k: round12(e.g_k),
        s_k: round12(e.s_k),
    }
}

/// Bound-state table sorted by energy, or the first `levels` levels with a
/// banner when `alpha = 0`.
pub fn spectrum(cfg: &RunConfig) -> SpectrumDoc {
    let (states, banner, l_max, counts) = match enumerate_bound_states(&cfg.model, cfg.picture) {
        Spectrum::Finite(table) => {
            let per_l = table.l_max.map_or(Vec::new(), |l| (0..=l).map(|l| table.count_for_l(l)).collect());
            let counts = CountsDoc {
                total: table.len(),
                per_l,
            };
            (table.sorted_by_energy(), None, table.l_max, Some(counts))
        }
        Spectrum::Infinite => (
            leading_levels(&cfg.model, cfg.picture, cfg.levels),
            Some(INFINITE_BANNER.to_string()),
            None,
            None,
        ),
    };
    SpectrumDoc {
        picture: cfg.picture.name().into(),
        z: round12(cfg.model.z()),
        alpha: round12(cfg.model.alpha()),
        ordering: ordering_doc(cfg.picture),
        banner,
        states: states.iter().map(state_doc).collect(),
        l_max,
        counts,
    }
}

fn unbound_message(k: u32, l: u32, lhs: u64, bound: f64) -> String {
    let inequality = if k == 0 {
        "(l+1)(2l+1)"
    } else {
        "(l+k+1)^2 + l(l+1)"
    };
    format!("(k={k}, l={l}) is not a bound state: {inequality} = {lhs} ≥ {}", fmt_num(bound))
}

fn sample_points(cfg: &RunConfig, args: &WavefnArgs, n: u32) -> Result<Vec<f64>, CliError> {
    if !args.rho.is_empty() {
        if let Some(bad) = args.rho.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return Err(CliError::Config(format!("sample points must be positive and finite, got {bad}")));
        }
        return Ok(args.rho.clone());
    }
    let count = cfg.n_points.unwrap_or(DEFAULT_SAMPLES);
    let rho_max = cfg.rho_max.unwrap_or_else(|| (8.0 * f64::from(n * n) / cfg.model.z()).max(10.0));
    Ok((1..=count).map(|i| rho_max * i as f64 / count as f64).collect())
}

/// Samples of `R_kl` on the requested points, with `∫ R^2 dρ`.
pub fn wavefn(cfg: &RunConfig, args: &WavefnArgs) -> Result<WavefnDoc, CliError> {
    let key = BoundStateKey::new(args.k, args.l);
    let state = radial_state(&cfg.model, cfg.picture, key).map_err(|e| match e {
        Error::NotBound { k, l, lhs, bound } => CliError::Unbound(unbound_message(k, l, lhs, bound)),
        other => CliError::Config(other.to_string()),
    })?;
    let rho = sample_points(cfg, args, key.n())?;
    let samples = rho
        .iter()
        .map(|&r| {
            let value = state.eval(r).map_err(|e| CliError::Config(e.to_string()))?;
            Ok(SampleDoc {
                rho: round12(r),
                value: round12(value),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let audit = norm_audit(&state).map_err(|e| CliError::Config(e.to_string()))?;
    let e = energy(&cfg.model, cfg.picture, key).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(WavefnDoc {
        picture: cfg.picture.name().into(),
        z: round12(cfg.model.z()),
        alpha: round12(cfg.model.alpha()),
        ordering: ordering_doc(cfg.picture),
        n: key.n(),
        k: key.k,
        l: key.l,
        energy: round12(e),
        norm_audit: round12(audit),
        samples,
    })
}

/// Runs the check suite; the report order is fixed.
pub fn verify(cfg: &RunConfig) -> Result<VerifyDoc, CliError> {
    let options = VerifyOptions {
        tolerance_scale: cfg.tolerance_scale,
        min_points: cfg.min_points()?,
    };
    let checks: Vec<CheckDoc> = run_checks(&cfg.model, cfg.picture, &options)
        .into_iter()
        .map(|c| CheckDoc {
            name: c.name.into(),
            measured: c.measured.is_finite().then(|| round12(c.measured)),
            tolerance: round12(c.tolerance),
            passed: c.passed,
        })
        .collect();
    Ok(VerifyDoc {
        picture: cfg.picture.name().into(),
        z: round12(cfg.model.z()),
        alpha: round12(cfg.model.alpha()),
        ordering: ordering_doc(cfg.picture),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
