use std::fmt::Write as _;

use serde_json::json;
use xop_core::io::{eigenfunctions_csv, gram_csv, polynomial_csv, potential_csv, spectrum_csv};
use xop_core::poly::{classical_eigenpair, gram_matrix, x1_polynomial};
use xop_core::spectral::{isospectral_compare, solve_extrapolated, GridPolicy, Tolerances};
use xop_core::systems::{Variant, WaveKind};
use xop_core::{FamilySpec, PotentialFn, QuadratureScheme, SystemParams, VerificationReport, Wavefunction};

use crate::config::{parse_system, tolerance_scale, Format, RunConfig};
use crate::output::{emit, json, write_atomic};
use crate::{EvalPolyArgs, Failure, GramArgs, PlotDataArgs, SpectrumArgs, VerifyArgs, WaveVariant};

fn parse_family(s: &str) -> Result<FamilySpec, Failure> {
    let fam: FamilySpec = serde_json::from_str(s).map_err(|e| Failure::Usage(format!("invalid family JSON: {e}")))?;
    fam.validate()?;
    Ok(fam)
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
fn linspace(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>, Failure> {
    if count < 2 {
        return Err(Failure::Usage(format!("need at least 2 points, got {count}")));
    }
    let step = (hi - lo) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| if i + 1 == count { hi } else { lo + step * i as f64 })
        .collect())
}

pub fn eval_poly(a: &EvalPolyArgs) -> Result<(), Failure> {
    let family = parse_family(&a.family)?;
    let pair = if family.is_exceptional() {
        x1_polynomial(&family, a.degree)?
    } else {
        classical_eigenpair(&family, a.degree)?
    };
    let xs = match &a.at {
        Some(xs) => xs.clone(),
        None => {
            let default = if family.is_laguerre_type() {
                (0.0, 10.0)
            } else {
                (-1.0, 1.0)
            };
            let (lo, hi) = a.range.unwrap_or(default);
            linspace(lo, hi, a.points)?
        }
    };
    if let Some(bad) = xs.iter().find(|x| !x.is_finite()) {
        return Err(Failure::Usage(format!("sample point {bad} is not finite")));
    }
    let text = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => polynomial_csv(&pair.polynomial, &xs),
        Format::Json => json(&json!({
            "family": family,
            "degree": a.degree,
            "eigenvalue": pair.eigenvalue,
            "coefficients": pair.polynomial,
            "x": xs,
            "value": xs.iter().map(|&x| pair.polynomial.eval(x)).collect::<Vec<_>>(),
        })),
    };
    emit(&text, a.output.out.as_deref())
}

fn summary_line(outcome: &Result<VerificationReport, Failure>, system: &SystemParams) -> String {
    match outcome {
        Ok(r) => format!(
            "{} {} levels={} max_abs_diff={:.3e} tol={:.1e} extrapolation={:.1e} residual={:.3e} gram={:.3e}",
            if r.passed { "PASS" } else { "FAIL" },
            system.slug(),
            r.level_count,
            r.max_spectral_diff,
            system.spectral_tolerance(&r.tolerances),
            r.extrapolation_error,
            r.max_wavefunction_residual,
            r.gram_max_offdiag
        ),
        Err(Failure::Usage(m) | Failure::Verification(m)) => format!("ERROR {} {m}", system.slug()),
    }
}

fn report_text(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => spectrum_csv(report),
    }
}

pub fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    let mut cfg = RunConfig::load(a.config.as_deref())?;
    if let Some(s) = &a.system {
        let sys = parse_system(s)?;
        cfg.grid.domains.retain(|k, _| *k == sys.slug());
        cfg.systems = vec![sys];
    }
    if let Some(l) = a.levels {
        cfg.levels = l;
    }
    if let Some(p) = a.grid_points {
        cfg.grid.points = Some(p);
    }
    if let Some(f) = a.output.format {
        cfg.output.format = f;
    }
    if let Some(o) = &a.output.out {
        cfg.output.path = Some(o.clone());
    }
    cfg.validate()?;
    let tol = cfg.effective_tolerances()?;
    let dir = cfg.output.path.as_deref();
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    let format = cfg.output.format;
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let outcomes: Vec<Result<VerificationReport, Failure>> = std::thread::scope(|scope| {
        let workers: Vec<_> = cfg
            .systems
            .iter()
            .map(|sys| {
                let (cfg, tol) = (&cfg, &tol);
                scope.spawn(move || {
                    let report = isospectral_compare(sys, cfg.levels, &cfg.policy_for(sys), tol)?;
                    if let Some(dir) = dir {
                        write_atomic(
                            &dir.join(format!("{}.{ext}", sys.slug())),
                            &report_text(&report, format),
                        )?;
                    }
                    Ok(report)
                })
            })
            .collect();
        workers
            .into_iter()
            .map(|w| w.join().expect("verification worker panicked"))
            .collect()
    });

    let mut summary = String::new();
    for (sys, outcome) in cfg.systems.iter().zip(&outcomes) {
        writeln!(summary, "{}", summary_line(outcome, sys)).expect("writing to a String");
    }
    let passed = outcomes.iter().filter(|o| matches!(o, Ok(r) if r.passed)).count();
    writeln!(summary, "verified {passed}/{} systems", outcomes.len()).expect("writing to a String");
    if dir.is_some() {
        emit(&summary, None)?;
    } else {
        eprint!("{summary}");
        let reports: Vec<&VerificationReport> = outcomes.iter().filter_map(|o| o.as_ref().ok()).collect();
        let text = match format {
            Format::Json => json(&reports),
            Format::Csv => {
                let mut t = String::from("system,level,E_original,E_extended,abs_diff\n");
                for r in &reports {
                    for line in spectrum_csv(r).lines().skip(1) {
                        writeln!(t, "{},{line}", r.system.slug()).expect("writing to a String");
                    }
                }
                t
            }
        };
        emit(&text, None)?;
    }

    if let Some(Err(Failure::Usage(m))) = outcomes.iter().find(|o| matches!(o, Err(Failure::Usage(_)))) {
        return Err(Failure::Usage(m.clone()));
    }
    if passed < outcomes.len() {
        return Err(Failure::Verification(format!(
            "{} of {} systems failed verification",
            outcomes.len() - passed,
            outcomes.len()
        )));
    }
    Ok(())
}

pub fn spectrum(a: &SpectrumArgs) -> Result<(), Failure> {
    let sys = parse_system(&a.system)?;
    let (tol, mut policy) = match &a.config {
        Some(path) => {
            let cfg = RunConfig::load(Some(path))?;
            cfg.validate()?;
            (cfg.effective_tolerances()?, cfg.policy_for(&sys))
        }
        None => (Tolerances::default().scaled(tolerance_scale()?), GridPolicy::default()),
    };
    if a.grid_points.is_some() {
        policy.points = a.grid_points;
    }
    let report = isospectral_compare(&sys, a.levels, &policy, &tol)?;
    let text = report_text(&report, a.output.format.unwrap_or(Format::Csv));
    emit(&text, a.output.out.as_deref())?;
    if let Some(path) = &a.eigenfunctions {
        let extended = PotentialFn::new(sys, Variant::Extended)?;
        let res = solve_extrapolated(&extended, &policy.grid_for(&sys)?, a.levels)?;
        write_atomic(path, &eigenfunctions_csv(&res))?;
    }
    Ok(())
}

pub fn plot_data(a: &PlotDataArgs) -> Result<(), Failure> {
    let sys = parse_system(&a.system)?;
    let dom = sys.domain();
    let (lo, hi) = a.range.unwrap_or_else(|| sys.sample_interval());
    if !(dom.contains(lo) && dom.contains(hi)) {
        return Err(Failure::Usage(format!(
            "range ({lo}, {hi}) outside the domain ({}, {}) of {}",
            dom.lo,
            dom.hi,
            sys.name()
        )));
    }
    let xs = linspace(lo, hi, a.points)?;
    let waves = match a.variant {
        WaveVariant::Original => (0..a.count)
            .map(|n| Wavefunction::new(sys, WaveKind::Original, n))
            .collect::<Result<Vec<_>, _>>()?,
        WaveVariant::Extended => (1..=a.count)
            .map(|n| Wavefunction::new(sys, WaveKind::Exceptional, n))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let csv = potential_csv(&sys, &xs, &waves)?;
    let text = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => csv,
        Format::Json => {
            let v = PotentialFn::new(sys, Variant::Original)?;
            let psi: Vec<serde_json::Value> = waves
                .iter()
                .map(|w| {
                    let vals: Result<Vec<f64>, _> = xs.iter().map(|&x| w.eval(x)).collect();
                    vals.map(|vals| json!({ "n": w.n, "eigenvalue": w.eigenvalue, "values": vals }))
                })
                .collect::<Result<_, _>>()?;
            json(&json!({
                "system": sys,
                "x": xs,
                "V_original": xs.iter().map(|&x| v.original(x)).collect::<Vec<_>>(),
                "V_e": xs.iter().map(|&x| v.shift(x)).collect::<Vec<_>>(),
                "V_extended": xs.iter().map(|&x| v.original(x) + v.shift(x)).collect::<Vec<_>>(),
                "psi": psi,
            }))
        }
    };
    emit(&text, a.output.out.as_deref())
}

pub fn gram(a: &GramArgs) -> Result<(), Failure> {
    let family = parse_family(&a.family)?;
    let g = gram_matrix(&family, a.degree, &QuadratureScheme::default())?;
    let text = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => gram_csv(&g),
        Format::Json => json(&json!({
            "family": family,
            "first_degree": g.first_degree,
            "size": g.size,
            "quadrature_level": g.level,
            "values": g.values.chunks(g.size).collect::<Vec<_>>(),
            "max_offdiag_ratio": g.max_offdiag_ratio(),
        })),
    };
    emit(&text, a.output.out.as_deref())
}
