//! One function per experiment. Each writes its CSV files and returns the
//! `results` and `checks` sections of the summary.

use std::f64::consts::FRAC_PI_2;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use nic_core::geometry::physical_value;
use nic_core::reference::{layer_trio, scattering_series, NilHeight};
use nic_core::solver::{error_norms_values, RunOutcome};
use nic_core::{
    check_boost_conditions, convergence_study, dispersion_compactified, dispersion_transformed, farfield_extract,
    reconstruct_field, solve_scattering, CompactificationMap, Complex64, ConvergenceProblem, ConvergenceRecord,
    HeightFunction, LayerConfig, ScatteringProblem,
};
use serde_json::{json, Map, Value};

use crate::config::{Experiment, RunConfig};
use crate::error::Result;
use crate::output::{complex, complex_opt, num, Artifacts};

pub struct Report {
    pub results: Value,
    pub checks: Map<String, Value>,
}

/// Runs the experiment, writes its artifacts and `summary.json`.
pub fn execute(config: &RunConfig) -> Result<Value> {
    let start = Instant::now();
    let mut out = Artifacts::new(&config.out)?;
    let report = match config.experiment {
        Experiment::Oned | Experiment::Mode2d => radial(config, config.experiment, &mut out)?,
        Experiment::Scatter => scatter(config, &mut out)?,
        Experiment::Dispersion => dispersion(config, &mut out)?,
        Experiment::Layerdemo => layerdemo(config, &mut out)?,
        Experiment::Converge => converge(config, &mut out)?,
        Experiment::Checkgeom => checkgeom(config, &mut out)?,
    };
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    let mut outputs = out.written().to_vec();
    outputs.push("summary.json".into());
    let summary = json!({
        "experiment": config.experiment,
        "config": config,
        "timestamp": timestamp,
        "results": report.results,
        "checks": report.checks,
        "outputs": outputs,
        "runtime_s": start.elapsed().as_secs_f64(),
    });
    out.json("summary.json", &summary)?;
    Ok(summary)
}

fn radial_problem(config: &RunConfig, problem: Experiment) -> Result<ConvergenceProblem> {
    let geometry = config.geometry()?;
    Ok(match problem {
        Experiment::Mode2d => ConvergenceProblem::HankelMode { k: config.k, m: config.m, r_in: config.r0, geometry },
        Experiment::Scatter => ConvergenceProblem::Scattering {
            k: config.k,
            r0: config.r0,
            geometry,
            modes: config.modes,
            theta_count: config.theta_count,
        },
        _ => ConvergenceProblem::PlaneWave1d { k: config.k, a: config.a, geometry },
    })
}

fn convergence_rows(records: &[ConvergenceRecord]) -> Vec<Vec<String>> {
    records
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                num(r.error_max),
                num(r.error_l2),
                r.observed_order.map(num).unwrap_or_default(),
                num(r.runtime_s),
            ]
        })
        .collect()
}

const CONVERGENCE_HEADER: [&str; 5] = ["N", "error_max", "error_l2", "observed_order", "runtime_s"];

fn boost_check(checks: &mut Map<String, Value>, height: &HeightFunction) -> Result<()> {
    let report = check_boost_conditions(height, 1001)?;
    checks.insert("boost_conditions".into(), json!(report.pass));
    Ok(())
}

fn record_of(outcome: &RunOutcome) -> ConvergenceRecord {
    ConvergenceRecord {
        n: outcome.n,
        error_max: outcome.norms.max_rel,
        error_l2: outcome.norms.l2_rel,
        observed_order: None,
        runtime_s: outcome.runtime_s,
    }
}

/// Plane wave in 1D or a single Hankel mode in 2D.
fn radial(config: &RunConfig, problem: Experiment, out: &mut Artifacts) -> Result<Report> {
    let (dimension, r_in) = if problem == Experiment::Mode2d { (2, config.r0) } else { (1, config.a) };
    let outcome = radial_problem(config, problem)?.run(config.scheme, config.resolution)?;
    let solution = &outcome.solutions[0];
    let height = outcome.height;
    let rows = solution.grid.nodes().iter().zip(&solution.values).map(|(&rho, &u)| {
        let mut row = vec![num(rho)];
        row.extend(complex(u));
        row.extend(complex_opt(physical_value(&height, dimension, config.k, rho, u)));
        row
    });
    out.csv("solution.csv", &["rho", "u_re", "u_im", "U_re", "U_im"], rows)?;
    out.csv("convergence.csv", &CONVERGENCE_HEADER, convergence_rows(&[record_of(&outcome)]))?;

    let far = *solution.values.last().expect("grid has nodes");
    let far_exact = *outcome.exact.last().expect("grid has nodes");
    let mut checks = Map::new();
    boost_check(&mut checks, &height)?;
    checks.insert("residual_finite".into(), json!(solution.boundary_residual.is_finite()));
    Ok(Report {
        results: json!({
            "N": outcome.n,
            "r_in": r_in,
            "nodes": solution.grid.len(),
            "norms": outcome.norms,
            "boundary_residual": outcome.boundary_residual,
            "relative_residual": solution.relative_residual,
            "u_outer": [far.re, far.im],
            "u_outer_exact": [far_exact.re, far_exact.im],
            "solve_runtime_s": outcome.runtime_s,
        }),
        checks,
    })
}

fn scatter(config: &RunConfig, out: &mut Artifacts) -> Result<Report> {
    let start = Instant::now();
    let problem = ScatteringProblem {
        k: config.k,
        r0: config.r0,
        geometry: config.geometry()?,
        scheme: config.scheme,
        n: config.resolution,
        modes: config.modes,
    };
    let solution = solve_scattering(&problem)?;
    let solve_runtime = start.elapsed().as_secs_f64();
    let height = solution.height;
    let field = reconstruct_field(&solution.modes, config.theta_count, Some(&height), config.k)?;

    let series = scattering_series(config.k, config.r0, solution.max_mode, height)?;
    let mut exact = Vec::with_capacity(field.values.len());
    for &rho in &field.nodes {
        let profiles = series.radial_profiles(rho)?;
        for &theta in &field.thetas {
            exact.push(
                series
                    .modes()
                    .zip(&profiles)
                    .map(|(m, p)| p * Complex64::from_polar(1.0, f64::from(m) * theta))
                    .sum::<Complex64>(),
            );
        }
    }
    let norms = error_norms_values(&field.values, &exact)?;

    let mut rows = Vec::with_capacity(field.values.len());
    for (j, &rho) in field.nodes.iter().enumerate() {
        for (l, &theta) in field.thetas.iter().enumerate() {
            let mut row = vec![num(rho), num(theta)];
            row.extend(complex(field.at(j, l)));
            row.extend(complex_opt(field.physical_at(j, l)));
            rows.push(row);
        }
    }
    out.csv("field.csv", &["rho", "theta", "u_re", "u_im", "U_re", "U_im"], rows)?;

    let far = farfield_extract(&solution.modes, &height)?;
    let far_rows = far.iter().map(|v| {
        let mut row = vec![v.m.to_string()];
        row.extend(complex(v.value));
        row
    });
    out.csv("farfield.csv", &["m", "u_re", "u_im"], far_rows)?;
    let record = ConvergenceRecord {
        n: config.resolution,
        error_max: norms.max_rel,
        error_l2: norms.l2_rel,
        observed_order: None,
        runtime_s: solve_runtime,
    };
    out.csv("convergence.csv", &CONVERGENCE_HEADER, convergence_rows(&[record]))?;

    // The scattered field at ρ_in must cancel the incident wave.
    let incident_sum = |theta: f64| Complex64::from_polar(1.0, config.k * config.r0 * theta.cos());
    let dirichlet_error = field
        .thetas
        .iter()
        .enumerate()
        .filter_map(|(l, &t)| field.physical_at(0, l).map(|u| (u + incident_sum(t)).norm()))
        .fold(0.0, f64::max);
    let boundary_residual = solution.modes.iter().map(|m| m.boundary_residual).fold(0.0, f64::max);

    let mut checks = Map::new();
    boost_check(&mut checks, &height)?;
    checks.insert("truncation".into(), json!(solution.truncation.pass));
    Ok(Report {
        results: json!({
            "N": config.resolution,
            "max_mode": solution.max_mode,
            "mode_count": solution.modes.len(),
            "truncation": solution.truncation,
            "norms": norms,
            "dirichlet_error": dirichlet_error,
            "boundary_residual": boundary_residual,
            "farfield": far.iter().map(|v| json!({"m": v.m, "re": v.value.re, "im": v.value.im})).collect::<Vec<_>>(),
            "solve_runtime_s": solve_runtime,
        }),
        checks,
    })
}

fn dispersion(config: &RunConfig, out: &mut Artifacts) -> Result<Report> {
    let rhos: Vec<f64> = (0..config.samples).map(|j| FRAC_PI_2 * j as f64 / config.samples as f64).collect();
    let table = |f: fn(f64, f64) -> nic_core::Result<(Complex64, Complex64)>| -> Result<Vec<Vec<String>>> {
        rhos.iter()
            .map(|&rho| {
                let (p, m) = f(config.k, rho)?;
                let mut row = vec![num(rho)];
                row.extend(complex(p));
                row.extend(complex(m));
                Ok(row)
            })
            .collect()
    };
    let header = ["rho", "xip_re", "xip_im", "xim_re", "xim_im"];
    out.csv("dispersion.csv", &header, table(dispersion_transformed)?)?;
    out.csv("dispersion_compactified.csv", &header, table(dispersion_compactified)?)?;

    let mut max_outgoing_drift = 0.0_f64;
    let mut max_compactified = 0.0_f64;
    for &rho in &rhos {
        let (p, _) = dispersion_transformed(config.k, rho)?;
        max_outgoing_drift = max_outgoing_drift.max((p - config.k).norm());
        let (cp, _) = dispersion_compactified(config.k, rho)?;
        max_compactified = max_compactified.max(cp.norm());
    }
    let mut checks = Map::new();
    checks.insert("outgoing_wavenumber_constant".into(), json!(max_outgoing_drift == 0.0));
    Ok(Report {
        results: json!({
            "samples": config.samples,
            "rho_max": rhos.last(),
            "max_transformed_outgoing_drift": max_outgoing_drift,
            "max_compactified_wavenumber": max_compactified,
        }),
        checks,
    })
}

fn layerdemo(config: &RunConfig, out: &mut Artifacts) -> Result<Report> {
    let variant = if config.shifted { NilHeight::Shifted } else { NilHeight::Standard };
    let trio = layer_trio(config.k, config.sigma, config.interface, config.outer, variant)?;
    let last = config.samples - 1;
    let rhos: Vec<f64> =
        (0..config.samples).map(|j| if j == last { config.outer } else { config.outer * j as f64 / last as f64 }).collect();
    let rows = rhos.iter().map(|&rho| {
        let mut row = vec![num(rho)];
        row.extend(complex(trio.pml(rho)));
        row.extend(complex(trio.pal(rho)));
        row.extend(complex(trio.nil(rho)));
        row
    });
    out.csv("layers.csv", &["rho", "pml_re", "pml_im", "pal_re", "pal_im", "nil_re", "nil_im"], rows)?;

    let at_outer = |u: Complex64| u.norm();
    let mut checks = Map::new();
    checks.insert("nil_unit_modulus".into(), json!(rhos.iter().all(|&r| (trio.nil(r).norm() - 1.0).abs() < 1e-12)));
    Ok(Report {
        results: json!({
            "variant": if config.shifted { "shifted" } else { "standard" },
            "samples": config.samples,
            "pml_outer_modulus": at_outer(trio.pml(config.outer)),
            "pal_outer_modulus": at_outer(trio.pal(config.outer)),
            "nil_outer_modulus": at_outer(trio.nil(config.outer)),
        }),
        checks,
    })
}

fn converge(config: &RunConfig, out: &mut Artifacts) -> Result<Report> {
    let problem = radial_problem(config, config.problem)?;
    let records = convergence_study(&problem, config.scheme, &config.n_list)?;
    out.csv("convergence.csv", &CONVERGENCE_HEADER, convergence_rows(&records))?;

    let mut checks = Map::new();
    boost_check(&mut checks, &problem.height()?)?;
    let first = records.first().map(|r| r.error_max).unwrap_or(f64::NAN);
    let last = records.last().map(|r| r.error_max).unwrap_or(f64::NAN);
    checks.insert("error_decreases".into(), json!(last <= first));
    Ok(Report {
        results: json!({
            "problem": config.problem,
            "records": records,
            "final_observed_order": records.last().and_then(|r| r.observed_order),
        }),
        checks,
    })
}

fn checkgeom(config: &RunConfig, out: &mut Artifacts) -> Result<Report> {
    let layer = LayerConfig::new(config.interface, config.outer, config.exponent)?;
    let maps = [
        ("rational", CompactificationMap::rational(0.0)?),
        ("tangent", CompactificationMap::tangent(0.0)?),
        ("layer", CompactificationMap::layer(0.0, layer)?),
    ];
    let mut rows = Vec::new();
    let mut checks = Map::new();
    let mut reports = Vec::new();
    for (map_name, map) in maps {
        let main = if map.layer_config().is_some() {
            ("layer", HeightFunction::new(nic_core::HeightKind::Layer { speed: config.speed }, map)?)
        } else {
            ("hyperboloidal", HeightFunction::hyperboloidal(config.speed, map)?)
        };
        for (height_name, height) in [main, ("characteristic", HeightFunction::characteristic(map)?)] {
            let report = check_boost_conditions(&height, config.samples)?;
            rows.push(vec![
                map_name.to_string(),
                height_name.to_string(),
                num(report.max_boost_excess),
                num(report.outer_boost_error),
                num(report.outer_boost_slope),
                report.pass.to_string(),
            ]);
            checks.insert(format!("{map_name}/{height_name}"), json!(report.pass));
            reports.push(json!({"map": map_name, "height": height_name, "report": report}));
        }
    }
    out.csv(
        "geometry.csv",
        &["map", "height", "max_boost_excess", "outer_boost_error", "outer_boost_slope", "pass"],
        rows,
    )?;
    Ok(Report { results: json!({ "reports": reports }), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Options;

    fn config(experiment: Experiment, dir: &std::path::Path, edit: impl FnOnce(&mut Options)) -> RunConfig {
        let mut o = Options { out: Some(dir.to_path_buf()), ..Options::default() };
        edit(&mut o);
        RunConfig::resolve(experiment, o).unwrap()
    }

    #[test]
    fn oned_meets_closed_form() {
        let dir = tempfile::tempdir().unwrap();
        let c = config(Experiment::Oned, dir.path(), |o| {
            o.speed = Some(40.0);
            o.resolution = Some(64);
        });
        let summary = execute(&c).unwrap();
        assert!(summary["results"]["norms"]["max_rel"].as_f64().unwrap() < 1e-9);
    }

    #[test]
    fn checkgeom_passes_everywhere() {
        let dir = tempfile::tempdir().unwrap();
        let summary = execute(&config(Experiment::Checkgeom, dir.path(), |_| {})).unwrap();
        let checks = summary["checks"].as_object().unwrap();
        assert_eq!(checks.len(), 6);
        assert!(checks.values().all(|v| v == &json!(true)), "{checks:?}");
    }
}
