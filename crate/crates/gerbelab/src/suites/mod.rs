//! Named verification suites.

mod complex;
mod cup;
mod spectral;
mod torus;

use crate::report::{Recorder, Report, RunConfig};
use crate::CliError;

/// Suite names with one-line descriptions, in the order `all` runs them.
pub const SUITES: [(&str, &str); 7] = [
    ("fundamental-complex", "δ∘δ = 0 on random cochains over every ring and test nerve"),
    ("cohomology", "integer cohomology of the test nerves, torsion detection, SNF witnesses"),
    ("torus", "T³ gerbe: δγ integrality, connection and curving, DD class and refinement"),
    ("spectral", "SU(n) determinant-line gerbe: associativity and duality on random matrices"),
    ("cup", "Hopf ∪ winding on S²×S¹: cup product, cup-product gerbe, bilinearity"),
    ("lifting", "U(1)×ℤ extension: associativity, group cocycle, lifting gerbe"),
    ("all", "every suite above, in order"),
];

pub fn list_suites() -> Vec<(&'static str, &'static str)> {
    SUITES.to_vec()
}

fn run_into(name: &str, cfg: &RunConfig, rec: &mut Recorder) -> Result<(), CliError> {
    match name {
        "fundamental-complex" => complex::fundamental(cfg, rec),
        "cohomology" => complex::groups(cfg, rec),
        "torus" => torus::run(cfg, rec),
        "spectral" => spectral::run(cfg, rec)?,
        "cup" => cup::run_cup(cfg, rec),
        "lifting" => cup::run_lifting(cfg, rec)?,
        _ => return Err(CliError::Usage(format!("unknown suite {name:?}"))),
    }
    Ok(())
}

/// Run the configured suite. Failing checks are recorded in the report; only
/// configuration problems are errors.
pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    validate(cfg)?;
    let mut rec = Recorder::new(&cfg.suite);
    if cfg.suite == "all" {
        for (name, _) in &SUITES[..SUITES.len() - 1] {
            rec.set_prefix(&format!("{name}/"));
            run_into(name, cfg, &mut rec)?;
        }
    } else {
        run_into(&cfg.suite, cfg, &mut rec)?;
    }
    Ok(rec.finish(cfg))
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    if !SUITES.iter().any(|(n, _)| *n == cfg.suite) {
        return Err(CliError::Usage(format!("unknown suite {:?}; see `gerbelab list`", cfg.suite)));
    }
    if cfg.samples == 0 || cfg.trials == 0 {
        return Err(CliError::Usage("--samples and --trials must be positive".into()));
    }
    if cfg.resolution < 3 {
        return Err(CliError::Usage("--resolution must be at least 3".into()));
    }
    if let Some(n) = cfg.n.iter().find(|n| !(2..=6).contains(*n)) {
        return Err(CliError::Usage(format!("--n {n} is outside 2..=6")));
    }
    if let Some((k, v)) = cfg.tolerances.iter().find(|(_, v)| v.is_nan() || **v <= 0.0) {
        return Err(CliError::Usage(format!("tolerance {k}={v} must be positive")));
    }
    Ok(())
}
