use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gerbelab::json::{self, ComplexFile, CoverDto};
use gerbelab::suites::{self, list_suites};
use gerbelab::{fixtures, CliError, RunConfig};
use gerbelab_core::homology::{class_info, cohomology, free_homology_basis, ClassOrder};
use gerbelab_core::CechGerbe;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gerbelab", version, about = "Compute and verify bundle gerbes over finite good covers")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Clone)]
struct SuiteArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 3)]
    resolution: usize,
    /// Tolerance override, `name=value`; repeatable.
    #[arg(long = "tol", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Matrix sizes for the spectral suite: `3`, `2,4` or `2..6`.
    #[arg(long, default_value = "2..4", value_parser = parse_sizes)]
    n: Sizes,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Extension cocycle for the lifting suite: `u1xz`, `u1xz-first-exponent`,
    /// `trivial`, or a JSON file `{"modulus": m, "table": [...]}`.
    #[arg(long, default_value = "u1xz")]
    extension: String,
}

#[derive(Clone, Debug)]
struct Sizes(Vec<usize>);

#[derive(Subcommand)]
enum Command {
    /// List the verification suites.
    List,
    #[command(name = "fundamental-complex")]
    FundamentalComplex(SuiteArgs),
    /// Without `--complex`, run the cohomology suite; with it, compute `H^K` of a file.
    Cohomology {
        #[command(flatten)]
        args: SuiteArgs,
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long, requires = "complex")]
        degree: Option<usize>,
    },
    Torus(SuiteArgs),
    Spectral(SuiteArgs),
    Cup(SuiteArgs),
    Lifting(SuiteArgs),
    All(SuiteArgs),
    /// Order of the class of an integral cocycle stored in a complex file.
    #[command(name = "class-info")]
    ClassInfo {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cochain: String,
    },
    /// Dixmier-Douady class of a gerbe file.
    Dd {
        #[arg(long = "gerbe")]
        gerbe: Option<PathBuf>,
        #[arg(conflicts_with = "gerbe")]
        file: Option<PathBuf>,
    },
    /// Write a built-in gerbe (`torus`, `cup`, `torsion`) as a gerbe file.
    Export {
        which: String,
        #[arg(long, default_value_t = 3)]
        resolution: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=value")?;
    let v: f64 = v.parse().map_err(|_| format!("{v:?} is not a number"))?;
    Ok((k.to_string(), v))
}

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("{t:?} is not a size"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok(Sizes((a..=b).collect()));
    }
    s.split(',').map(num).collect::<Result<_, _>>().map(Sizes)
}

fn config(suite: &str, a: &SuiteArgs) -> RunConfig {
    RunConfig {
        suite: suite.into(),
        seed: a.seed,
        samples: a.samples,
        resolution: a.resolution,
        n: a.n.0.clone(),
        trials: a.trials,
        extension: a.extension.clone(),
        tolerances: a.tol.iter().cloned().collect::<BTreeMap<_, _>>(),
    }
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Input(e.to_string()))?;
    if path == Path::new("-") {
        println!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text + "\n").map_err(|e| CliError::Io(path.display().to_string(), e))
    }
}

fn run_suite(suite: &str, a: &SuiteArgs) -> Result<bool, CliError> {
    let report = suites::run(&config(suite, a))?;
    let to_stdout = a.json.as_deref() == Some(Path::new("-"));
    if !to_stdout {
        print!("{}", report.table());
    }
    if let Some(p) = &a.json {
        write_json(p, &report)?;
    }
    Ok(report.pass())
}

fn order_json(o: ClassOrder) -> Value {
    match o {
        ClassOrder::Infinite => json!("infinite"),
        ClassOrder::Finite(n) => json!(n),
    }
}

/// Largest degree-3 simplex count for which a dense homology basis is computed.
const DENSE_LIMIT: usize = 400;

fn dd_report(g: &CechGerbe) -> Result<Value, CliError> {
    let core = |e: gerbelab_core::cech::CechError| CliError::Input(e.to_string());
    let dd = g.dd().map_err(core)?;
    let (pairings, note) = if let Some(z) = g.fundamental_cycle().map_err(core)? {
        (json!([dd.pair(&z)]), "paired with the fundamental cycle of the cover")
    } else if dd.ambient.free_rank == 0 {
        (json!([]), "H³ has no free part")
    } else if g.nerve().count(3) <= DENSE_LIMIT {
        let basis = free_homology_basis(g.nerve(), 3).map_err(core)?;
        (json!(basis.iter().map(|z| dd.pair(z)).collect::<Vec<_>>()), "paired with a basis of free 3-cycles")
    } else {
        (Value::Null, "nerve too large for a dense homology basis; attach a cover")
    };
    Ok(json!({
        "order": order_json(dd.info.order),
        "free_pairings": pairings,
        "torsion_factors": dd.ambient.torsion_factors,
        "ambient": {"free_rank": dd.ambient.free_rank, "torsion_factors": dd.ambient.torsion_factors},
        "note": note,
    }))
}

fn export(which: &str, resolution: usize, out: &Path) -> Result<(), CliError> {
    let err = |e: String| CliError::Input(e);
    let (g, cover) = match which {
        "torus" => (
            gerbelab_core::torus::cech_cocycle(resolution).map_err(|e| err(e.to_string()))?,
            Some(CoverDto::Torus3 { count: resolution, overlap: None }),
        ),
        "cup" => {
            let hw = gerbelab_core::cup::hopf_winding(3).map_err(|e| err(e.to_string()))?;
            let g = gerbelab_core::cup::cup_gerbe(&hw.hopf, &hw.winding, &hw.nerve).map_err(|e| err(e.to_string()))?;
            let c = CoverDto::Product {
                left: Box::new(CoverDto::Octahedral),
                right: Box::new(CoverDto::Arcs { count: 3, overlap: None }),
            };
            (g, Some(c))
        }
        "torsion" => (fixtures::torsion_gerbe(&fixtures::suspended_rp2()).map_err(err)?, None),
        other => return Err(CliError::Usage(format!("unknown export {other:?}; use torus, cup or torsion"))),
    };
    let mut file = ComplexFile::from_nerve(g.nerve());
    if cover.is_some() {
        // the cover rebuilds the nerve; simplex lists would only repeat it
        file.simplices.clear();
    }
    file.cover = cover;
    file.insert_gerbe(&g);
    json::save(out, &file)
}

fn dispatch(cmd: Command) -> Result<bool, CliError> {
    match cmd {
        Command::List => {
            for (name, about) in list_suites() {
                println!("{name:<20} {about}");
            }
            Ok(true)
        }
        Command::FundamentalComplex(a) => run_suite("fundamental-complex", &a),
        Command::Cohomology { args, complex: None, .. } => run_suite("cohomology", &args),
        Command::Cohomology { complex: Some(path), degree, .. } => {
            let k = degree.ok_or_else(|| CliError::Usage("--degree is required with --complex".into()))?;
            let nerve = json::load(&path)?.nerve()?;
            if k >= nerve.max_degree() {
                return Err(CliError::Usage(format!("degree {k} needs simplices of degree {} in the file", k + 1)));
            }
            let h = cohomology(&nerve, k).map_err(|e| CliError::Input(e.to_string()))?;
            println!("{}", json!({"degree": k, "free_rank": h.free_rank, "torsion_factors": h.torsion_factors}));
            Ok(true)
        }
        Command::Torus(a) => run_suite("torus", &a),
        Command::Spectral(a) => run_suite("spectral", &a),
        Command::Cup(a) => run_suite("cup", &a),
        Command::Lifting(a) => run_suite("lifting", &a),
        Command::All(a) => run_suite("all", &a),
        Command::ClassInfo { complex, cochain } => {
            let f = json::load(&complex)?;
            let nerve = f.nerve()?;
            let c = f.cochain(&cochain, &nerve)?;
            let info = class_info(&c, &nerve).map_err(|e| CliError::Input(e.to_string()))?;
            println!("{}", json!({"is_coboundary": info.is_coboundary, "order": order_json(info.order)}));
            Ok(true)
        }
        Command::Dd { gerbe, file } => {
            let path = gerbe.or(file).ok_or_else(|| CliError::Usage("dd needs a gerbe file".into()))?;
            let g = json::load(&path)?.gerbe()?;
            println!("{}", dd_report(&g)?);
            Ok(true)
        }
        Command::Export { which, resolution, out } => {
            export(&which, resolution, &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = cli.command.unwrap_or(Command::List);
    match dispatch(cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("gerbelab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
