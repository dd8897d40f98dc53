//! `hsuper`: verify, analyse and deform Hom-Lie superalgebras given by
//! structure constants.
//!
//! Exit codes: 0 ok, 1 I/O error, 2 usage, 3 parse error, 4 invariant
//! violation, 5 mathematical check failed, 6 no witness found.

mod error;
mod format;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hsuper_core::{
    catalog, cohomology, deform, find_witness, normalize_heisenberg, parse_scalar, verify_isomorphism, CatalogId,
    Family, HomLieSuperalgebra, Scalar,
};

use error::CliError;
use format::{load_algebra, load_cochain, load_witness, to_json, write_text, AlgebraFile, CochainFile, WitnessFile};

#[derive(Debug, Parser)]
#[command(name = "hsuper", version, about = "Exact Hom-Lie superalgebra toolkit over Q(i)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check skew-supersymmetry, hom-Jacobi, multiplicativity and the Heisenberg property
    Check { file: PathBuf },
    /// Cohomology dimensions in degree 1 or 2 as CSV
    Cohomology {
        file: PathBuf,
        #[arg(short = 'k', value_parser = clap::value_parser!(u8).range(1..=2))]
        degree: u8,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        /// Also print cohomology class representatives as cochain JSON
        #[arg(long)]
        representatives: bool,
    },
    /// Add t·φ to the bracket and print the resulting algebra file
    Deform {
        file: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Fail with exit code 5 unless the result is a Lie superalgebra
        #[arg(long)]
        check_lie: bool,
        #[arg(long)]
        allow_nonintegrable: bool,
    },
    /// Reduce a 3-dimensional multiplicative Heisenberg algebra to normal form
    Normalize { file: PathBuf },
    /// Verify a base change A → B, or search for one
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Emit a named family instance as an algebra file
    Catalog {
        name: String,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Cohomology dimensions over a parameter grid, as CSV
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long, num_args = 1.., value_name = "K=V1,V2,...")]
        grid: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("hsuper: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn scalar_arg(text: &str, what: &str) -> Result<Scalar, CliError> {
    parse_scalar(text).map_err(|e| CliError::parse(what, e))
}

fn key_value<'a>(text: &'a str, what: &str) -> Result<(&'a str, &'a str), CliError> {
    text.split_once('=')
        .ok_or_else(|| CliError::Usage(format!("{what} expects K=V, got '{text}'")))
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Check { file } => check(&load_algebra(&file)?),
        Command::Cohomology {
            file,
            degree,
            parity,
            representatives,
        } => cohomology_report(&load_algebra(&file)?, degree as usize, parity, representatives),
        Command::Deform {
            file,
            phi,
            t,
            check_lie,
            allow_nonintegrable,
        } => {
            let g = load_algebra(&file)?;
            let phi = load_cochain(&phi, g.parity())?;
            let t = scalar_arg(&t, "--t")?;
            let d = deform(&g, &phi, &t, allow_nonintegrable)?;
            if check_lie && !d.is_lie_superalgebra() {
                return Err(CliError::CheckFailed("deformed bracket is not a Lie superalgebra".into()));
            }
            let name = format!("{} deformed at t={t}", file.display());
            Ok(to_json(&AlgebraFile::from_algebra(&name, &d)) + "\n")
        }
        Command::Normalize { file } => {
            let r = normalize_heisenberg(&load_algebra(&file)?)?;
            Ok(format!(
                "canonical: {}\nwitness: {}\n",
                r.canonical,
                serde_json::to_string(&WitnessFile::from_matrix(&r.witness)).expect("serializable")
            ))
        }
        Command::Iso { a, b, witness } => iso(&load_algebra(&a)?, &load_algebra(&b)?, witness.as_deref()),
        Command::Catalog { name, params, out } => {
            let family: Family = name.parse()?;
            let mut parsed = Vec::with_capacity(params.len());
            for p in &params {
                let (k, v) = key_value(p, "--param")?;
                parsed.push((k, scalar_arg(v, &format!("--param {k}"))?));
            }
            let cid = CatalogId::new(family, &parsed);
            let g = catalog(&cid)?;
            let text = to_json(&AlgebraFile::from_algebra(&cid.to_string(), &g)) + "\n";
            emit(text, out.as_deref())
        }
        Command::Sweep { family, grid, out } => {
            let family: Family = family.parse()?;
            let mut axes = Vec::with_capacity(grid.len());
            for g in &grid {
                let (k, vs) = key_value(g, "--grid")?;
                let values = vs
                    .split(',')
                    .map(|v| scalar_arg(v, &format!("--grid {k}")))
                    .collect::<Result<Vec<_>, _>>()?;
                axes.push((k.to_string(), values));
            }
            let result = sweep::run(family, &axes)?;
            for s in &result.skipped {
                eprintln!("hsuper: skipped {s}");
            }
            emit(result.csv, out.as_deref())
        }
    }
}

fn emit(text: String, out: Option<&Path>) -> Result<String, CliError> {
    match out {
        Some(path) => write_text(path, &text).map(|()| String::new()),
        None => Ok(text),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn check(g: &HomLieSuperalgebra) -> Result<String, CliError> {
    let hom_lie = g.check_skew() && g.check_hom_jacobi();
    let mult = g.check_multiplicative();
    let heis = g.is_heisenberg();
    let heis_text = match &heis {
        Ok(c) if c.generator_parity == 1 => "ok (odd generator)".to_string(),
        Ok(_) => "ok (even generator)".to_string(),
        Err(e) => format!("no ({e})"),
    };
    let line = format!(
        "hom-Lie: {}; multiplicative: {}; Heisenberg: {heis_text}",
        verdict(hom_lie),
        verdict(mult)
    );
    if hom_lie && mult && heis.is_ok() {
        Ok(line + "\n")
    } else {
        Err(CliError::CheckFailed(line))
    }
}

fn cohomology_report(
    g: &HomLieSuperalgebra,
    k: usize,
    parity: Option<ParityArg>,
    representatives: bool,
) -> Result<String, CliError> {
    let report = cohomology(g, k).map_err(|e| CliError::invariant("cohomology", e))?;
    let parities: Vec<usize> = match parity {
        None => vec![0, 1],
        Some(ParityArg::Even) => vec![0],
        Some(ParityArg::Odd) => vec![1],
    };
    let name = ["even", "odd"];
    let mut out = String::from("degree,parity,dimC,dimZ,dimB,dimH\n");
    for &p in &parities {
        let d = report.dims[p];
        out += &format!(
            "{k},{},{},{},{},{}\n",
            name[p], d.cochains, d.cocycles, d.coboundaries, d.cohomology
        );
    }
    if representatives {
        for &p in &parities {
            for (n, phi) in report.representatives[p].iter().enumerate() {
                let json = serde_json::to_string(&CochainFile::from_cochain(phi)).expect("serializable");
                out += &format!("# {} representative {}: {json}\n", name[p], n + 1);
            }
        }
    }
    Ok(out)
}

fn iso(a: &HomLieSuperalgebra, b: &HomLieSuperalgebra, witness: Option<&Path>) -> Result<String, CliError> {
    match witness {
        Some(path) => {
            let w = load_witness(path)?;
            if verify_isomorphism(a, b, &w) {
                Ok("isomorphism: verified\n".into())
            } else {
                Err(CliError::CheckFailed("isomorphism: witness does not verify".into()))
            }
        }
        None => match find_witness(a, b, None, true) {
            Some(w) => Ok(to_json(&WitnessFile::from_matrix(&w)) + "\n"),
            None => Err(CliError::NoWitness("no even base change found".into())),
        },
    }
}
