use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use sheafloci::formats::{
    from_json, read_config, to_canonical_json, write_config, KroneckerFile, LocalfreeInput, LocalfreeOutput, Q,
};
use sheafloci::kronecker::{
    injectivity_check, kronecker_from_points, maximal_minors, resolution_check, stability_sufficient,
};
use sheafloci::linsys::fibre;
use sheafloci::localfree::{
    default_truncation, fat_ideal_free, is_regular, jet_principality_checked, membership, u_at_zero, CurveGerm,
    FatIdealData,
};
use sheafloci::parse::parse_local;
use sheafloci::scalar::{format_rational, parse_rational};
use sheafloci::schemes::{nontransversal_sextic, sample_distinct, sample_one_double, Stratum};
use sheafloci::singloci::{normal_dims, report_subsets, SingularAnalysis, SingularLocusReport};
use sheafloci::{Error, QFibre, QPointConfig};

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_GENERIC: u8 = 2;
const EXIT_STRATUM: u8 = 3;
const EXIT_ASSERTION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "sheafloci",
    version,
    about = "Singular loci of sheaves over plane point schemes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Codimensions of the singular loci in the fibre over a configuration.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Worker threads for the intersection table.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Extra 1-based point set to intersect, e.g. `1,2,3,4`. Repeatable.
        #[arg(long)]
        subset: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the ten-point sextic example with a non-transversal
    /// five-fold intersection.
    VerifyRemark6 {
        /// Use another degree-6 configuration instead of the built-in one.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a seeded configuration.
    Random {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = SampleStratum::Generic)]
        stratum: SampleStratum,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Kronecker module of a configuration and check it.
    Kronecker {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide freeness of a curvilinear ideal on a curve germ.
    Localfree {
        /// JSON file with `f`, `h` and `mult`.
        #[arg(long = "in", conflicts_with_all = ["poly", "h", "mult"])]
        input: Option<PathBuf>,
        #[arg(long)]
        poly: Option<String>,
        /// Comma-separated coefficients of `h` from `y^0` upward.
        #[arg(long, value_delimiter = ',')]
        h: Vec<String>,
        #[arg(long)]
        mult: Option<usize>,
        /// Truncation order for the jet oracle.
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SampleStratum {
    Generic,
    Double,
}

/// A run that produced output but must exit nonzero.
struct Verdict(u8);

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(path: &Path) -> Result<QPointConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    read_config(&text).with_context(|| format!("parsing {}", path.display()))
}

fn check_degree(d: usize) -> Result<()> {
    if d < 4 {
        bail!(Error::DegreeTooSmall(d));
    }
    Ok(())
}

/// The fibre, or exit code 2 with the vanishing curve on stderr.
fn fibre_or_certificate(cfg: &QPointConfig) -> Result<std::result::Result<QFibre, Verdict>> {
    match fibre(cfg) {
        Ok(f) => Ok(Ok(f)),
        Err(Error::NotGeneric { degree, certificate }) => {
            eprintln!("configuration lies on a curve of degree {degree}: {certificate}");
            Ok(Err(Verdict(EXIT_NOT_GENERIC)))
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_subsets(raw: &[String], n: usize) -> Result<Vec<Vec<usize>>> {
    raw.iter()
        .map(|s| {
            s.split(',')
                .map(|t| {
                    let i: usize = t.trim().parse().with_context(|| format!("bad point id `{t}`"))?;
                    if i == 0 || i > n {
                        bail!("point id {i} outside 1..={n}");
                    }
                    Ok(i - 1)
                })
                .collect()
        })
        .collect()
}

fn analyze_report(fib: QFibre, extra: &[Vec<usize>], jobs: usize) -> Result<SingularLocusReport> {
    let normal = normal_dims(&fib)?;
    let analysis = SingularAnalysis::new(fib)?;
    let subsets = report_subsets(analysis.num_points(), extra);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let codims = pool.install(|| {
        subsets
            .par_iter()
            .map(|s| analysis.codim(s))
            .collect::<std::result::Result<Vec<_>, _>>()
    })?;
    Ok(SingularLocusReport::assemble(&analysis, &normal, &subsets, &codims)?)
}

fn cmd_analyze(
    config: &Path,
    degree: usize,
    jobs: usize,
    subset: &[String],
    out: Option<&Path>,
) -> Result<Option<Verdict>> {
    check_degree(degree)?;
    let cfg = load_config(config)?;
    if cfg.degree() != degree {
        bail!("--degree {degree} but the configuration has degree {}", cfg.degree());
    }
    let extra = parse_subsets(subset, cfg.num_points())?;
    let fib = match fibre_or_certificate(&cfg)? {
        Ok(f) => f,
        Err(v) => return Ok(Some(v)),
    };
    let report = analyze_report(fib, &extra, jobs)?;
    emit(out, &to_canonical_json(&report)?)?;
    if cfg.stratum() == Stratum::Other {
        eprintln!("stratum `other`: codimensions reported without checks");
        return Ok(Some(Verdict(EXIT_STRATUM)));
    }
    for v in &report.violations {
        eprintln!("violation: {v}");
    }
    Ok((!report.ok()).then_some(Verdict(EXIT_ASSERTION)))
}

#[derive(Serialize, Deserialize, PartialEq)]
struct RemarkReport {
    codim_first_four: usize,
    codim_first_five: usize,
    singletons: Vec<usize>,
    pairs_all_four: bool,
    pass: bool,
}

fn cmd_verify_remark6(config: Option<&Path>, out: Option<&Path>) -> Result<Option<Verdict>> {
    let cfg = match config {
        Some(p) => load_config(p)?,
        None => nontransversal_sextic(),
    };
    if cfg.degree() != 6 || cfg.num_points() < 5 {
        bail!("expected a degree-6 configuration");
    }
    let fib = match fibre_or_certificate(&cfg)? {
        Ok(f) => f,
        Err(v) => return Ok(Some(v)),
    };
    let a = SingularAnalysis::new(fib)?;
    let n = a.num_points();
    let singletons = (0..n)
        .map(|i| a.codim(&[i]))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut pairs_all_four = true;
    for i in 0..n {
        for j in i + 1..n {
            pairs_all_four &= a.codim(&[i, j])? == 4;
        }
    }
    let four = a.codim(&[0, 1, 2, 3])?;
    let five = a.codim(&[0, 1, 2, 3, 4])?;
    let pass = four == 8 && five == 9 && pairs_all_four && singletons.iter().all(|&c| c == 2);
    eprintln!(
        "codim F1..F4 = {four}, codim F1..F5 = {five}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    let report = RemarkReport {
        codim_first_four: four,
        codim_first_five: five,
        singletons,
        pairs_all_four,
        pass,
    };
    emit(out, &to_canonical_json(&report)?)?;
    Ok((!pass).then_some(Verdict(EXIT_ASSERTION)))
}

fn cmd_random(degree: usize, seed: u64, stratum: SampleStratum, out: Option<&Path>) -> Result<Option<Verdict>> {
    check_degree(degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg: QPointConfig = match stratum {
        SampleStratum::Generic => sample_distinct(degree, &mut rng)?,
        SampleStratum::Double => sample_one_double(degree, &mut rng)?,
    };
    emit(out, &write_config(&cfg)?)?;
    Ok(None)
}

#[derive(Serialize, Deserialize, PartialEq)]
struct KroneckerReport {
    module: KroneckerFile,
    minors: Vec<String>,
    resolution: bool,
    injective: bool,
    stability: String,
    ok: bool,
}

fn cmd_kronecker(config: &Path, out: Option<&Path>) -> Result<Option<Verdict>> {
    let cfg = load_config(config)?;
    let phi = match kronecker_from_points(&cfg) {
        Ok(phi) => phi,
        Err(Error::NotGeneric { degree, certificate }) => {
            eprintln!("configuration lies on a curve of degree {degree}: {certificate}");
            return Ok(Some(Verdict(EXIT_NOT_GENERIC)));
        }
        Err(e) => return Err(e.into()),
    };
    let resolution = resolution_check(&phi);
    let injective = injectivity_check(&phi);
    let stable = stability_sufficient(&phi).is_stable();
    let ok = resolution && injective && stable;
    let report = KroneckerReport {
        module: KroneckerFile::from_module(&phi),
        minors: maximal_minors(&phi).iter().map(|m| m.to_string()).collect(),
        resolution,
        injective,
        stability: if stable { "stable" } else { "inconclusive" }.into(),
        ok,
    };
    emit(out, &to_canonical_json(&report)?)?;
    Ok((!ok).then_some(Verdict(EXIT_ASSERTION)))
}

fn cmd_localfree(input: LocalfreeInput, truncation: Option<usize>, out: Option<&Path>) -> Result<Option<Verdict>> {
    let germ = CurveGerm::new(parse_local(&input.f)?)?;
    let z = FatIdealData::new(input.h.into_iter().map(|q| q.0).collect(), input.mult)?;
    let n = truncation.unwrap_or_else(|| default_truncation(&germ, &z));
    let oracle = jet_principality_checked(&germ, &z, Some(n))?;
    let member = membership(&germ, &z);
    let (u0, free) = if member {
        (
            Some(format_rational(&u_at_zero(&germ, &z)?)),
            Some(fat_ideal_free(&germ, &z)?),
        )
    } else {
        (None, None)
    };
    let report = LocalfreeOutput {
        member,
        regular: is_regular(&germ),
        u0,
        free,
        oracle,
        truncation: n,
    };
    emit(out, &to_canonical_json(&report)?)?;
    if !member {
        eprintln!("the germ does not contain the fat point");
        return Ok(Some(Verdict(EXIT_INPUT)));
    }
    Ok((free != Some(oracle)).then_some(Verdict(EXIT_ASSERTION)))
}

fn localfree_input(
    input: Option<PathBuf>,
    poly: Option<String>,
    h: Vec<String>,
    mult: Option<usize>,
) -> Result<LocalfreeInput> {
    if let Some(p) = input {
        let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
        return Ok(from_json(&text)?);
    }
    let (Some(f), Some(mult)) = (poly, mult) else {
        bail!("give either --in or both --poly and --mult");
    };
    let h = h
        .iter()
        .map(|s| parse_rational(s.trim()).map(Q))
        .collect::<std::result::Result<_, _>>()?;
    Ok(LocalfreeInput { f, h, mult })
}

fn run(cli: Cli) -> Result<Option<Verdict>> {
    match cli.command {
        Command::Analyze {
            config,
            degree,
            jobs,
            subset,
            out,
        } => cmd_analyze(&config, degree, jobs, &subset, out.as_deref()),
        Command::VerifyRemark6 { config, out } => cmd_verify_remark6(config.as_deref(), out.as_deref()),
        Command::Random {
            degree,
            seed,
            stratum,
            out,
        } => cmd_random(degree, seed, stratum, out.as_deref()),
        Command::Kronecker { config, out } => cmd_kronecker(&config, out.as_deref()),
        Command::Localfree {
            input,
            poly,
            h,
            mult,
            truncation,
            out,
        } => {
            let data = localfree_input(input, poly, h, mult)?;
            cmd_localfree(data, truncation, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Verdict(code))) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
