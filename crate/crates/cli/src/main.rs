//! `implicit`: command-line front end for `implicit-core`.
//!
//! Exit codes: 0 success (and, for `implicitize`/`verify`, a verified
//! equation), 1 usage or validation error, 2 inconclusive or unverified.

mod problem;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use implicit_core::cox::{region_ascii, region_svg};
use implicit_core::implicit::strand_warnings;
use implicit_core::{
    complement_corners, implicitize, parse_poly, region_rb, representation_matrix, strand_dim,
    suggest_nu, verify_implicit, BlockStructure, Error as CoreError, ImplicitOptions,
    ImplicitResultDoc, MultiDegree, ProblemInstance, Ring,
};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Unverified(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Unverified(_) | CliError::Core(CoreError::Inconclusive(_) | CoreError::AllMinorsZero) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "implicit", version, about = "Implicit equations of multigraded hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Blocks, degree and strand dimensions of a problem file.
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The region where strands may misbehave, its complement corners and the suggested nu.
    Region {
        file: Option<PathBuf>,
        /// Projective dimensions, e.g. `1,1` for P^1 x P^1.
        #[arg(long, requires = "gamma", conflicts_with = "file")]
        blocks: Option<String>,
        #[arg(long, requires = "blocks")]
        gamma: Option<MultiDegree>,
        /// Write an SVG picture (two blocks only).
        #[arg(long)]
        plot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// The representation matrix M_nu as JSON.
    Matrix {
        file: PathBuf,
        #[arg(long)]
        nu: Option<MultiDegree>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full pipeline: matrix, ranks, determinant, verification.
    Implicitize {
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Checks that a polynomial vanishes on the parametrization.
    Verify {
        file: PathBuf,
        /// Polynomial text in the target variables, or a saved `implicitize --json` result.
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    nu: Option<MultiDegree>,
    /// Maximal minors sampled when M_nu is not square.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Parameter points for the rank-drop check.
    #[arg(long, default_value_t = 20)]
    points: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Info { file, json } => cmd_info(&file, json),
        Command::Region { file, blocks, gamma, plot, json } => cmd_region(file.as_deref(), blocks, gamma, plot, json),
        Command::Matrix { file, nu, out } => cmd_matrix(&file, nu, out),
        Command::Implicitize { file, run, out, json } => cmd_implicitize(&file, &run, out, json),
        Command::Verify { file, poly, json } => cmd_verify(&file, &poly, json),
    }
}

/// Writes through a temporary file in the same directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn choose_nu(inst: &ProblemInstance, nu: Option<MultiDegree>) -> Result<MultiDegree, CliError> {
    match nu {
        Some(nu) => {
            if nu.len() != inst.blocks().s() {
                return Err(CliError::Usage(format!(
                    "--nu needs {} components, got {}",
                    inst.blocks().s(),
                    nu.len()
                )));
            }
            Ok(nu)
        }
        None => {
            let nu = suggest_nu(inst.blocks(), inst.gamma())?;
            eprintln!("using suggested nu = {nu}");
            Ok(nu)
        }
    }
}

fn space_name(blocks: &BlockStructure) -> String {
    blocks.r().iter().map(|r| format!("P^{r}")).collect::<Vec<_>>().join(" x ")
}

#[derive(Serialize)]
struct StrandRow {
    degree: MultiDegree,
    dim: usize,
    in_region: bool,
}

#[derive(Serialize)]
struct InfoDoc {
    blocks: Vec<Vec<String>>,
    target_vars: Vec<String>,
    n: usize,
    gamma: MultiDegree,
    suggested_nu: MultiDegree,
    strands: Vec<StrandRow>,
}

fn cmd_info(file: &Path, json: bool) -> Result<(), CliError> {
    let inst = &problem::load(file)?;
    let blocks = inst.blocks();
    let nu = suggest_nu(blocks, inst.gamma())?;
    let mut strands = Vec::new();
    let s = blocks.s();
    for code in 0..3usize.pow(s.min(3) as u32) {
        let mut d = nu.clone();
        let mut c = code;
        for i in 0..s.min(3) {
            d.0[i] += (c % 3) as i64 - 1;
            c /= 3;
        }
        if !d.all_nonnegative() {
            continue;
        }
        let in_region = inst.nu_in_region(&d)?;
        strands.push(StrandRow { dim: strand_dim(blocks, &d), degree: d, in_region });
    }
    strands.sort_by(|a, b| a.degree.cmp(&b.degree));
    let doc = InfoDoc {
        blocks: inst.vars().block_names(),
        target_vars: inst.vars().target_names().to_vec(),
        n: inst.n(),
        gamma: inst.gamma().clone(),
        suggested_nu: nu,
        strands,
    };
    if json {
        print!("{}", to_json(&doc));
        return Ok(());
    }
    let blocks_text: Vec<String> = doc.blocks.iter().map(|b| format!("({})", b.join(","))).collect();
    println!("blocks: {}", blocks_text.join(", "));
    println!("parameter space: {}", space_name(blocks));
    println!("targets: {} (n = {})", doc.target_vars.join(", "), doc.n);
    println!("gamma: {}", doc.gamma);
    println!("suggested nu: {}", doc.suggested_nu);
    println!("strand dimensions near nu:");
    for row in &doc.strands {
        let mark = if row.in_region { "  in region" } else { "" };
        println!("  {:<12} {:>6}{mark}", row.degree.to_string(), row.dim);
    }
    Ok(())
}

#[derive(Serialize)]
struct RegionDoc {
    r: Vec<usize>,
    gamma: MultiDegree,
    region: Vec<String>,
    corners: Vec<MultiDegree>,
    suggested_nu: MultiDegree,
}

fn cmd_region(
    file: Option<&Path>,
    blocks: Option<String>,
    gamma: Option<MultiDegree>,
    plot: Option<PathBuf>,
    json: bool,
) -> Result<(), CliError> {
    let (blocks, gamma) = match (file, blocks, gamma) {
        (Some(file), _, _) => {
            let inst = problem::load(file)?;
            (inst.blocks().clone(), inst.gamma().clone())
        }
        (None, Some(b), Some(g)) => {
            let r = b
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Usage(format!("bad --blocks `{b}`: {e}")))?;
            let blocks = BlockStructure::new(r).map_err(|e| CliError::Usage(e.to_string()))?;
            if g.len() != blocks.s() {
                return Err(CliError::Usage(format!(
                    "--gamma needs {} components, got {}",
                    blocks.s(),
                    g.len()
                )));
            }
            (blocks, g)
        }
        _ => return Err(CliError::Usage("give a problem file or both --blocks and --gamma".into())),
    };
    let region = region_rb(&blocks, &gamma)?;
    let corners = complement_corners(&blocks, &gamma)?;
    let nu = suggest_nu(&blocks, &gamma)?;
    let doc = RegionDoc {
        r: blocks.r().to_vec(),
        gamma: gamma.clone(),
        region: region.parts.iter().map(ToString::to_string).collect(),
        corners,
        suggested_nu: nu,
    };
    if json {
        print!("{}", to_json(&doc));
    } else {
        println!("region for {} with gamma = {}:", space_name(&blocks), gamma);
        for part in &doc.region {
            println!("  {part}");
        }
        println!("complement corners:");
        for c in &doc.corners {
            println!("  {:<12} dim {}", c.to_string(), strand_dim(&blocks, c));
        }
        println!("suggested nu: {}", doc.suggested_nu);
        if blocks.s() == 2 {
            print!("{}", region_ascii(&blocks, &gamma)?);
        }
    }
    if let Some(path) = plot {
        if blocks.s() != 2 {
            return Err(CliError::Usage(format!(
                "--plot needs exactly two blocks, got {}; listing printed, no plot written",
                blocks.s()
            )));
        }
        write_atomic(&path, &region_svg(&blocks, &gamma)?)?;
    }
    Ok(())
}

fn cmd_matrix(file: &Path, nu: Option<MultiDegree>, out: Option<PathBuf>) -> Result<(), CliError> {
    let inst = &problem::load(file)?;
    let nu = choose_nu(inst, nu)?;
    for w in strand_warnings(inst, &nu)? {
        eprintln!("warning: {w}");
    }
    let m = representation_matrix(inst, &nu)?;
    emit(out.as_deref(), &to_json(&m.to_document(inst.vars())))
}

fn cmd_implicitize(file: &Path, run: &RunArgs, out: Option<PathBuf>, json: bool) -> Result<(), CliError> {
    let inst = &problem::load(file)?;
    let nu = choose_nu(inst, run.nu.clone())?;
    let opts = ImplicitOptions {
        nu: Some(nu),
        samples: run.samples,
        seed: run.seed,
        rank_points: run.points,
        ..Default::default()
    };
    let res = implicitize(inst, &opts).map_err(|e| match e {
        CoreError::InvalidInstance(msg) => CliError::Validation(msg),
        e => CliError::Core(e),
    })?;
    for w in &res.warnings {
        eprintln!("warning: {w}");
    }
    let doc = res.to_document(inst.vars());
    let text = if json { to_json(&doc) } else { human_result(&doc) };
    emit(out.as_deref(), &text)?;
    if !res.verified {
        return Err(CliError::Unverified("result does not vanish on the parametrization".into()));
    }
    Ok(())
}

fn human_result(doc: &ImplicitResultDoc) -> String {
    let ranks = &doc.specialized_ranks;
    let (lo, hi) = (ranks.iter().min().unwrap_or(&0), ranks.iter().max().unwrap_or(&0));
    let expected = doc.expected_degree.map(|e| format!(" (predicted {e})")).unwrap_or_default();
    format!(
        "nu: {}\nM_nu: {} x {}, generic rank {}\nrank at {} image points: {}..{}{}\nmethod: {}\ndegree: {}{}\nverified: {}\nimplicit equation:\n{}\n",
        doc.nu,
        doc.rows,
        doc.cols,
        doc.generic_rank,
        ranks.len(),
        lo,
        hi,
        if doc.rank_drop_passed { " (drop confirmed)" } else { " (NO drop at some point)" },
        serde_json::to_value(doc.method).unwrap().as_str().unwrap_or_default(),
        doc.degree,
        expected,
        if doc.verified { "yes" } else { "no" },
        doc.polynomial
    )
}

fn cmd_verify(file: &Path, poly: &Path, json: bool) -> Result<(), CliError> {
    let inst = &problem::load(file)?;
    let text = std::fs::read_to_string(poly).map_err(|e| CliError::Io(format!("{}: {e}", poly.display())))?;
    let poly_text = match serde_json::from_str::<ImplicitResultDoc>(&text) {
        Ok(doc) => doc.polynomial,
        Err(_) => text.trim().trim_end_matches(';').to_string(),
    };
    let delta = parse_poly(&poly_text, inst.vars(), Ring::Target)
        .map_err(|e| CliError::Validation(format!("{}: {e}", poly.display())))?;
    let verified = verify_implicit(&delta, inst).map_err(|e| match e {
        CoreError::ZeroPolynomial => CliError::Validation("the zero polynomial vanishes everywhere; nothing to verify".into()),
        e => CliError::Core(e),
    })?;
    if json {
        print!("{}", to_json(&serde_json::json!({ "verified": verified })));
    } else {
        println!("verified: {}", if verified { "yes" } else { "no" });
    }
    if !verified {
        return Err(CliError::Unverified("polynomial does not vanish on the parametrization".into()));
    }
    Ok(())
}
