use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fixfree::arith::{Field, GaussianRational, Rational};
use fixfree::catalog::{build, CatalogError, Family};
use fixfree::fixpoint::{classify, lemma_check, meromorphic_fixed_nonempty};
use fixfree::ideal::IdealError;
use fixfree::io::{
    analyze_any, parse_center, parse_pairs, parse_polynomial, ClassificationOut, ClosureOut, LemmaOut, MapFile,
    MapFileError, ParseError, Report, TransferOut,
};
use fixfree::lab::{closure_demo, ClosureError};
use fixfree::poly::affine_vars;
use fixfree::proj::{degree_report, AnyMap, ProjError, ProjMap, Space};
use fixfree::transfer::{check_hypotheses, find_center, transfer_map, TransferError, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "fixfree", version, about = "Fixed points of rational self-maps of P2 and P1xP1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the fixed points of a map and report its degrees.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write a catalog map to a map file.
    Generate {
        /// example22, example23, even, odd, power, bidegree or closure.
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: Option<usize>,
        /// `a1,b1;a2,b2;...`
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        allow_large: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the root condition for `(z2 / z1^k, P / Q)`.
    VerifyLemma {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Move a P1xP1 map to P2 through an elementary transformation.
    Transfer {
        #[arg(long)]
        input: PathBuf,
        /// `a,b`; either entry may be `inf`.
        #[arg(long, conflicts_with = "auto_center", required_unless_present = "auto_center")]
        center: Option<String>,
        #[arg(long)]
        auto_center: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Topological, skew and algebraic degrees and the graph volume.
    Degree {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verdicts, degrees and graph distances along the closure family.
    Converge {
        #[arg(long, default_value_t = 32)]
        n_max: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Invalid(String),
    /// An internal search or solver gave up: exit 3.
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Limit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Limit(m) => m,
        }
    }
}

impl From<ProjError> for Failure {
    fn from(e: ProjError) -> Self {
        match e {
            ProjError::Ideal(IdealError::NoSeparatingForm) => Failure::Limit(e.to_string()),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<MapFileError> for Failure {
    fn from(e: MapFileError) -> Self {
        match e {
            MapFileError::Proj(p) => p.into(),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Proj(p) => p.into(),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<TransferError> for Failure {
    fn from(e: TransferError) -> Self {
        match e {
            TransferError::SearchExhausted(_) => Failure::Limit(e.to_string()),
            TransferError::Proj(p) => p.into(),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<ClosureError> for Failure {
    fn from(e: ClosureError) -> Self {
        match e {
            ClosureError::Proj(p) => p.into(),
            ClosureError::Catalog(c) => c.into(),
            e => Failure::Invalid(e.to_string()),
        }
    }
}

fn read_map(path: &Path) -> Result<(MapFile, AnyMap), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let file = MapFile::from_json(&text)?;
    let map = file.to_map()?;
    Ok((file, map))
}

fn emit(json: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            std::fs::write(path, format!("{json}\n")).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{json}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Invalid(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

fn family(
    name: &str,
    d: Option<usize>,
    pairs: Option<&str>,
    k: Option<u32>,
    n: Option<u64>,
    allow_large: bool,
) -> Result<Family, Failure> {
    let need = |flag: &str| Failure::Invalid(format!("family {name} needs --{flag}"));
    let pairs = pairs.map(parse_pairs).transpose()?;
    Ok(match name {
        "example22" => Family::Example22,
        "example23" => Family::Example23,
        "even" => Family::Even { d: d.ok_or_else(|| need("d"))?, pairs },
        "odd" => Family::Odd { d: d.ok_or_else(|| need("d"))?, pairs },
        "power" => Family::Power { k: k.ok_or_else(|| need("k"))? },
        "bidegree" => Family::Bidegree { k: k.ok_or_else(|| need("k"))?, allow_large },
        "closure" => Family::Closure { n: n.ok_or_else(|| need("n"))? },
        other => return Err(Failure::Invalid(format!("unknown family {other:?}"))),
    })
}

fn lemma<F: Field>(p: &str, q: &str, k: u32) -> Result<LemmaOut, Failure> {
    if k == 0 {
        return Err(Failure::Invalid("k must be positive".into()));
    }
    let vars = affine_vars();
    let pp = parse_polynomial::<F>(p, &vars)?;
    let qq = parse_polynomial::<F>(q, &vars)?;
    Ok(LemmaOut::new(p, q, k, &lemma_check(&pp, &qq, k)))
}

/// Returns the report section and whether the hypotheses held.
fn transfer<F: Field>(
    f: &ProjMap<F>,
    center: Option<&str>,
    seed: u64,
    budget: usize,
) -> Result<(TransferOut, bool), Failure> {
    if f.source() != Space::P1xP1 {
        return Err(Failure::Invalid("transfer needs a map of P1xP1".into()));
    }
    let (c, hypotheses) = match center {
        Some(text) => {
            let c = parse_center::<F>(text)?;
            let h = check_hypotheses(f, &c)?;
            (c, h)
        }
        None => find_center(f, seed, budget)?,
    };
    if !hypotheses.all_pass() {
        let out = TransferOut {
            center: c.to_string(),
            hypotheses,
            all_pass: false,
            transferred: None,
            classification: None,
            degree: None,
        };
        return Ok((out, false));
    }
    let g = transfer_map(f, &c)?;
    let cls = classify(&g)?;
    let mero = meromorphic_fixed_nonempty(&g)?;
    let degree = match degree_report(&g, seed) {
        Ok(d) => Some(d),
        Err(ProjError::NotDominant) => None,
        Err(e) => return Err(e.into()),
    };
    let out = TransferOut {
        center: c.to_string(),
        hypotheses,
        all_pass: true,
        transferred: Some(MapFile::from_map(&g, Some("transferred")).map_err(|e| Failure::Invalid(e.to_string()))?),
        classification: Some(ClassificationOut::new(&g, &cls, mero)),
        degree,
    };
    Ok((out, true))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { input, output, seed } => {
            let (file, map) = read_map(&input)?;
            let (classification, degree) = analyze_any(&map, seed)?;
            let mut r = Report::new("analyze");
            r.map = Some(file);
            r.classification = Some(classification);
            r.degree = degree;
            emit(&r.to_json(), output.as_deref())
        }
        Command::Generate { family: name, d, pairs, k, n, allow_large, output } => {
            let fam = family(&name, d, pairs.as_deref(), k, n, allow_large)?;
            let map = build(&fam)?;
            let mut file = MapFile::from_any(&map, Some(fam.name())).map_err(|e| Failure::Invalid(e.to_string()))?;
            file.provenance = Some(std::env::args().skip(1).collect::<Vec<_>>().join(" "));
            emit(&file.to_json(), output.as_deref())
        }
        Command::VerifyLemma { p, q, k, field, output } => {
            let out = match field.as_str() {
                "Q" => lemma::<Rational>(&p, &q, k)?,
                "Q(i)" => lemma::<GaussianRational>(&p, &q, k)?,
                other => return Err(Failure::Invalid(format!("unknown field {other:?}"))),
            };
            if !out.passed {
                eprintln!("lemma fails: {:?}", out.outcome);
            }
            let mut r = Report::new("verify-lemma");
            r.lemma = Some(out);
            emit(&r.to_json(), output.as_deref())
        }
        Command::Transfer { input, center, auto_center: _, seed, budget, output } => {
            let (file, map) = read_map(&input)?;
            let (out, ok) = match &map {
                AnyMap::Rational(f) => transfer(f, center.as_deref(), seed, budget)?,
                AnyMap::Gaussian(f) => transfer(f, center.as_deref(), seed, budget)?,
            };
            let center_text = out.center.clone();
            let mut r = Report::new("transfer");
            r.map = Some(file);
            r.transfer = Some(out);
            emit(&r.to_json(), output.as_deref())?;
            if ok {
                Ok(())
            } else {
                Err(Failure::Invalid(format!("transfer hypotheses fail at {center_text}")))
            }
        }
        Command::Degree { input, seed, output } => {
            let (file, map) = read_map(&input)?;
            let d = match &map {
                AnyMap::Rational(f) => degree_report(f, seed)?,
                AnyMap::Gaussian(f) => degree_report(f, seed)?,
            };
            let mut r = Report::new("degree");
            r.map = Some(file);
            r.degree = Some(d);
            emit(&r.to_json(), output.as_deref())
        }
        Command::Converge { n_max, samples, seed, output } => {
            let report = closure_demo(n_max, samples, seed)?;
            let mut r = Report::new("converge");
            r.closure = Some(ClosureOut::from(&report));
            emit(&r.to_json(), output.as_deref())
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("FIXFREE_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Invalid(format!("FIXFREE_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Invalid(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
