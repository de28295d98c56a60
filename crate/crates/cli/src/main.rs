//! `minflat`: verify, construct, enumerate, reduce and look up certificates
//! for minimal isometric immersions of flat tori into spheres.

mod input;

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use minflat_core::certificate::{Certificate, CertificateBody};
use minflat_core::constructions::{
    bryant_2torus, catalog_ids, catalog_item, construct_pencil_3torus, construct_rational,
    pythagorean_family, pythagorean_matrix_data, Bryant2TorusParams, PythagoreanParams,
    RationalPipelineConfig, Require,
};
use minflat_core::immersion::embed::{embeddedness, Embeddedness, EmbeddingCertificate};
use minflat_core::immersion::{reduce_target_dimension, Verdict, VerificationReport, DEFAULT_TOL};
use minflat_core::lattice::{self, NormClassList, DEFAULT_BOX_BOUND};
use minflat_core::linalg::{self, SymMatrix};
use minflat_core::scalar::rational::parse_rational;
use minflat_core::scalar::{Rational, Scalar};
use minflat_core::Error;

const CATALOG_HELP: &str = "\
Catalog ids:
  clifford-3     Clifford 3-torus in S^5
  ex-rank5       quadratic irrational 3-torus in S^9, rank 5 outer products
  quadratic-s7   quadratic irrational 3-torus embedded in S^7
  cubic-s7-a     cubic irrational 3-torus in S^7
  cubic-s7-b     cubic irrational 3-torus in S^7
  quartic-s7     quartic irrational 3-torus embedded in S^7";

/// Exit statuses (sysexits style for usage, data and input errors).
const EXIT_FALSIFIED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_NOINPUT: u8 = 66;

/// Ellipsoid balls with more expected lattice points than this are not
/// enumerated for the eigenfunction index.
const INDEX_POINT_BUDGET: f64 = 2e6;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
    pub fn usage(m: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, m)
    }
    pub fn parse(m: impl Into<String>) -> Self {
        Self::new(EXIT_DATA, m)
    }
    pub fn io(m: impl Into<String>) -> Self {
        Self::new(EXIT_NOINPUT, m)
    }
    /// Core errors raised while building or enumerating.
    fn core(e: Error) -> Self {
        match e {
            Error::Parse(_) => Self::new(EXIT_DATA, e.to_string()),
            _ => Self::new(EXIT_INCONCLUSIVE, e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "minflat",
    version,
    about = "Certificates for minimal isometric immersions of flat tori into spheres",
    after_help = CATALOG_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a certificate file; exit 0 verified, 1 falsified, 2 indeterminate.
    Verify(VerifyArgs),
    /// Build a certificate with one of the constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// List lattice vectors of the dual lattice by norm.
    Enumerate(EnumerateArgs),
    /// Shrink N to at most n(n+1)/2 while keeping Q and the immersion minimal.
    Reduce(ReduceArgs),
    /// List catalog entries or write one as a certificate.
    #[command(after_help = CATALOG_HELP)]
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    path: PathBuf,
    /// Absolute tolerance for floating residuals.
    #[arg(long, env = "MINFLAT_TOL", default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Search all of [0,1)^n for a witness instead of stopping at the fast checks.
    #[arg(long)]
    exhaustive_embedding: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Refuse certificates that cannot be checked in exact arithmetic.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct Output {
    /// Write the certificate here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Rational Gram matrix: rational points on the ellipsoid and an exact LP.
    Rational {
        /// Gram matrix of the dual lattice: a text file or I<n>.
        #[arg(long)]
        gram: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampled points (default 12·n(n+1)/2).
        #[arg(long)]
        samples: Option<usize>,
        /// Cap on the common denominator μ.
        #[arg(long, default_value_t = 10_000)]
        max_denominator: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Irrational 3-torus from integer frequency vectors (columns of Y).
    Pencil {
        /// Text file with 3 rows; column j is Y_j.
        #[arg(long = "Y", value_name = "FILE")]
        y: PathBuf,
        /// Force a path; by default rank 5 is tried first, then rank 4.
        #[arg(long, value_enum)]
        require: Option<RequireArg>,
        #[command(flatten)]
        out: Output,
    },
    /// The 12-class 3-torus attached to a primitive Pythagorean triple.
    Pythagorean {
        #[arg(long, num_args = 3, value_names = ["P", "Q", "R"], required = true)]
        triple: Vec<i64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r2: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi2: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        psi1: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        psi2: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Flat 2-tori with a = m/n in S^7 (S^5 at the ends of the ρ range).
    Bryant {
        #[arg(long, num_args = 2, value_names = ["M", "N"], required = true)]
        mn: Vec<i64>,
        /// ρ as `p/q` (exact) or a decimal.
        #[arg(long, required_unless_present = "rho_b", conflicts_with = "rho_b")]
        rho: Option<String>,
        /// ρ·b as `p/q`, so ρ = K/b stays exact.
        #[arg(long, value_name = "K")]
        rho_b: Option<String>,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RequireArg {
    Rank5,
    Rank4,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["target", "shortest", "spectrum"]))]
struct EnumerateArgs {
    /// Gram matrix of the dual lattice: a text file or I<n>.
    #[arg(long)]
    gram: String,
    /// Norm yᵗQy to list.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    shortest: bool,
    /// Number of distinct eigenvalues to print, 0 included.
    #[arg(long, value_name = "K")]
    spectrum: Option<usize>,
    /// Coordinate cap for the search box.
    #[arg(long, default_value_t = DEFAULT_BOX_BOUND)]
    max_coord: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ReduceArgs {
    path: PathBuf,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["list", "id"]))]
struct CatalogArgs {
    #[arg(long)]
    list: bool,
    id: Option<String>,
    #[command(flatten)]
    out: Output,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Construct(c) => construct(c),
        Command::Enumerate(a) => enumerate(a),
        Command::Reduce(a) => reduce(a),
        Command::Catalog(a) => catalog(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("minflat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn exit_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Verified => 0,
        Verdict::Falsified(_) => EXIT_FALSIFIED,
        Verdict::Indeterminate(_) => EXIT_INCONCLUSIVE,
    }
}

fn load_certificate(path: &Path) -> Result<Certificate, Failure> {
    let text = input::read(path)?;
    Certificate::from_json(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn certificate_is_exact(cert: &Certificate) -> bool {
    match &cert.body {
        CertificateBody::Homogeneous(d) => d.is_exact(),
        CertificateBody::General { .. } => false,
    }
}

fn embedding_value(e: &Result<Embeddedness, Error>) -> Value {
    match e {
        Ok(Embeddedness::Embedded(EmbeddingCertificate::UnitMinor(idx))) => {
            json!({"status": "embedded", "unit_minor": idx})
        }
        Ok(Embeddedness::Embedded(EmbeddingCertificate::Exhaustive)) => {
            json!({"status": "embedded", "search": "exhaustive"})
        }
        Ok(Embeddedness::NotEmbedded { witness }) => {
            json!({"status": "not_embedded", "witness": witness.iter().map(|r| r.to_string()).collect::<Vec<_>>()})
        }
        Ok(Embeddedness::Unknown) => json!({"status": "unknown"}),
        Err(err) => json!({"status": "unknown", "reason": err.to_string()}),
    }
}

fn embedding_text(e: &Result<Embeddedness, Error>) -> String {
    match e {
        Ok(Embeddedness::Embedded(EmbeddingCertificate::UnitMinor(idx))) => {
            format!("embedded (unimodular columns {idx:?})")
        }
        Ok(Embeddedness::Embedded(EmbeddingCertificate::Exhaustive)) => {
            "embedded (exhaustive search)".into()
        }
        Ok(Embeddedness::NotEmbedded { witness }) => {
            let w: Vec<String> = witness.iter().map(|r| r.to_string()).collect();
            format!("not embedded (u = ({}) has uY integral)", w.join(", "))
        }
        Ok(Embeddedness::Unknown) => {
            "unknown (no unimodular minor; try --exhaustive-embedding)".into()
        }
        Err(err) => format!("unknown ({err})"),
    }
}

fn max_eta(r: &[minflat_core::immersion::EtaResidual]) -> String {
    match r
        .iter()
        .map(|e| e.residual)
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))))
    {
        Some(v) => format!("{v:e} over {} η", r.len()),
        None => "none".into(),
    }
}

fn report_text(
    cert: &Certificate,
    rep: &VerificationReport,
    emb: &Result<Embeddedness, Error>,
) -> String {
    let y = cert.y();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "kind        {} (n = {}, N = {}, sphere S^{})",
        cert.kind(),
        y.nrows(),
        y.ncols(),
        2 * y.ncols() - 1
    );
    let _ = writeln!(
        s,
        "arithmetic  {}",
        if rep.exact { "exact" } else { "floating point" }
    );
    let _ = writeln!(s, "tolerance   {:e}", rep.tolerance);
    let _ = writeln!(s, "ellipsoid   {:e}", rep.ellipsoid);
    let _ = writeln!(s, "flat        {:e}", rep.flat);
    let _ = writeln!(s, "weight sum  {:e}", rep.weight_sum);
    if let Some(d) = rep.diagonal_blocks {
        let _ = writeln!(s, "diag blocks {d:e}");
    }
    let _ = writeln!(s, "unit cos    {}", max_eta(&rep.unit_cos));
    let _ = writeln!(s, "unit sin    {}", max_eta(&rep.unit_sin));
    let _ = writeln!(s, "iso cos     {}", max_eta(&rep.isometry_cos));
    let _ = writeln!(s, "iso sin     {}", max_eta(&rep.isometry_sin));
    let _ = writeln!(s, "psd margin  {:e}", rep.psd_margin);
    let _ = writeln!(s, "embedding   {}", embedding_text(emb));
    let verdict = match &rep.verdict {
        Verdict::Verified => "verified".to_string(),
        Verdict::Falsified(r) => format!("falsified: {r}"),
        Verdict::Indeterminate(r) => format!("indeterminate: {r}"),
    };
    let _ = write!(s, "verdict     {verdict}");
    s
}

fn verify(a: VerifyArgs) -> Result<u8, Failure> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(Failure::usage(format!(
            "tolerance must be positive, got {}",
            a.tol
        )));
    }
    let cert = load_certificate(&a.path)?;
    if a.exact && !certificate_is_exact(&cert) {
        return Err(Failure::usage(
            "--exact needs a homogeneous certificate with exact scalars",
        ));
    }
    let rep = cert
        .verify(a.tol)
        .map_err(|e| Failure::parse(format!("{}: {e}", a.path.display())))?;
    let emb = embeddedness(cert.y(), a.exhaustive_embedding);
    match a.format {
        Format::Text => println!("{}", report_text(&cert, &rep, &emb)),
        Format::Json => {
            let mut v = serde_json::to_value(&rep).expect("report serializes");
            v["embedding"] = embedding_value(&emb);
            println!(
                "{}",
                serde_json::to_string_pretty(&v).expect("value serializes")
            );
        }
    }
    Ok(exit_code(&rep.verdict))
}

/// Degree of the number field holding Q and the weights; None when any
/// scalar is floating point.
fn field_degree(cert: &Certificate) -> Option<usize> {
    let weights: &[Scalar] = match &cert.body {
        CertificateBody::Homogeneous(d) => &d.weights,
        CertificateBody::General { .. } => &[],
    };
    let mut degree = 1;
    for s in cert.q().packed().iter().chain(weights) {
        match s {
            Scalar::Float(_) => return None,
            Scalar::Algebraic(_) => degree = degree.max(s.number_field().map_or(1, |f| f.degree())),
            Scalar::Rational(_) => {}
        }
    }
    Some(degree)
}

/// Estimated lattice points with yᵗQy ≤ 1: vol(B_n)/√det Q.
fn expected_ball_points(q: &SymMatrix<Scalar>) -> f64 {
    let n = q.dim();
    let mut vol = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = n;
    while k >= 2 {
        vol *= 2.0 * PI / k as f64;
        k -= 2;
    }
    vol / linalg::det(q).to_f64().sqrt()
}

fn summary(cert: &Certificate) -> String {
    let y = cert.y();
    let big_n = y.ncols();
    let degree = field_degree(cert).map_or("floating point".to_string(), |d| d.to_string());
    let emb = embedding_text(&embeddedness(y, true));
    let index = if expected_ball_points(cert.q()) <= INDEX_POINT_BUDGET {
        match lattice::eigenfunction_index(cert.q(), &Scalar::from(1)) {
            Ok(k) => k.to_string(),
            Err(e) => format!("not computed ({e})"),
        }
    } else {
        "not computed (too many lattice points below norm 1)".into()
    };
    format!(
        "N = {big_n}, sphere dimension 2N-1 = {}\nfield degree: {degree}\nembedding: {emb}\neigenfunction index: {index}",
        2 * big_n - 1
    )
}

/// Certificate to `-o` (summary on stdout) or to stdout (summary on stderr).
fn emit(cert: &Certificate, out: &Output, note: &str) -> Result<u8, Failure> {
    let text = cert.to_json().map_err(Failure::core)?;
    match &out.output {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))?;
            println!("{note}");
        }
        None => {
            print!("{text}");
            eprintln!("{note}");
        }
    }
    Ok(0)
}

fn checked(cert: Certificate) -> Result<Certificate, Failure> {
    let rep = cert.verify(DEFAULT_TOL).map_err(Failure::core)?;
    match rep.verdict {
        Verdict::Verified => Ok(cert),
        v => Err(Failure::new(
            EXIT_INCONCLUSIVE,
            format!("constructed certificate did not verify: {v:?}"),
        )),
    }
}

fn construct(c: Construct) -> Result<u8, Failure> {
    match c {
        Construct::Rational {
            gram,
            seed,
            samples,
            max_denominator,
            out,
        } => {
            let q = input::load_gram(&gram)?.to_rational().ok_or_else(|| {
                Failure::usage("the rational pipeline needs a Gram matrix with rational entries")
            })?;
            let mut cfg = RationalPipelineConfig::new(q, seed);
            if let Some(k) = samples {
                cfg.sample_count = k;
            }
            cfg.max_denominator = max_denominator;
            let r = construct_rational(&cfg).map_err(Failure::core)?;
            let cert = checked(
                Certificate::homogeneous(r.data)
                    .with_metadata("construction", "rational")
                    .with_metadata("seed", seed)
                    .with_metadata("mu", r.mu)
                    .with_metadata("scale", r.scale.to_string()),
            )?;
            let factor = &r.scale * Rational::from_integer((r.mu * r.mu).into());
            let note = format!(
                "{}\nmu = {}, certificate Gram = input / {} (s = {}, s mu^2)",
                summary(&cert),
                r.mu,
                factor,
                r.scale
            );
            emit(&cert, &out, &note)
        }
        Construct::Pencil { y, require, out } => {
            let ym = input::parse_int_matrix(&input::read(&y)?)?;
            let r = match require {
                Some(RequireArg::Rank5) => construct_pencil_3torus(&ym, Require::Rank5),
                Some(RequireArg::Rank4) => construct_pencil_3torus(&ym, Require::Rank4),
                None => match construct_pencil_3torus(&ym, Require::Rank5) {
                    Err(Error::InvalidParameters(_)) if ym.ncols() == 4 => {
                        construct_pencil_3torus(&ym, Require::Rank4)
                    }
                    other => other,
                },
            }
            .map_err(Failure::core)?;
            let mut cert = Certificate::homogeneous(r.data)
                .with_metadata("construction", "pencil")
                .with_metadata("degree", r.report.degree)
                .with_metadata("minpoly", r.report.minpoly.clone())
                .with_metadata("generator", r.report.generator);
            if let Some(t0) = &r.t0 {
                cert = cert.with_metadata("t0", t0.to_f64());
            }
            let cert = checked(cert)?;
            emit(&cert, &out, &summary(&cert))
        }
        Construct::Pythagorean {
            triple,
            r1,
            r2,
            phi1,
            phi2,
            psi1,
            psi2,
            out,
        } => {
            let t = (triple[0], triple[1], triple[2]);
            let base = PythagoreanParams::centroid(t).map_err(Failure::core)?;
            let params = PythagoreanParams {
                r1,
                r2,
                phi1,
                phi2,
                psi1,
                psi2,
                ..base
            };
            let cert = if r1 == 0.0 && r2 == 0.0 {
                Certificate::homogeneous(
                    pythagorean_matrix_data(t, &params.a).map_err(Failure::core)?,
                )
            } else {
                let (g, q, y) = pythagorean_family(&params).map_err(Failure::core)?;
                Certificate::general(q, y, g)
            };
            let cert = checked(
                cert.with_metadata("construction", "pythagorean")
                    .with_metadata("triple", triple.clone())
                    .with_metadata("R", vec![r1, r2])
                    .with_metadata("phi", vec![phi1, phi2])
                    .with_metadata("psi", vec![psi1, psi2]),
            )?;
            emit(&cert, &out, &summary(&cert))
        }
        Construct::Bryant {
            mn,
            rho,
            rho_b,
            out,
        } => {
            let (m, n) = (mn[0], mn[1]);
            let params = match (rho.as_deref(), rho_b.as_deref()) {
                (_, Some(k)) => Bryant2TorusParams::with_rho_times_b(
                    m,
                    n,
                    parse_rational(k).map_err(|e| Failure::usage(format!("--rho-b: {e}")))?,
                ),
                (Some(r), None) => match parse_rational(r) {
                    Ok(x) => Bryant2TorusParams::with_rho(m, n, x),
                    Err(_) => Bryant2TorusParams::new(
                        m,
                        n,
                        r.parse::<f64>()
                            .map_err(|_| Failure::usage(format!("--rho: invalid number `{r}`")))?,
                    ),
                },
                (None, None) => return Err(Failure::usage("one of --rho and --rho-b is required")),
            };
            let data = bryant_2torus(&params).map_err(Failure::core)?;
            let cert = checked(
                Certificate::homogeneous(data)
                    .with_metadata("construction", "bryant")
                    .with_metadata("mn", vec![m, n])
                    .with_metadata("rho", params.rho_sq.to_f64().sqrt()),
            )?;
            emit(&cert, &out, &summary(&cert))
        }
    }
}

fn classes_value(list: &NormClassList) -> Value {
    json!({
        "target": list.target.to_string(),
        "complete": list.complete,
        "count": list.len(),
        "classes": list.classes,
    })
}

fn classes_text(list: &NormClassList) -> String {
    let mut s = format!(
        "norm {}: {} classes (±){}",
        list.target,
        list.len(),
        if list.complete {
            ""
        } else {
            " [search clipped by the coordinate cap]"
        }
    );
    for c in &list.classes {
        let row: Vec<String> = c.iter().map(i64::to_string).collect();
        let _ = write!(s, "\n{}", row.join(" "));
    }
    s
}

fn enumerate(a: EnumerateArgs) -> Result<u8, Failure> {
    let q = input::load_gram(&a.gram)?;
    if !linalg::is_positive_definite(&q) {
        return Err(Failure::core(Error::NotPositiveDefinite));
    }
    if let Some(k) = a.spectrum {
        let spec = lattice::spectrum(&q, k).map_err(Failure::core)?;
        match a.format {
            Format::Text => {
                for e in spec {
                    println!("{:.12} {} (norm {})", e.eigenvalue, e.multiplicity, e.norm);
                }
            }
            Format::Json => {
                let v: Vec<Value> = spec
                    .iter()
                    .map(|e| json!({"eigenvalue": e.eigenvalue, "multiplicity": e.multiplicity, "norm": e.norm.to_string()}))
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&v).expect("value serializes")
                );
            }
        }
        return Ok(0);
    }
    let list = if a.shortest {
        lattice::shortest_vectors(&q).map_err(Failure::core)?.1
    } else {
        let t = input::parse_scalar(a.target.as_deref().expect("group requires a mode"))?;
        lattice::enumerate_norm(&q, &t, Some(a.max_coord)).map_err(Failure::core)?
    };
    match a.format {
        Format::Text => println!("{}", classes_text(&list)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&classes_value(&list)).expect("value serializes")
        ),
    }
    Ok(0)
}

fn reduce(a: ReduceArgs) -> Result<u8, Failure> {
    let cert = load_certificate(&a.path)?;
    let CertificateBody::Homogeneous(data) = &cert.body else {
        return Err(Failure::usage("reduce needs a homogeneous certificate"));
    };
    let reduced = reduce_target_dimension(data).map_err(|e| match e {
        Error::Unverified(_) => Failure::new(EXIT_FALSIFIED, e.to_string()),
        other => Failure::core(other),
    })?;
    let note = format!(
        "S^{} -> S^{} (N = {} -> {})",
        data.sphere_dim(),
        reduced.sphere_dim(),
        data.classes(),
        reduced.classes()
    );
    let mut out = Certificate::homogeneous(reduced);
    out.metadata = cert.metadata.clone();
    let out_cert = out.with_metadata("reduced_from", data.classes());
    emit(&out_cert, &a.out, &note)
}

fn catalog(a: CatalogArgs) -> Result<u8, Failure> {
    if a.list {
        for (id, desc) in catalog_ids() {
            println!("{id:<14} {desc}");
        }
        return Ok(0);
    }
    let id = a.id.expect("group requires an id");
    let item = catalog_item(&id)
        .map_err(|e| Failure::usage(format!("{e}; run `minflat catalog --list`")))?;
    let cert = Certificate::homogeneous(item.data.clone())
        .with_metadata("catalog_id", item.id)
        .with_metadata("description", item.description);
    emit(&cert, &a.out, &summary(&cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn help_lists_every_catalog_id() {
        for (id, _) in catalog_ids() {
            assert!(CATALOG_HELP.contains(id), "{id}");
        }
        Cli::command().debug_assert();
    }

    #[test]
    fn ball_estimate_for_identity() {
        let est = expected_ball_points(&SymMatrix::identity(3));
        assert!((est - 4.0 * PI / 3.0).abs() < 1e-12);
        let est = expected_ball_points(&SymMatrix::identity(2));
        assert!((est - PI).abs() < 1e-12);
    }

    #[test]
    fn exit_codes_follow_the_verdict() {
        assert_eq!(exit_code(&Verdict::Verified), 0);
        assert_eq!(exit_code(&Verdict::Falsified(String::new())), 1);
        assert_eq!(exit_code(&Verdict::Indeterminate(String::new())), 2);
    }

    #[test]
    fn field_degree_of_catalog_entries() {
        for (id, want) in [("clifford-3", 1), ("ex-rank5", 2), ("quartic-s7", 4)] {
            let cert = Certificate::homogeneous(catalog_item(id).unwrap().data);
            assert_eq!(field_degree(&cert), Some(want), "{id}");
        }
    }
}
