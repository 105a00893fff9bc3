//! `peakpoint`: boundary analysis, kissing paths, peak functions and the
//! boundary-set harness for compact planar sets.

use clap::{Args, Parser, Subcommand};
use peakpoint_core::boundary_sets::{harness_points, verify_all, HarnessConfig};
use peakpoint_core::kissing_path::{certify, kissing_path_between};
use peakpoint_core::peaking::{peak_function, PeakConfig};
use peakpoint_core::region::{BoundaryClass, Region, RegionSpec};
use peakpoint_core::svg::Scene;
use peakpoint_core::{Complex, Error};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_INVALID_REGION: u8 = 4;
const EXIT_CONSTRUCTION: u8 = 5;
const EXIT_REFUSED: u8 = 6;
const EXIT_IO: u8 = 7;

/// Column header of the boundary sample table.
const ANALYZE_COLUMNS: &str = "x,y,class,ca,kd_center_x,kd_center_y,kd_radius";

#[derive(Parser, Debug)]
#[command(name = "peakpoint", version, about = "Peak points of A(K) for compact planar sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify boundary samples and find kissing disks.
    Analyze(Common),
    /// Build and certify a kissing path through two boundary points.
    Kisspath {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_point)]
        z1: Complex,
        #[arg(long, value_parser = parse_point)]
        z2: Complex,
    },
    /// Construct a peak function at a boundary point.
    Peakfn {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_point)]
        z0: Complex,
        /// Number J of (0,1) sequence functions.
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Peak, bai, quarter and strong-boundary checks over sampled boundary points.
    VerifyAll {
        #[command(flatten)]
        common: Common,
        /// Type I boundary points to check.
        #[arg(long, default_value_t = 3)]
        points: usize,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Region file (JSON).
    #[arg(long)]
    region: PathBuf,
    /// Grid pitch.
    #[arg(long)]
    pitch: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn parse_point(s: &str) -> Result<Complex, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let x: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let y: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(format!("non-finite point {s:?}"));
    }
    Ok(Complex::new(x, y))
}

#[derive(Debug)]
struct Failure {
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
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidRegion(_) => EXIT_INVALID_REGION,
            Error::InteriorPoint(_) | Error::NotOnBoundary(_) | Error::TypeIIUnsupported(_) => EXIT_REFUSED,
            Error::CounterexampleFound(_) | Error::SurrogateFailed(_) | Error::CertificateFailed(_) => {
                EXIT_CHECK_FAILED
            }
            Error::CoincidentPoints | Error::ParameterOutOfRange(_) => EXIT_USAGE,
            _ => EXIT_CONSTRUCTION,
        };
        Failure::new(code, e.to_string())
    }
}

fn load_region(path: &Path) -> Result<Region, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let spec: RegionSpec =
        serde_json::from_str(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    Ok(Region::from_spec(&spec)?)
}

fn write(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn pitch_or(common: &Common, default: f64) -> Result<f64, Failure> {
    let p = common.pitch.unwrap_or(default);
    if !(p > 0.0 && p.is_finite()) {
        return Err(Failure::new(EXIT_USAGE, format!("pitch must be positive, got {p}")));
    }
    Ok(p)
}

fn analyze(common: &Common) -> Result<bool, Failure> {
    let k = load_region(&common.region)?;
    let spacing = pitch_or(common, 0.05)?;
    let samples = k.sample_boundary(spacing)?;
    let mut csv = format!("{ANALYZE_COLUMNS}\n");
    let mut scene = Scene::new();
    scene.region(&k);
    let (mut type1, mut type2, mut ca) = (0, 0, 0);
    for s in &samples {
        let kd = k.kissing_disk_at(s.point);
        let class = match s.class {
            BoundaryClass::TypeI => {
                type1 += 1;
                "TypeI"
            }
            BoundaryClass::TypeII => {
                type2 += 1;
                "TypeII"
            }
        };
        match &kd {
            Some(d) => {
                ca += 1;
                csv.push_str(&format!(
                    "{},{},{class},true,{},{},{}\n",
                    s.point.re, s.point.im, d.center.re, d.center.im, d.radius
                ));
            }
            None => csv.push_str(&format!("{},{},{class},false,,,\n", s.point.re, s.point.im)),
        }
        scene.dot(
            s.point,
            if s.class == BoundaryClass::TypeI {
                "#2ca02c"
            } else {
                "#ff7f0e"
            },
        );
    }
    write(&common.out, "boundary.csv", &csv)?;
    write(&common.out, "boundary.svg", &scene.to_svg(800.0))?;
    println!(
        "{} boundary samples: {type1} type I, {type2} type II, {ca} with kissing disks",
        samples.len()
    );
    Ok(true)
}

#[derive(Serialize)]
struct KissPathOutput<'a> {
    z1: Complex,
    z2: Complex,
    delta: f64,
    kd1: &'a peakpoint_core::region::KissingDisk,
    kd2: &'a peakpoint_core::region::KissingDisk,
    certificate: &'a peakpoint_core::kissing_path::PathCertificate,
    passed: bool,
}

fn kisspath(common: &Common, z1: Complex, z2: Complex) -> Result<bool, Failure> {
    if z1 == z2 {
        return Err(Failure::new(EXIT_USAGE, "z1 and z2 coincide"));
    }
    let k = load_region(&common.region)?;
    for z in [z1, z2] {
        match k.contains(z) {
            peakpoint_core::region::Location::Boundary => {}
            peakpoint_core::region::Location::Interior => return Err(Error::InteriorPoint(z).into()),
            peakpoint_core::region::Location::Exterior => return Err(Error::NotOnBoundary(z).into()),
        }
    }
    let kp = kissing_path_between(&k, z1, z2)?;
    let samples = 4 * kp.curve.sample(1024).len().max(1024);
    let cert = certify(&k, &kp.curve, samples);
    let passed = cert.passed();
    let out = KissPathOutput {
        z1,
        z2,
        delta: kp.delta,
        kd1: &kp.kd1,
        kd2: &kp.kd2,
        certificate: &cert,
        passed,
    };
    write(&common.out, "kisspath.json", &to_json(&out))?;
    write(&common.out, "curve.json", &to_json(&kp.curve))?;
    let mut scene = Scene::new();
    scene
        .region(&k)
        .curve(&kp.curve, "#d62728")
        .kissing_disk(&kp.kd1)
        .kissing_disk(&kp.kd2);
    write(&common.out, "kisspath.svg", &scene.to_svg(800.0))?;
    println!(
        "kissing path: {} arcs, certificate passed: {passed}",
        kp.curve.arcs.len()
    );
    Ok(passed)
}

fn peakfn(common: &Common, z0: Complex, count: usize) -> Result<bool, Failure> {
    let k = load_region(&common.region)?;
    let config = PeakConfig {
        count,
        pitch: pitch_or(common, PeakConfig::default().pitch)?,
        ..PeakConfig::default()
    };
    let p = peak_function(&k, z0, &config)?;
    let text = p.report.to_text();
    write(&common.out, "peakfn.txt", &text)?;
    write(&common.out, "peakfn.json", &to_json(&p.report))?;
    let mut scene = Scene::new();
    scene.region(&k).dot(z0, "#d62728").label(z0, "z0");
    if let Some(seq) = &p.report.sequence {
        for (i, n) in seq.nodes.iter().enumerate() {
            scene
                .circle(n.point, n.eps, "#1f77b4")
                .label(n.point, &format!("z{}", i + 1));
        }
    }
    write(&common.out, "peakfn.svg", &scene.to_svg(800.0))?;
    print!("{text}");
    Ok(p.report.passed())
}

fn verify(common: &Common, count: usize) -> Result<bool, Failure> {
    let k = load_region(&common.region)?;
    let mut config = HarnessConfig::default();
    if let Some(p) = common.pitch {
        config.pitch = pitch_or(common, p)?;
        config.peak.pitch = config.pitch;
    }
    let points = harness_points(&k, count, 0.05)?;
    let report = verify_all(&k, &points, &config);
    let text = report.to_text();
    write(&common.out, "verify.txt", &text)?;
    write(&common.out, "verify.json", &to_json(&report))?;
    print!("{text}");
    if report
        .shilov_error
        .as_deref()
        .is_some_and(|e| e.starts_with("counterexample"))
    {
        return Err(Failure::new(
            EXIT_CHECK_FAILED,
            report.shilov_error.clone().unwrap_or_default(),
        ));
    }
    Ok(report.passed())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Analyze(common) => analyze(common),
        Command::Kisspath { common, z1, z2 } => kisspath(common, *z1, *z2),
        Command::Peakfn { common, z0, count } => peakfn(common, *z0, *count),
        Command::VerifyAll { common, points } => verify(common, *points),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: one or more checks failed");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
