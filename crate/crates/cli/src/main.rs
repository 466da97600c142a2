use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use cwrithe::algebra::{format_rational, parse_rational, Rational};
use cwrithe::curve::{CurveError, Link, RationalSpaceCurve};
use cwrithe::harness::{
    scan_family, verify_center_independence, verify_isotopy_invariance, HarnessError, VerificationRun,
};
use cwrithe::io::{parse_curve_file, write_link, CurveInput, IoError};
use cwrithe::projection::{ProjectionCenter, ProjectionError, Projector};
use cwrithe::svg::render_svg;
use cwrithe::writhe::{diagram_from_projection, Diagram, WritheError, WritheReport};

#[derive(Parser)]
#[command(name = "cwrithe", version, about = "Encomplexed writhe of real rational links in RP^3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the encomplexed writhe of a link, or scan a family.
    Writhe {
        path: PathBuf,
        /// Projection center `a:b:c:d`; sampled when omitted.
        #[arg(long)]
        center: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check center independence and rigid isotopy invariance.
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = 20)]
        centers: usize,
        #[arg(long, default_value_t = 20)]
        isotopies: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write random validated curves of a given degree.
    Sample {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a signed diagram as SVG.
    Diagram {
        path: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        center: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// An error together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl std::fmt::Display) -> Self {
        Failure { code: 2, message: format!("input error: {message}") }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::input(e)
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        Failure::input(e)
    }
}

impl From<ProjectionError> for Failure {
    fn from(e: ProjectionError) -> Self {
        match e {
            ProjectionError::SamplingExhausted(_) => Failure { code: 3, message: format!("sampling exhausted: {e}") },
            other => Failure::input(other),
        }
    }
}

impl From<WritheError> for Failure {
    fn from(e: WritheError) -> Self {
        match e {
            WritheError::Projection(p) => p.into(),
            other => Failure { code: 2, message: format!("projection error: {other}") },
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::SamplingExhausted(_) => Failure { code: 3, message: format!("sampling exhausted: {e}") },
            HarnessError::Curve(c) => c.into(),
            HarnessError::Writhe(w) => w.into(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::input(format!("{}: {e}", path.display()))
}

fn parse_center(s: &str) -> Result<ProjectionCenter, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(Failure::input(format!("center {s:?} must have four coordinates a:b:c:d")));
    }
    let mut coords: Vec<Rational> = Vec::new();
    for p in parts {
        coords.push(parse_rational(p).ok_or_else(|| Failure::input(format!("cannot read {p:?} as a rational")))?);
    }
    let coords: [Rational; 4] = coords.try_into().expect("four coordinates");
    Ok(ProjectionCenter::new(coords)?)
}

fn diagram_for(link: &Link, center: Option<&str>, seed: u64) -> Result<Diagram, Failure> {
    let projector = Projector::new(link)?;
    let projection = match center {
        Some(c) => projector.project(&parse_center(c)?)?,
        None => projector.sample_generic_center(seed)?,
    };
    Ok(diagram_from_projection(projection)?)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| io_failure(path, e))
}

fn link_only(input: CurveInput) -> Result<Link, Failure> {
    input.into_link().ok_or_else(|| Failure::input("expected a link, found a family"))
}

fn cmd_writhe(path: &Path, center: Option<&str>, seed: u64, json_out: Option<&Path>) -> Result<(), Failure> {
    match parse_curve_file(path)? {
        CurveInput::Family(f) => {
            let scan = scan_family(&f, None, seed);
            print!("{}", scan.render());
            if let Some(out) = json_out {
                write_json(out, &json!({ "scan": scan, "jumps": scan.jumps() }))?;
            }
            Ok(())
        }
        CurveInput::Link(link) => {
            let diagram = diagram_for(&link, center, seed)?;
            let report = WritheReport::from_diagram(&diagram);
            println!("{}", report.summary());
            println!("center {}", diagram.center);
            if let Some(o) = report.oriented {
                println!("oriented Cw = {o}");
            }
            if let Some(lk) = &report.linking {
                for row in lk {
                    let r: Vec<String> = row.iter().map(format_rational).collect();
                    println!("linking [{}]", r.join(" "));
                }
            }
            let mut rows = Vec::new();
            if !diagram.loci.is_empty() {
                println!("{:<24} {:<10} {:>14} {:>14} {:>5}", "kind", "components", "first~", "second~", "sign");
            }
            for l in &diagram.loci {
                let (a, b) = (l.locus.first().to_f64(), l.locus.second().to_f64());
                let kind = format!("{:?}", l.locus.kind);
                let comps = format!("{},{}", l.locus.components.0, l.locus.components.1);
                println!("{kind:<24} {comps:<10} {a:>14.6} {b:>14.6} {:>5}", l.sign);
                rows.push(json!({ "kind": kind, "components": [l.locus.components.0, l.locus.components.1], "first": a, "second": b, "sign": l.sign }));
            }
            if let Some(out) = json_out {
                let linking: Option<Vec<Vec<String>>> = report
                    .linking
                    .as_ref()
                    .map(|m| m.iter().map(|r| r.iter().map(format_rational).collect()).collect());
                write_json(
                    out,
                    &json!({
                        "center": diagram.center.to_string(),
                        "unoriented": report.unoriented,
                        "oriented": report.oriented,
                        "linking": linking,
                        "certificate": diagram.projection.certificate,
                        "loci": rows,
                    }),
                )?;
            }
            Ok(())
        }
    }
}

fn cmd_verify(path: &Path, centers: usize, isotopies: usize, seed: u64, json_out: Option<&Path>) -> Result<bool, Failure> {
    match parse_curve_file(path)? {
        CurveInput::Family(f) => {
            let scan = scan_family(&f, None, seed);
            print!("{}", scan.render());
            let ok = scan.consistent();
            println!("family jumps: {}", if ok { "pass" } else { "FAIL" });
            if let Some(out) = json_out {
                write_json(out, &json!({ "scan": scan, "jumps": scan.jumps(), "verdict": ok }))?;
            }
            Ok(ok)
        }
        CurveInput::Link(link) => {
            let runs: Vec<VerificationRun> = vec![
                verify_center_independence(&link, centers, seed)?,
                verify_isotopy_invariance(&link, isotopies, seed)?,
            ];
            for r in &runs {
                print!("{}", r.render());
            }
            let ok = runs.iter().all(|r| r.verdict);
            println!("verdict: {}", if ok { "pass" } else { "FAIL" });
            if let Some(out) = json_out {
                write_json(out, &json!({ "runs": runs, "verdict": ok }))?;
            }
            Ok(ok)
        }
    }
}

fn cmd_sample(degree: usize, count: usize, seed: u64, out: &Path) -> Result<(), Failure> {
    if degree == 0 {
        return Err(Failure::input("degree must be at least 1"));
    }
    std::fs::create_dir_all(out).map_err(|e| io_failure(out, e))?;
    for k in 0..count {
        let s = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k as u64);
        let curve = RationalSpaceCurve::sample_random(degree, s, 5).map_err(|e| match e {
            CurveError::SamplingExhausted(_) => Failure { code: 3, message: format!("sampling exhausted: {e}") },
            other => Failure::input(other),
        })?;
        let file = out.join(format!("curve_d{degree}_{k:03}.jsonl"));
        std::fs::write(&file, write_link(&Link::single(curve))).map_err(|e| io_failure(&file, e))?;
        println!("{}", file.display());
    }
    Ok(())
}

fn cmd_diagram(path: &Path, out: &Path, center: Option<&str>, seed: u64) -> Result<(), Failure> {
    let link = link_only(parse_curve_file(path)?)?;
    let diagram = diagram_for(&link, center, seed)?;
    let svg = render_svg(&diagram)?;
    std::fs::write(out, svg).map_err(|e| io_failure(out, e))?;
    println!("{}", WritheReport::from_diagram(&diagram).summary());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Writhe { path, center, seed, json } => {
            cmd_writhe(path, center.as_deref(), *seed, json.as_deref()).map(|_| true)
        }
        Command::Verify { path, centers, isotopies, seed, json } => {
            cmd_verify(path, *centers, *isotopies, *seed, json.as_deref())
        }
        Command::Sample { degree, count, seed, out } => cmd_sample(*degree, *count, *seed, out).map(|_| true),
        Command::Diagram { path, out, center, seed } => cmd_diagram(path, out, center.as_deref(), *seed).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
