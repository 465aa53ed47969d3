//! `graphsym` — construct highly symmetric graphs, measure their
//! distance/geodesic/arc transitivity, test isomorphism, and verify
//! claim manifests.
//!
//! Exit codes: 0 success, 1 failed claim or non-isomorphic pair,
//! 2 usage or input error.

mod manifest;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use graphsym::{are_isomorphic, FamilySpec, Graph};
use serde_json::json;

use manifest::{parse_manifest, run_claim, Claim};
use report::{Measured, Status, Summary, VerifyReport};

const DEFAULT_MANIFEST: &str = include_str!("default_manifest.json");

#[derive(Parser)]
#[command(
    name = "graphsym",
    version,
    about = "Construct, analyze, and verify highly symmetric graphs"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Write the primary output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Refuse nondeterministic code paths. Every algorithm here is
    /// deterministic, so the flag always succeeds; scripts can pass it
    /// to pin that guarantee.
    #[arg(long, global = true)]
    seedless: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and write its edge list.
    Construct {
        /// Family spec, e.g. johnson:6,3 | paley:3^2 | taylor:13 |
        /// kmb:3,2 | pg2:2 | file:foster.edges | complement(odd:2)
        spec: String,
        /// Use the alternative involution b^i·g in the double-cover
        /// construction (taylor specs only).
        #[arg(long, value_name = "I", default_value_t = 0)]
        alt_g: usize,
    },
    /// Measure a graph: metrics, symmetry profile, antipodal structure.
    Analyze {
        spec: String,
        #[arg(long, value_name = "I", default_value_t = 0)]
        alt_g: usize,
    },
    /// Decide whether two graphs are isomorphic (exit 0 iff they are).
    Iso {
        spec_a: String,
        spec_b: String,
        /// Alternative involution applied to the second spec.
        #[arg(long, value_name = "I", default_value_t = 0)]
        alt_g: usize,
    },
    /// Re-measure every claim in a manifest (exit 1 on any failure).
    Verify {
        /// Path to a JSON claim manifest, or "default" for the
        /// built-in one.
        #[arg(default_value = "default")]
        manifest: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            code
        }
    };
    ExitCode::from(code)
}

type CliResult = Result<u8, (u8, String)>;

/// Map toolkit errors onto the exit-code contract: bad input is a
/// usage error (2); an internal contradiction is a failed claim (1).
fn exit_code(e: &graphsym::Error) -> u8 {
    use graphsym::Error::*;
    match e {
        Input(_) | Parse { .. } | ScaleExceeded { .. } | Disconnected(_) => 2,
        Construction(_) | Inconsistency(_) => 1,
    }
}

fn fail(e: graphsym::Error) -> (u8, String) {
    (exit_code(&e), e.to_string())
}

fn build_spec(text: &str, alt_g: usize) -> Result<(FamilySpec, Graph), (u8, String)> {
    let spec: FamilySpec = text.parse().map_err(fail)?;
    let graph = spec.build_with(alt_g).map_err(fail)?;
    Ok((spec, graph))
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Construct { spec, alt_g } => construct(cli, spec, *alt_g),
        Command::Analyze { spec, alt_g } => analyze(cli, spec, *alt_g),
        Command::Iso { spec_a, spec_b, alt_g } => iso(cli, spec_a, spec_b, *alt_g),
        Command::Verify { manifest } => verify(cli, manifest),
    }
}

fn write_out(path: &PathBuf, text: &str) -> Result<(), (u8, String)> {
    fs::write(path, text).map_err(|e| (2, format!("cannot write {}: {e}", path.display())))
}

fn construct(cli: &Cli, spec_text: &str, alt_g: usize) -> CliResult {
    let (spec, graph) = build_spec(spec_text, alt_g)?;
    let header = format!("family: {spec}");
    let edge_list = graph.to_edge_list(&[&header]);
    let summary = format!(
        "{spec}: {} vertices, {} edges{}",
        graph.order(),
        graph.size(),
        match graph.regular_valency() {
            Some(v) => format!(", valency {v}"),
            None => ", irregular".to_string(),
        }
    );
    if let Some(path) = &cli.out {
        write_out(path, &edge_list)?;
    }
    if cli.json {
        let mut obj = json!({
            "family": spec.to_string(),
            "order": graph.order(),
            "size": graph.size(),
            "valency": graph.regular_valency(),
            "out": cli.out.as_ref().map(|p| p.display().to_string()),
        });
        if cli.out.is_none() {
            obj["edge_list"] = json!(edge_list);
        }
        println!("{}", serde_json::to_string_pretty(&obj).unwrap());
    } else if cli.out.is_some() {
        println!("{summary}");
    } else {
        print!("{edge_list}");
        eprintln!("{summary}");
    }
    Ok(0)
}

fn analyze(cli: &Cli, spec_text: &str, alt_g: usize) -> CliResult {
    let (spec, graph) = build_spec(spec_text, alt_g)?;
    let measured = Measured::of(graph).map_err(fail)?;
    if measured.restricted {
        eprintln!("warning: graph is disconnected; reporting metrics-free fields only");
    }
    let report = measured.report(&spec.to_string(), Vec::new());
    let json_text = serde_json::to_string_pretty(&report).unwrap();
    if let Some(path) = &cli.out {
        write_out(path, &format!("{json_text}\n"))?;
    }
    if cli.json {
        println!("{json_text}");
    } else {
        print_human_report(&report, &measured);
    }
    Ok(0)
}

fn print_human_report(report: &report::GraphReport, measured: &Measured) {
    let yn = |b: bool| if b { "yes" } else { "no" };
    println!("family               {}", report.family);
    println!("order                {}", report.order);
    println!("size                 {}", report.size);
    match report.valency {
        Some(v) => println!("valency              {v}"),
        None => println!("valency              irregular"),
    }
    match report.girth {
        Some(g) => println!("girth                {g}"),
        None if report.profile.is_some() => println!("girth                infinite"),
        None => {}
    }
    if let Some(d) = report.diameter {
        println!("diameter             {d}");
    }
    if let Some(p) = &report.profile {
        println!("|Aut|                {}", report.aut_order);
        println!("max s-distance       {}", p.max_s_distance);
        println!("max s-geodesic       {}", p.max_s_geodesic);
        let cap = if p.arc_cap_exceeded { " (search cap)" } else { "" };
        println!("max s-arc            {}{cap}", p.max_s_arc);
        println!("distance transitive  {}", yn(p.distance_transitive));
        println!("geodesic transitive  {}", yn(p.geodesic_transitive));
    }
    match (&measured.fibre_sizes, measured.uniform_fibre_size()) {
        (Some(sizes), Some(k)) => {
            println!("antipodal            yes ({} fibres of size {k})", sizes.len());
        }
        (Some(sizes), None) => println!("antipodal            yes ({} fibres)", sizes.len()),
        (None, _) => println!("antipodal            no"),
    }
}

fn iso(cli: &Cli, a_text: &str, b_text: &str, alt_g: usize) -> CliResult {
    let (_, a) = build_spec(a_text, 0)?;
    let (_, b) = build_spec(b_text, alt_g)?;
    let mapping = are_isomorphic(&a, &b).map_err(fail)?;
    let obj = json!({
        "isomorphic": mapping.is_some(),
        "mapping": mapping.as_ref().map(|p| p.images().to_vec()),
    });
    let json_text = serde_json::to_string_pretty(&obj).unwrap();
    if let Some(path) = &cli.out {
        write_out(path, &format!("{json_text}\n"))?;
    }
    if cli.json {
        println!("{json_text}");
    } else {
        match &mapping {
            Some(p) => {
                println!("isomorphic");
                let images: Vec<String> = p.images().iter().map(|v| v.to_string()).collect();
                println!("mapping: {}", images.join(" "));
            }
            None => println!("non-isomorphic"),
        }
    }
    Ok(if mapping.is_some() { 0 } else { 1 })
}

fn load_manifest(arg: &str) -> Result<Vec<Claim>, (u8, String)> {
    let text = if arg == "default" {
        DEFAULT_MANIFEST.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| (2, format!("cannot read {arg}: {e}")))?
    };
    parse_manifest(&text).map_err(|m| (2, m))
}

fn verify(cli: &Cli, manifest_arg: &str) -> CliResult {
    let started = Instant::now();
    let claims = load_manifest(manifest_arg)?;
    if claims.is_empty() {
        eprintln!("warning: manifest contains no claims");
    }
    let mut summary = Summary::default();
    let mut reports = Vec::new();
    for claim in &claims {
        let report = run_claim(claim).map_err(fail)?;
        for c in &report.claims {
            summary.total += 1;
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => {
                    summary.skipped += 1;
                    eprintln!(
                        "warning: unknown field `{}` in claim for {} skipped",
                        c.field, report.family
                    );
                }
            }
            if !cli.json {
                print_claim_line(&report.family, c);
            }
        }
        reports.push(report);
    }
    let full = VerifyReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        runtime_seconds: started.elapsed().as_secs_f64(),
        summary,
        reports,
    };
    let json_text = serde_json::to_string_pretty(&full).unwrap();
    if let Some(path) = &cli.out {
        write_out(path, &format!("{json_text}\n"))?;
    }
    if cli.json {
        println!("{json_text}");
    } else {
        println!(
            "summary: {} pass, {} fail, {} skipped ({} checks in {:.2}s)",
            full.summary.pass,
            full.summary.fail,
            full.summary.skipped,
            full.summary.total,
            full.runtime_seconds
        );
    }
    Ok(if full.summary.fail > 0 { 1 } else { 0 })
}

fn print_claim_line(family: &str, c: &report::ClaimReport) {
    let status = match c.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skip",
    };
    let detail = if c.status == Status::Fail {
        format!("expected {}, measured {}", c.expected, c.measured)
    } else {
        c.expected.to_string()
    };
    println!("{status}  {family:<28} {:<22} {detail}", c.field);
}
