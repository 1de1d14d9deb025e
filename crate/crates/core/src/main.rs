use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use halfflat::catalog::{classify_all, verify_tables, Catalog};
use halfflat::exterior::{parse_form, KForm};
use halfflat::liealg::LieAlgebra;
use halfflat::obstruction::{classify_with, tested_splittings, ObstructionError, Verdict};
use halfflat::splitting::{generator_space, CoherentSplitting};
use halfflat::su3::{forms_from_frame, is_half_flat, Frame};

#[derive(Parser)]
#[command(name = "halfflat", version, about = "Half-flat SU(3)-structures on six-dimensional Lie algebras")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Suppress output; only the exit code is reported
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Load the catalog from a JSON file instead of the built-in one
    #[arg(long, value_name = "PATH", global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical notation and structural flags
    Parse {
        notation: String,
    },
    /// Betti numbers and dimensions of closed and exact forms
    Cohomology {
        notation: String,
    },
    /// Generators of coherent splittings and their h^{p,q} tables
    Splittings {
        notation: String,
        /// Use only this generator, e.g. e12 or e1*(e2+e3)
        #[arg(long, allow_hyphen_values = true)]
        generator: Option<String>,
    },
    /// Decide whether a half-flat structure exists
    Classify {
        #[arg(required_unless_present = "all")]
        notation: Option<String>,
        /// Classify every catalog algebra
        #[arg(long, conflicts_with = "notation")]
        all: bool,
    },
    /// Check the half-flat equations for an adapted frame
    VerifyFrame {
        notation: String,
        /// Six one-forms, e.g. "e1,e5,e2,e4,e3,e6"
        #[arg(long, allow_hyphen_values = true)]
        frame: String,
    },
    /// Re-verify both catalog tables
    Tables,
}

enum Failure {
    Input(String),
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

fn algebra(notation: &str) -> Result<LieAlgebra, Failure> {
    LieAlgebra::parse(notation).map_err(input)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn forms(list: &[KForm]) -> Vec<String> {
    list.iter().map(|f| f.to_string()).collect()
}

fn cmd_parse(notation: &str) -> Result<Output, Failure> {
    let g = algebra(notation)?;
    let derived = g.derived_length().ok();
    let json = json!({
        "notation": g.notation(),
        "dim": g.dim(),
        "jacobi": g.check_jacobi(),
        "nilpotent": g.is_nilpotent(),
        "unimodular": g.is_unimodular(),
        "derived_length": derived,
    });
    let mut text = String::new();
    let _ = writeln!(text, "notation        {}", g.notation());
    let _ = writeln!(text, "dimension       {}", g.dim());
    let _ = writeln!(text, "jacobi          {}", g.check_jacobi());
    let _ = writeln!(text, "nilpotent       {}", g.is_nilpotent());
    let _ = writeln!(text, "unimodular      {}", g.is_unimodular());
    let _ = writeln!(
        text,
        "derived length  {}",
        derived.map_or_else(|| "not solvable".to_string(), |d| d.to_string())
    );
    Ok(Output { json, text, ok: true })
}

fn cmd_cohomology(notation: &str) -> Result<Output, Failure> {
    let g = algebra(notation)?;
    let c = g.cohomology().map_err(input)?;
    let z: Vec<usize> = c.closed.iter().map(|s| s.dim()).collect();
    let b: Vec<usize> = c.exact.iter().map(|s| s.dim()).collect();
    let json = json!({
        "notation": g.notation(),
        "betti": c.betti,
        "closed_dims": z,
        "exact_dims": b,
        "euler_characteristic": c.euler_characteristic(),
    });
    let mut text = format!("{}\n{:>3} {:>5} {:>5} {:>5}\n", g.notation(), "k", "Z^k", "B^k", "b_k");
    for k in 0..c.betti.len() {
        let _ = writeln!(text, "{:>3} {:>5} {:>5} {:>5}", k, z[k], b[k], c.betti[k]);
    }
    Ok(Output { json, text, ok: true })
}

fn splitting_report(s: &CoherentSplitting) -> (Value, String) {
    let t = s.hpq();
    let e1 = s.e1_term();
    let e1_basis = e1.as_ref().map(|e| forms(&e.basis_02.basis()));
    let mut text = format!("generator {}\n  h^{{p,q}}", s.generator());
    for q in 0..=s.dim() - s.rank() {
        let _ = write!(text, " {:>3}", format!("q{q}"));
    }
    text.push('\n');
    for p in 0..=s.rank() {
        let _ = write!(text, "  {:>7}", format!("p{p}"));
        for q in 0..=s.dim() - s.rank() {
            let _ = write!(text, " {:>3}", t.get(p, q));
        }
        text.push('\n');
    }
    let _ = writeln!(text, "  h^{{0,3}} = {}, h^{{0,4}} = {}", t.get(0, 3), t.get(0, 4));
    match &e1_basis {
        Ok(b) => {
            let _ = writeln!(text, "  E_1^{{0,2}} = ⟨{}⟩", b.join(", "));
        }
        Err(e) => {
            let _ = writeln!(text, "  E_1: {e}");
        }
    }
    let json = json!({
        "generator": s.generator().to_string(),
        "coherent": true,
        "h": t.h,
        "h03": t.get(0, 3),
        "h04": t.get(0, 4),
        "e1_02": e1_basis.as_ref().ok(),
    });
    (json, text)
}

fn cmd_splittings(notation: &str, generator: Option<&str>) -> Result<Output, Failure> {
    let g = algebra(notation)?;
    let space = generator_space(&g);
    let space_forms = forms(&space.basis());
    let mut text = format!("{}\ngenerator space (dim {}): ⟨{}⟩\n", g.notation(), space.dim(), space_forms.join(", "));
    let mut reports = Vec::new();
    let mut ok = true;
    match generator {
        Some(src) => {
            let alpha = parse_form(src, g.dim()).map_err(input)?;
            if alpha.degree() != 2 {
                return Err(Failure::Input(format!("generator {alpha} is not a two-form")));
            }
            match CoherentSplitting::from_generator(&g, &alpha) {
                Ok(s) => {
                    let (j, t) = splitting_report(&s);
                    reports.push(j);
                    text.push_str(&t);
                }
                Err(e) => {
                    ok = false;
                    reports.push(json!({"generator": alpha.to_string(), "coherent": false, "error": e.to_string()}));
                    let _ = writeln!(text, "generator {alpha}: not coherent: {e}");
                }
            }
        }
        None => {
            for s in tested_splittings(&g, g.is_nilpotent()) {
                let (j, t) = splitting_report(&s);
                reports.push(j);
                text.push_str(&t);
            }
        }
    }
    let json = json!({"notation": g.notation(), "generator_space": space_forms, "splittings": reports});
    Ok(Output { json, text, ok })
}

fn verdict_line(v: &Verdict) -> String {
    let status = serde_json::to_value(v.status).expect("status");
    let reason = serde_json::to_value(v.reason).expect("reason");
    let mut line = format!(
        "{:<26} {:<11} {:<24}",
        v.algebra,
        status.as_str().unwrap_or_default(),
        reason.as_str().unwrap_or_default()
    );
    if let Some(f) = &v.witness_frame {
        let _ = write!(line, " frame {}", f.join(","));
    }
    if let Some(a) = &v.witness_generator {
        let _ = write!(line, " generator {a}");
    }
    line.trim_end().to_string() + "\n"
}

fn verdict_output(notation: String, r: Result<Verdict, ObstructionError>) -> (Value, String, bool) {
    match r {
        Ok(v) => (to_value(&v), verdict_line(&v), true),
        Err(e) => {
            let status = if matches!(e, ObstructionError::Undecided(_)) { "undecided" } else { "error" };
            (
                json!({"algebra": notation, "status": status, "reason": e.to_string()}),
                format!("{notation:<26} {status:<11} {e}\n"),
                false,
            )
        }
    }
}

fn cmd_classify(notation: Option<&str>, all: bool, catalog: &Catalog) -> Result<Output, Failure> {
    if all {
        let results = classify_all(catalog);
        let mut ok = true;
        let mut list = Vec::new();
        let mut text = String::new();
        for (e, r) in catalog.entries().iter().zip(results) {
            let (j, t, good) = verdict_output(e.notation.clone(), r);
            ok &= good;
            list.push(j);
            text.push_str(&t);
        }
        return Ok(Output { json: Value::Array(list), text, ok });
    }
    let g = algebra(notation.expect("clap requires a notation"))?;
    let (json, text, ok) = verdict_output(g.notation(), classify_with(&g, catalog));
    Ok(Output { json, text, ok })
}

fn cmd_verify_frame(notation: &str, frame: &str) -> Result<Output, Failure> {
    let g = algebra(notation)?;
    if g.dim() != 6 {
        return Err(Failure::Input(format!("expected a six-dimensional algebra, got dimension {}", g.dim())));
    }
    let f = Frame::parse(frame).map_err(input)?;
    let cert = is_half_flat(&g, &forms_from_frame(&f));
    let text = format!(
        "{}\nframe      {}\nhalf-flat  {}\ndω∧ω       {}\ndψ⁺        {}\n",
        g.notation(),
        f.to_strings().join(","),
        cert.half_flat,
        cert.d_omega_wedge_omega,
        cert.d_psi_plus
    );
    let mut json = to_value(&cert);
    json["notation"] = json!(g.notation());
    json["frame"] = json!(f.to_strings());
    Ok(Output { json, text, ok: cert.half_flat })
}

fn cmd_tables(catalog: &Catalog) -> Result<Output, Failure> {
    let report = verify_tables(catalog);
    let mut text = String::from("half-flat algebras\n");
    for r in &report.table1 {
        let mark = if r.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "  {mark} {:<26} Λ^{{2,0}} dim {}", r.notation, r.generator_space_dim);
        for d in &r.discrepancies {
            let _ = writeln!(text, "       {d}");
        }
    }
    text.push_str("obstructed algebras\n");
    for r in &report.table2 {
        let mark = if r.pass { "PASS" } else { "FAIL" };
        let detail = match (&r.lemma4, r.h03, r.h04) {
            (Some(_), _, _) => "sporadic certificate".to_string(),
            (None, Some(a), Some(b)) => format!("h^{{0,3}} = {a}, h^{{0,4}} = {b}"),
            _ => String::new(),
        };
        let _ = writeln!(text, "  {mark} {:<26} b1 {} b2 {} {detail}", r.notation, r.b1, r.b2);
        for d in &r.discrepancies {
            let _ = writeln!(text, "       {d}");
        }
    }
    let _ = writeln!(text, "{}/{} rows pass", report.passed, report.total);
    let mut json = to_value(&report);
    json["catalog_checksum"] = json!(catalog.checksum());
    Ok(Output { json, text, ok: report.all_pass() })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let loaded;
    let catalog = match &cli.catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            loaded = Catalog::from_json(&text).map_err(input)?;
            &loaded
        }
        None => Catalog::builtin(),
    };
    match &cli.command {
        Command::Parse { notation } => cmd_parse(notation),
        Command::Cohomology { notation } => cmd_cohomology(notation),
        Command::Splittings { notation, generator } => cmd_splittings(notation, generator.as_deref()),
        Command::Classify { notation, all } => cmd_classify(notation.as_deref(), *all, catalog),
        Command::VerifyFrame { notation, frame } => cmd_verify_frame(notation, frame),
        Command::Tables => cmd_tables(catalog),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !cli.quiet {
                let text = match cli.format {
                    Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
                    Format::Table => out.text,
                };
                // a closed pipe downstream is not our failure
                let mut stdout = std::io::stdout().lock();
                let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
