//! `pilab` — deterministic reports over scenario files.
//!
//! Every subcommand prints one table to standard output (TSV by default,
//! `--out text` for an aligned rendering) and exits 0 when all rows pass,
//! 1 when some mathematical check fails, and 2 on operational problems:
//! unreadable files, parse or validation errors, resource guards, usage.
//! Timing goes to standard error so the table bytes depend only on inputs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use pilab::exactalg::{pi_exponent, radical, verify_decomposition, wedderburn_malcev};
use pilab::identities::{check_bounds, codimension, is_identity, parse_polynomial, DEFAULT_CAP};
use pilab::report::Table;
use pilab::scenario::{parse_scenario, Scenario};
use pilab::symfun::{cocharacter, hook_dim};

#[derive(Parser)]
#[command(name = "pilab", version, about = "Exact invariants of algebras with actions")]
struct Cli {
    /// Output format for the report table.
    #[arg(long, global = true, value_parser = ["tsv", "text"], default_value = "tsv")]
    out: String,
    /// Resource cap for evaluation-space guards; the PILAB_CAP environment
    /// variable overrides this flag.
    #[arg(long, global = true)]
    cap: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Radical dimension and nilpotency index of the scenario algebra.
    Radical { scenario: PathBuf },
    /// Equivariant decomposition: radical, components, verification.
    Decompose { scenario: PathBuf },
    /// Exponent d(A) computed from the invariant decomposition.
    Exponent { scenario: PathBuf },
    /// Codimension at one degree, with its dimension and label bounds.
    Codim {
        scenario: PathBuf,
        /// Degree (number of variables).
        #[arg(long)]
        n: usize,
    },
    /// Cocharacter multiplicities at one degree.
    Cochar {
        scenario: PathBuf,
        /// Degree (number of variables).
        #[arg(long)]
        n: usize,
    },
    /// Check whether a polynomial file is an identity of the scenario.
    CheckIdentity {
        scenario: PathBuf,
        /// Polynomial file to test.
        #[arg(long)]
        poly: PathBuf,
    },
    /// Verify the scenario's candidate decomposition item by item
    /// (a decomposition is computed when the file does not carry one).
    Verify { scenario: PathBuf },
    /// Bound chain c_n <= c^H_n <= (dim H)^n c_n and (dim A)^(n+1) for
    /// every degree up to n.
    Bounds {
        scenario: PathBuf,
        /// Largest degree of the chain.
        #[arg(long)]
        n: usize,
    },
    /// Built-in worked-example report with expected values.
    Gallery,
}

fn resolve_cap(flag: Option<u128>) -> Result<u128, String> {
    match std::env::var("PILAB_CAP") {
        Ok(v) => v.parse().map_err(|_| format!("PILAB_CAP must be an unsigned integer, got {v:?}")),
        Err(_) => Ok(flag.unwrap_or(DEFAULT_CAP)),
    }
}

fn load(path: &Path) -> Result<Scenario, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_scenario(&text).map_err(|e| e.to_string())
}

/// Realized action algebra and operators of a scenario.
fn realized(s: &Scenario) -> Result<(pilab::actions::ActionAlgebra, pilab::actions::Action), String> {
    s.action.realize(s.algebra.dim()).map_err(|e| e.to_string())
}

fn codim_rows(table: &mut Table, s: &Scenario, n: usize, cap: u128) -> Result<(), String> {
    let (_, act) = realized(s)?;
    let b = check_bounds(&s.algebra, &act, n, cap).map_err(|e| e.to_string())?;
    table.push_value(format!("c_{n}"), b.c_plain.to_string());
    table.push_value(format!("c^H_{n}"), b.c_acted.to_string());
    table.push(
        "dim-bound",
        b.c_acted.to_string(),
        b.dim_bound.to_string(),
        (b.c_acted as u128) <= b.dim_bound,
    );
    table.push(
        "label-bound",
        b.c_acted.to_string(),
        b.label_bound.to_string(),
        (b.c_acted as u128) <= b.label_bound,
    );
    table.push("monotone", b.c_plain.to_string(), b.c_acted.to_string(), b.c_plain <= b.c_acted);
    if let Some(gr) = &s.grading {
        let cg = pilab::identities::graded_codimension(gr, n, cap).map_err(|e| e.to_string())?;
        table.push(format!("c^gr_{n}"), cg.to_string(), b.c_acted.to_string(), cg == b.c_acted);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Table, String> {
    let cap = resolve_cap(cli.cap)?;
    match &cli.command {
        Command::Radical { scenario } => {
            let s = load(scenario)?;
            let (j, p) = radical(&s.algebra).map_err(|e| e.to_string())?;
            let mut t = Table::new("radical", s.digest(), false);
            t.push_value("dim A", s.algebra.dim().to_string());
            t.push_value("dim J", j.dim().to_string());
            t.push_value("nilpotency", p.to_string());
            Ok(t)
        }
        Command::Decompose { scenario } => {
            let s = load(scenario)?;
            let d = wedderburn_malcev(&s.algebra, &s.action).map_err(|e| e.to_string())?;
            let mut t = Table::new("decompose", s.digest(), false);
            t.push_value("dim J", d.radical.dim().to_string());
            t.push_value("nilpotency", d.nilpotency.to_string());
            t.push_value("components", d.components.len().to_string());
            for (i, c) in d.components.iter().enumerate() {
                t.push_value(format!("dim B_{i}"), c.dim().to_string());
            }
            let report = verify_decomposition(&s.algebra, s.action.operators(), &d);
            match report.first_failure() {
                None => t.push("verified", "ok", "-", true),
                Some(item) => t.push("verified", format!("{}: {}", item.name, item.detail), "-", false),
            }
            Ok(t)
        }
        Command::Exponent { scenario } => {
            let s = load(scenario)?;
            let d = wedderburn_malcev(&s.algebra, &s.action).map_err(|e| e.to_string())?;
            let mut t = Table::new("exponent", s.digest(), false);
            t.push_value("d(A)", pi_exponent(&d).to_string());
            Ok(t)
        }
        Command::Codim { scenario, n } => {
            let s = load(scenario)?;
            let mut t = Table::new("codim", s.digest(), true);
            codim_rows(&mut t, &s, *n, cap)?;
            Ok(t)
        }
        Command::Bounds { scenario, n } => {
            let s = load(scenario)?;
            let mut t = Table::new("bounds", s.digest(), true);
            for k in 1..=*n {
                codim_rows(&mut t, &s, k, cap)?;
            }
            Ok(t)
        }
        Command::Cochar { scenario, n } => {
            let s = load(scenario)?;
            let (_, act) = realized(&s)?;
            let rows = cocharacter(&s.algebra, &act, *n, cap).map_err(|e| e.to_string())?;
            let mut t = Table::new("cochar", s.digest(), true);
            let mut total: u64 = 0;
            for row in &rows {
                total += row.multiplicity * hook_dim(&row.partition);
                t.push_value(format!("m{}", row.partition), row.multiplicity.to_string());
            }
            let (c, _) = codimension(&s.algebra, &act, *n, cap).map_err(|e| e.to_string())?;
            t.push("sum m*hook", total.to_string(), c.to_string(), total == c as u64);
            Ok(t)
        }
        Command::CheckIdentity { scenario, poly } => {
            let s = load(scenario)?;
            let (h, act) = realized(&s)?;
            let text = std::fs::read_to_string(poly)
                .map_err(|e| format!("cannot read {}: {e}", poly.display()))?;
            let (f, _) = parse_polynomial(&text).map_err(|e| e.to_string())?;
            if f.hdim() != h.dim() {
                return Err(format!(
                    "polynomial labels have dimension {}, the action algebra has dimension {}",
                    f.hdim(),
                    h.dim()
                ));
            }
            let holds = is_identity(&f, &s.algebra, &act, cap).map_err(|e| e.to_string())?;
            let mut t = Table::new("check-identity", s.digest(), false);
            t.push("identity", if holds { "yes" } else { "no" }, "-", holds);
            Ok(t)
        }
        Command::Verify { scenario } => {
            let s = load(scenario)?;
            let d = match &s.decomposition {
                Some(d) => d.clone(),
                None => wedderburn_malcev(&s.algebra, &s.action).map_err(|e| e.to_string())?,
            };
            let report = verify_decomposition(&s.algebra, s.action.operators(), &d);
            let mut t = Table::new("verify", s.digest(), false);
            for item in &report.items {
                let value = if item.passed || item.detail.is_empty() {
                    if item.passed { "ok".to_string() } else { "fail".to_string() }
                } else {
                    item.detail.replace(['\t', '\n'], " ")
                };
                t.push(&item.name, value, "-", item.passed);
            }
            Ok(t)
        }
        Command::Gallery => Ok(pilab::gallery::gallery_table(cap)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    let code = match outcome {
        Ok(table) => {
            let rendered =
                if cli.out == "text" { table.render_text() } else { table.render_tsv() };
            print!("{rendered}");
            if table.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("pilab: {message}");
            ExitCode::from(2)
        }
    };
    eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    code
}
