//! `kjb`: command-line frontend for kjb-core.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage or parse error,
//! 3 internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kjb_core::factors::FactorDescriptor;
use kjb_core::grids::{build_grid, verify_grid, Grid, GridJson};
use kjb_core::invariant::{
    decide_isomorphism, delta_bruteforce, invariant_of_expression, invariant_of_factor, IsoVerdict, DEFAULT_BUDGET,
    DEFAULT_SEED,
};
use kjb_core::lifting::{build_multiplicity_plan, k0_of_plan};
use kjb_core::roots::{
    build_graded_root_system, standard_systems, verify_grading_axioms, verify_root_axioms, GradedKind,
};
use kjb_core::spin::verify_spin_system;
use kjb_core::{Error, FactorExpression, K0Morphism, TroShape, VerificationReport};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kjb", version, about = "Cartan factors, grids and K-theoretic invariants")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample budget for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Factor dimensions, grid sizes and root systems.
    Factor {
        #[command(subcommand)]
        cmd: FactorCmd,
    },
    /// The invariant of a direct sum of factors.
    Invariant {
        #[command(subcommand)]
        cmd: InvariantCmd,
    },
    /// Isomorphism test for two direct sums.
    Iso {
        #[command(subcommand)]
        cmd: IsoCmd,
    },
    /// Lift a K0 morphism to a block-diagonal TRO homomorphism.
    Lift {
        /// Source TRO shape, e.g. "[(2,3),(1,1)]".
        #[arg(long)]
        src: String,
        /// Destination TRO shape.
        #[arg(long)]
        dst: String,
        /// Multiplicity matrix as JSON, one row per destination block.
        #[arg(long)]
        alpha: String,
    },
    /// Standard grids.
    Grid {
        #[command(subcommand)]
        cmd: GridCmd,
    },
    /// Run verification suites.
    Verify {
        scope: Scope,
        #[arg(long, default_value_t = 6)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Verify a grid stored as JSON (as written by `grid dump`).
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FactorCmd {
    Info { expr: String },
}

#[derive(Subcommand)]
enum InvariantCmd {
    Compute {
        expr: String,
        /// Also compute Δ of each summand by brute force and compare.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Subcommand)]
enum IsoCmd {
    Check { left: String, right: String },
}

#[derive(Subcommand)]
enum GridCmd {
    Dump { factor: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Scope {
    Roots,
    Grids,
    Spin,
    Delta,
    All,
}

/// A finished command: its output and whether the verdict was positive.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

fn parse_expr(s: &str) -> Result<FactorExpression, Error> {
    s.parse()
}

fn factor_info(expr: &str) -> Result<Outcome, Error> {
    let e = parse_expr(expr)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for d in &e.summands {
        let roots = build_graded_root_system(GradedKind::for_factor(d))?;
        let grid = roots.one_part.len();
        rows.push(json!({
            "factor": d.to_string(),
            "dim": d.dimension(),
            "grid": grid,
            "roots": roots.label(),
        }));
        text.push_str(&format!("{d}: dim {}, grid {grid}, roots {}\n", d.dimension(), roots.label()));
    }
    let json = if rows.len() == 1 {
        rows.pop().unwrap()
    } else {
        json!({ "expression": e.to_string(), "summands": rows })
    };
    Ok(Outcome {
        json,
        text,
        ok: true,
    })
}

fn invariant(expr: &str, oracle: bool, g: &Global) -> Result<Outcome, Error> {
    let e = parse_expr(expr)?;
    let inv = invariant_of_expression(&e)?;
    let mut json = inv.to_json();
    json["expression"] = json!(e.to_string());
    let mut text = format!("{e}\n{inv}\n");
    let mut ok = true;
    if oracle {
        let mut checks = Vec::new();
        for d in &e.summands {
            let table = invariant_of_factor(*d)?.delta;
            let found = delta_bruteforce(*d, g.seed, g.budget)?;
            let agrees = found == table;
            let diagonal_reading = matches!(d.canonical(), FactorDescriptor::Rectangular { rows, cols } if rows >= 2 && cols >= 2);
            ok &= agrees;
            checks.push(json!({
                "factor": d.to_string(),
                "bruteforce_delta": found,
                "agrees_with_table": agrees,
                "diagonal_reading": diagonal_reading,
            }));
            text.push_str(&format!(
                "oracle {d}: {}{}\n",
                if agrees { "agrees" } else { "DISAGREES" },
                if diagonal_reading {
                    " (diagonal reading; the product set {1..n}x{1..m} is not reproduced)"
                } else {
                    ""
                }
            ));
        }
        json["oracle"] = json!(checks);
    }
    Ok(Outcome { json, text, ok })
}

fn iso(left: &str, right: &str) -> Result<Outcome, Error> {
    let a = parse_expr(left)?;
    let b = parse_expr(right)?;
    let verdict = decide_isomorphism(&a.summands, &b.summands)?;
    let mut json = serde_json::to_value(&verdict).expect("verdict serializes");
    json["left"] = json!(a.to_string());
    json["right"] = json!(b.to_string());
    let text = match &verdict {
        IsoVerdict::Isomorphic { permutation, .. } => format!("{a} ≅ {b} (permutation {permutation:?})\n"),
        IsoVerdict::NotIsomorphic { reason } => format!("{a} and {b} are not isomorphic: {reason}\n"),
    };
    Ok(Outcome {
        ok: verdict.is_isomorphic(),
        json,
        text,
    })
}

fn lift(src: &str, dst: &str, alpha: &str) -> Result<Outcome, Error> {
    let src: TroShape = src.parse()?;
    let dst: TroShape = dst.parse()?;
    let matrix: Vec<Vec<u64>> = serde_json::from_str(alpha).map_err(|e| Error::Parse {
        position: e.column().saturating_sub(1),
        message: format!("alpha: {e}"),
    })?;
    let alpha = K0Morphism::new(matrix)?;
    match build_multiplicity_plan(&src, &dst, &alpha) {
        Ok(plan) => {
            let k0 = k0_of_plan(&plan)?;
            let roundtrip = k0 == alpha;
            let json = json!({
                "verdict": if roundtrip { "lifted" } else { "roundtrip failed" },
                "plan": plan,
                "k0_of_plan": k0,
                "roundtrip": roundtrip,
            });
            let mut text = String::new();
            for (j, b) in plan.layout.iter().enumerate() {
                let copies: Vec<String> = b.copies.iter().map(|i| (i + 1).to_string()).collect();
                text.push_str(&format!(
                    "block {}: copies [{}], padding {}x{}\n",
                    j + 1,
                    copies.join(","),
                    b.row_padding,
                    b.col_padding
                ));
            }
            text.push_str(&format!("K0 roundtrip: {}\n", if roundtrip { "ok" } else { "FAILED" }));
            if !roundtrip {
                return Err(Error::Verification(text));
            }
            Ok(Outcome { json, text, ok: true })
        }
        Err(Error::ScaleViolation { block, side, sum, bound }) => Ok(Outcome {
            json: json!({
                "verdict": "scale violation",
                "block": block,
                "side": side,
                "sum": sum,
                "bound": bound,
            }),
            text: format!("scale violation in block {}: {side} sum {sum} > {bound}\n", block + 1),
            ok: false,
        }),
        Err(e) => Err(e),
    }
}

fn grid_dump(factor: &str) -> Result<Outcome, Error> {
    let d: FactorDescriptor = factor.parse()?;
    let g = build_grid(d)?;
    let mut text = format!("grid of {d} labelled by {}\n", g.roots.label());
    for k in 0..g.len() {
        text.push_str(&format!("{:<16} {:?}\n", g.names[k], g.label(k).to_strings()));
    }
    Ok(Outcome {
        json: serde_json::to_value(g.to_json()).expect("grid serializes"),
        text,
        ok: true,
    })
}

fn standard_grid_factors(max_n: usize) -> Vec<FactorDescriptor> {
    let mut out = Vec::new();
    for rows in 1..=max_n {
        for cols in 1..=max_n {
            out.push(FactorDescriptor::Rectangular { rows, cols });
        }
    }
    out.extend((5..=max_n).map(|n| FactorDescriptor::Symplectic { n }));
    out.extend((2..=max_n).map(|n| FactorDescriptor::Hermitian { n }));
    for n in 1..=max_n {
        out.push(FactorDescriptor::Spin { dim: 2 * n });
        out.push(FactorDescriptor::Spin { dim: 2 * n + 1 });
    }
    out
}

fn delta_factors(max_n: usize) -> Vec<FactorDescriptor> {
    let mut out: Vec<FactorDescriptor> = (1..=max_n).map(|cols| FactorDescriptor::Rectangular { rows: 1, cols }).collect();
    for rows in 2..=max_n.min(3) {
        for cols in 2..=max_n.min(3) {
            out.push(FactorDescriptor::Rectangular { rows, cols });
        }
    }
    out.extend((2..=max_n).map(|n| FactorDescriptor::Hermitian { n }));
    out.extend((5..=max_n.max(6)).map(|n| FactorDescriptor::Symplectic { n }));
    out.extend((3..=2 * max_n.min(4)).map(|dim| FactorDescriptor::Spin { dim }));
    out
}

fn verify(scope: Scope, max_rank: usize, max_n: usize, fixture: Option<&PathBuf>, g: &Global) -> Result<Outcome, Error> {
    let mut reports: Vec<VerificationReport> = Vec::new();
    if let Some(path) = fixture {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
        let j: GridJson = serde_json::from_str(&raw).map_err(|e| Error::Parse {
            position: e.column(),
            message: format!("{}: {e}", path.display()),
        })?;
        reports.push(verify_grid(&Grid::from_json(&j)?));
    } else {
        let all = matches!(scope, Scope::All);
        if all || matches!(scope, Scope::Roots) {
            for kind in standard_systems(max_rank) {
                let r = build_graded_root_system(kind)?;
                let mut rep = verify_root_axioms(&r);
                rep.checks.extend(verify_grading_axioms(&r).checks);
                rep.subject = format!("{} {:?}", r.label(), kind);
                reports.push(rep);
            }
        }
        if all || matches!(scope, Scope::Spin) {
            for n in 1..=max_n {
                reports.push(verify_spin_system(n)?);
            }
        }
        if all || matches!(scope, Scope::Grids) {
            for d in standard_grid_factors(max_n) {
                reports.push(verify_grid(&build_grid(d)?));
            }
        }
        if all || matches!(scope, Scope::Delta) {
            for d in delta_factors(max_n) {
                let mut rep = VerificationReport::new(format!("Delta of {d}"));
                let table = invariant_of_factor(d)?.delta;
                let witness = match delta_bruteforce(d, g.seed, g.budget) {
                    Ok(found) if found == table => None,
                    Ok(found) => Some(format!("brute force {found:?} vs table {table:?}")),
                    Err(e) => Some(e.to_string()),
                };
                rep.push("brute force agrees with table", witness);
                reports.push(rep);
            }
        }
    }
    let ok = reports.iter().all(VerificationReport::passed);
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{} {}\n", if r.passed() { "pass" } else { "FAIL" }, r.subject));
        for c in r.failures() {
            text.push_str(&format!("  {}: {}\n", c.name, c.witness.as_deref().unwrap_or("")));
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    text.push_str(&format!("{} reports, {failed} failed\n", reports.len()));
    Ok(Outcome {
        json: json!({ "passed": ok, "reports": reports }),
        text,
        ok,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    match &cli.command {
        Command::Factor { cmd: FactorCmd::Info { expr } } => factor_info(expr),
        Command::Invariant {
            cmd: InvariantCmd::Compute { expr, oracle },
        } => invariant(expr, *oracle, g),
        Command::Iso {
            cmd: IsoCmd::Check { left, right },
        } => iso(left, right),
        Command::Lift { src, dst, alpha } => lift(src, dst, alpha),
        Command::Grid { cmd: GridCmd::Dump { factor } } => grid_dump(factor),
        Command::Verify {
            scope,
            max_rank,
            max_n,
            fixture,
        } => verify(*scope, *max_rank, *max_n, fixture.as_ref(), g),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            let code = match e {
                Error::Parse { .. } | Error::Domain(_) | Error::Unsupported(_) | Error::Shape(_) => 2,
                _ => 3,
            };
            if cli.global.json {
                println!("{}", json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
