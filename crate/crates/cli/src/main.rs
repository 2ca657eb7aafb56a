//! qpw: command-line workbench for graded quotient path algebras.
//!
//! Exit codes: 0 a verdict was produced (even "invalid"), 1 usage error,
//! 2 computation error (bound exhaustion, unreadable input, ...).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use qpw_core::cuts::{
    self, conjugate, cut_weight, enumerate_cuts, grading_radical_generators, mutate_cut,
    validate_cut, Cut, CutBounds, CutStatus, CutVerdict, Nilpotency, RadicalCompare,
};
use qpw_core::error::Error;
use qpw_core::format::{parse_element, parse_presentation, print_presentation};
use qpw_core::koszul::{
    almost_koszul_verdict, ext_generation_check, koszul_verdict, quadratic_dual,
    AlmostKoszulVerdict,
};
use qpw_core::preprojective::{
    classical_preprojective, double_quiver, higher_preprojective_presentation,
};
use qpw_core::presentation::Presentation;
use qpw_core::quiver::{Element, Quiver};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Line-oriented key:value output for golden-file diffing.
    Structured,
    /// The same facts phrased for reading.
    Human,
}

#[derive(Parser)]
#[command(name = "qpw", about = "Workbench for graded quotient path algebras", version)]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value = "structured")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Graded dimensions up to a degree bound.
    Hilbert {
        file: PathBuf,
        #[arg(long = "up-to")]
        up_to: i64,
    },
    /// Linearity of the minimal graded resolution of the semisimple top.
    Koszul {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        bound: i64,
    },
    /// Search for an almost-Koszul parameter pair (p,q).
    AlmostKoszul {
        file: PathBuf,
        #[arg(long)]
        bound: i64,
    },
    /// Degree-1 generation of the Ext algebra under Yoneda products.
    ExtGen {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        bound: i64,
    },
    /// Quadratic dual presentation.
    Qdual { file: PathBuf },
    /// Higher preprojective presentation with its bigrading.
    Preproj {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bound: i64,
    },
    /// Doubled quiver (a reverse arrow a* for each arrow a).
    Double { file: PathBuf },
    /// Classical preprojective presentation of the underlying quiver.
    ClassicalPreproj { file: PathBuf },
    /// Operations on all cuts at once.
    Cuts {
        #[command(subcommand)]
        cmd: CutsCmd,
    },
    /// Operations on a single cut.
    Cut {
        #[command(subcommand)]
        cmd: CutCmd,
    },
    /// Conjugation x -> (1+r)^{-1}.x.(1+r) by a nilpotent element r.
    Conjugate {
        file: PathBuf,
        #[arg(long)]
        by: String,
        /// Nilpotency search bound for the inverse expansion.
        #[arg(long, default_value_t = 24)]
        bound: usize,
    },
    /// Nilpotency degrees of positive-degree elements.
    Nilpotency {
        file: PathBuf,
        /// Comma-separated element expressions.
        #[arg(long)]
        elements: String,
        #[arg(long)]
        bound: usize,
    },
    /// Compare the graded radicals of two gradings up to a degree bound.
    GradicalCompare {
        file: PathBuf,
        /// Grading spec: pathlen | cut:a,b | conj:<element-expr>
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        #[arg(long)]
        bound: i64,
    },
}

#[derive(Subcommand)]
enum CutsCmd {
    /// Validate every subset of the arrows as a cut.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        /// Highest preprojective degree checked against Ext tensor powers.
        #[arg(long)]
        bound: i64,
    },
}

#[derive(Subcommand)]
enum CutCmd {
    /// Validate one cut.
    Check {
        file: PathBuf,
        /// Comma-separated arrow names.
        #[arg(long)]
        cut: String,
        #[arg(long)]
        n: usize,
        /// Highest preprojective degree checked against Ext tensor powers.
        #[arg(long, default_value_t = 4)]
        bound: i64,
    },
    /// Mutate a cut at a vertex.
    Mutate {
        file: PathBuf,
        #[arg(long)]
        cut: String,
        #[arg(long)]
        vertex: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage_ok =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if usage_ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(file: &PathBuf) -> Result<Presentation, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read `{}`: {e}", file.display()))?;
    parse_presentation(&text).map_err(|e| e.to_string())
}

fn parse_cut(q: &Quiver, spec: &str) -> Result<Cut, String> {
    let mut cut = Cut::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if q.arrow_index(name).is_none() {
            return Err(format!("unknown arrow `{name}` in cut"));
        }
        cut.insert(name.to_string());
    }
    Ok(cut)
}

fn cut_display(cut: &BTreeSet<String>) -> String {
    let names: Vec<&str> = cut.iter().map(String::as_str).collect();
    format!("{{{}}}", names.join(","))
}

fn derived_bounds(n: usize, bound: i64) -> CutBounds {
    let degree_cap = 8 * (bound + n as i64 + 2);
    CutBounds {
        slice_degree: bound.max(0) as usize,
        degree_cap,
        dim_cap: 20 * (degree_cap.max(1) as usize + 1),
    }
}

fn print_cut_verdict(cut: &Cut, v: &CutVerdict) {
    match &v.status {
        CutStatus::Valid => println!("cut {}: valid", cut_display(cut)),
        CutStatus::Invalid(reason) => {
            println!("cut {}: invalid: {reason}", cut_display(cut))
        }
    }
    if let Some(g) = v.degree_zero_gldim {
        println!("degree-zero-gldim: {g}");
    }
    if let Some(dims) = &v.slice_dims {
        let cells: Vec<String> = dims
            .iter()
            .enumerate()
            .map(|(i, d)| format!("{i}:{d}"))
            .collect();
        println!("slices: {}", cells.join(" "));
    }
}

fn grading_generators(
    p: &Presentation,
    spec: &str,
    bound: i64,
) -> Result<Vec<Element>, String> {
    if spec == "pathlen" {
        let w = vec![1i64; p.quiver().arrow_count()];
        return Ok(grading_radical_generators(p, &w));
    }
    if let Some(names) = spec.strip_prefix("cut:") {
        let cut = parse_cut(p.quiver(), names)?;
        let w = cut_weight(p, &cut).map_err(|e| e.to_string())?;
        return Ok(grading_radical_generators(p, &w));
    }
    if let Some(expr) = spec.strip_prefix("conj:") {
        let r = parse_element(p.quiver(), expr).map_err(|e| e.to_string())?;
        let map = conjugate(p, &r, bound.max(1) as usize).map_err(|e| e.to_string())?;
        return Ok(p
            .quiver()
            .arrows()
            .iter()
            .map(|a| map[&a.name].clone())
            .collect());
    }
    Err(format!(
        "unknown grading spec `{spec}` (expected pathlen, cut:..., or conj:...)"
    ))
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: &Cli) -> Result<(), String> {
    let human = cli.format == Format::Human;
    match &cli.cmd {
        Cmd::Hilbert { file, up_to } => {
            let p = load(file)?;
            if p.rank() == 1 {
                let dims = p.hilbert_vec(*up_to).map_err(|e| e.to_string())?;
                let cells: Vec<String> = dims
                    .iter()
                    .enumerate()
                    .map(|(d, n)| format!("{d}:{n}"))
                    .collect();
                println!("{}", cells.join(" "));
            } else {
                let table = p
                    .hilbert(&vec![*up_to; p.rank()])
                    .map_err(|e| e.to_string())?;
                for (d, n) in &table {
                    let key: Vec<String> = d.iter().map(|c| c.to_string()).collect();
                    println!("{}:{n}", key.join(","));
                }
            }
        }
        Cmd::Koszul { file, steps, bound } => {
            let p = load(file)?;
            let v = koszul_verdict(&p, *steps, *bound).map_err(|e| e.to_string())?;
            if human {
                match v.failure {
                    None => println!(
                        "resolution is linear through step {}",
                        v.steps_checked
                    ),
                    Some((s, d)) => println!(
                        "resolution fails linearity at step {s} with a generator in degree {d}"
                    ),
                }
                if v.truncated {
                    println!("warning: some steps were truncated by the degree bound");
                }
            } else {
                println!("linear: {}", yesno(v.linear));
                println!("steps-checked: {}", v.steps_checked);
                if let Some((s, d)) = v.failure {
                    println!("failure: step {s} degree {d}");
                }
                println!("truncated: {}", yesno(v.truncated));
            }
        }
        Cmd::AlmostKoszul { file, bound } => {
            let p = load(file)?;
            let v = almost_koszul_verdict(&p, *bound).map_err(|e| e.to_string())?;
            match v {
                AlmostKoszulVerdict::PQ { p, q, socle_dim } => {
                    if human {
                        println!(
                            "almost Koszul with (p,q) = ({p},{q}); terminal semisimple has dimension {socle_dim}"
                        );
                    } else {
                        println!("(p,q) = ({p},{q})");
                        println!("socle-dim: {socle_dim}");
                    }
                }
                AlmostKoszulVerdict::No { reason } => {
                    if human {
                        println!("not almost Koszul: {reason}");
                    } else {
                        println!("(p,q) = none");
                        println!("reason: {reason}");
                    }
                }
            }
        }
        Cmd::ExtGen { file, steps, bound } => {
            let p = load(file)?;
            let r = ext_generation_check(&p, *steps, *bound).map_err(|e| e.to_string())?;
            println!(
                "generated-in-degree-one: {}",
                yesno(r.generated_in_degree_one)
            );
            for (step, ok) in &r.per_step {
                println!("step {step}: {}", yesno(*ok));
            }
            println!("truncated: {}", yesno(r.truncated));
        }
        Cmd::Qdual { file } => {
            let p = load(file)?;
            let d = quadratic_dual(&p).map_err(|e| e.to_string())?;
            print!("{}", print_presentation(&d));
        }
        Cmd::Preproj { file, n, bound } => {
            let p = load(file)?;
            let pi =
                higher_preprojective_presentation(&p, *n, *bound).map_err(|e| e.to_string())?;
            print!("{}", print_presentation(&pi));
        }
        Cmd::Double { file } => {
            let p = load(file)?;
            let d = double_quiver(p.quiver()).map_err(|e| e.to_string())?;
            let count = d.arrow_count();
            let pres = Presentation::new(d, Vec::new(), vec![vec![1]; count])
                .map_err(|e| e.to_string())?;
            print!("{}", print_presentation(&pres));
        }
        Cmd::ClassicalPreproj { file } => {
            let p = load(file)?;
            let pi = classical_preprojective(p.quiver()).map_err(|e| e.to_string())?;
            print!("{}", print_presentation(&pi));
        }
        Cmd::Cuts { cmd: CutsCmd::Enumerate { file, n, bound } } => {
            let p = load(file)?;
            let bounds = derived_bounds(*n, *bound);
            let all = enumerate_cuts(&p, *n, &bounds).map_err(|e| e.to_string())?;
            let mut valid = 0usize;
            for (cut, v) in &all {
                match &v.status {
                    CutStatus::Valid => {
                        valid += 1;
                        println!("cut {}: valid", cut_display(cut));
                    }
                    CutStatus::Invalid(reason) => {
                        println!("cut {}: invalid: {reason}", cut_display(cut));
                    }
                }
            }
            println!("valid-count: {valid}");
        }
        Cmd::Cut { cmd } => match cmd {
            CutCmd::Check { file, cut, n, bound } => {
                let p = load(file)?;
                let cut = parse_cut(p.quiver(), cut)?;
                let bounds = derived_bounds(*n, *bound);
                let v = validate_cut(&p, &cut, *n, &bounds).map_err(|e| e.to_string())?;
                print_cut_verdict(&cut, &v);
            }
            CutCmd::Mutate { file, cut, vertex } => {
                let p = load(file)?;
                let cut = parse_cut(p.quiver(), cut)?;
                match mutate_cut(&p, &cut, vertex) {
                    Ok(out) => println!("mutated: {}", cut_display(&out)),
                    Err(Error::MutationPrecondition { msg, .. }) => {
                        println!("mutated: none");
                        println!("reason: {msg}");
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
        },
        Cmd::Conjugate { file, by, bound } => {
            let p = load(file)?;
            let r = parse_element(p.quiver(), by).map_err(|e| e.to_string())?;
            let map = conjugate(&p, &r, *bound).map_err(|e| e.to_string())?;
            for (name, img) in &map {
                println!("{name}: {}", img.display(p.quiver()));
            }
        }
        Cmd::Nilpotency { file, elements, bound } => {
            let p = load(file)?;
            let exprs: Vec<&str> = elements
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let parsed: Result<Vec<Element>, String> = exprs
                .iter()
                .map(|s| parse_element(p.quiver(), s).map_err(|e| e.to_string()))
                .collect();
            let results =
                cuts::nilpotency_degrees(&p, &parsed?, *bound).map_err(|e| e.to_string())?;
            for (expr, r) in exprs.iter().zip(&results) {
                match r {
                    Nilpotency::Nilpotent(k) => println!("{expr}: nilpotent {k}"),
                    Nilpotency::UnknownBeyond(b) => println!("{expr}: unknown beyond {b}"),
                }
            }
        }
        Cmd::GradicalCompare { file, w1, w2, bound } => {
            let p = load(file)?;
            let g1 = grading_generators(&p, w1, *bound)?;
            let g2 = grading_generators(&p, w2, *bound)?;
            let v = cuts::graded_radical_compare(&p, &g1, &g2, *bound)
                .map_err(|e| e.to_string())?;
            let word = match v {
                RadicalCompare::Equal => "equal",
                RadicalCompare::LeftInRight => "left-in-right",
                RadicalCompare::RightInLeft => "right-in-left",
                RadicalCompare::Incomparable => "incomparable",
            };
            if human {
                println!("graded radicals up to degree {bound}: {word}");
            } else {
                println!("verdict: {word}");
            }
        }
    }
    Ok(())
}
