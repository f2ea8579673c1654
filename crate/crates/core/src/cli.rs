//! Command-line surface: compute, render, compare, and verify.
//!
//! Exit codes: 0 for success (and `true` answers), 1 for `false` answers or
//! reported violations, 2 for usage errors (one-line diagnosis on stderr).

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::bruhat::{leq_b, supremum};
use crate::diagrams::{board_a, board_b, board_c, Board, RenderFormat};
use crate::essential::{
    basic_inverse, basic_length, basic_perm_a_centered, basic_signed, essential_set_b,
    essential_set_c, rwy_via_bijection, BasicTriple,
};
use crate::perm_core::SignedPermutation;
use crate::verify::{run_suite, VerifyOptions};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "signedperm", about = "Signed permutation diagrams and essential sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Length, descents, inverse, and the ordinary-permutation image of w.
    Info {
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
    /// Render the board of w.
    Diagram {
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(long = "type", default_value = "b")]
        kind: String,
        #[arg(long, default_value = "ascii")]
        format: String,
    },
    /// Alias of diagram.
    Render {
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(long = "type", default_value = "b")]
        kind: String,
        #[arg(long, default_value = "ascii")]
        format: String,
    },
    /// Essential set of w as JSON.
    Ess {
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(long = "type", default_value = "b")]
        kind: String,
    },
    /// One-line form, length, n_min, and inverse of a basic element.
    #[command(allow_negative_numbers = true)]
    Basic {
        k: i64,
        p: i64,
        q: i64,
        #[arg(long = "type", default_value = "b")]
        kind: String,
    },
    /// Supremum of basic elements given as comma-separated triples.
    Sup {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true, required = true)]
        triples: Vec<String>,
    },
    /// Bruhat comparison; prints true/false and exits 0/1 accordingly.
    Leq {
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
    },
    /// Minimal elements of W_n not below w, via the dissecting bijection.
    Rwy {
        #[arg(allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Run a named verification suite (or `all`).
    Verify {
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10007)]
        modulus: u64,
        #[arg(long, default_value_t = false)]
        override_budget: bool,
    },
}

/// Parses argv and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    let line = e.to_string();
                    eprintln!("{}", line.lines().next().unwrap_or("usage error"));
                    2
                }
            }
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            match e {
                Error::Parse(_)
                | Error::Range(_)
                | Error::UnknownFormat(_)
                | Error::InvalidTriple { .. }
                | Error::Budget(..) => 2,
                _ => 1,
            }
        }
    }
}

fn parse_w(text: &str) -> Result<SignedPermutation> {
    text.parse()
}

fn parse_triple(text: &str) -> Result<(i64, i64, i64)> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected k,p,q but got: {text}")));
    }
    let nums: Vec<i64> = parts
        .iter()
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad integer: {s}"))))
        .collect::<Result<_>>()?;
    Ok((nums[0], nums[1], nums[2]))
}

fn board_of(w: &SignedPermutation, kind: &str) -> Result<Board> {
    match kind {
        "a" => Ok(board_a(&w.iota())),
        "b" => Ok(board_b(w)),
        "c" => Ok(board_c(w)),
        other => Err(Error::Parse(format!("unknown board type: {other}"))),
    }
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Info { w } => {
            let w = parse_w(&w)?;
            println!("w: {w}");
            println!("barred: {}", w.display_bar());
            println!("length: {}", w.length());
            let descents: Vec<String> = w.descents().iter().map(i64::to_string).collect();
            println!("descents: [{}]", descents.join(", "));
            println!("inverse: {}", w.inverse());
            println!("iota: {}", w.iota());
            Ok(0)
        }
        Cmd::Diagram { w, kind, format } | Cmd::Render { w, kind, format } => {
            let w = parse_w(&w)?;
            let board = board_of(&w, &kind)?;
            print!("{}", board.render(format.parse::<RenderFormat>()?)?);
            Ok(0)
        }
        Cmd::Ess { w, kind } => {
            let w = parse_w(&w)?;
            let (label, ess) = match kind.as_str() {
                "b" => ("B", essential_set_b(&w)),
                "c" => ("C", essential_set_c(&w)),
                other => return Err(Error::Parse(format!("unknown essential type: {other}"))),
            };
            #[derive(serde::Serialize)]
            struct TripleJson {
                k: i64,
                p: i64,
                q: i64,
            }
            #[derive(serde::Serialize)]
            struct EssJson<'a> {
                w: &'a [i64],
                r#type: &'a str,
                essential: Vec<TripleJson>,
            }
            let doc = EssJson {
                w: w.window(),
                r#type: label,
                essential: ess
                    .triples()
                    .iter()
                    .map(|t| TripleJson { k: t.k(), p: t.p(), q: t.q() })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
            Ok(0)
        }
        Cmd::Basic { k, p, q, kind } => match kind.as_str() {
            "b" => {
                let t = BasicTriple::new_b(k, p, q)?;
                let w = basic_signed(&t)?;
                println!("w{t}: {w}");
                println!("length: {}", basic_length(&t)?);
                println!("n_min: {}", t.n_min());
                println!("inverse: {}", basic_inverse(&t)?);
                Ok(0)
            }
            "a" => {
                let t = BasicTriple::new_a_centered(k, p, q)?;
                let v = basic_perm_a_centered(&t)?;
                println!("v{t}: {v}");
                println!("length: {}", v.length());
                println!("n_min: {}", t.n_min());
                println!("inverse: {}", inverse_centered_triple(&t, &v)?);
                Ok(0)
            }
            other => Err(Error::Parse(format!("unknown basic type: {other}"))),
        },
        Cmd::Sup { n, triples } => {
            let elems: Vec<SignedPermutation> = triples
                .iter()
                .map(|text| {
                    let (k, p, q) = parse_triple(text)?;
                    basic_signed(&BasicTriple::new_b(k, p, q)?)
                })
                .collect::<Result<_>>()?;
            let sup = supremum(&elems, n)?;
            println!("{sup}");
            Ok(0)
        }
        Cmd::Leq { w1, w2 } => {
            let w1 = parse_w(&w1)?;
            let w2 = parse_w(&w2)?;
            let answer = leq_b(&w1, &w2);
            println!("{answer}");
            Ok(if answer { 0 } else { 1 })
        }
        Cmd::Rwy { w, n } => {
            let w = parse_w(&w)?;
            let n = n.unwrap_or(w.n());
            for t in rwy_via_bijection(&w, n)? {
                println!("{t}");
            }
            Ok(0)
        }
        Cmd::Verify { suite, n, samples, seed, modulus, override_budget } => {
            let opts = VerifyOptions { n, samples, seed, modulus, override_budget };
            let reports = run_suite(&suite, &opts)?;
            let mut all_passed = true;
            for r in &reports {
                println!("[{}] {}", r.name, if r.passed { "PASS" } else { "FAIL" });
                for line in &r.details {
                    println!("  {line}");
                }
                for finding in &r.findings {
                    println!("  finding: {finding}");
                }
                all_passed &= r.passed;
            }
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

/// The inverse of a basic ordinary permutation is basic; recover its triple
/// by a small search around the window of `v`.
fn inverse_centered_triple(
    t: &BasicTriple,
    v: &crate::perm_core::WindowPermutation,
) -> Result<BasicTriple> {
    let vinv = v.inverse();
    let bound = v.lo().abs().max(v.hi().abs()) + t.k();
    for p in -bound..=bound {
        for q in -bound..=bound {
            let Ok(cand) = BasicTriple::new_a_centered(t.k(), p, q) else {
                continue;
            };
            let Ok(u) = basic_perm_a_centered(&cand) else {
                continue;
            };
            let lo = u.lo().min(vinv.lo());
            let hi = u.hi().max(vinv.hi());
            if u.pad_to(lo, hi) == vinv.pad_to(lo, hi) {
                return Ok(cand);
            }
        }
    }
    Err(Error::Invariant(format!("no centered triple for the inverse of {t}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triple_accepts_commas() {
        assert_eq!(parse_triple("2,2,3").unwrap(), (2, 2, 3));
        assert_eq!(parse_triple("3, 2, -2").unwrap(), (3, 2, -2));
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("1,2,x").is_err());
    }

    #[test]
    fn leq_exit_codes() {
        assert_eq!(run(["signedperm", "leq", "1 2 3", "-1 -2 -3"]), 0);
        assert_eq!(run(["signedperm", "leq", "-1 -2 -3", "1 2 3"]), 1);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["signedperm", "frobnicate"]), 2);
        assert_eq!(run(["signedperm", "leq", "1 2 2", "1 2 3"]), 2);
        assert_eq!(run(["signedperm", "diagram", "1 2", "--format", "tikz"]), 2);
        assert_eq!(run(["signedperm", "verify", "no-such-suite"]), 2);
    }

    #[test]
    fn basic_and_diagram_succeed() {
        assert_eq!(run(["signedperm", "basic", "2", "2", "3"]), 0);
        assert_eq!(run(["signedperm", "basic", "3", "2", "-2"]), 0);
        assert_eq!(run(["signedperm", "basic", "3", "-1", "2", "--type", "a"]), 0);
        assert_eq!(run(["signedperm", "diagram", "-2 3 1"]), 0);
        assert_eq!(run(["signedperm", "ess", "-2 3 1", "--type", "c"]), 0);
        assert_eq!(run(["signedperm", "info", "-2 3 1"]), 0);
        assert_eq!(run(["signedperm", "rwy", "-2 1 3"]), 0);
        assert_eq!(run(["signedperm", "sup", "--n", "3", "1,3,-1", "1,1,2"]), 0);
    }
}
