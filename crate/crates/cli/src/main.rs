//! Batch front end: JSON in, JSON out, `--text` for people.

use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use multisym::checks::{self, Outcome};
use multisym::msf::basis_indices;
use multisym::oracle::invariant_basis;
use multisym::relations::{manifests, relation_polys, Manifest};
use multisym::rewrite::rewrite;
use multisym::wire::{
    alpha_entries, element_from_json, element_to_json, npoly_to_json, symbol_poly_file,
    symbol_poly_to_json, AlphaEntry, SymbolPolyFile,
};
use multisym::{Ambient, Error, MsfElement, Multidegree, Ring};

const USAGE: u8 = 3;
const MISMATCH: u8 = 2;
const CHECK_FAILED: u8 = 4;
const NOT_VANISHING: u8 = 5;

const MAX_N: u32 = 4;
const MAX_M: usize = 3;
const MAX_DEGREE: u32 = 6;

#[derive(Parser)]
#[command(
    name = "multisym",
    version,
    about = "Compute in rings of multisymmetric functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        text: bool,
    },
    /// Expand an element into the concrete polynomial ring.
    Expand {
        file: PathBuf,
        #[arg(long)]
        text: bool,
    },
    /// Rewrite an element in the generators e_i(mu).
    Rewrite {
        file: PathBuf,
        /// Evaluate the result back and compare expansions.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        text: bool,
    },
    /// Relations among the generators that vanish at ambient n.
    Relations {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<usize>,
        /// Componentwise multidegree bound, e.g. `2,1`.
        #[arg(long, value_parser = parse_multidegree)]
        max_degree: Multidegree,
        #[arg(long, default_value = "Z")]
        ring: Ring,
        #[arg(long)]
        text: bool,
    },
    /// List the orbit-sum basis up to a total degree.
    Basis {
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        text: bool,
    },
    /// Run the differential suites at small bounds.
    Verify {
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long)]
        text: bool,
    },
}

#[derive(Args)]
struct Bounds {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    max_total_degree: u32,
    #[arg(long, default_value = "Z")]
    ring: Ring,
}

fn parse_multidegree(s: &str) -> Result<Multidegree, String> {
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()
        .map(Multidegree::new)
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::AmbientMismatch(..) | Error::RingMismatch(..) | Error::ArityMismatch(..) => {
                MISMATCH
            }
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

fn read_element(path: &PathBuf) -> Result<MsfElement, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    Ok(element_from_json(&text)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

#[derive(Serialize)]
struct RelationEntry {
    alpha: Vec<AlphaEntry>,
    poly: SymbolPolyFile,
}

#[derive(Serialize)]
struct RelationsOutput {
    relations: Vec<RelationEntry>,
    manifest: Vec<Manifest>,
}

#[derive(Serialize)]
struct BasisComponent {
    multidegree: Multidegree,
    count: usize,
    elements: Vec<String>,
}

fn check_bounds(b: &Bounds) -> Result<(), Failure> {
    if b.n == 0 || b.n > MAX_N || b.m == 0 || b.m > MAX_M || b.max_total_degree > MAX_DEGREE {
        return Err(usage(format!(
            "bounds out of range: need 1 <= n <= {MAX_N}, 1 <= m <= {MAX_M}, degree <= {MAX_DEGREE}"
        )));
    }
    Ok(())
}

fn run(command: Command) -> Result<(String, u8), Failure> {
    match command {
        Command::Product { left, right, text } => {
            let x = read_element(&left)?;
            let y = read_element(&right)?;
            let p = x.product(&y)?;
            Ok((
                if text {
                    p.to_string()
                } else {
                    element_to_json(&p)
                },
                0,
            ))
        }
        Command::Expand { file, text } => {
            let e = read_element(&file)?.expand()?;
            Ok((
                if text {
                    e.to_string()
                } else {
                    npoly_to_json(&e)
                },
                0,
            ))
        }
        Command::Rewrite { file, check, text } => {
            let x = read_element(&file)?;
            let g = rewrite(&x)?;
            let mut out = if text {
                g.to_string()
            } else {
                symbol_poly_to_json(&g, x.ambient())
            };
            let mut code = 0;
            if check {
                let ok = g.evaluate(x.ambient()) == x
                    && match x.ambient().finite() {
                        Some(n) => x.expand().is_ok_and(|e| e == g.evaluate_expanded(n)),
                        None => true,
                    };
                out.push_str(if ok { "\ncheck: PASS" } else { "\ncheck: FAIL" });
                if !ok {
                    code = CHECK_FAILED;
                }
            }
            Ok((out, code))
        }
        Command::Relations {
            n,
            m,
            max_degree,
            ring,
            text,
        } => {
            if m.is_some_and(|m| m != max_degree.m()) {
                return Err(usage(format!(
                    "--max-degree {max_degree} does not have m entries"
                )));
            }
            let rels = relation_polys(n, &max_degree, ring)?;
            let manifest = manifests(n, &rels);
            let code = if manifest.iter().all(|m| m.verified) {
                0
            } else {
                NOT_VANISHING
            };
            let out = if text {
                let mut lines: Vec<String> = rels
                    .iter()
                    .map(|r| {
                        let x = MsfElement::basis(r.alpha.clone(), Ambient::Infinite, ring)?;
                        Ok(format!("{x}: {}", *r.poly))
                    })
                    .collect::<Result<_, Error>>()?;
                lines.extend(manifest.iter().map(|m| {
                    format!(
                        "# {} count={} verified={}",
                        m.multidegree, m.count, m.verified
                    )
                }));
                lines.join("\n")
            } else {
                to_json(&RelationsOutput {
                    relations: rels
                        .iter()
                        .map(|r| RelationEntry {
                            alpha: alpha_entries(&r.alpha),
                            poly: symbol_poly_file(&r.poly, Ambient::Infinite),
                        })
                        .collect(),
                    manifest,
                })
            };
            Ok((out, code))
        }
        Command::Basis { bounds, text } => {
            check_bounds(&bounds)?;
            let ambient = Ambient::Finite(bounds.n);
            let mut comps = Vec::new();
            for a in Multidegree::up_to_total(bounds.m, bounds.max_total_degree) {
                let elements = basis_indices(bounds.n, &a)
                    .into_iter()
                    .map(|idx| MsfElement::basis(idx, ambient, bounds.ring).map(|x| x.to_string()))
                    .collect::<Result<Vec<_>, Error>>()?;
                let count = invariant_basis(bounds.n as usize, &a, bounds.ring).len();
                comps.push(BasisComponent {
                    multidegree: a,
                    count,
                    elements,
                });
            }
            let out = if text {
                comps
                    .iter()
                    .map(|c| format!("{} [{}] {}", c.multidegree, c.count, c.elements.join(" ")))
                    .collect::<Vec<_>>()
                    .join("\n")
            } else {
                to_json(&comps)
            };
            Ok((out, 0))
        }
        Command::Verify { bounds, text } => {
            check_bounds(&bounds)?;
            let Bounds {
                n,
                m,
                max_total_degree: d,
                ring,
            } = bounds;
            let report: Vec<Outcome> = vec![
                checks::basis_rank(n, m, d, ring),
                checks::homomorphism(n, m, d, ring),
                checks::round_trip(n, m, d, ring),
                checks::relation_vanishing(n, m, d, ring),
            ];
            let code = if report.iter().all(|o| o.passed) {
                0
            } else {
                1
            };
            let out = if text {
                report
                    .iter()
                    .map(|o| {
                        let status = if o.passed { "PASS" } else { "FAIL" };
                        format!("{}: {status} ({} cases) {}", o.property, o.cases, o.detail)
                            .trim_end()
                            .to_string()
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            } else {
                to_json(&report)
            };
            Ok((out, code))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((out, code)) => {
            println!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
