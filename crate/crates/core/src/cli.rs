//! Command-line front end. Every subcommand reads JSON matrix files and
//! prints one JSON document with a `"result"` field.
//!
//! Exit status: 0 for any completed analysis (negative verdicts included),
//! 2 for malformed input or violated preconditions, 3 for size limits,
//! 4 for failed internal verification or a fiber the search cannot decide.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::equiv::{diagonal_equivalence, hermitian_equivalence, symmetrizability, DiagonalCertificate, SymmetrizabilityResult};
use crate::error::{Error, Result};
use crate::fiber::{classify_fiber, cut_swap_witness, find_cuts, stable_certify, symmetric_fiber_describe, CutCertificate};
use crate::io::{read_matrix, MatrixFile};
use crate::matrix::SquareMatrix;
use crate::mpoly::MPoly;
use crate::selftest;
use crate::structure::{fiber_shape, structure_check, FiberShape};
use crate::subset::Subset;
use crate::symdet::{adjugate_table, det_poly, principal_minors, verify_identities, verify_selected, Identity};

#[derive(Parser, Debug)]
#[command(name = "pmfiber", version, about = "Exact principal-minor fiber analysis")]
struct Cli {
    /// Print polynomials as subset-coefficient maps instead of text.
    #[arg(long, global = true)]
    json_poly: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All 2^n principal minors.
    Minors { file: PathBuf },
    /// The determinantal polynomial det(diag(x) + A).
    Detpoly { file: PathBuf },
    /// The adjugate of diag(x) + A.
    Adjugate { file: PathBuf },
    /// Every cut of A.
    Cuts { file: PathBuf },
    /// Single-point fiber classification with a witness when it fails.
    Classify { file: PathBuf },
    /// A second fiber point, optionally forcing a cut (1-based, comma separated).
    Witness {
        file: PathBuf,
        #[arg(long)]
        cut: Option<String>,
    },
    /// Diagonal equivalence certificate between two matrices.
    Equiv { a: PathBuf, b: PathBuf },
    /// Frobenius normal form and block factorization of f_A.
    Structure { file: PathBuf },
    /// Template of the whole fiber.
    Fibershape { file: PathBuf },
    /// Diagonal similarity to a symmetric matrix.
    Symmetrize { file: PathBuf },
    /// Diagonal similarity to a Hermitian matrix.
    Hermitize { file: PathBuf },
    /// Fiber of a symmetric matrix.
    Symfiber { file: PathBuf },
    /// Structural real-stability certificate.
    Stablecert { file: PathBuf },
    /// Check the polynomial identities for A.
    Verify {
        file: PathBuf,
        /// dodgson, resultant, laplace or adjugate; all when omitted.
        #[arg(long)]
        identity: Option<String>,
    },
    /// Randomized property suites.
    Selftest {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => 3,
        Error::Verification(_)
        | Error::InexactDivision
        | Error::DivisionByZero
        | Error::NotMultiaffine
        | Error::DegreeTooHigh { .. }
        | Error::Unresolved(_) => 4,
        _ => 2,
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit status and the text for standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                return (0, e.to_string());
            }
            return (code, render(&json!({"result": null, "error": {"kind": "usage", "message": e.to_string()}})));
        }
    };
    match execute(&cli) {
        Ok((code, v)) => (code, render(&v)),
        Err(e) => {
            let v = json!({"result": null, "error": {"kind": kind(&e), "message": e.to_string()}});
            (exit_code(&e), render(&v))
        }
    }
}

fn kind(e: &Error) -> &'static str {
    if let Error::Unresolved(_) = e {
        return "undecided";
    }
    match exit_code(e) {
        3 => "too_large",
        4 => "internal",
        _ => "input",
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

struct Out {
    json_poly: bool,
}

impl Out {
    fn poly(&self, p: &MPoly) -> Value {
        if self.json_poly {
            json!(p.to_index_map())
        } else {
            json!(p.to_string())
        }
    }

    fn polys<'a>(&self, ps: impl IntoIterator<Item = &'a MPoly>) -> Value {
        Value::Array(ps.into_iter().map(|p| self.poly(p)).collect())
    }
}

fn subset(s: Subset) -> Value {
    json!(s.to_one_based())
}

fn matrix(a: &SquareMatrix) -> Value {
    json!(MatrixFile::from_matrix(a))
}

fn certificate(c: &DiagonalCertificate) -> Value {
    json!({"d": c.d, "transposed": c.transposed})
}

fn cut(c: &CutCertificate) -> Value {
    json!({"cut": subset(c.x), "rank_x_xc": c.rank_x_xc, "rank_xc_x": c.rank_xc_x})
}

fn symmetry(r: &SymmetrizabilityResult) -> Value {
    json!({
        "verdict": r.verdict,
        "e": r.e,
        "image": r.image.as_ref().map(matrix),
    })
}

fn shape(out: &Out, s: &FiberShape) -> Value {
    json!({
        "blocks": s.blocks().iter().map(|&b| subset(b)).collect::<Vec<_>>(),
        "permutation": s.form.perm.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "block_matrices": s.block_matrices.iter().map(matrix).collect::<Vec<_>>(),
        "block_polynomials": out.polys(&s.block_polys),
        "free_blocks": s.free_blocks.iter().map(|&(p, q)| [p + 1, q + 1]).collect::<Vec<_>>(),
        "free_positions": s.free_positions().iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
    })
}

fn parse_cut(text: &str, n: usize) -> Result<Subset> {
    let idx = text
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad cut index {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Subset::from_one_based(&idx, n)
}

fn execute(cli: &Cli) -> Result<(i32, Value)> {
    let out = Out { json_poly: cli.json_poly };
    let v = match &cli.command {
        Command::Minors { file } => {
            let a = read_matrix(file)?;
            let phi = principal_minors(&a)?;
            let mut rows: Vec<(Subset, String)> = phi.iter().map(|(s, v)| (s, v.to_string())).collect();
            rows.sort_by_key(|(s, _)| (s.len(), s.lex_key()));
            let rows: Vec<Value> = rows.into_iter().map(|(s, v)| json!({"subset": subset(s), "value": v})).collect();
            json!({"result": {"n": a.n(), "minors": rows}})
        }
        Command::Detpoly { file } => {
            let f = det_poly(&read_matrix(file)?)?.fpoly;
            json!({"result": out.poly(&f), "polynomials": {"f": out.poly(&f)}})
        }
        Command::Adjugate { file } => {
            let a = read_matrix(file)?;
            let g = adjugate_table(&a)?;
            let n = a.n();
            let rows: Vec<Value> = (0..n).map(|i| out.polys((0..n).map(|j| g.get(i, j)))).collect();
            json!({"result": rows, "polynomials": {"f": out.poly(&det_poly(&a)?.fpoly)}})
        }
        Command::Cuts { file } => {
            let cuts = find_cuts(&read_matrix(file)?)?;
            json!({"result": cuts.iter().map(cut).collect::<Vec<_>>()})
        }
        Command::Classify { file } => {
            let a = read_matrix(file)?;
            let c = classify_fiber(&a)?;
            let cut_v = c.cut.as_ref().map(|x| subset(x.x));
            json!({
                "result": {
                    "verdict": c.verdict,
                    "reason": c.reason,
                    "cut": cut_v,
                    "symmetry": c.symmetry,
                    "witness_source": c.witness_source,
                    "outside_proven_range": c.outside_proven_range(),
                },
                "verdict": c.verdict,
                "reason": c.reason,
                "cut": cut_v,
                "witness": c.witness.as_ref().map(matrix),
            })
        }
        Command::Witness { file, cut: forced } => {
            let a = read_matrix(file)?;
            match forced {
                Some(text) => {
                    let x = parse_cut(text, a.n())?;
                    let w = cut_swap_witness(&a, x)?;
                    json!({
                        "result": {"cut": subset(x), "fallback_swap": w.fallback},
                        "witness": matrix(&w.matrix),
                    })
                }
                None => {
                    let c = classify_fiber(&a)?;
                    json!({
                        "result": {"verdict": c.verdict, "reason": c.reason, "cut": c.cut.as_ref().map(|x| subset(x.x))},
                        "witness": c.witness.as_ref().map(matrix),
                    })
                }
            }
        }
        Command::Equiv { a, b } => {
            let (a, b) = (read_matrix(a)?, read_matrix(b)?);
            let cert = diagonal_equivalence(&a, &b)?;
            json!({"result": {"equivalent": cert.is_some()}, "certificate": cert.as_ref().map(certificate)})
        }
        Command::Structure { file } => {
            let r = structure_check(&read_matrix(file)?)?;
            let blocks: Vec<Value> = r.form.blocks.iter().map(|&b| subset(b)).collect();
            let factors = out.polys(&r.factors);
            json!({
                "result": {
                    "blocks": blocks,
                    "factors": factors,
                    "permutation": r.form.perm.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "passed": r.passed(),
                },
                "blocks": blocks,
                "factors": factors,
                "report": {
                    "product_matches": r.product_matches,
                    "blocks_irreducible": r.blocks_irreducible,
                    "block_upper_triangular": r.form.is_block_upper_triangular(),
                },
            })
        }
        Command::Fibershape { file } => {
            json!({"result": shape(&out, &fiber_shape(&read_matrix(file)?)?)})
        }
        Command::Symmetrize { file } => {
            let r = symmetrizability(&read_matrix(file)?);
            json!({"result": symmetry(&r), "certificate": r.witness.as_ref().map(certificate)})
        }
        Command::Hermitize { file } => {
            let r = hermitian_equivalence(&read_matrix(file)?);
            json!({"result": symmetry(&r), "certificate": r.witness.as_ref().map(certificate)})
        }
        Command::Symfiber { file } => {
            let s = symmetric_fiber_describe(&read_matrix(file)?)?;
            let description = if s.single_point {
                "every fiber member is D A D^-1 or D A^T D^-1"
            } else {
                "block upper triangular with diagonal blocks diagonally equivalent to those of A; upper blocks free"
            };
            json!({"result": {"single_point": s.single_point, "description": description, "shape": shape(&out, &s.shape)}})
        }
        Command::Stablecert { file } => {
            let c = stable_certify(&read_matrix(file)?)?;
            let blocks: Vec<Value> = c
                .blocks
                .iter()
                .map(|b| {
                    json!({
                        "block": subset(b.block),
                        "verdict": b.result.verdict,
                        "e": b.result.e,
                        "certificate": b.result.witness.as_ref().map(certificate),
                    })
                })
                .collect();
            json!({
                "result": {"certified": c.certified, "failing_block": c.failing_block.map(subset)},
                "certificate": blocks,
                "polynomials": {"factors": out.polys(&c.factors)},
            })
        }
        Command::Verify { file, identity } => {
            let a = read_matrix(file)?;
            let report = match identity {
                None => verify_identities(&a)?,
                Some(name) => {
                    let id = Identity::from_name(name).ok_or_else(|| Error::Input(format!("unknown identity {name:?}")))?;
                    verify_selected(&a, &[id])?
                }
            };
            let counts: serde_json::Map<String, Value> = Identity::ALL
                .iter()
                .filter(|&&id| report.count(id) > 0)
                .map(|&id| (id.name().to_string(), json!(report.count(id))))
                .collect();
            let failures: Vec<Value> =
                report.failures().map(|c| json!({"identity": c.identity.name(), "indices": c.indices})).collect();
            json!({"result": {"all_passed": report.all_passed()}, "report": {"checks": counts, "failures": failures}})
        }
        Command::Selftest { n, trials, seed } => {
            let r = selftest::run(*n, *trials, *seed);
            let code = if r.all_passed() { 0 } else { 4 };
            return Ok((code, json!({"result": {"all_passed": r.all_passed()}, "report": r})));
        }
    };
    Ok((0, v))
}
