//! `pjp`: exact computations with Jacobi polynomials for parabolic
//! subgroups of Weyl groups, and the verification suites over them.
//!
//! Exit codes: 0 success, 1 verification failure or internal inconsistency,
//! 2 malformed input.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use pjp_core::cherednik::{e_poly, spectral};
use pjp_core::jacobi::{a2_paper_generators, jacobi_gs, jacobi_sym, JacobiPoly};
use pjp_core::laurent::orbit_sum;
use pjp_core::mvop;
use pjp_core::parabolic::{alt_steinberg, steinberg_generators};
use pjp_core::vectorize::{
    a2_example_ops, big_p, gamma, induced_apply, shimeno_ops, t_diag_weights, t_matrix,
    MatrixRatOp, VectorPoly,
};
use pjp_core::verify::{run_suite, VerifyConfig};
use pjp_core::{parse_q, q_str, Error, Multiplicity, Q, Rs, Weight};

#[derive(Parser)]
#[command(
    name = "pjp",
    version,
    about = "Jacobi polynomials for parabolic subgroups of Weyl groups (exact arithmetic)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Root system, e.g. A1, A2, A3, A4, B2, G2.
    #[arg(long = "rs", default_value = "A2")]
    rs: String,
    /// Scale factor applied to all roots, as `p` or `p/q`.
    #[arg(long, default_value = "1")]
    scale: String,
    /// Parabolic subset I as comma-separated 1-based simple-root indices
    /// (empty string for the trivial subgroup).
    #[arg(long = "I", default_value = "", allow_hyphen_values = true)]
    i_set: String,
    /// Multiplicity per root orbit: one rational, or a comma list.
    #[arg(long, default_value = "1")]
    k: String,
    /// Output format.
    #[arg(long, default_value = "text", value_parser = ["text", "json", "latex"])]
    format: String,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Steinberg generator data and the alternative generators.
    Gens(Common),
    /// The nonsymmetric Jacobi polynomial of a weight.
    Epoly {
        #[command(flatten)]
        common: Common,
        /// Weight in fundamental coordinates, e.g. `-1,0`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// The parabolic Jacobi polynomial of an I-dominant weight.
    Jacobi {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Construction: symmetrized recursion, Gram system, or both
        /// (both asserts equality and fails with exit 1 otherwise).
        #[arg(long, default_value = "sym", value_parser = ["sym", "gs", "both"])]
        method: String,
    },
    /// The vector-valued Jacobi polynomial of an I-dominant weight.
    Vec {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Apply an invariant generator or a named operator matrix to an input
    /// vector: either the coset-averaged basic invariant of a weight, or a
    /// vector polynomial read back from JSON output.
    Opapply {
        #[command(flatten)]
        common: Common,
        /// Weight labelling the test vector `Gamma(m_I(mu))`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
        mu: Option<String>,
        /// JSON file with a `vector` field, as written by `pjp vec`.
        #[arg(long)]
        input: Option<String>,
        /// Invariant generator index (1 or 2) applied via the induced action.
        #[arg(long)]
        q: Option<usize>,
        /// Named operator matrix.
        #[arg(long, value_parser = ["m1", "m2", "d1", "d2", "t"])]
        op: Option<String>,
        /// Twist the test vector into the spherical-side module first
        /// (for the d1/d2 operators).
        #[arg(long, default_value_t = false)]
        twisted: bool,
    },
    /// Matrix-valued data: coordinates vector, weight matrix, or the full
    /// matrix polynomial of a dominant label.
    Mvop {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "matrix", value_parser = ["vector", "weight", "matrix"])]
        what: String,
        /// Label for `--what vector` (I-dominant weight).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Label for `--what matrix` (dominant weight).
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
    },
    /// Run verification suites.
    Verify {
        /// Suite name (steinberg, bijection, epoly, jacobi, orthogonality,
        /// spectral, operators, shimeno, gamma, mvop, uniqueness, all).
        #[arg(long, default_value = "all")]
        suite: String,
        /// Override the multiplicity set, e.g. `1/2,1,2`.
        #[arg(long)]
        kset: Option<String>,
        /// Box radius for the weight boxes.
        #[arg(long, default_value_t = 6)]
        boxradius: i64,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let code = match e {
                Error::Parse(_) | Error::UnsupportedType(_) | Error::NotIDominant(_) => 2u8,
                _ => 1u8,
            };
            let msg = serde_json::json!({"error": error_code(&e), "detail": e.to_string()});
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

fn error_code(e: &Error) -> &'static str {
    match e {
        Error::UnsupportedType(_) => "unsupported-type",
        Error::MismatchedRootSystem => "mismatched-root-system",
        Error::NonIntegerMultiplicity => "non-integer-multiplicity",
        Error::NotIDominant(_) => "not-i-dominant",
        Error::NotDivisible => "not-divisible",
        Error::NotWInvariant => "not-w-invariant",
        Error::NotInvariant => "not-invariant",
        Error::SpectralCollision(_, _) => "spectral-collision",
        Error::SingularGram => "singular-gram",
        Error::InternalInconsistency(_) => "internal-inconsistency",
        Error::Parse(_) => "parse",
    }
}

struct Context {
    rs: Rs,
    i_set: Vec<usize>,
    k: Multiplicity,
    format: String,
    out: Option<String>,
}

fn context(c: &Common) -> Result<Context, Error> {
    let scale = parse_q(&c.scale)?;
    let rs = Arc::new(pjp_core::rootsys::parse_root_system(&c.rs, scale)?);
    let mut i_set = Vec::new();
    for part in c.i_set.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let idx: usize = part
            .parse()
            .map_err(|_| Error::Parse(format!("bad reflection index `{part}`")))?;
        if idx == 0 || idx > rs.rank {
            return Err(Error::Parse(format!(
                "reflection index {idx} out of range 1..={}",
                rs.rank
            )));
        }
        i_set.push(idx - 1);
    }
    i_set.sort_unstable();
    i_set.dedup();
    let kvals: Vec<Q> = c
        .k
        .split(',')
        .map(|s| parse_q(s.trim()))
        .collect::<Result<_, _>>()?;
    let k = if kvals.len() == 1 {
        Multiplicity::constant(&rs, kvals[0].clone())?
    } else {
        Multiplicity::per_orbit(&rs, kvals)?
    };
    Ok(Context {
        rs,
        i_set,
        k,
        format: c.format.clone(),
        out: c.out.clone(),
    })
}

fn parse_weight(rs: &Rs, s: &str) -> Result<Weight, Error> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight coordinate `{t}`")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != rs.rank {
        return Err(Error::Parse(format!(
            "expected {} coordinates, got {}",
            rs.rank,
            coords.len()
        )));
    }
    Ok(Weight::new(coords, 1))
}

fn emit(ctx_out: &Option<String>, text: String) -> Result<ExitCode, Error> {
    match ctx_out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| Error::Parse(format!("cannot open {path}: {e}")))?;
            writeln!(f, "{text}").map_err(|e| Error::Parse(format!("write failed: {e}")))?;
        }
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn vec_str(format: &str, rs: &Rs, v: &VectorPoly) -> String {
    match format {
        "json" => serde_json::json!({"rs": rs.to_json(), "vector": v.to_json()}).to_string(),
        "latex" => v.to_latex(),
        _ => v
            .comps()
            .iter()
            .enumerate()
            .map(|(i, c)| format!("[{i}] {}", c.to_text()))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn jacobi_str(format: &str, rs: &Rs, p: &JacobiPoly) -> String {
    match format {
        "json" => serde_json::json!({"rs": rs.to_json(), "jacobi": p.to_json()}).to_string(),
        "latex" => p.poly.to_latex(),
        _ => {
            let mut s = p.poly.to_text();
            s.push_str("\nexpansion over basic invariants:");
            for (mu, c) in &p.expansion {
                s.push_str(&format!("\n  m{mu}: {}", q_str(c)));
            }
            s
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Gens(common) => {
            let ctx = context(&common)?;
            let gens = steinberg_generators(&ctx.rs, &ctx.i_set);
            let alts = alt_steinberg(&ctx.rs, &ctx.i_set);
            let text = match ctx.format.as_str() {
                "json" => serde_json::json!({
                    "rs": ctx.rs.to_json(),
                    "generators": gens.iter().map(|g| serde_json::json!({
                        "v": g.v.word_string(),
                        "lambda_v": {"num": g.lambda_v.num(), "den": g.lambda_v.den()},
                        "v_inv_lambda_v": {"num": g.mu.num(), "den": g.mu.den()},
                        "phi": g.phi.to_json(),
                    })).collect::<Vec<_>>(),
                    "alternative": alts.iter().map(|a| serde_json::json!({
                        "w": a.w.word_string(),
                        "mu_w": {"num": a.mu_w.num(), "den": a.mu_w.den()},
                        "base": {"num": a.base.num(), "den": a.base.den()},
                        "gen": a.gen.to_json(),
                    })).collect::<Vec<_>>(),
                })
                .to_string(),
                "latex" => gens
                    .iter()
                    .map(|g| format!("\\phi_{{{}}} = {}", g.v.word_string(), g.phi.to_latex()))
                    .collect::<Vec<_>>()
                    .join("\\\\\n"),
                _ => {
                    let mut s = String::from("v | lambda_v | v^-1 lambda_v | phi_v\n");
                    for g in &gens {
                        s.push_str(&format!(
                            "{} | {} | {} | {}\n",
                            g.v.word_string(),
                            g.lambda_v,
                            g.mu,
                            g.phi.to_text()
                        ));
                    }
                    s.push_str("alternative generators:\n");
                    for a in &alts {
                        s.push_str(&format!("{} | {}\n", a.w.word_string(), a.gen.to_text()));
                    }
                    s.pop();
                    s
                }
            };
            emit(&ctx.out, text)
        }
        Command::Epoly { common, lambda } => {
            let ctx = context(&common)?;
            let lam = parse_weight(&ctx.rs, &lambda)?;
            let e = e_poly(&ctx.rs, &lam, &ctx.k)?;
            let sv = spectral(&ctx.rs, &lam, &ctx.k)?;
            let text = match ctx.format.as_str() {
                "json" => serde_json::json!({
                    "rs": ctx.rs.to_json(),
                    "poly": e.to_json(),
                    "spectral": sv.coords.coords.iter().map(q_str).collect::<Vec<_>>(),
                })
                .to_string(),
                "latex" => e.to_latex(),
                _ => format!("{}\nspectral vector: {}", e.to_text(), sv.coords),
            };
            emit(&ctx.out, text)
        }
        Command::Jacobi {
            common,
            lambda,
            method,
        } => {
            let ctx = context(&common)?;
            let lam = parse_weight(&ctx.rs, &lambda)?;
            let p = match method.as_str() {
                "sym" => jacobi_sym(&ctx.rs, &ctx.i_set, &lam, &ctx.k)?,
                "gs" => jacobi_gs(&ctx.rs, &ctx.i_set, &lam, &ctx.k)?,
                _ => {
                    let a = jacobi_sym(&ctx.rs, &ctx.i_set, &lam, &ctx.k)?;
                    let b = jacobi_gs(&ctx.rs, &ctx.i_set, &lam, &ctx.k)?;
                    if a.poly != b.poly {
                        return Err(Error::InternalInconsistency(format!(
                            "constructions disagree at {lam}"
                        )));
                    }
                    a
                }
            };
            emit(&ctx.out, jacobi_str(&ctx.format, &ctx.rs, &p))
        }
        Command::Vec { common, lambda } => {
            let ctx = context(&common)?;
            let lam = parse_weight(&ctx.rs, &lambda)?;
            let v = big_p(&ctx.rs, &ctx.i_set, &lam, &ctx.k)?;
            emit(&ctx.out, vec_str(&ctx.format, &ctx.rs, &v))
        }
        Command::Opapply {
            common,
            mu,
            input,
            q,
            op,
            twisted,
        } => {
            let ctx = context(&common)?;
            let phi = match (&mu, &input) {
                (Some(mu), None) => {
                    let mu = parse_weight(&ctx.rs, mu)?;
                    gamma(&ctx.rs, &ctx.i_set, &orbit_sum(&ctx.rs, &ctx.i_set, &mu)?)?
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
                    let v: serde_json::Value = serde_json::from_str(&text)
                        .map_err(|e| Error::Parse(format!("bad JSON in {path}: {e}")))?;
                    VectorPoly::from_json(&ctx.rs, &v["vector"])?
                }
                _ => return Err(Error::Parse("pass exactly one of --mu or --input".into())),
            };
            let result = match (q, op) {
                (Some(idx), None) => {
                    let gens = a2_paper_generators();
                    let qpoly = gens
                        .get(idx.wrapping_sub(1))
                        .ok_or_else(|| Error::Parse("generator index must be 1 or 2".into()))?;
                    induced_apply(&ctx.rs, qpoly, &ctx.k, &phi)?
                }
                (None, Some(opname)) => {
                    let kq = ctx.k.values()[0].clone();
                    let m: MatrixRatOp = match opname.as_str() {
                        "m1" => a2_example_ops(&ctx.rs, &kq)?.0,
                        "m2" => a2_example_ops(&ctx.rs, &kq)?.1,
                        "d1" => shimeno_ops(&ctx.rs, &kq)?.0,
                        "d2" => shimeno_ops(&ctx.rs, &kq)?.1,
                        _ => t_matrix(&ctx.rs)?,
                    };
                    let input = if twisted {
                        let inv: Vec<Weight> =
                            t_diag_weights().iter().map(|w| w.neg()).collect();
                        phi.mul_monomial_diag(&inv)
                    } else {
                        phi
                    };
                    m.apply(&input)?
                }
                _ => {
                    return Err(Error::Parse(
                        "pass exactly one of --q or --op".to_string(),
                    ))
                }
            };
            emit(&ctx.out, vec_str(&ctx.format, &ctx.rs, &result))
        }
        Command::Mvop {
            common,
            what,
            lambda,
            sigma,
        } => {
            let ctx = context(&common)?;
            let text = match what.as_str() {
                "vector" => {
                    let lam = parse_weight(
                        &ctx.rs,
                        lambda
                            .as_deref()
                            .ok_or_else(|| Error::Parse("--lambda required".into()))?,
                    )?;
                    let v = mvop::script_p(&ctx.rs, &ctx.i_set, &lam, &ctx.k)?;
                    render_chi_vector(&ctx, &v)
                }
                "weight" => {
                    let wm = mvop::weight_matrix(&ctx.rs, &ctx.i_set)?;
                    render_chi_matrix(&ctx, &wm)
                }
                _ => {
                    let s = parse_weight(
                        &ctx.rs,
                        sigma
                            .as_deref()
                            .ok_or_else(|| Error::Parse("--sigma required".into()))?,
                    )?;
                    let m = mvop::mvop_matrix(&ctx.rs, &ctx.i_set, &s, &ctx.k)?;
                    render_chi_matrix(&ctx, &m)
                }
            };
            emit(&ctx.out, text)
        }
        Command::Verify {
            suite,
            kset,
            boxradius,
            out,
        } => {
            let mut cfg = VerifyConfig {
                box_radius: boxradius,
                ..VerifyConfig::default()
            };
            if let Some(ks) = kset {
                let parsed: Vec<Q> = ks
                    .split(',')
                    .map(|s| parse_q(s.trim()))
                    .collect::<Result<_, _>>()?;
                cfg.int_kset = parsed
                    .iter()
                    .filter(|q| q.is_integer())
                    .cloned()
                    .collect();
                if cfg.int_kset.is_empty() {
                    cfg.int_kset = vec![pjp_core::qz(1)];
                }
                cfg.kset = parsed;
            }
            let results = run_suite(&suite, &cfg)?;
            let mut text = String::new();
            let mut all_ok = true;
            for r in &results {
                text.push_str(&r.line());
                text.push('\n');
                all_ok &= r.passed;
            }
            text.pop();
            emit(&out, text)?;
            Ok(if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn render_chi_vector(ctx: &Context, v: &[pjp_core::multipoly::MultiPoly]) -> String {
    match ctx.format.as_str() {
        "json" => serde_json::json!({
            "rs": ctx.rs.to_json(),
            "coordinates": v.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        })
        .to_string(),
        "latex" => format!(
            "\\begin{{pmatrix}}{}\\end{{pmatrix}}",
            v.iter().map(|p| p.to_latex()).collect::<Vec<_>>().join("\\\\")
        ),
        _ => v
            .iter()
            .enumerate()
            .map(|(i, p)| format!("[{i}] {p}"))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn render_chi_matrix(ctx: &Context, m: &[Vec<pjp_core::multipoly::MultiPoly>]) -> String {
    match ctx.format.as_str() {
        "json" => serde_json::json!({
            "rs": ctx.rs.to_json(),
            "matrix": m.iter().map(|row| row.iter().map(|p| p.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
        .to_string(),
        "latex" => format!(
            "\\begin{{pmatrix}}{}\\end{{pmatrix}}",
            m.iter()
                .map(|row| row.iter().map(|p| p.to_latex()).collect::<Vec<_>>().join("&"))
                .collect::<Vec<_>>()
                .join("\\\\")
        ),
        _ => m
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(" | ")
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}
