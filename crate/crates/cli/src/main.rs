//! `compmat`: file-based front end to companion-core.
//!
//! Every result is printed as a plain-text document: a header line such as
//! `matrix 3x3` followed by the payload, with matrix rows separated by `;`
//! and entries by `,`. Exit status is 0 on success, 1 for invalid input and
//! 2 when a mathematical requirement fails (singular matrix, non-coprime
//! pair, failed selftest).

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use companion_core::bezoutian::{
    bez_hankel_gs_literal, bez_hankel_oracle, bez_toeplitz_gs, bez_toeplitz_oracle,
    hankel_inverse_structured, q_transform, toeplitz_inverse_structured,
};
use companion_core::extension::{
    check_extension_kernel, extend_full, preserve_hankel, preserve_toeplitz, ExtensionSpec,
};
use companion_core::rational::{format_list, parse_list};
use companion_core::selftest::{self, Config, DEFAULT_INSTANCES, DEFAULT_SEED};
use companion_core::similarity::{canonical_q, hankel_similarity, toeplitz_similarity};
use companion_core::statespace::{
    controller_form, late_state, long_state, mixed_state, simulate, transformed_form, SisoSystem,
};
use companion_core::structured::{
    complete_band, del_hankel, del_toeplitz, kernel_del, kernel_del_euclid,
};
use companion_core::{
    companion, companion_power, CompanionKind, Error, HankelBand, Matrix, PolyVec, Rational,
    ToeplitzBand,
};

#[derive(Parser)]
#[command(name = "compmat", version, about = "Exact companion, Toeplitz, Hankel and Bezoutian computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Companion matrix of u.
    Companion {
        #[command(flatten)]
        u: UArg,
        #[arg(long, default_value = "top")]
        kind: CompanionKind,
    },
    /// Integer power of a companion matrix.
    Power {
        #[command(flatten)]
        u: UArg,
        #[arg(long, default_value = "top")]
        kind: CompanionKind,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// Toeplitz (or Hankel) Bezoutian of u and v.
    Bezout {
        #[command(flatten)]
        uv: UvArgs,
        #[arg(long)]
        hankel: bool,
        /// Use the triangular-product forms; for Hankel, compare the
        /// printed forms with the definition.
        #[arg(long)]
        gs: bool,
    },
    /// The ∂ matrix of a square Toeplitz or Hankel band.
    Del {
        #[command(flatten)]
        band: BandArg,
        #[arg(long)]
        hankel: bool,
    },
    /// Basis of the kernel of ∂T (or ∂H).
    Kernel {
        #[command(flatten)]
        band: BandArg,
        #[arg(long)]
        hankel: bool,
        /// Use the Euclidean remainder sequence instead of elimination.
        #[arg(long)]
        euclid: bool,
    },
    /// Toeplitz band with u in the kernel of ∂T, from n free entries.
    Complete {
        #[command(flatten)]
        u: UArg,
        #[arg(long, allow_hyphen_values = true)]
        free: String,
        /// Print the dense matrix instead of the band.
        #[arg(long)]
        dense: bool,
    },
    /// Similarity statements for a Toeplitz (or Hankel) transformer.
    Similar {
        #[command(flatten)]
        u: UArg,
        #[command(flatten)]
        band: BandArg,
        #[arg(long)]
        hankel: bool,
        /// Largest |k| for the power checks.
        #[arg(long, default_value_t = 3)]
        k: i64,
    },
    /// Q = -B_T(u, v)ᵀJ, or the canonical-form change of basis for --a/--b.
    Q {
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Denominator coefficients a₁..a_n of a monic a(λ).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Numerator coefficients b₁..b_n.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
    },
    /// Inverse of a square Toeplitz (or Hankel) matrix via its Bezoutian.
    Invert {
        #[command(flatten)]
        band: BandArg,
        #[arg(long)]
        hankel: bool,
        /// Use dense elimination instead.
        #[arg(long)]
        dense: bool,
    },
    /// Four-directional extension of a generator block.
    Extend {
        #[command(flatten)]
        ext: ExtArgs,
    },
    /// Rank, kernel and structure checks for an extension.
    CheckExtension {
        #[command(flatten)]
        ext: ExtArgs,
    },
    /// Simulate the system -v/u from a state and an input sequence.
    Simulate {
        #[command(flatten)]
        sys: SystemArgs,
        /// Use the Bezoutian-transformed realization.
        #[arg(long)]
        transformed: bool,
    },
    /// Closed-form state evolution.
    Longstate {
        #[command(flatten)]
        sys: SystemArgs,
        /// Transformed state after all inputs, from a transformed state.
        #[arg(long, conflicts_with = "q")]
        late: bool,
        /// Evolve q steps in the transformed basis first.
        #[arg(long)]
        q: Option<usize>,
    },
    /// Run the seeded invariant suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_INSTANCES)]
        instances: usize,
    },
}

#[derive(Args)]
struct UArg {
    /// Coefficients u₁..u_{n+1}, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    u: String,
}

#[derive(Args)]
struct UvArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
}

#[derive(Args)]
struct BandArg {
    /// Band values a_{1-n}..a_{n-1}, or @FILE.
    #[arg(long, allow_hyphen_values = true)]
    band: String,
}

#[derive(Args)]
struct ExtArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    k: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    l: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    s: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    t: i64,
    /// Use the barred companions horizontally.
    #[arg(long)]
    hankel: bool,
    /// Generator band (Toeplitz, or Hankel with --hankel), or @FILE.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "matrix")]
    band: Option<String>,
    /// Dense generator "r,r;r,r", or @FILE. Defaults to the identity.
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<String>,
}

#[derive(Args)]
struct SystemArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    /// File with the initial state.
    #[arg(long)]
    state: String,
    /// File with the input sequence.
    #[arg(long)]
    inputs: String,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_math_failure() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {path}: {e}")))
}

/// Drops header lines (those starting with a letter) from a document.
fn payload(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with(|c: char| c.is_ascii_alphabetic()))
        .collect::<Vec<_>>()
        .join("\n")
}

/// A literal argument, or the payload of a document when written `@FILE`.
fn resolve(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(payload(&read_file(path)?)),
        None => Ok(arg.to_string()),
    }
}

fn list(arg: &str) -> CliResult<Vec<Rational>> {
    Ok(parse_list(&resolve(arg)?)?)
}

fn poly(arg: &str) -> CliResult<PolyVec> {
    Ok(PolyVec::new(list(arg)?)?)
}

fn toeplitz(arg: &str) -> CliResult<ToeplitzBand> {
    Ok(ToeplitzBand::square(list(arg)?)?)
}

fn hankel(arg: &str) -> CliResult<HankelBand> {
    Ok(HankelBand::square(list(arg)?)?)
}

fn file_list(path: &str) -> CliResult<Vec<Rational>> {
    Ok(parse_list(&payload(&read_file(path)?))?)
}

fn matrix_doc(m: &Matrix) -> String {
    format!("matrix {}x{}\n{}\n", m.rows(), m.cols(), m)
}

fn vector_doc(v: &[Rational]) -> String {
    format!("vector {}\n{}\n", v.len(), format_list(v))
}

fn spec_of(ext: &ExtArgs) -> CliResult<ExtensionSpec> {
    Ok(ExtensionSpec::with_mode(ext.k, ext.l, ext.s, ext.t, ext.hankel)?)
}

fn generator(ext: &ExtArgs, n: usize) -> CliResult<Matrix> {
    if let Some(b) = &ext.band {
        return Ok(if ext.hankel {
            hankel(b)?.to_dense()
        } else {
            toeplitz(b)?.to_dense()
        });
    }
    match &ext.matrix {
        Some(m) => Ok(resolve(m)?.parse::<Matrix>()?),
        None => Ok(Matrix::identity(n)),
    }
}

fn report_line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key} {value}").expect("string write");
}

fn system(sys: &SystemArgs) -> CliResult<(SisoSystem, Vec<Rational>, Vec<Rational>)> {
    let s = SisoSystem::new(poly(&sys.u)?, poly(&sys.v)?)?;
    Ok((s, file_list(&sys.state)?, file_list(&sys.inputs)?))
}

fn run(cli: Cli) -> CliResult<(String, u8)> {
    let out = match cli.command {
        Command::Companion { u, kind } => matrix_doc(&companion(&poly(&u.u)?, kind)?),
        Command::Power { u, kind, k } => matrix_doc(&companion_power(&poly(&u.u)?, kind, k)?),
        Command::Bezout { uv, hankel, gs } => {
            let (u, v) = (poly(&uv.u)?, poly(&uv.v)?);
            match (hankel, gs) {
                (false, false) => matrix_doc(&bez_toeplitz_oracle(&u, &v)?),
                (false, true) => matrix_doc(&bez_toeplitz_gs(&u, &v)?),
                (true, false) => matrix_doc(&bez_hankel_oracle(&u, &v)?),
                (true, true) => {
                    let r = bez_hankel_gs_literal(&u, &v)?;
                    let mut out = String::from("report hankel-gohberg-semencul\n");
                    report_line(&mut out, "definition", &r.oracle);
                    report_line(&mut out, "first-printed", &r.first);
                    report_line(&mut out, "second-printed", &r.second);
                    report_line(&mut out, "first-matches", r.first_matches);
                    report_line(&mut out, "second-matches", r.second_matches);
                    report_line(&mut out, "second-is-rotation", r.second_is_rotation);
                    if !r.first_matches || !r.second_matches {
                        out.push_str("note printed triangular forms disagree with the definition (known issue); the definition is authoritative\n");
                    }
                    out
                }
            }
        }
        Command::Del { band, hankel: h } => {
            if h {
                matrix_doc(&del_hankel(&hankel(&band.band)?)?)
            } else {
                matrix_doc(&del_toeplitz(&toeplitz(&band.band)?)?)
            }
        }
        Command::Kernel { band, hankel: h, euclid } => {
            // ker ∂H is the reversal of ker ∂T for T = HJ, which has the same band
            let t = toeplitz(&band.band)?;
            let basis = if euclid { kernel_del_euclid(&t)? } else { kernel_del(&t)? };
            basis
                .iter()
                .map(|w| vector_doc(if h { w.reverse() } else { w.clone() }.coeffs()))
                .collect()
        }
        Command::Complete { u, free, dense } => {
            let t = complete_band(&poly(&u.u)?, &list(&free)?)?;
            if dense {
                matrix_doc(&t.to_dense())
            } else {
                format!("band {}x{}\n{}\n", t.rows(), t.cols(), format_list(t.band()))
            }
        }
        Command::Similar { u, band, hankel: h, k } => {
            let u = poly(&u.u)?;
            if k < 0 {
                return Err(input_error("--k must be nonnegative"));
            }
            let r = if h {
                hankel_similarity(&hankel(&band.band)?, &u, -k..=k)?
            } else {
                toeplitz_similarity(&toeplitz(&band.band)?, &u, -k..=k)?
            };
            let mut out = format!("report {}-similarity\n", if h { "hankel" } else { "toeplitz" });
            report_line(&mut out, "kernel", r.kernel);
            report_line(&mut out, "top", r.top);
            report_line(&mut out, "bottom", r.bottom);
            for (p, ok) in &r.powers {
                report_line(&mut out, &format!("power {p}"), ok);
            }
            for (p, ok) in &r.bottom_powers {
                report_line(&mut out, &format!("bottom-power {p}"), ok);
            }
            report_line(&mut out, "all-true", r.all_true());
            out
        }
        Command::Q { u, v, a, b } => match (u, v, a, b) {
            (Some(u), Some(v), None, None) => matrix_doc(&q_transform(&poly(&u)?, &poly(&v)?)?),
            (None, None, Some(a), Some(b)) => {
                let r = canonical_q(&list(&a)?, &list(&b)?)?;
                let mut out = matrix_doc(&r.q);
                report_line(&mut out, "controllability-agrees", r.controllability_agrees);
                report_line(&mut out, "matches-bezoutian", r.matches_bezoutian);
                out
            }
            _ => return Err(input_error("q needs either --u and --v, or --a and --b")),
        },
        Command::Invert { band, hankel: h, dense } => {
            let inv = match (h, dense) {
                (false, false) => toeplitz_inverse_structured(&toeplitz(&band.band)?)?,
                (true, false) => hankel_inverse_structured(&hankel(&band.band)?)?,
                (false, true) => toeplitz(&band.band)?.to_dense().inverse()?,
                (true, true) => hankel(&band.band)?.to_dense().inverse()?,
            };
            matrix_doc(&inv)
        }
        Command::Extend { ext } => {
            let u = poly(&ext.u)?;
            let a = generator(&ext, u.n())?;
            let grid = extend_full(&a, &u, spec_of(&ext)?)?;
            matrix_doc(&grid.matrix)
        }
        Command::CheckExtension { ext } => {
            let u = poly(&ext.u)?;
            let spec = spec_of(&ext)?;
            let a = generator(&ext, u.n())?;
            let mut out = String::from("report extension\n");
            report_line(&mut out, "spec", spec);
            if spec.s > spec.t {
                report_line(&mut out, "kernel", check_extension_kernel(&a, &u, spec)?);
            } else {
                report_line(&mut out, "kernel", "empty");
            }
            if let Some(b) = &ext.band {
                let (kind, band) = if ext.hankel {
                    ("hankel", format_list(preserve_hankel(&hankel(b)?, &u, spec)?.band()))
                } else {
                    ("toeplitz", format_list(preserve_toeplitz(&toeplitz(b)?, &u, spec)?.band()))
                };
                report_line(&mut out, "structure", kind);
                report_line(&mut out, "band", band);
            }
            out
        }
        Command::Simulate { sys, transformed } => {
            let (s, state, inputs) = system(&sys)?;
            let r = if transformed { transformed_form(&s)? } else { controller_form(&s)? };
            let tr = simulate(&r, &state, &inputs)?;
            let states: Vec<String> = tr.states.iter().map(|x| format_list(x)).collect();
            let mut out = format!("trajectory {}x{}\n", s.n(), tr.inputs.len());
            report_line(&mut out, "states", states.join(";"));
            report_line(&mut out, "outputs", format_list(&tr.outputs));
            report_line(&mut out, "inputs", format_list(&tr.inputs));
            if !s.coprime {
                out.push_str("note u and v are not coprime\n");
            }
            out
        }
        Command::Longstate { sys, late, q } => {
            let (s, state, inputs) = system(&sys)?;
            let v = match (late, q) {
                (true, _) => late_state(&s, &state, &inputs)?,
                (false, Some(q)) => mixed_state(&s, &state, &inputs, q)?,
                (false, None) => long_state(&s, &state, &inputs)?,
            };
            vector_doc(&v)
        }
        Command::Selftest { seed, instances } => {
            let cfg = Config {
                seed,
                instances,
                ..Config::default()
            };
            let report = selftest::run(&cfg);
            let code = if report.passed() { 0 } else { 2 };
            return Ok((format!("selftest seed {seed}\n{report}\n"), code));
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
