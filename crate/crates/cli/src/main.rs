//! `commalg`: run session files or one-shot commands.

mod oneshot;

use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use commalg::session::{evaluate, StatementKind};
use commalg::{parse_session, Error, EvalOptions, ResultDocument, ResultEntry};

#[derive(Parser, Debug)]
#[command(name = "commalg", version, about = "Groebner bases, resolutions and plane curves")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Monomial ordering of the ring built by one-shot commands
    /// (lex, degrevlex, neg_degrevlex, wdegrevlex(..), block(..)).
    #[arg(long, global = true, value_name = "NAME")]
    pub ordering: Option<String>,
    /// Coefficient field: QQ or Fp:<p>.
    #[arg(long, global = true, default_value = "QQ", value_parser = parse_field)]
    pub field: String,
    /// Abort after this many seconds, printing what has finished.
    #[arg(long, global = true, value_name = "SEC")]
    timeout: Option<f64>,
    /// Worker threads for independent session statements.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Ring variables for one-shot commands, comma separated
    /// (default: identifiers found in the input, in natural order).
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<String, String> {
    if s == "QQ" {
        return Ok("QQ".into());
    }
    match s.strip_prefix("Fp:").or_else(|| s.strip_prefix("GF:")) {
        Some(p) => p
            .parse::<u64>()
            .map(|p| format!("GF({p})"))
            .map_err(|_| format!("bad prime `{p}`")),
        None => Err("expected QQ or Fp:<p>".into()),
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a session file (`-` for standard input).
    Run { file: String },
    /// Reduced Groebner basis of an ideal ("f1, f2, ...").
    Gb { ideal: Option<String> },
    /// Normal form of a polynomial modulo an ideal.
    Nf {
        poly: Option<String>,
        ideal: Option<String>,
    },
    /// Eliminate variables from an ideal.
    Eliminate {
        ideal: Option<String>,
        /// Variables to eliminate, comma separated.
        #[arg(long = "elim", value_delimiter = ',', required = true)]
        elim: Vec<String>,
    },
    /// Affine dimension of V(I).
    Dim { ideal: Option<String> },
    /// Intersection of two ideals.
    Intersect { i: Option<String>, j: Option<String> },
    /// Ideal quotient I : J.
    Quotient { i: Option<String>, j: Option<String> },
    /// Saturation I : J^infinity.
    Saturate { i: Option<String>, j: Option<String> },
    /// Projective closure of an affine ideal.
    Closure { ideal: Option<String> },
    /// Syzygies of the columns of a matrix ("a, b; c, d").
    Syz { matrix: Option<String> },
    /// Kernel of the map coker(phi) -> coker(psi) induced by phi0.
    Kernel {
        phi0: Option<String>,
        psi: Option<String>,
        phi: Option<String>,
    },
    /// Free resolution of S/I.
    Resolve {
        ideal: Option<String>,
        #[arg(long)]
        minimal: bool,
    },
    /// Betti table of S/I (minimal unless --schreyer).
    Betti {
        ideal: Option<String>,
        #[arg(long)]
        schreyer: bool,
    },
    /// Hilbert polynomial, degree and genus of S/I.
    Hilbert {
        ideal: Option<String>,
        /// Also list Hilbert function values up to this degree.
        #[arg(long)]
        upto: Option<u32>,
    },
    /// Local intersection multiplicity of two curves at a point.
    Imult {
        f: Option<String>,
        g: Option<String>,
        #[arg(long, default_value = "origin")]
        at: String,
    },
    /// Multiplicity and tangent cone of a curve at a point.
    Mult {
        f: Option<String>,
        #[arg(long, default_value = "origin")]
        at: String,
    },
    /// Milnor and Tjurina numbers at a point.
    Milnor {
        f: Option<String>,
        #[arg(long, default_value = "origin")]
        at: String,
    },
    /// Dual of a plane projective curve.
    Dual { f: Option<String> },
    /// Pluecker invariants from degree, nodes and cusps.
    Pluecker { d: i64, delta: i64, kappa: i64 },
    /// Geometric genus from the degree and delta invariants.
    Genus {
        d: i64,
        #[arg(allow_negative_numbers = true)]
        deltas: Vec<i64>,
    },
    /// Adjoint ideal of a curve with ordinary singularities.
    Adjoint {
        f: Option<String>,
        /// Singular point and multiplicity, e.g. 0:0:1@2.
        #[arg(long = "sing")]
        sing: Vec<String>,
    },
    /// Riemann-Roch space L(D) on a plane curve.
    Rrspace {
        f: Option<String>,
        /// Divisor term, e.g. 1:-1:0@2 (repeatable).
        #[arg(long = "divisor")]
        divisor: Vec<String>,
        #[arg(long = "sing")]
        sing: Vec<String>,
    },
    /// Certify Bezout's theorem for two plane curves.
    Bezout {
        f: Option<String>,
        g: Option<String>,
        /// Intersection point, optionally with a claimed multiplicity (P@m).
        #[arg(long = "point")]
        point: Vec<String>,
        /// Number of intersections not listed.
        #[arg(long, default_value_t = 0)]
        residual: u64,
    },
}

fn exit_code(e: &Error) -> u8 {
    if e.is_parse() {
        2
    } else {
        1
    }
}

struct Outcome {
    doc: ResultDocument,
    error: Option<Error>,
}

/// Evaluates `text`, optionally on a worker thread bounded by `timeout`.
fn execute(text: &str, jobs: usize, timeout: Option<f64>) -> Result<Outcome, Error> {
    let ast = parse_session(text)?;
    let total = ast
        .statements
        .iter()
        .filter(|s| matches!(s.kind, StatementKind::Command { .. }))
        .count();
    let opts = EvalOptions { jobs };
    let Some(secs) = timeout else {
        let mut doc = ResultDocument::default();
        let error = evaluate(&ast, opts, &mut |e| doc.results.push(e)).err();
        return Ok(Outcome { doc, error });
    };
    let (tx, rx) = mpsc::channel::<Result<ResultEntry, Option<Error>>>();
    std::thread::spawn(move || {
        let sink_tx = tx.clone();
        let r = evaluate(&ast, opts, &mut |e| {
            let _ = sink_tx.send(Ok(e));
        });
        let _ = tx.send(Err(r.err()));
    });
    let deadline = Instant::now() + Duration::from_secs_f64(secs.max(0.0));
    let mut doc = ResultDocument::default();
    loop {
        let left = deadline.saturating_duration_since(Instant::now());
        match rx.recv_timeout(left) {
            Ok(Ok(e)) => doc.results.push(e),
            Ok(Err(error)) => return Ok(Outcome { doc, error }),
            Err(_) => {
                doc.note = Some(format!(
                    "timed out after {secs} s; {} of {total} commands finished",
                    doc.results.len()
                ));
                return Ok(Outcome {
                    doc,
                    error: Some(Error::NoConvergence("time limit reached".into())),
                });
            }
        }
    }
}

fn read_input(file: &str) -> io::Result<String> {
    if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global;
    let (text, headers) = match &cli.command {
        Command::Run { file } => match read_input(file) {
            Ok(t) => (t, true),
            Err(e) => {
                eprintln!("error: cannot read {file}: {e}");
                return ExitCode::from(2);
            }
        },
        other => match oneshot::session_text(other, &g) {
            Ok(t) => (t, false),
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
    };
    let outcome = match execute(&text, g.jobs, g.timeout) {
        Ok(o) => o,
        Err(e) => {
            report(&e, &text, headers);
            return ExitCode::from(exit_code(&e));
        }
    };
    let rendered = match g.format {
        Format::Json => format!("{}\n", outcome.doc.to_json()),
        Format::Text => outcome.doc.render_text(headers),
    };
    let mut out = io::stdout().lock();
    let _ = out.write_all(rendered.as_bytes());
    let _ = out.flush();
    match outcome.error {
        None => ExitCode::SUCCESS,
        Some(e) => {
            if outcome.doc.note.is_none() {
                report(&e, &text, headers);
            } else {
                eprintln!("error: time limit reached");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Prints an error; for generated sessions the offending line is shown since
/// positions refer to it.
fn report(e: &Error, text: &str, from_file: bool) {
    match e {
        Error::Parse { line, .. } if !from_file => {
            eprintln!("error: {e}");
            if let Some(l) = text.lines().nth(line.saturating_sub(1)) {
                eprintln!("  in: {l}");
            }
        }
        _ => eprintln!("error: {e}"),
    }
}
