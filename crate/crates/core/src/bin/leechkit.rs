use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use leechkit::catalog::{self, CatalogName};
use leechkit::claims::{self, Status};
use leechkit::klein::{
    eigenpoints_on, fixed_lines, invariant_cubics, monomial_string, rank_coinvariant_on_f, smoothness_witness_mod_p,
    CubicForm, ProjAutomorphism,
};
use leechkit::lattice::{FiniteQuadraticForm, FormJson, Lattice};
use leechkit::niemeier::{build_niemeier, rows, spec, verify_roots};
use leechkit::nikulin::{enumerate_ternary_genus, glue_divisor};
use leechkit::short_vectors::{enumerate_up_to, isometry_search, IsometryOutcome, DEFAULT_NODE_CAP};
use leechkit::{Error, Result};

/// Exact lattice computations around the Leech lattice.
///
/// Lattice arguments are Lattice JSON files; a name such as `S11`, `E8:-1`,
/// `niemeier:N23` or `holy:N22` is accepted where no such file exists.
#[derive(Parser)]
#[command(name = "leechkit", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the named verification claims (all of them by default).
    Verify {
        #[arg(long = "claim", value_name = "ID")]
        claims: Vec<String>,
        #[arg(long)]
        json: bool,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Emit a catalog lattice as Lattice JSON.
    Catalog {
        name: Option<String>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        scale: i64,
        #[arg(long)]
        list: bool,
    },
    /// Build a Niemeier lattice (N1 … N23, Leech) as Lattice JSON.
    Niemeier {
        name: Option<String>,
        /// Count roots against 24h instead of printing the lattice.
        #[arg(long)]
        verify_roots: bool,
        #[arg(long)]
        list: bool,
    },
    /// Vectors with 0 < |norm| ≤ bound of a definite lattice.
    Enum {
        lattice: String,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        list: bool,
    },
    /// Decide isometry of two definite lattices (exit 0: isometric, 1: not, 3: undecided).
    Isom {
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        node_cap: u64,
    },
    /// Discriminant form of a lattice, in the JSON accepted by `genus --disc`.
    Disc {
        /// One or more lattices; the form of their orthogonal sum is printed.
        #[arg(required = true)]
        lattices: Vec<String>,
    },
    /// Classes in the genus of positive definite ternary forms of given
    /// determinant and discriminant form.
    Genus {
        #[arg(long)]
        det: i64,
        #[arg(long, default_value_t = 3)]
        rank: usize,
        #[arg(long, value_name = "FORM_JSON")]
        disc: String,
    },
    /// Divisor of a primitive vector of T in the overlattice glued from T and S.
    Divisor {
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long, default_value = "S11")]
        complement: String,
        #[arg(long, default_value_t = 2)]
        ambient_det: u64,
    },
    /// Computations on the Klein cubic fourfold.
    Klein {
        #[command(subcommand)]
        cmd: KleinCmd,
    },
}

#[derive(Subcommand)]
enum KleinCmd {
    /// Count singular points over F_p (0 means smooth).
    Smooth {
        #[arg(long, default_value_t = 23)]
        prime: u64,
    },
    /// Co-invariant ranks on H² of the Fano variety for ψ and β.
    Ranks,
    /// Fixed points of ψ on the cubic and the lines joining them.
    FixedLines,
    /// ψ-invariant cubic monomials.
    InvariantCubics,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

// a closed pipe (`| head`) is not an error worth a panic
fn out(s: impl std::fmt::Display) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn print(v: &Value) {
    out(serde_json::to_string_pretty(v).expect("serializable"));
}

fn load_lattice(arg: &str) -> Result<Lattice> {
    if Path::new(arg).is_file() {
        let s = fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        Lattice::from_json_str(&s)
    } else {
        claims::build_model(arg)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Verify { claims: ids, json, list } => verify(ids, json, list),
        Cmd::Catalog { name, scale, list } => {
            if list || name.is_none() {
                for n in CatalogName::FIXED {
                    out(n);
                }
                out("A_n\nD_n\nrank1(k)");
                return Ok(ExitCode::SUCCESS);
            }
            let l = catalog::build(name.unwrap_or_default().parse()?, scale)?;
            out(l.to_json_string());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Niemeier { name, verify_roots: check, list } => {
            let Some(name) = name.filter(|_| !list) else {
                for r in rows() {
                    out(format!("{:6} {}", r.name, if r.dynkin.is_empty() { "(no roots)" } else { &r.dynkin }));
                }
                return Ok(ExitCode::SUCCESS);
            };
            let sp = spec(&name)?;
            let l = build_niemeier(&sp)?;
            if !check {
                out(l.to_json_string());
                return Ok(ExitCode::SUCCESS);
            }
            let (found, expected) = verify_roots(&sp, &l)?;
            print(&json!({ "name": sp.name(), "roots": found, "expected": expected, "ok": found == expected }));
            Ok(if found == expected { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Enum { lattice, bound, list } => {
            let r = enumerate_up_to(&load_lattice(&lattice)?, bound, list)?;
            print(&serde_json::to_value(&r).map_err(|e| Error::Parse(e.to_string()))?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Isom { a, b, node_cap } => {
            let res = isometry_search(&load_lattice(&a)?, &load_lattice(&b)?, node_cap)?;
            let (v, code) = match &res {
                IsometryOutcome::Isometric(w) => (json!({ "result": "isometric", "witness": w.to_i64_rows() }), 0),
                IsometryOutcome::NotIsometric(why) => (json!({ "result": "not isometric", "reason": why }), 1),
                IsometryOutcome::Indeterminate(why) => (json!({ "result": "indeterminate", "reason": why }), 3),
            };
            print(&v);
            Ok(ExitCode::from(code))
        }
        Cmd::Disc { lattices } => {
            let parts = lattices.iter().map(|a| Ok(load_lattice(a)?.without_ambient())).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&Lattice> = parts.iter().collect();
            let q = Lattice::direct_sum(&refs).discriminant_form()?;
            print(&serde_json::to_value(q.to_json()).map_err(|e| Error::Parse(e.to_string()))?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Genus { det, rank, disc } => {
            if rank != 3 {
                return Err(Error::InvalidParameter("only ternary genera (--rank 3) are enumerated".into()));
            }
            let s = fs::read_to_string(&disc).map_err(|e| Error::Parse(format!("{disc}: {e}")))?;
            let fj: FormJson = serde_json::from_str(&s).map_err(|e| Error::Parse(format!("{disc}: {e}")))?;
            let q = FiniteQuadraticForm::from_json(&fj)?;
            let classes = enumerate_ternary_genus(det, &q)?;
            let found: Vec<Value> = classes
                .iter()
                .map(|l| serde_json::from_str(&l.to_json_string()).expect("valid JSON"))
                .collect();
            print(&Value::Array(found));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Divisor { lattice, vector, complement, ambient_det } => {
            let t = load_lattice(&lattice)?;
            let s = load_lattice(&complement)?;
            let f = vector
                .split(',')
                .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coordinate {c:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let d = glue_divisor(&f, &t, &s, ambient_det)?;
            print(&json!({ "norm": t.norm(&f).to_string(), "divisor": d.to_string() }));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Klein { cmd } => klein(cmd),
    }
}

fn verify(ids: Vec<String>, as_json: bool, list: bool) -> Result<ExitCode> {
    if list {
        for c in claims::manifest() {
            out(format!("{:28} {}", c.id, c.anchor));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let reports = if ids.is_empty() {
        claims::run_all()
    } else {
        ids.iter().map(|id| claims::run_claim(id)).collect::<Result<Vec<_>>>()?
    };
    if as_json {
        print(&serde_json::to_value(&reports).map_err(|e| Error::Parse(e.to_string()))?);
    } else {
        for r in &reports {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Indeterminate => "INDETERMINATE",
            };
            out(format!("{tag:13} {:28} {:7.2}s  {}", r.id, r.seconds, r.anchor));
            if !r.passed() {
                out(format!("              {}", r.evidence));
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn klein(cmd: KleinCmd) -> Result<ExitCode> {
    let h = CubicForm::klein();
    let psi = ProjAutomorphism::klein_psi();
    match cmd {
        KleinCmd::Smooth { prime } => {
            let n = smoothness_witness_mod_p(&h, prime)?;
            print(&json!({ "cubic": h.to_string(), "prime": prime, "singular_points": n, "smooth": n == 0 }));
        }
        KleinCmd::Ranks => {
            let out = [psi, ProjAutomorphism::klein_beta()]
                .iter()
                .map(|g| rank_coinvariant_on_f(g, &h))
                .collect::<Result<Vec<_>>>()?;
            print(&serde_json::to_value(&out).map_err(|e| Error::Parse(e.to_string()))?);
        }
        KleinCmd::FixedLines => {
            let pts = eigenpoints_on(&psi, &h)?;
            let lines = fixed_lines(&psi, &h)?;
            print(&json!({ "points": pts, "lines": lines }));
        }
        KleinCmd::InvariantCubics => {
            let ms: Vec<String> = invariant_cubics(&psi)?.iter().map(monomial_string).collect();
            print(&json!(ms));
        }
    }
    Ok(ExitCode::SUCCESS)
}
