use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flatepi::abgroup::{cokernel_structure, smith_normal_form};
use flatepi::catalog::EQUATION_PREFIX;
use flatepi::elliptic::Torsion;
use flatepi::lcohom::{certify_nonvanishing, dims_in_box, MonomialAlgebra, NonVanishing, VariableIdeal};
use flatepi::spectool::SpecPoset;
use flatepi::verdict::ReasonCode;
use flatepi::{BigInt, Curve, Error, ImagQuadOrder, IntMatrix, Point};

const EXIT_INPUT: u8 = 2;
const EXIT_NOT_REPRESENTABLE: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "flatepi", version, about = "Classify localisations of catalog rings exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Built-in rings.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Decide flat / universal / classical for V(p).
    Classify {
        #[arg(long)]
        ring: String,
        /// Prime: p2, "2,2", "(X,V)", "m", ...
        #[arg(long, required_unless_present = "fp", conflicts_with = "fp")]
        prime: Option<String>,
        /// Bihomogeneous equation in S0,S1,T0,T1 (segre only).
        #[arg(long)]
        fp: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Class group of an imaginary quadratic order.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Elliptic curve utilities.
    Ell {
        #[command(subcommand)]
        action: EllAction,
    },
    /// Multigraded Čech local cohomology of a monomial quotient.
    Cech {
        #[arg(long)]
        vars: String,
        /// Squarefree monomial relations, e.g. XU (repeatable or comma separated).
        #[arg(long, value_delimiter = ',')]
        rel: Vec<String>,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        i: usize,
        #[arg(long = "box", default_value_t = 3)]
        bound: i64,
    },
    /// Smith normal form of an integer matrix file.
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Finite spectra.
    Spec {
        #[command(subcommand)]
        action: SpecAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum EllAction {
    Torsion {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Subcommand)]
enum SpecAction {
    Enumerate {
        #[arg(long)]
        poset: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NotRepresentable(_) => EXIT_NOT_REPRESENTABLE,
                _ => EXIT_INPUT,
            })
        }
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn read(path: &Path) -> flatepi::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> flatepi::Result<u8> {
    match cmd {
        Command::Catalog {
            action: CatalogAction::List { format },
        } => {
            let entries = flatepi::catalog_list();
            match format {
                Format::Json => print_json(&serde_json::to_value(entries).expect("entries serialize")),
                Format::Text => {
                    for e in entries {
                        let flag = if e.representable { "" } else { "  [not representable]" };
                        println!("{:<10} {}{flag}", e.id, e.description);
                        if !e.example_primes.is_empty() {
                            println!("{:<10} primes: {}", "", e.example_primes.join("  "));
                        }
                        println!("{:<10} note: {}", "", e.notes);
                    }
                }
            }
            Ok(0)
        }
        Command::Classify {
            ring,
            prime,
            fp,
            format,
        } => {
            let prime = match (prime, fp) {
                (Some(p), _) => p,
                (None, Some(f)) => format!("{EQUATION_PREFIX}{f}"),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let v = flatepi::classify(&ring, &prime)?;
            match format {
                Format::Json => println!("{}", v.to_json()),
                Format::Text => print!("{}", v.to_text()),
            }
            Ok(if v.reason() == Some(ReasonCode::BoxExhausted) {
                EXIT_INCONCLUSIVE
            } else {
                0
            })
        }
        Command::Classgroup { disc, format } => {
            let d: BigInt = disc
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad discriminant {disc:?}")))?;
            let order = ImagQuadOrder::from_discriminant(d)?;
            let forms: Vec<String> = order
                .reduced_forms()
                .iter()
                .map(|f| format!("({}, {}, {})", f.a(), f.b(), f.c()))
                .collect();
            match format {
                Format::Json => print_json(&json!({
                    "discriminant": order.discriminant().to_string(),
                    "class_number": forms.len(),
                    "reduced_forms": forms,
                })),
                Format::Text => {
                    println!("discriminant:  {}", order.discriminant());
                    println!("class number:  {}", forms.len());
                    println!("reduced forms: {}", forms.join(" "));
                }
            }
            Ok(0)
        }
        Command::Ell {
            action: EllAction::Torsion { curve, point },
        } => {
            let e = Curve::parse(&curve)?;
            let p = Point::parse(&point)?;
            match e.torsion_order(&p) {
                Ok(t) => {
                    let (torsion, why) = match t {
                        Torsion::Finite(n) => (json!(n), format!("{n}P = O")),
                        Torsion::NonIntegralMultiple(k) => (
                            json!("infinite"),
                            format!("{k}P = {} is not integral (Nagell-Lutz)", e.mul(k as i64, &p)?),
                        ),
                        Torsion::BeyondMazur => (
                            json!("infinite"),
                            "no multiple up to 12 vanishes (Mazur)".to_string(),
                        ),
                    };
                    print_json(&json!({
                        "curve": e.ring_id(),
                        "point": p.to_string(),
                        "torsion": torsion,
                        "justification": why,
                    }));
                    Ok(0)
                }
                Err(Error::Precondition(msg)) => {
                    print_json(&json!({
                        "curve": e.ring_id(),
                        "point": p.to_string(),
                        "torsion": "unknown",
                        "justification": msg,
                    }));
                    Ok(0)
                }
                Err(other) => Err(other),
            }
        }
        Command::Cech {
            vars,
            rel,
            ideal,
            i,
            bound,
        } => {
            let rels: Vec<&str> = rel.iter().map(String::as_str).filter(|r| !r.trim().is_empty()).collect();
            let alg = MonomialAlgebra::parse(&vars, &rels)?;
            let ideal = VariableIdeal::parse(&alg, &ideal)?;
            let scan = certify_nonvanishing(&alg, &ideal, i, bound)?;
            let dims: Vec<Value> = dims_in_box(&alg, &ideal, i, bound)?
                .into_iter()
                .map(|(a, d)| json!({"degree": a, "dim": d}))
                .collect();
            let (witness, vanishing, code) = match &scan {
                NonVanishing::Witness(a) => (json!(a), Value::Null, 0),
                NonVanishing::NotFoundWithinBox { vanishing: Some(v) } => {
                    (Value::Null, json!(v.to_string()), 0)
                }
                NonVanishing::NotFoundWithinBox { vanishing: None } => {
                    (Value::Null, Value::Null, EXIT_INCONCLUSIVE)
                }
            };
            print_json(&json!({
                "algebra": alg.to_string(),
                "ideal": ideal.display(&alg),
                "i": i,
                "box": bound,
                "dim_by_degree": dims,
                "witness": witness,
                "vanishing": vanishing,
            }));
            Ok(code)
        }
        Command::Snf { matrix } => {
            let m = IntMatrix::parse(&read(&matrix)?)?;
            let s = smith_normal_form(&m);
            println!("D =\n{}", s.d);
            println!("U =\n{}", s.u);
            println!("W =\n{}", s.w);
            println!("cokernel: {}", cokernel_structure(&m));
            Ok(0)
        }
        Command::Spec {
            action: SpecAction::Enumerate { poset },
        } => {
            let p = SpecPoset::parse(&read(&poset)?)?;
            let sets = p.enumerate_closed()?;
            println!("count: {}", sets.len());
            for s in &sets {
                println!("{{{}}}", p.labels_of(s.members()).join(", "));
            }
            Ok(0)
        }
    }
}
