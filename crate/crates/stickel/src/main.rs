//! Batch command-line front end. Every emitted nonresidue, root, or field is
//! re-verified by an independent check before printing, stdout is
//! byte-deterministic for identical inputs (timings go to stderr), and exit
//! codes are 0 = ok, 1 = qualifying property not satisfied / value not a
//! residue, 2 = invalid input.

use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use stickel::arith::nat;
use stickel::error::Error;
use stickel::experiments;
use stickel::factor;
use stickel::field::{
    chi_r, descriptor_string, find_irreducible, is_irreducible, parse_descriptor, Field,
    FqElement,
};
use stickel::poly::Poly;
use stickel::resolvent::bims;
use stickel::roots::{self, cor13_pipeline, find_zeta_bruteforce};
use stickel::teichmuller::build_rpower_field;
use stickel::Natural;

#[derive(Parser)]
#[command(
    name = "stickel",
    about = "Nonresidues, r-th roots and field towers from factor-count witnesses",
    version
)]
struct Cli {
    /// Mirror the result as JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct an r-th nonresidue in F_p^n from a witness polynomial
    Nonresidue {
        #[arg(long)]
        p: String,
        /// Target field: a descriptor file path or a plain extension degree
        #[arg(long)]
        field: String,
        #[arg(long)]
        r: u64,
        /// Witness polynomial over F_p (must satisfy the factor-count property)
        #[arg(long)]
        witness: String,
        /// Primitive r-th root of unity in F_p (found by scan when omitted)
        #[arg(long)]
        zeta: Option<String>,
    },
    /// Extract an r-th root in F_p^m (requires r | gcd(m, p-1))
    Root {
        #[arg(long)]
        p: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: u64,
        /// The residue, as a polynomial in the field generator
        #[arg(long)]
        value: String,
    },
    /// Construct a verified field descriptor of degree r^e over the base
    BuildField {
        #[arg(long)]
        p: String,
        /// Optional defining polynomial making the base an extension of F_p
        #[arg(long)]
        q_poly: Option<String>,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        witness: String,
        /// Output path for the descriptor (stdout when omitted)
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Distinct-degree factor counts of a squarefree polynomial
    Ddf {
        #[arg(long)]
        p: String,
        #[arg(long)]
        poly: String,
    },
    /// Report the smallest qualifying degree block for r, or "none"
    CheckProperty {
        #[arg(long)]
        p: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        r: u64,
    },
    /// Scan the log^2(p) trinomial box for a qualifying polynomial (r = 2)
    TrinomialSearch {
        /// Single prime to scan
        #[arg(long, conflicts_with = "pmax")]
        p: Option<u64>,
        /// Sweep all primes 5 <= p <= pmax
        #[arg(long)]
        pmax: Option<u64>,
        /// Box bound override (default: ceil(ln(p)^2))
        #[arg(long)]
        bound: Option<u64>,
        /// Scan the whole box instead of stopping at the first hit
        #[arg(long)]
        exhaustive: bool,
    },
    /// CSV table of least r-th nonresidues n(p, r) for primes p <= pmax
    LeastNonresidue {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        pmax: u64,
    },
}

fn trial_cap() -> u64 {
    std::env::var("STICKEL_TRIAL_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(roots::DEFAULT_TRIAL_CAP)
}

fn parse_natural(s: &str) -> Result<Natural, Error> {
    Natural::parse_bytes(s.trim().as_bytes(), 10)
        .ok_or_else(|| Error::Parse(format!("bad integer '{s}'")))
}

/// Element input: a polynomial expression in the generator of the top level.
fn parse_element(field: &Field, text: &str) -> Result<FqElement, Error> {
    if field.is_prime_field() {
        let poly = Poly::parse(field, text)?;
        if poly.degree().unwrap_or(0) > 0 {
            return Err(Error::Parse("prime-field element must be constant".into()));
        }
        return Ok(field.element(poly.coeff(0)));
    }
    let parent = field.parent().unwrap().clone();
    let poly = Poly::parse(&parent, text)?;
    field.class_of(&poly)
}

fn exit_code_of(e: &Error) -> i32 {
    match e {
        Error::PropertyNotSatisfied(_) | Error::NotAResidue => 1,
        _ => 2,
    }
}

fn status_of_code(code: i32) -> &'static str {
    match code {
        0 => "ok",
        1 => "property_not_satisfied",
        _ => "invalid_input",
    }
}

struct Output {
    human: String,
    payload: serde_json::Value,
}

fn run(cmd: &Command) -> Result<Output, Error> {
    let cap = trial_cap();
    match cmd {
        Command::Nonresidue { p, field, r, witness, zeta } => {
            let prime = Field::prime(parse_natural(p)?)?;
            let target = match field.parse::<usize>() {
                Ok(n) if n >= 1 => {
                    if n == 1 {
                        prime.clone()
                    } else {
                        let h = find_irreducible(&prime, n, cap)?;
                        prime.extend(&h)?
                    }
                }
                _ => {
                    let text = std::fs::read_to_string(field)
                        .map_err(|e| Error::Parse(format!("cannot read '{field}': {e}")))?;
                    let parsed = parse_descriptor(&text)?;
                    if parsed.characteristic() != prime.characteristic() {
                        return Err(Error::Parse(
                            "descriptor characteristic differs from --p".into(),
                        ));
                    }
                    parsed
                }
            };
            let f = Poly::parse(&prime, witness)?;
            let zeta = match zeta {
                Some(z) => parse_element(&prime, z)?,
                None => find_zeta_bruteforce(&prime, *r, cap)?,
            };
            let out = bims(&f, &zeta, *r, &target)?;
            let chi = chi_r(&out, &nat(*r))?;
            if chi.is_one() {
                return Err(Error::OrderMismatch("emitted element is a residue".into()));
            }
            Ok(Output {
                human: format!(
                    "nonresidue in {}: {}\nchi_{}: {}\n",
                    target.describe(),
                    out,
                    r,
                    chi
                ),
                payload: json!({
                    "field": descriptor_string(&target),
                    "nonresidue": out.to_string(),
                    "chi_r": chi.to_string(),
                }),
            })
        }
        Command::Root { p, m, r, value } => {
            let prime = Field::prime(parse_natural(p)?)?;
            let field = if *m == 1 {
                prime.clone()
            } else {
                let h = find_irreducible(&prime, *m, cap)?;
                prime.extend(&h)?
            };
            let a = parse_element(&field, value)?;
            let x = cor13_pipeline(*r, &a, cap)?;
            if x.pow(&nat(*r)) != a {
                return Err(Error::OrderMismatch("root verification failed".into()));
            }
            Ok(Output {
                human: format!(
                    "root in {}: {}\nverification: root^{} = {}\n",
                    field.describe(),
                    x,
                    r,
                    x.pow(&nat(*r))
                ),
                payload: json!({
                    "field": descriptor_string(&field),
                    "root": x.to_string(),
                    "value": a.to_string(),
                }),
            })
        }
        Command::BuildField { p, q_poly, r, e, witness, out } => {
            let prime = Field::prime(parse_natural(p)?)?;
            let base = match q_poly {
                None => prime.clone(),
                Some(h) => prime.extend(&Poly::parse(&prime, h)?)?,
            };
            let f = Poly::parse(&base, witness)?;
            let h = build_rpower_field(&base, *r, *e, &f, cap)?;
            if !is_irreducible(&h)? {
                return Err(Error::NotIrreducible(h.to_string()));
            }
            let built = base.extend(&h)?;
            let descriptor = descriptor_string(&built);
            if let Some(path) = out {
                std::fs::write(path, &descriptor)
                    .map_err(|e| Error::Parse(format!("cannot write descriptor: {e}")))?;
            }
            Ok(Output {
                human: format!(
                    "degree {} irreducible over {}: {}\n{}",
                    h.degree().unwrap(),
                    base.describe(),
                    h,
                    if out.is_some() { String::new() } else { descriptor.clone() }
                ),
                payload: json!({
                    "polynomial": h.to_string(),
                    "descriptor": descriptor,
                }),
            })
        }
        Command::Ddf { p, poly } => {
            let prime = Field::prime(parse_natural(p)?)?;
            let f = Poly::parse(&prime, poly)?.monic()?;
            let dec = factor::ddf(&f)?;
            let mut human = String::from("d,count\n");
            let mut rows = Vec::new();
            for part in &dec.parts {
                human.push_str(&format!("{},{}\n", part.degree, part.count));
                rows.push(json!({
                    "d": part.degree,
                    "count": part.count,
                    "block": part.product.to_string(),
                }));
            }
            Ok(Output { human, payload: json!({ "parts": rows }) })
        }
        Command::CheckProperty { p, poly, r } => {
            let prime = Field::prime(parse_natural(p)?)?;
            let f = Poly::parse(&prime, poly)?;
            match factor::check_property1(&f, *r)? {
                Some(w) => Ok(Output {
                    human: format!(
                        "witness: d={} count={} k={} block={}\n",
                        w.d, w.count, w.k, w.block
                    ),
                    payload: json!({
                        "witness": {
                            "d": w.d,
                            "count": w.count,
                            "k": w.k,
                            "block": w.block.to_string(),
                        }
                    }),
                }),
                None => Ok(Output {
                    human: "none\n".into(),
                    payload: json!({ "witness": null }),
                }),
            }
        }
        Command::TrinomialSearch { p, pmax, bound, exhaustive } => {
            let reports = match (p, pmax) {
                (Some(p), None) => vec![experiments::trinomial_search(*p, *bound, *exhaustive)?],
                (None, Some(pmax)) => {
                    experiments::trinomial_search_sweep(*pmax, *bound, *exhaustive)?
                }
                _ => {
                    return Err(Error::Parse(
                        "exactly one of --p and --pmax is required".into(),
                    ))
                }
            };
            let mut human = String::from("# bound metadata: natural log, ceiling rounding\n");
            human.push_str(&experiments::trinomial_csv(&reports));
            for r in &reports {
                if r.first_hit.is_none() {
                    human.push_str(&format!(
                        "# CONJECTURE VIOLATED at p={}: no qualifying trinomial in the box\n",
                        r.p
                    ));
                }
            }
            Ok(Output { human, payload: serde_json::to_value(&reports).unwrap() })
        }
        Command::LeastNonresidue { r, pmax } => {
            let rows = experiments::least_nonresidue_table(*r, *pmax)?;
            Ok(Output {
                human: experiments::least_nonresidue_csv(&rows),
                payload: serde_json::to_value(&rows).unwrap(),
            })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli.command);
    let elapsed = start.elapsed().as_millis();
    let code = match &result {
        Ok(_) => 0,
        Err(e) => exit_code_of(e),
    };
    match result {
        Ok(output) => {
            if cli.json {
                let doc = json!({
                    "status": status_of_code(0),
                    "payload": output.payload,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print!("{}", output.human);
            }
        }
        Err(e) => {
            if cli.json {
                let doc = json!({
                    "status": status_of_code(code),
                    "error": e.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                eprintln!("error: {e}");
            }
        }
    }
    // timings are diagnostics: stderr only, so stdout stays deterministic
    let _ = writeln!(std::io::stderr(), "elapsed_ms={elapsed}");
    std::process::exit(code);
}
