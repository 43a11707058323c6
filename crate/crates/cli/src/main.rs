use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use opring::action::{self, ActionModel};
use opring::gen;
use opring::isoms::{self, EmbeddingContext};
use opring::json;
use opring::laws::{self, StandardLaw};
use opring::opring::{normal_form, overlaps, spoly, OpExpr, RingSpec, Variety};
use opring::parse;
use opring::weyl::{self, Basis, WeylElt, WeylWord};
use opring::{CoeffStructure, Error, Mode, Poly};

#[derive(Parser, Debug)]
#[command(name = "opring", version, about = "Exact computation in rings of linear operators")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Operator ring: diff, rb, drb or id
    #[arg(long, global = true, default_value = "id")]
    ring: String,
    /// Weight λ as `p/q`
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    weight: String,
    /// Integration constant `c`, or `generic` for k[x,eps]
    #[arg(long, global = true, default_value = "0", allow_hyphen_values = true)]
    init: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, env = "OPRING_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LawName {
    Leibniz,
    RotaBaxter,
    Section,
    Ibp,
    Evaluation,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an operator expression
    Nf { expr: String },
    /// Act with an operator on a polynomial
    Apply { expr: String, poly: String },
    /// Normal form of a product
    Mul { lhs: String, rhs: String },
    /// Polarize every homogeneous component of a law
    Polarize {
        law: String,
        #[arg(long)]
        commutative: bool,
    },
    /// Induced relator of a standard law
    Relator {
        #[arg(value_enum)]
        law: LawName,
        /// Parameter value `f` (assigned to y1)
        #[arg(long, default_value = "x")]
        param: String,
        /// Also print the normal form
        #[arg(long)]
        reduce: bool,
    },
    /// Product in the Weyl algebra
    WeylMul {
        lhs: String,
        rhs: String,
        #[arg(long, default_value = "b2")]
        basis: String,
    },
    /// Re-express a Weyl element in another basis
    WeylConvert {
        expr: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Generic embedding into k[x,eps][D,I]
    Embed { expr: String },
    /// Specialization at an integration constant
    Specialize {
        expr: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        at: String,
    },
    /// Run a property check
    Check {
        #[command(subcommand)]
        check: Check,
    },
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Resolve every overlap on random coefficient pairs
    Confluence {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Compare the action of random words with that of their normal forms
    Oracle {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        polys: usize,
    },
    /// Rank of the embedded basis words
    Injectivity {
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Round trips between the Weyl bases
    Bases {
        #[arg(long, default_value_t = 4)]
        bound: u32,
    },
}

enum Outcome {
    Done(String, Value),
    Failed(String, Value),
}

fn ring_spec(g: &Global) -> Result<RingSpec, Error> {
    let variety: Variety = g.ring.parse()?;
    let weight = parse::parse_scalar(&g.weight)?;
    let coeff = if g.init == "generic" {
        if variety == Variety::Diff {
            return Err(Error::Invalid("--init generic needs a ring with an integral".into()));
        }
        CoeffStructure::generic()
    } else {
        CoeffStructure::point(parse::parse_scalar(&g.init)?)
    };
    Ok(RingSpec::new(variety, weight, coeff))
}

fn op_out(t: &OpExpr, spec: &RingSpec) -> Outcome {
    Outcome::Done(t.to_string(), json!(json::opexpr_json(t, spec)))
}

fn weyl_out(a: &WeylElt) -> Outcome {
    Outcome::Done(a.to_string(), json!(json::weyl_json(a)))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    match &cli.command {
        Command::Nf { expr } => {
            let spec = ring_spec(g)?;
            Ok(op_out(&normal_form(&parse::parse_opexpr(expr, &spec)?, &spec)?, &spec))
        }
        Command::Apply { expr, poly } => {
            let spec = ring_spec(g)?;
            let t = parse::parse_opexpr(expr, &spec)?;
            let p = parse::parse_poly(poly)?;
            let out = action::apply(&t, &p, &ActionModel::for_spec(&spec))?;
            Ok(Outcome::Done(out.to_string(), json!(json::poly_json(&out))))
        }
        Command::Mul { lhs, rhs } => {
            let spec = ring_spec(g)?;
            let a = parse::parse_opexpr(lhs, &spec)?;
            let b = parse::parse_opexpr(rhs, &spec)?;
            Ok(op_out(&normal_form(&(&a * &b), &spec)?, &spec))
        }
        Command::Polarize { law, commutative } => {
            let mode = if *commutative { Mode::Commutative } else { Mode::Noncommutative };
            let parts = laws::polarize_components(&parse::parse_law(law, mode)?)?;
            let text = parts.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("\n");
            let value = json!(parts.iter().map(json::law_json).collect::<Vec<_>>());
            Ok(Outcome::Done(text, value))
        }
        Command::Relator { law, param, reduce } => {
            let spec = ring_spec(g)?;
            let w = spec.weight();
            let law = match law {
                LawName::Leibniz => StandardLaw::leibniz(w),
                LawName::RotaBaxter => StandardLaw::rota_baxter(w),
                LawName::Section => StandardLaw::section(),
                LawName::Ibp => StandardLaw::integration_by_parts(w),
                LawName::Evaluation => StandardLaw::evaluation(w),
            };
            let f: Poly = parse::parse_poly(param)?;
            let assignment = law.params().iter().map(|p| (p.clone(), f.clone())).collect();
            let rel = laws::translate_relator(&law, &assignment, &spec)?;
            if *reduce {
                let nf = normal_form(&rel, &spec)?;
                let text = format!("{rel}\n{nf}");
                let value = json!({
                    "relator": json::opexpr_json(&rel, &spec),
                    "normal_form": json::opexpr_json(&nf, &spec),
                });
                return Ok(Outcome::Done(text, value));
            }
            Ok(op_out(&rel, &spec))
        }
        Command::WeylMul { lhs, rhs, basis } => {
            let basis: Basis = basis.parse()?;
            let a = weyl::convert(&parse::parse_weyl(lhs, basis)?, Basis::B2);
            let b = weyl::convert(&parse::parse_weyl(rhs, basis)?, Basis::B2);
            Ok(weyl_out(&weyl::convert(&weyl::weyl_mul(&a, &b)?, basis)))
        }
        Command::WeylConvert { expr, from, to } => {
            let a = parse::parse_weyl(expr, from.parse()?)?;
            Ok(weyl_out(&weyl::convert(&a, to.parse()?)))
        }
        Command::Embed { expr } => {
            let ctx = EmbeddingContext::new();
            let t = parse::parse_opexpr(expr, ctx.source())?;
            Ok(op_out(&isoms::embed_drb(&t, &ctx)?, ctx.target()))
        }
        Command::Specialize { expr, at } => {
            let c = parse::parse_scalar(at)?;
            let t = parse::parse_opexpr(expr, &RingSpec::standard(Variety::Drb))?;
            Ok(op_out(&isoms::specialize(&t, &c)?, &isoms::point_spec(&c)))
        }
        Command::Check { check } => run_check(check, g),
    }
}

fn run_check(check: &Check, g: &Global) -> Result<Outcome, Error> {
    match check {
        Check::Confluence { samples } => {
            let spec = ring_spec(g)?;
            let mut rng = gen::rng(g.seed);
            let eps = spec.coeff().is_generic();
            let mut cases = 0;
            for _ in 0..*samples {
                let f = gen::random_poly(&mut rng, gen::MAX_COEFF_DEGREE, eps);
                let h = gen::random_poly(&mut rng, gen::MAX_COEFF_DEGREE, eps);
                for name in overlaps(spec.variety()) {
                    cases += 1;
                    let s = spoly(&spec, name, &f, &h)?;
                    if !s.is_zero() {
                        let text = format!("overlap {name} does not resolve at f = {f}, g = {h}: {s}");
                        let value = json!({"check": "confluence", "passed": false, "overlap": name,
                            "f": f.to_string(), "g": h.to_string(), "difference": s.to_string()});
                        return Ok(Outcome::Failed(text, value));
                    }
                }
            }
            let text = format!("confluence: {cases} overlap instances resolve in the {spec} ring");
            Ok(Outcome::Done(text, json!({"check": "confluence", "passed": true, "cases": cases})))
        }
        Check::Oracle { samples, polys } => {
            let spec = ring_spec(g)?;
            let mut rng = gen::rng(g.seed);
            for n in 0..*samples {
                let t = gen::random_word(&mut rng, &spec, gen::MAX_WORD_LEN, gen::MAX_COEFF_DEGREE);
                let report = action::oracle_check(&t, &spec, *polys, g.seed.wrapping_add(n as u64))?;
                if let Some(cx) = report.counterexample {
                    let text = format!(
                        "{t} and its normal form {} differ on {}: {} vs {}",
                        report.normal_form, cx.input, cx.direct, cx.reduced
                    );
                    let value = json!({"check": "oracle", "passed": false, "word": t.to_string(),
                        "input": cx.input.to_string(), "direct": cx.direct.to_string(),
                        "reduced": cx.reduced.to_string()});
                    return Ok(Outcome::Failed(text, value));
                }
            }
            let text = format!("oracle: {samples} random words act as their normal forms in the {spec} ring");
            Ok(Outcome::Done(text, json!({"check": "oracle", "passed": true, "samples": samples})))
        }
        Check::Injectivity { bound } => {
            let r = isoms::injectivity_witness(*bound, &EmbeddingContext::new())?;
            let value = json!({"check": "injectivity", "passed": r.injective(), "bound": r.bound,
                "words": r.words, "rank": r.rank});
            match &r.dependency {
                None => Ok(Outcome::Done(format!("injectivity: rank {} of {} at bound {bound}", r.rank, r.words), value)),
                Some(dep) => {
                    let combo: Vec<String> = dep.iter().map(|(w, c)| format!("({c})*{w}")).collect();
                    let text = format!(
                        "injectivity: rank {} of {}; dependent combination of order {:?}: {}",
                        r.rank,
                        r.words,
                        r.top_order,
                        combo.join(" + ")
                    );
                    Ok(Outcome::Failed(text, value))
                }
            }
        }
        Check::Bases { bound } => {
            let mut words = 0;
            for w in weyl_words(*bound) {
                let (basis, other) = match w {
                    WeylWord::Triple { .. } => (Basis::B2, [Basis::B1, Basis::B3]),
                    WeylWord::Diff { .. } | WeylWord::Right { .. } | WeylWord::Eval { .. } => {
                        (Basis::B1, [Basis::B2, Basis::B3])
                    }
                    _ => (Basis::B3, [Basis::B1, Basis::B2]),
                };
                let a = WeylElt::word(basis, w)?;
                for to in other {
                    words += 1;
                    if weyl::convert(&weyl::convert(&a, to), basis) != a {
                        let text = format!("bases: {w} does not survive {basis} -> {to} -> {basis}");
                        let value = json!({"check": "bases", "passed": false, "word": w.to_string()});
                        return Ok(Outcome::Failed(text, value));
                    }
                }
            }
            let text = format!("bases: {words} round trips are exact at bound {bound}");
            Ok(Outcome::Done(text, json!({"check": "bases", "passed": true, "round_trips": words})))
        }
    }
}

fn weyl_words(bound: u32) -> Vec<WeylWord> {
    let mut out = Vec::new();
    for i in 0..=bound {
        for j in 0..=bound {
            for k in 0..=bound {
                out.push(WeylWord::Triple { i, j, k });
                out.push(WeylWord::Eval { i, j, k });
                if j > 0 && k == 0 {
                    out.push(WeylWord::Right { i, j });
                }
                if j == 0 {
                    out.push(WeylWord::Diff { i, k });
                }
                if k == 0 {
                    out.push(WeylWord::Mid { i, j });
                } else {
                    out.push(WeylWord::Rung { i, j, k });
                }
            }
        }
    }
    out
}

fn emit(format: Format, text: &str, value: &Value) {
    match format {
        Format::Text => println!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done(text, value)) => {
            emit(cli.global.format, &text, &value);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(text, value)) => {
            emit(cli.global.format, &text, &value);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
