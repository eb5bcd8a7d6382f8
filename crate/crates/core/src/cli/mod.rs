//! Command-line front end. [`run`] turns parsed arguments into a
//! [`RunReport`] without touching stdout, so it is testable in-process.

pub mod parse;

use std::time::Instant;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::automorphism::{jvdk_factorize, pushforward_curve, PlaneAutomorphism};
use crate::classify::{classify_with, verify_invariance, ClassifyOptions, Confidence};
use crate::completions::{automorphism_to_chain, boundary_profile_with, Completion, ProfileOptions};
use crate::config::Caps;
use crate::corpus::{normal_form_suite, random_tame, TameOptions};
use crate::error::{Error, Result};
use crate::fence::fence_symmetries;
use crate::field::Field;
use crate::normalize::normalize_with_caps;

pub use parse::{parse_poly, parse_unipoly, FieldSpec, PolyExpr};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: &str = "1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_AUTOMORPHISM: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "curveaut", version, about = "Automorphism groups of plane affine curves by elementary links")]
pub struct Cli {
    /// Base field: `q` or `fp:<p>`.
    #[arg(long, global = true, default_value = "q")]
    pub field: String,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include the driver trace.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Assert that the curve is geometrically irreducible.
    #[arg(long, global = true)]
    pub irreducible: bool,
    /// Seed for the corpus runner.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock time in the report (makes it nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the automorphism group of the curve `poly = 0`.
    Classify {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Drive the curve to a fence or to minimal position on P2.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Boundary profile with heights on a completion.
    Analyze {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// `p2` or `f<n>`.
        #[arg(long, default_value = "p2")]
        completion: String,
    },
    /// Tame factors and reduced link chain of the automorphism `(f, g)`.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Image of the curve `poly = 0` under `(f, g)`.
    Transport {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Whether `(f, g)` maps the curve `poly = 0` to itself.
    Verify {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Affine substitutions `F(a x + b) = c F(x)` of a polynomial in `x`.
    FenceGroup {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Recover every normal form from random tame conjugates.
    Corpus {
        /// Conjugates per normal form.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Largest degree of a conjugator.
        #[arg(long, default_value_t = 8)]
        max_degree: u32,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Normalize { .. } => "normalize",
            Command::Analyze { .. } => "analyze",
            Command::Decompose { .. } => "decompose",
            Command::Transport { .. } => "transport",
            Command::Verify { .. } => "verify",
            Command::FenceGroup { .. } => "fence-group",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// What one invocation produced: a JSON document, its text rendering and
/// the process exit code.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub exit_code: i32,
    pub json: Value,
    pub text: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAnAutomorphism(_) => EXIT_NOT_AUTOMORPHISM,
        Error::ResourceCap { .. } => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::NotRepresentable(_) => "not-representable",
        Error::NotAnAutomorphism(_) => "not-an-automorphism",
        Error::ResourceCap { .. } => "resource-cap",
        Error::NotSquarefree => "not-squarefree",
        Error::Unsupported(_) => "unsupported",
        _ => "input",
    }
}

struct Payload {
    input: Value,
    result: Value,
    text: String,
    trace: Vec<String>,
}

pub fn run(cli: &Cli) -> RunReport {
    let start = Instant::now();
    let mut head = json!({
        "schema_version": SCHEMA_VERSION,
        "command": cli.command.name(),
        "field": cli.field,
    });
    let outcome = cli.field.parse::<FieldSpec>().and_then(|spec| {
        head["field"] = json!(spec.to_string());
        dispatch(cli, &spec.field()?)
    });
    let elapsed = start.elapsed();
    match outcome {
        Ok(p) => {
            head["input"] = p.input;
            head["result"] = p.result;
            let mut text = p.text;
            if cli.trace {
                head["trace"] = json!(p.trace);
                for line in &p.trace {
                    text.push_str(&format!("\n  | {line}"));
                }
            }
            if cli.timing {
                head["elapsed_ms"] = json!(elapsed.as_millis().to_string());
            }
            RunReport { exit_code: EXIT_OK, json: head, text }
        }
        Err(e) => {
            let code = exit_code(&e);
            let mut err = json!({"kind": error_kind(&e), "message": e.to_string(), "exit_code": code.to_string()});
            if let Error::Parse { pos, .. } = &e {
                err["position"] = json!(pos.to_string());
            }
            if let Error::ResourceCap { trace, .. } = &e {
                err["trace"] = json!(trace);
            }
            head["error"] = err;
            RunReport { exit_code: code, json: head, text: format!("error: {e}") }
        }
    }
}

fn dispatch(cli: &Cli, k: &Field) -> Result<Payload> {
    let caps = Caps::from_env();
    match &cli.command {
        Command::Classify { poly } => {
            let f = parse_poly(poly, k)?;
            let c = classify_with(&f, &ClassifyOptions { irreducible: cli.irreducible, caps })?;
            let mut text = format!("case: {}", c.tag());
            let params = c.form.parameters_json(k);
            if let Some(obj) = params.as_object().filter(|o| !o.is_empty()) {
                let parts: Vec<String> = obj.iter().map(|(key, v)| format!("{key}={}", plain(v))).collect();
                text.push_str(&format!("({})", parts.join(", ")));
            }
            let conf = match c.confidence {
                Confidence::Proved => "Proved",
                Confidence::MatchedNone => "MatchedNone",
            };
            text.push_str(&format!("\nconfidence: {conf}\nconjugator: {}", c.conjugator));
            if let Some(eq) = c.form.equation(k) {
                text.push_str(&format!("\nnormal form: {eq} = 0"));
            }
            for g in &c.generators {
                text.push_str(&format!("\ngenerator {}: {}", g.family.name(), g.family.expression(k)));
            }
            let trace = c.normalization.trace.clone();
            Ok(Payload { input: json!({"poly": f.to_string()}), result: c.to_json(), text, trace })
        }
        Command::Normalize { poly } => {
            let f = parse_poly(poly, k)?;
            let n = normalize_with_caps(&f, &caps)?;
            let text = format!(
                "outcome: {}\nconjugator: {}\ncurve: {} = 0\nchain: {}",
                n.outcome.tag(),
                n.outcome.conjugator(),
                n.curve,
                n.chain
            );
            Ok(Payload { input: json!({"poly": f.to_string()}), result: n.to_json(), text, trace: n.trace.clone() })
        }
        Command::Analyze { poly, completion } => {
            let f = parse_poly(poly, k)?;
            let x: Completion = completion.parse()?;
            let pr = boundary_profile_with(&f, x, &ProfileOptions { heights: true, caps })?;
            let mut text = format!("{} boundary point(s) on {x}", pr.entries.len());
            for e in &pr.entries {
                text.push_str(&format!(
                    "\n  {}: line {}, section {}, multiplicity {}, height {}",
                    e.point,
                    e.intersection_line.map_or("-".into(), |v| v.to_string()),
                    e.intersection_section.map_or("-".into(), |v| v.to_string()),
                    e.multiplicity,
                    e.height.map_or("-".into(), |v| v.to_string()),
                ));
            }
            let input = json!({"poly": f.to_string(), "completion": x.to_string()});
            Ok(Payload { input, result: pr.to_json(), text, trace: Vec::new() })
        }
        Command::Decompose { f, g } => {
            let phi = parse_map(f, g, k)?;
            let fac = jvdk_factorize(phi.f(), phi.g())?;
            let chain = automorphism_to_chain(&phi)?;
            let len = chain.length()?;
            let factors: Vec<Value> = fac
                .factors
                .iter()
                .map(
                    |t| json!({"kind": format!("{:?}", t.kind), "map": [t.map.f().to_string(), t.map.g().to_string()]}),
                )
                .collect();
            let mut text = format!("automorphism: {phi}\ninverse: {}\nfactors:", phi.inverse());
            for t in &fac.factors {
                text.push_str(&format!("\n  {:?} {}", t.kind, t.map));
            }
            text.push_str(&format!("\nchain: {chain}\nlength: {len}"));
            let result = json!({
                "inverse": [phi.inverse_f().to_string(), phi.inverse_g().to_string()],
                "factors": factors,
                "chain": chain.to_json(),
                "length": len.to_string(),
            });
            Ok(Payload { input: map_json(&phi), result, text, trace: Vec::new() })
        }
        Command::Transport { f, g, poly } => {
            let phi = parse_map(f, g, k)?;
            let c = parse_poly(poly, k)?;
            let img = pushforward_curve(&phi, &c)?;
            let mut input = map_json(&phi);
            input["poly"] = json!(c.to_string());
            Ok(Payload {
                input,
                result: json!({"image": img.to_string()}),
                text: format!("{img} = 0"),
                trace: Vec::new(),
            })
        }
        Command::Verify { f, g, poly } => {
            let phi = parse_map(f, g, k)?;
            let c = parse_poly(poly, k)?;
            if c.is_zero() {
                return Err(Error::ZeroInput("verify"));
            }
            let scalar = verify_invariance(&c, &phi);
            let text = match &scalar {
                Some(s) => format!("invariant: true (scalar {})", k.format(s)),
                None => "invariant: false".into(),
            };
            let mut input = map_json(&phi);
            input["poly"] = json!(c.to_string());
            let result = json!({"invariant": scalar.is_some(), "scalar": scalar.map(|s| k.format(&s))});
            Ok(Payload { input, result, text, trace: Vec::new() })
        }
        Command::FenceGroup { poly } => {
            let p = parse_unipoly(poly, k)?;
            let s = fence_symmetries(&p)?;
            let result = s.to_json(k);
            let text = match &s {
                crate::fence::FenceSymmetries::Family { .. } => format!("family: {}", plain(&result["description"])),
                crate::fence::FenceSymmetries::Finite(v) => {
                    let rows: Vec<String> = v
                        .iter()
                        .map(|(a, b, c)| format!("  a = {}, b = {}, c = {}", k.format(a), k.format(b), k.format(c)))
                        .collect();
                    format!("{} solution(s)\n{}", v.len(), rows.join("\n"))
                }
            };
            Ok(Payload { input: json!({"poly": p.to_string_var("x")}), result, text, trace: Vec::new() })
        }
        Command::Corpus { count, max_degree } => corpus(k, cli.seed, *count, *max_degree, caps),
    }
}

fn parse_map(f: &str, g: &str, k: &Field) -> Result<PlaneAutomorphism> {
    PlaneAutomorphism::new(parse_poly(f, k)?, parse_poly(g, k)?)
}

fn map_json(phi: &PlaneAutomorphism) -> Value {
    json!({"map": [phi.f().to_string(), phi.g().to_string()]})
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Classifies each normal form and `count` random conjugates of it; a run
/// is recovered when the tag and exponents agree and the conjugator pulls
/// the normal form back to the input.
fn corpus(k: &Field, seed: u64, count: usize, max_degree: u32, caps: Caps) -> Result<Payload> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = TameOptions { max_degree, ..TameOptions::default() };
    let copts = ClassifyOptions { irreducible: true, caps };
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for n in normal_form_suite(k) {
        let base = classify_with(&n, &copts)?;
        let mut recovered = 0usize;
        let mut failures = Vec::new();
        for i in 0..count {
            let psi = random_tame(k, &mut rng, &opts);
            let f = psi.pushforward(&n);
            let ok = match classify_with(&f, &copts) {
                Ok(c) => {
                    c.tag() == base.tag()
                        && c.form.exponents() == base.form.exponents()
                        && c.form.equation(k).is_some_and(|eq| c.conjugator.pullback(&eq).ratio_to(&f).is_some())
                }
                Err(e) => {
                    failures.push(json!({"index": i.to_string(), "error": e.to_string()}));
                    continue;
                }
            };
            if ok {
                recovered += 1;
            } else {
                failures.push(json!({"index": i.to_string(), "error": "case not recovered"}));
            }
        }
        text.push(format!("{n} = 0: {} -> {recovered}/{count} recovered", base.tag()));
        rows.push(json!({
            "normal_form": n.to_string(),
            "case": base.tag(),
            "runs": count.to_string(),
            "recovered": recovered.to_string(),
            "failures": failures,
        }));
    }
    let input = json!({"seed": seed.to_string(), "count": count.to_string(), "max_degree": max_degree.to_string()});
    Ok(Payload { input, result: json!({"forms": rows}), text: text.join("\n"), trace: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> RunReport {
        let mut full = vec!["curveaut"];
        full.extend_from_slice(args);
        run(&Cli::parse_from(full))
    }

    #[test]
    fn classify_hyperbola() {
        let r = go(&["classify", "x*y - 1", "--json"]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.json["result"]["case"], "MonomialHyperbola");
        assert_eq!(r.json["result"]["parameters"]["with_swap"], true);
    }

    #[test]
    fn decompose_swap_shear() {
        let r = go(&["decompose", "y", "x + y^2"]);
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.json["result"]["length"], "4");
        assert_eq!(r.json["result"]["factors"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["classify", "x +"]).exit_code, EXIT_INPUT);
        assert_eq!(go(&["decompose", "x^2", "y"]).exit_code, EXIT_NOT_AUTOMORPHISM);
        assert_eq!(go(&["classify", "1/2*x", "--field", "fp:2"]).exit_code, EXIT_INPUT);
        assert_eq!(go(&["classify", "x", "--field", "fp:4"]).exit_code, EXIT_INPUT);
    }
}
