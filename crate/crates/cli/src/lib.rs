//! Command-line front end for `orbint`. [`run`] does all the work and
//! returns the exit code with the text destined for stdout and stderr, so
//! the binary is a thin wrapper and tests can drive it in-process.

pub mod check;
pub mod config;
pub mod output;

use std::f64::consts::PI;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use orbint::ktrace::{lds_character, schmid_sum, tau_class, tau_generator};
use orbint::realform::ClassTerm;
use orbint::stable::{continuity_check, lpacket_sum, random_direction, stable_tau, tau_e};
use orbint::tannaka::{reconstruct, SampleLayout, DEFAULT_CANDIDATE_BOX, DEFAULT_WEIGHT_BOX};
use orbint::{
    CharacterLattice, ConjugacyDescriptor, Error, KClass, PositiveSystem, RealFormSpec, TorusPoint,
    Weight,
};
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::config::{Config, DatumConfig, RealFormConfig, Verbosity};
use crate::output::{complex, to_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "orbint",
    version,
    about = "Orbital integrals on K-theory generators from root data"
)]
pub struct Cli {
    /// JSON config file.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Real-form preset: sl2r, su21, sp4r or compact(X).
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Named Cartan type (A1, A2, B2, C2, G2, ...).
    #[arg(long, global = true)]
    datum: Option<String>,
    /// Compact root indices into the root list, e.g. "0,3".
    #[arg(long, global = true)]
    compact_roots: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    spin_sign: Option<i8>,
    /// integral or spin-cover.
    #[arg(long, global = true)]
    lattice: Option<String>,
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ClassArgs {
    /// Generator label in fundamental coordinates, e.g. "1,0" or "0,-3/2".
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Class as JSON: [{"lambda": [1, 0], "coeff": 2}, ...].
    #[arg(long)]
    class: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Cartan matrix, roots and rho.
    Datum,
    /// Weyl group, compact Weyl group and coset representatives.
    Weyl,
    /// tau_g on a generator (both paths) or a class.
    Tau {
        #[command(flatten)]
        class: ClassArgs,
        /// Torus point ("1/5", "1/3,2/7", "0.1 0.2"), "non-elliptic" or "unequal-rank".
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Stable orbital integral over the coset representatives.
    Stable {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// L-packet character sum for the generator's Harish-Chandra parameter.
    Packet {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Limit of the stable sum at the identity against tau_e.
    Limit {
        #[command(flatten)]
        class: ClassArgs,
        /// Ray direction as decimals; drawn from --seed when absent.
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sum of limit-of-discrete-series characters over chambers.
    Schmid {
        /// Harish-Chandra parameter in fundamental coordinates.
        #[arg(long, allow_hyphen_values = true)]
        hc: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Chambers: "+" (standard), "-" (negated) or "w<i>" (Weyl element i applied).
        #[arg(long, default_value = "+,-")]
        systems: String,
    },
    /// Synthesise trace functions and reconstruct dims, weights and noncompact roots.
    Tannaka {
        /// Generator labels separated by ';'. Defaults to all labels with coordinates in [-1, 1], trivial label first.
        #[arg(long, allow_hyphen_values = true)]
        keys: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The SL(2,R) worked example.
    DemoSl2 {
        #[arg(long, default_value = "1/5")]
        t: String,
    },
    /// Run the identity suite.
    Check {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code with the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_singular() || matches!(e, Error::GuardTripped { .. }) {
        EXIT_SINGULAR
    } else if matches!(e, Error::Reconstruction(_)) {
        EXIT_FAILED
    } else {
        EXIT_INVALID
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok((code, value)) => Outcome {
            code,
            stdout: to_json(&value) + "\n",
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load_config(cli: &Cli) -> orbint::Result<Config> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
                what: "config file",
                input: format!("{path}: {e}"),
            })?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    if let Some(p) = &cli.preset {
        config.real_form = Some(RealFormConfig::Preset(p.clone()));
        if cli.datum.is_none() {
            config.datum = None;
        }
    }
    if let Some(d) = &cli.datum {
        config.datum = Some(DatumConfig::Named(d.clone()));
    }
    if let Some(c) = &cli.compact_roots {
        let compact_roots = c
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim().parse::<usize>().map_err(|_| Error::Parse {
                    what: "root index",
                    input: s.into(),
                })
            })
            .collect::<orbint::Result<Vec<_>>>()?;
        config.real_form = Some(RealFormConfig::CompactRoots { compact_roots });
    }
    if let Some(s) = cli.spin_sign {
        config.spin_sign = Some(s);
    }
    if let Some(l) = &cli.lattice {
        config.lattice = Some(CharacterLattice::parse(l)?);
    }
    if cli.verbose {
        config.verbosity = Verbosity::Verbose;
    }
    Ok(config)
}

fn parse_class(spec: &RealFormSpec, args: &ClassArgs) -> orbint::Result<KClass> {
    match (&args.lambda, &args.class) {
        (Some(l), None) => Ok(KClass::generator(spec.generator_key(&Weight::parse(l)?)?)),
        (None, Some(c)) => {
            let terms: Vec<ClassTerm> = serde_json::from_str(c).map_err(|e| Error::Parse {
                what: "class",
                input: e.to_string(),
            })?;
            KClass::from_class_terms(spec, &terms)
        }
        _ => Err(Error::Parse {
            what: "class",
            input: "give exactly one of --lambda and --class".into(),
        }),
    }
}

fn spec_summary(spec: &RealFormSpec) -> Value {
    json!({
        "name": spec.name(),
        "dim_gk": spec.dim_gk(),
        "spin_sign": spec.spin_sign(),
        "lattice": spec.lattice().as_str(),
    })
}

fn weights(ws: &[Weight]) -> Value {
    serde_json::to_value(ws).expect("weights serialize")
}

fn class_value(x: &KClass) -> Value {
    serde_json::to_value(x.to_class_terms()).expect("classes serialize")
}

fn descriptor_value(d: &ConjugacyDescriptor) -> Value {
    match d {
        ConjugacyDescriptor::Elliptic(g) => json!(g),
        ConjugacyDescriptor::NonElliptic => json!("non-elliptic"),
        ConjugacyDescriptor::UnequalRankAmbient => json!("unequal-rank"),
    }
}

fn parse_direction(text: &str) -> orbint::Result<Vec<f64>> {
    Ok(TorusPoint::parse(text)?.to_real())
}

fn execute(cli: &Cli) -> orbint::Result<(i32, Value)> {
    let config = load_config(cli)?;
    let verbose = config.verbosity == Verbosity::Verbose;
    Ok(match &cli.command {
        Command::Datum => {
            let datum = config.datum()?;
            (
                EXIT_OK,
                json!({
                    "name": datum.name(),
                    "rank": datum.rank(),
                    "cartan_matrix": datum.rows(),
                    "symmetrizer": datum.symmetrizer().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                    "positive_roots": weights(datum.positive_roots()),
                    "rho": datum.rho(datum.positive_roots()),
                }),
            )
        }
        Command::Weyl => {
            let spec = config.spec()?;
            let element = |w: &orbint::WeylElement| json!({"matrix": w.matrix(), "sign": w.sign(), "length": w.length()});
            let mut out = json!({
                "real_form": spec_summary(&spec),
                "order": spec.weyl_group().order(),
                "weyl_k_order": spec.weyl_k().len(),
                "coset_reps": spec.coset_reps().iter().map(element).collect::<Vec<_>>(),
                "compact_positive": weights(spec.compact_positive().roots()),
                "noncompact_positive": weights(spec.noncompact_positive().roots()),
                "rho_c": spec.rho_c(),
                "rho_n": spec.rho_n(),
            });
            if verbose {
                out["elements"] = spec.weyl_group().elements().iter().map(element).collect();
            }
            (EXIT_OK, out)
        }
        Command::Tau { class, t } => {
            let spec = config.spec()?;
            let d = ConjugacyDescriptor::parse(t)?;
            match (&class.lambda, &d) {
                (Some(l), ConjugacyDescriptor::Elliptic(g)) => {
                    let key = spec.generator_key(&Weight::parse(l)?)?;
                    let v = tau_generator(&spec, &key, g)?;
                    (
                        EXIT_OK,
                        json!({
                            "real_form": spec_summary(&spec),
                            "lambda": key,
                            "hc_parameter": spec.hc_parameter(&key),
                            "regular": spec.is_regular_param(&spec.hc_parameter(&key)),
                            "t": g,
                            "value": complex(v.value),
                            "path_a": complex(v.path_a),
                            "path_b": complex(v.path_b),
                        }),
                    )
                }
                _ => {
                    let x = parse_class(&spec, class)?;
                    let v = tau_class(&spec, &x, &d)?;
                    (
                        EXIT_OK,
                        json!({ "real_form": spec_summary(&spec), "class": class_value(&x), "t": descriptor_value(&d), "value": complex(v) }),
                    )
                }
            }
        }
        Command::Stable { class, t } => {
            let spec = config.spec()?;
            let x = parse_class(&spec, class)?;
            let g = TorusPoint::parse(t)?;
            let v = stable_tau(&spec, &x, &g)?;
            (
                EXIT_OK,
                json!({ "real_form": spec_summary(&spec), "class": class_value(&x), "t": g, "value": complex(v) }),
            )
        }
        Command::Packet { lambda, t } => {
            let spec = config.spec()?;
            let key = spec.generator_key(&Weight::parse(lambda)?)?;
            let hc = spec.hc_parameter(&key);
            let g = TorusPoint::parse(t)?;
            let packet = lpacket_sum(&spec, &hc, &g)?;
            let stable = stable_tau(&spec, &KClass::generator(key.clone()), &g)?;
            (
                EXIT_OK,
                json!({
                    "real_form": spec_summary(&spec),
                    "lambda": key,
                    "hc_parameter": hc,
                    "t": g,
                    "value": complex(packet),
                    "stable": complex(stable),
                }),
            )
        }
        Command::Limit {
            class,
            direction,
            seed,
        } => {
            let spec = config.spec()?;
            let x = parse_class(&spec, class)?;
            let theta = match direction {
                Some(d) => parse_direction(d)?,
                None => random_direction(
                    &mut rand_chacha::ChaCha8Rng::seed_from_u64(*seed),
                    spec.datum(),
                ),
            };
            let rep = continuity_check(&spec, &x, &theta)?;
            let mut out = serde_json::to_value(&rep).expect("reports serialize");
            out["real_form"] = spec_summary(&spec);
            out["class"] = class_value(&x);
            let code = if rep.pass { EXIT_OK } else { EXIT_FAILED };
            (code, out)
        }
        Command::Schmid { hc, t, systems } => {
            let spec = config.spec()?;
            let hc = Weight::parse(hc)?;
            let g = TorusPoint::parse(t)?;
            let chambers = systems
                .split(',')
                .map(|s| parse_chamber(&spec, s.trim()))
                .collect::<orbint::Result<Vec<_>>>()?;
            let terms = chambers
                .iter()
                .map(|p| lds_character(&spec, &hc, p, &g).map(complex))
                .collect::<orbint::Result<Vec<_>>>()?;
            let sum = schmid_sum(&spec, &hc, &chambers, &g)?;
            (
                EXIT_OK,
                json!({
                    "real_form": spec_summary(&spec),
                    "hc_parameter": hc,
                    "t": g,
                    "systems": systems.split(',').map(str::trim).collect::<Vec<_>>(),
                    "terms": terms,
                    "value": complex(sum),
                }),
            )
        }
        Command::Tannaka { keys, seed } => {
            let spec = config.spec()?;
            let keys = match keys {
                Some(k) => k
                    .split(';')
                    .map(|s| Weight::parse(s).and_then(|w| spec.generator_key(&w)))
                    .collect::<orbint::Result<Vec<_>>>()?,
                None => {
                    // the trivial K-type first, so it is the reference label
                    let mut keys = spec.keys_in_box(1);
                    keys.sort_by_key(|k| !k.lambda().is_zero());
                    keys
                }
            };
            let layout = SampleLayout::for_datum(spec.datum(), *seed);
            let rep = reconstruct(
                &spec,
                &keys,
                &layout,
                DEFAULT_WEIGHT_BOX,
                DEFAULT_CANDIDATE_BOX,
            )?;
            let mut out = serde_json::to_value(&rep).expect("reports serialize");
            out["real_form"] = spec_summary(&spec);
            (EXIT_OK, out)
        }
        Command::DemoSl2 { t } => demo_sl2(t)?,
        Command::Check { samples, seed } => {
            let spec = config.spec()?;
            let results = check::run_suite(&spec, *samples, *seed);
            let all = results.iter().all(|r| r.pass);
            (
                if all { EXIT_OK } else { EXIT_FAILED },
                json!({ "real_form": spec_summary(&spec), "pass": all, "checks": results }),
            )
        }
    })
}

fn parse_chamber(spec: &RealFormSpec, token: &str) -> orbint::Result<PositiveSystem> {
    match token {
        "+" => Ok(spec.positive().clone()),
        "-" => Ok(spec.positive().negated()),
        _ => {
            let idx = token
                .strip_prefix('w')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i < spec.weyl_group().order())
                .ok_or_else(|| Error::Parse {
                    what: "chamber",
                    input: token.into(),
                })?;
            Ok(spec.positive().transformed(spec.weyl_group().element(idx)))
        }
    }
}

fn demo_sl2(t: &str) -> orbint::Result<(i32, Value)> {
    let spec = RealFormSpec::preset("sl2r")?;
    let g = TorusPoint::parse(t)?;
    let key = spec.generator_key(&Weight::zero(1))?;
    let v = tau_generator(&spec, &key, &g)?;
    let phi = 2.0 * PI * g.to_real()[0];
    let closed = Complex64::new(1.0, 0.0) / Complex64::new(0.0, 2.0 * phi.sin());
    let x = KClass::generator(key);
    let stable = stable_tau(&spec, &x, &g)?;
    let zero = Weight::zero(1);
    let plus = lds_character(&spec, &zero, spec.positive(), &g)?;
    let minus = lds_character(&spec, &zero, &spec.positive().negated(), &g)?;
    let pair = [spec.positive().clone(), spec.positive().negated()];
    Ok((
        EXIT_OK,
        json!({
            "real_form": spec_summary(&spec),
            "t": g,
            "phi": phi,
            "tau": complex(v.value),
            "path_a": complex(v.path_a),
            "path_b": complex(v.path_b),
            "closed_form": complex(closed),
            "abs_error": (v.value - closed).norm(),
            "stable": complex(stable),
            "lds_plus": complex(plus),
            "lds_minus": complex(minus),
            "schmid": complex(schmid_sum(&spec, &zero, &pair, &g)?),
            "tau_e": tau_e(&spec, &x),
        }),
    ))
}
