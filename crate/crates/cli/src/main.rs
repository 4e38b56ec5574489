//! Command-line entry point.  All payload output is JSON on stdout and is a
//! pure function of the flags; timing and progress go to stderr.  Exit
//! codes: 0 success, 1 check failure, 2 usage or parameter error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::process::ExitCode;
use vhlf_core::error::Error;
use vhlf_core::gf::{make_field, prime_power};
use vhlf_core::invariants::surface_invariants;
use vhlf_core::mass_formula::{
    mass_enumerate, mass_labeled_formula, mass_weighted, DEFAULT_MASS_BOUND,
};
use vhlf_core::normal_form::{default_sphere_bound, sphere_table};
use vhlf_core::presentation::{
    export_text, present_gamma, present_lambda, present_lambda_prime, ExportFormat, Presentation,
};
use vhlf_core::quaternion::Config;
use vhlf_core::square_complex::{build_sab, export_json, is_complete_bipartite, link_of};
use vhlf_core::structure::{
    certified_isomorphism, commensurable, expected_local_order, local_groups,
    predict_local_groups,
};
use vhlf_core::vh_core::VHData;

#[derive(Parser)]
#[command(
    name = "vhlf",
    about = "Construct, verify and classify simply transitive tree lattices over F_q(t)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Field and parameter selection shared by most subcommands.
#[derive(Args, Clone)]
struct ConfigArgs {
    /// Field size q = p^r (odd prime power)
    #[arg(long, conflicts_with_all = ["p", "r"])]
    q: Option<u64>,
    /// Characteristic (with --r)
    #[arg(long, requires = "r")]
    p: Option<u64>,
    /// Extension degree (with --p)
    #[arg(long, requires = "p")]
    r: Option<usize>,
    /// Parameter tau as an integer encoding in [2, q)
    #[arg(long)]
    tau: u64,
    /// Override the non-square c (integer encoding)
    #[arg(long)]
    c: Option<u64>,
    /// Override the multiplicative generator (encoding e0 + e1*q)
    #[arg(long)]
    delta: Option<u64>,
    /// Override the norm-(tau-1)/tau element (encoding e0 + e1*q)
    #[arg(long)]
    zeta: Option<u64>,
}

impl ConfigArgs {
    fn build(&self) -> Result<Config, Error> {
        let (p, r) = match (self.q, self.p, self.r) {
            (Some(q), None, None) => prime_power(q).ok_or_else(|| {
                Error::InvalidParameter(format!("q = {q} is not a prime power"))
            })?,
            (None, Some(p), Some(r)) => (p, r),
            _ => {
                return Err(Error::InvalidParameter(
                    "specify either --q or both --p and --r".into(),
                ))
            }
        };
        let field = make_field(p, r)?;
        let q = field.q();
        if self.tau >= q {
            return Err(Error::InvalidParameter(format!(
                "tau encoding {} out of range for q = {q}",
                self.tau
            )));
        }
        let tau = field.from_int(self.tau);
        let decode = |enc: Option<u64>| -> Result<Option<_>, Error> {
            match enc {
                None => Ok(None),
                Some(e) if e < q * q => Ok(Some(e)),
                Some(e) => Err(Error::InvalidParameter(format!(
                    "encoding {e} out of range for q^2 = {}",
                    q * q
                ))),
            }
        };
        let c = match self.c {
            None => None,
            Some(e) if e < q => Some(field.from_int(e)),
            Some(e) => {
                return Err(Error::InvalidParameter(format!(
                    "c encoding {e} out of range for q = {q}"
                )))
            }
        };
        // delta/zeta decoding needs the extension, which depends on c; let
        // Config do the validation after the extension exists
        let delta_enc = decode(self.delta)?;
        let zeta_enc = decode(self.zeta)?;
        let cfg = Config::with_overrides(field.clone(), tau.clone(), c.clone(), None, None)?;
        let ext = cfg.ext().clone();
        Config::with_overrides(
            field,
            tau,
            c,
            delta_enc.map(|e| ext.decode(e)),
            zeta_enc.map(|e| ext.decode(e)),
        )
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification battery for one configuration
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        /// Raise the sphere-count radius
        #[arg(long)]
        deep: bool,
    },
    /// Build the quotient square complex and emit its JSON document
    Construct {
        #[command(flatten)]
        config: ConfigArgs,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Emit a finite presentation
    Presentation {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value = "gamma")]
        group: GroupChoice,
        #[arg(long, value_enum, default_value = "plain")]
        format: FormatChoice,
        /// Keep all four equivalent forms of each square relator
        #[arg(long)]
        no_dedup: bool,
    },
    /// Count one-vertex VH complexes of partition size (2m, 2n)
    Mass {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "both")]
        method: MassMethod,
    },
    /// Decide commensurability of two parameters and certify it
    Classify {
        /// Field size q = p^r (odd prime power)
        #[arg(long)]
        q: u64,
        #[arg(long)]
        tau1: u64,
        #[arg(long)]
        tau2: u64,
    },
    /// Print the sphere table of normal-form counts up to (k, l)
    Balls {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Print the surface invariants of the quotient complex
    Invariants {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Compute the two local permutation groups and compare with the
    /// square-class prediction
    LocalGroups {
        #[command(flatten)]
        config: ConfigArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupChoice {
    Gamma,
    Lambda,
    LambdaPrime,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatChoice {
    Gap,
    Plain,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MassMethod {
    Formula,
    Enumerate,
    Both,
}

fn env_bound(default: usize) -> usize {
    std::env::var("VHLF_BOUND")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { config, deep } => {
            let cfg = config.build()?;
            let bound = default_sphere_bound(cfg.q()) + if deep { 2 } else { 0 };
            let t0 = std::time::Instant::now();
            let records = vhlf_core::checks::run_all(&cfg, bound)?;
            eprintln!("verify ran {} checks in {:?}", records.len(), t0.elapsed());
            println!("{}", serde_json::to_string_pretty(&records).expect("serializable"));
            let ok = records.iter().all(|r| r.ok);
            if !ok {
                let first = records.iter().find(|r| !r.ok).expect("some failure");
                eprintln!("first failing check: {}", first.check);
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Construct { config, out } => {
            let cfg = config.build()?;
            let data = VHData::build(cfg)?;
            let cx = build_sab(&data)?;
            let doc = export_json(&cx);
            match out {
                Some(path) => {
                    let mut file = std::fs::File::create(&path)
                        .map_err(|e| Error::InvalidParameter(format!("cannot write {path:?}: {e}")))?;
                    file.write_all(doc.as_bytes())
                        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
                    eprintln!("wrote {path:?}");
                }
                None => println!("{doc}"),
            }
            Ok(0)
        }
        Command::Presentation { config, group, format, no_dedup } => {
            let cfg = config.build()?;
            let pres: Presentation = match group {
                GroupChoice::Gamma => {
                    let data = VHData::build(cfg)?;
                    present_gamma(&data, !no_dedup)
                }
                GroupChoice::Lambda => present_lambda(&cfg)?,
                GroupChoice::LambdaPrime => present_lambda_prime(&cfg)?,
            };
            let text = match format {
                FormatChoice::Gap => export_text(&pres, ExportFormat::Gap),
                FormatChoice::Plain => export_text(&pres, ExportFormat::Plain),
                FormatChoice::Json => export_text(&pres, ExportFormat::Json),
            };
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(0)
        }
        Command::Mass { m, n, method } => {
            let bound = env_bound(DEFAULT_MASS_BOUND);
            let (formula, enumerated) = match method {
                MassMethod::Formula => (Some(mass_labeled_formula(m, n, bound)?), None),
                MassMethod::Enumerate => (None, Some(mass_enumerate(m, n, bound)?)),
                MassMethod::Both => (
                    Some(mass_labeled_formula(m, n, bound)?),
                    Some(mass_enumerate(m, n, bound)?),
                ),
            };
            let weighted = mass_weighted(m, n, bound)?;
            let agree = match (formula, enumerated) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            let doc = serde_json::json!({
                "m": m,
                "n": n,
                "formula": formula.map(|v| v.to_string()),
                "enumerate": enumerated.map(|v| v.to_string()),
                "weighted": format!("{}/{}", weighted.numer(), weighted.denom()),
                "agree": agree,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(if agree == Some(false) { 1 } else { 0 })
        }
        Command::Classify { q, tau1, tau2 } => {
            let (p, r) = prime_power(q).ok_or_else(|| {
                Error::InvalidParameter(format!("q = {q} is not a prime power"))
            })?;
            let field = make_field(p, r)?;
            for t in [tau1, tau2] {
                if t >= q || t <= 1 {
                    return Err(Error::InvalidParameter(format!(
                        "tau encoding {t} must lie in [2, q)"
                    )));
                }
            }
            let t1 = field.from_int(tau1);
            let t2 = field.from_int(tau2);
            let cert = commensurable(&field, &t1, &t2);
            let verified = match cert {
                Some(_) => {
                    let dict = certified_isomorphism(&field, &t1, &t2)?;
                    dict.is_some()
                }
                None => false,
            };
            let doc = serde_json::json!({
                "q": q,
                "tau1": tau1,
                "tau2": tau2,
                "commensurable": cert.is_some(),
                "certificate": cert.map(|c| serde_json::json!({
                    "frobenius_power": c.frobenius_power,
                    "flip": c.flip,
                })),
                "isomorphism_verified": verified,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(0)
        }
        Command::Balls { config, k, l } => {
            let cfg = config.build()?;
            let q = cfg.q();
            let bound = env_bound(default_sphere_bound(q));
            if k + l > bound {
                return Err(Error::BoundExceeded { what: "k+l", got: k + l, bound });
            }
            let data = VHData::build(cfg)?;
            let table = sphere_table(&data, k + l);
            let mut rows = Vec::new();
            for kk in 0..=k {
                for ll in 0..=l {
                    if kk + ll > k + l {
                        continue;
                    }
                    let count = table.get(&(kk, ll)).copied().unwrap_or(0);
                    rows.push(serde_json::json!({
                        "k": kk,
                        "l": ll,
                        "count": count,
                        "expected": vhlf_core::normal_form::expected_sphere(q, kk, ll),
                    }));
                }
            }
            let doc = serde_json::json!({ "q": q, "spheres": rows });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(0)
        }
        Command::Invariants { config } => {
            let cfg = config.build()?;
            let q = cfg.q();
            let data = VHData::build(cfg)?;
            let cx = build_sab(&data)?;
            let inv = surface_invariants(&cx, q)?;
            let link = link_of(&cx);
            let doc = serde_json::json!({
                "q": q,
                "vertices": 1,
                "unoriented_edges": cx.n_unoriented_edges(),
                "squares": cx.n_squares(),
                "link_complete_bipartite": is_complete_bipartite(&link),
                "chi": inv.chi.to_integer(),
                "c1_sq": inv.c1_sq,
                "c2": inv.c2,
                "chern_ratio": 2,
                "fake_quadric": inv.fake_quadric,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(0)
        }
        Command::LocalGroups { config } => {
            let cfg = config.build()?;
            let q = cfg.q();
            let data = VHData::build(cfg.clone())?;
            let (pa, pb) = local_groups(&data);
            let (ta, tb) = predict_local_groups(&cfg);
            let pa_ok = pa.order() == expected_local_order(q, ta);
            let pb_ok = pb.order() == expected_local_order(q, tb);
            let doc = serde_json::json!({
                "q": q,
                "p_a": { "order": pa.order(), "predicted": ta.name(), "matches": pa_ok },
                "p_b": { "order": pb.order(), "predicted": tb.name(), "matches": pb_ok },
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            Ok(if pa_ok && pb_ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BoundExceeded { .. }
                | Error::InvalidParameter(_)
                | Error::NotPrime(_)
                | Error::EvenCharacteristic
                | Error::DegreeTooLarge { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
