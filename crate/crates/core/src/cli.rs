//! Command-line front end. `run` returns the text to print and the exit code:
//! 0 on success, 2 for invalid input, 3 when an inconsistency is detected.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::charclass::{t_pullback_series, t_pullback_tbar};
use crate::checks::run_paper_checks;
use crate::classify::{bun_enumerate, classify_pair, qlf_from_coboundary, Classification, QuadraticLinkingFunction};
use crate::closedforms::{
    fg_admissible, gwz_pn_discrepancy, p_family_mu, sphere_bundle_invariants, t_gwz, t_pn, t_pullback_closed,
    Fibration, GwzManifold, SphereBundle7,
};
use crate::coboundary::{mu_hat, q_t_from_coboundary, snf_cokernel, CoboundaryData};
use crate::error::{Error, Result};
use crate::exact::QmodZ;
use crate::exotic::{detect_ks, pinch_twisted_table, KsBit, TTable};
use crate::homotopy::sphere_report;

#[derive(Parser, Debug)]
#[command(name = "tinv", version, about = "Exact t-invariants of quaternionic line bundles")]
pub struct Cli {
    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Series,
    Closed,
    Tbar,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// t-invariant of p_k^* E_c on S^(4k-1).
    TPullback {
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, value_enum, default_value = "closed")]
        method: Method,
    },
    /// Feder-Gitler integrality conditions for c on HP^k (JSON output).
    FgCheck {
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        #[arg(long)]
        k: i64,
    },
    /// t, q, self-linking and mu for the sphere bundle M_{n,p}.
    SphereBundle {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// t-invariant on a Grove-Wilking-Ziller manifold.
    Gwz {
        #[arg(long)]
        pm: i64,
        #[arg(long)]
        qm: i64,
        #[arg(long)]
        pp: i64,
        #[arg(long)]
        qp: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Pull back along the second Seifert fibration.
        #[arg(long)]
        pi2: bool,
    },
    /// t-invariant on P_n, with the GWZ discrepancy diagnostic.
    Pn {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Pullback bundles on S^7, S^11, S^15.
    Sphere {
        #[arg(long)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
    },
    /// q, t and mu from a coboundary JSON file.
    Coboundary {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated integer vector.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Decide diffeomorphism / almost diffeomorphism of two manifolds.
    Classify {
        /// `sphere-bundle:n,p`, `pn:n` or `file:<coboundary.json>`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        mu_a: Option<String>,
        #[arg(long)]
        mu_b: Option<String>,
    },
    /// List all bundle classes (c2, t) as JSON.
    Bun {
        #[arg(long)]
        spec: String,
    },
    /// t-table of M_{n,p}; with --demo, twist it and recover the KS bit.
    Exotic {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long)]
        demo: bool,
    },
    /// Re-derive every reference value and identity.
    PaperChecks,
}

/// Integers that do not fit in an `i64` are written as strings.
fn big_json(b: &BigInt) -> Value {
    i64::try_from(b).map_or_else(|_| json!(b.to_string()), |v| json!(v))
}

pub fn qz_json(q: &QmodZ) -> Value {
    json!({ "num": big_json(q.numer()), "den": big_json(q.denom()), "modulo": 1 })
}

fn qz_human(q: &QmodZ) -> String {
    format!("{q} (mod 1)")
}

/// A manifold given on the command line, with its default mu.
struct ManifoldSpec {
    qlf: QuadraticLinkingFunction,
    mu: QmodZ,
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("not an integer: `{t}`")))).collect()
}

fn read_coboundary(path: &PathBuf) -> Result<CoboundaryData> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    CoboundaryData::from_json(&text)
}

fn parse_spec(spec: &str) -> Result<ManifoldSpec> {
    let (kind, rest) =
        spec.split_once(':').ok_or_else(|| Error::Parse(format!("manifold spec `{spec}` needs a `kind:` prefix")))?;
    match kind {
        "sphere-bundle" => {
            let v = parse_ints(rest)?;
            let [n, p] = v[..] else {
                return Err(Error::Parse(format!("sphere-bundle needs `n,p`, got `{rest}`")));
            };
            SphereBundle7::new(n, p)?;
            let cb = CoboundaryData::rank_one(n, p)?;
            Ok(ManifoldSpec { qlf: qlf_from_coboundary(&cb)?, mu: mu_hat(&cb) })
        }
        "pn" => {
            let n: i64 = rest.trim().parse().map_err(|_| Error::Parse(format!("pn needs n, got `{rest}`")))?;
            let mu = p_family_mu(n)?;
            let qlf = QuadraticLinkingFunction::cyclic_from_fn(n as u64, |k| t_pn(n, k).expect("n >= 1") * 12)?;
            Ok(ManifoldSpec { qlf, mu })
        }
        "file" => {
            let cb = read_coboundary(&PathBuf::from(rest))?;
            Ok(ManifoldSpec { qlf: qlf_from_coboundary(&cb)?, mu: mu_hat(&cb) })
        }
        other => Err(Error::Parse(format!("unknown manifold kind `{other}`"))),
    }
}

fn classification_text(c: &Classification) -> String {
    let verdict = serde_json::to_value(c.verdict).expect("enum");
    let mut out = format!("verdict: {}\n", verdict.as_str().unwrap_or_default());
    if let Some(w) = &c.witness {
        out += &format!("witness: {:?}\n", w.images());
    }
    if let Some(d) = &c.mu_difference {
        out += &format!("mu difference: {}\n", qz_human(d));
    }
    if let Some(m) = c.exotic_sphere_power {
        out += &format!("exotic sphere power: {m}\n");
    }
    out
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    let json = cli.json;
    let value_out = |q: &QmodZ| if json { qz_json(q).to_string() } else { qz_human(q) };
    let record = |fields: &[(&str, &QmodZ)]| {
        if json {
            let obj: serde_json::Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), qz_json(v))).collect();
            Value::Object(obj).to_string()
        } else {
            fields.iter().map(|(k, v)| format!("{k} = {}", qz_human(v))).collect::<Vec<_>>().join("\n")
        }
    };
    let out = match &cli.command {
        Command::TPullback { c, k, method } => {
            let t = match method {
                Method::Closed => t_pullback_closed(*c, *k)?,
                Method::Series => t_pullback_series(*c, *k)?,
                Method::Tbar => t_pullback_tbar(*c, *k)?,
            };
            value_out(&t)
        }
        Command::FgCheck { c, k } => {
            let v = fg_admissible(*c, *k)?;
            json!({ "admissible": v.is_admissible(), "failing_j": v.failing_j() }).to_string()
        }
        Command::SphereBundle { n, p, k } => {
            let inv = sphere_bundle_invariants(&SphereBundle7::new(*n, *p)?, *k);
            record(&[("t", &inv.t), ("q", &inv.q), ("b_kk", &inv.b_kk), ("mu", &inv.mu)])
        }
        Command::Gwz { pm, qm, pp, qp, k, pi2 } => {
            let m = GwzManifold::new(*pm, *qm, *pp, *qp)?;
            let fib = if *pi2 { Fibration::Pi2 } else { Fibration::Pi1 };
            value_out(&t_gwz(&m, *k, fib))
        }
        Command::Pn { n, k } => {
            let t = t_pn(*n, *k)?;
            let d = gwz_pn_discrepancy(*n, *k)?;
            record(&[("t", &t), ("gwz_discrepancy", &d)])
        }
        Command::Sphere { k, c } => {
            let r = sphere_report(*k, *c)?;
            if json {
                let mut v = serde_json::to_value(&r).expect("report serializes");
                v["t"] = qz_json(&r.t);
                if let Some(t) = &r.t_from_ebar {
                    v["t_from_ebar"] = qz_json(t);
                }
                v.to_string()
            } else {
                let mut out = format!("t = {}\n", qz_human(&r.t));
                out += &match r.admissibility.failing_j() {
                    None => format!("admissible on HP^{}", k - 1),
                    Some(j) => format!("not admissible on HP^{}: fails at j = {j}", k - 1),
                };
                if let (Some(e), Some(s), Some(te)) = (&r.pi7s4, r.stabilisation, &r.t_from_ebar) {
                    out += &format!(
                        "\n[F_c o H] = ({}, [{}]) in Z + Z/12\nstabilisation = {s} in Z/24\nt from ebar = {}",
                        e.hopf_mult,
                        e.torsion,
                        qz_human(te)
                    );
                }
                out
            }
        }
        Command::Coboundary { file, x } => {
            let cb = read_coboundary(file)?;
            let x = parse_ints(x)?;
            let qt = q_t_from_coboundary(&cb, &x)?;
            let mu = mu_hat(&cb);
            let group: Vec<String> = snf_cokernel(&cb)?.invariant_factors.iter().map(ToString::to_string).collect();
            if json {
                let factors: Vec<Value> = snf_cokernel(&cb)?.invariant_factors.iter().map(big_json).collect();
                json!({ "q": qz_json(&qt.q), "t": qz_json(&qt.t), "mu": qz_json(&mu), "group": factors }).to_string()
            } else {
                let g = if group.is_empty() {
                    "0".to_string()
                } else {
                    group.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + ")
                };
                format!("{}\ngroup = {g}", record(&[("q", &qt.q), ("t", &qt.t), ("mu", &mu)]))
            }
        }
        Command::Classify { a, b, mu_a, mu_b } => {
            let (ma, mb) = (parse_spec(a)?, parse_spec(b)?);
            let mu_a = mu_a.as_deref().map(str::parse).transpose()?.unwrap_or(ma.mu);
            let mu_b = mu_b.as_deref().map(str::parse).transpose()?.unwrap_or(mb.mu);
            let c = classify_pair(&ma.qlf, &mb.qlf, &mu_a, &mu_b);
            if json {
                let mut v = serde_json::to_value(&c).expect("classification serializes");
                v["mu_difference"] = c.mu_difference.as_ref().map_or(Value::Null, qz_json);
                v.to_string()
            } else {
                classification_text(&c).trim_end().to_string()
            }
        }
        Command::Bun { spec } => {
            let m = parse_spec(spec)?;
            let classes: Vec<Value> =
                bun_enumerate(&m.qlf).iter().map(|b| json!({ "c2": b.c2, "t": qz_json(&b.t) })).collect();
            Value::Array(classes).to_string()
        }
        Command::Exotic { n, p, demo } => {
            let tab = TTable::untwisted(SphereBundle7::new(*n, *p)?)?;
            if *demo {
                let twisted = pinch_twisted_table(&tab)?;
                let ks_twisted = detect_ks(&tab, &twisted)?;
                let ks_identity = detect_ks(&tab, &tab)?;
                let code = if ks_twisted == KsBit::One && ks_identity == KsBit::Zero { 0 } else { 3 };
                let text = if json {
                    json!({ "ks_identity": ks_identity.as_str(), "ks_pinch_twist": ks_twisted.as_str() }).to_string()
                } else {
                    format!("KS(identity) = {}\nKS(pinch twist) = {}", ks_identity.as_str(), ks_twisted.as_str())
                };
                return Ok((text, code));
            }
            if json {
                let rows: Vec<Value> =
                    tab.iter().map(|((c2, s), t)| json!({ "c2": c2, "s": s, "t": qz_json(t) })).collect();
                Value::Array(rows).to_string()
            } else {
                tab.iter().map(|((c2, s), t)| format!("{c2} {s} {t}")).collect::<Vec<_>>().join("\n")
            }
        }
        Command::PaperChecks => {
            let reports = run_paper_checks();
            let code = if reports.iter().all(|r| r.pass) { 0 } else { 3 };
            let text = if json {
                serde_json::to_string(&reports).expect("reports serialize")
            } else {
                reports
                    .iter()
                    .map(|r| {
                        if r.pass {
                            format!("PASS {}: {}", r.name, r.computed)
                        } else {
                            format!("FAIL {}: expected {}, computed {}", r.name, r.expected, r.computed)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            return Ok((text, code));
        }
    };
    Ok((out, 0))
}

/// Runs a parsed command line; errors become a message and exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    match dispatch(cli) {
        Ok(r) => r,
        Err(e) => {
            let code = e.exit_code();
            let text = if cli.json { json!({ "error": e.to_string() }).to_string() } else { format!("error: {e}") };
            (text, code)
        }
    }
}
