//! `fbk`: invariants, canonical forms, equivalence decisions and
//! certificate checks for linear systems stored in system files.
//!
//! Every command produces a human report and a JSON document; `--json`
//! selects the latter. Exit codes: 0 for success, `Accept` or `true`,
//! 1 for `false` or `Reject`, 2 for errors.

pub mod format;
pub mod sphere;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use fbk_core::oracle::cross_check;
use fbk_core::{
    brunovsky, canonical_certificate, compute_chain, dynamic_equivalent, feedback_equivalent,
    k0_class, stable_equivalent, verify_certificate, AbelianGroupStructure, CommRing, DynMatrix,
    RingDescriptor, Verdict,
};
use serde_json::{json, Value};

use crate::format::SystemFile;

#[derive(Debug, Parser)]
#[command(
    name = "fbk",
    version,
    about = "Feedback classification of linear systems over commutative rings"
)]
pub struct Cli {
    /// Print the machine-readable JSON report instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Feedback,
    Dynamic,
    Stable,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariant chain, module structures and flags of a system.
    Invariants { file: PathBuf, system: String },
    /// Brunovsky indices, canonical pair and a (P, K, Q) certificate.
    Canon { file: PathBuf, system: String },
    /// Decide whether two systems are equivalent.
    Equiv {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "feedback")]
        mode: Mode,
        /// Largest enlargement tried in dynamic mode.
        #[arg(long, default_value_t = 3)]
        p_max: usize,
    },
    /// Check an isomorphism certificate.
    Verify { file: PathBuf, certificate: String },
    /// Add the direct sum of two systems to the file.
    Sum {
        file: PathBuf,
        a: String,
        b: String,
        /// Name of the new system; defaults to `A_plus_B`.
        #[arg(long)]
        name: Option<String>,
        /// Where to write the new file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add the enlargement Γ(p) ⊕ Σ to the file.
    Enlarge {
        file: PathBuf,
        system: String,
        #[arg(short = 'p', default_value_t = 1)]
        p: usize,
        /// Name of the new system; defaults to `GammaP_SYSTEM`.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// K₀ class of a locally Brunovsky system.
    K0 { file: PathBuf, system: String },
    /// Compare signature equality with exhaustive orbit search.
    OrbitOracle {
        /// 2 or 3.
        #[arg(long, default_value_t = 2)]
        field: u64,
        /// State dimensions 0..=max-n are enumerated.
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        inputs: usize,
        /// Compare every two pairs instead of representatives.
        #[arg(long)]
        all_pairs: bool,
    },
}

/// What a command produced.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub report: Value,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String, report: Value) -> Self {
        Outcome {
            text,
            report,
            code: 0,
        }
    }

    fn decided(text: String, report: Value, yes: bool) -> Self {
        Outcome {
            text,
            report,
            code: if yes { 0 } else { 1 },
        }
    }

    /// The document printed for `--json`, one line.
    pub fn json_line(&self) -> String {
        serde_json::to_string(&self.report).expect("json values serialize")
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Invariants { file, system } => invariants(file, system),
        Command::Canon { file, system } => canon(file, system),
        Command::Equiv {
            file,
            a,
            b,
            mode,
            p_max,
        } => equiv(file, a, b, *mode, *p_max),
        Command::Verify { file, certificate } => verify(file, certificate),
        Command::Sum {
            file,
            a,
            b,
            name,
            out,
        } => {
            let f = SystemFile::read(file)?;
            let sum = f.system(a)?.direct_sum(&f.system(b)?)?;
            let name = name.clone().unwrap_or_else(|| format!("{a}_plus_{b}"));
            write_with(f, &name, &sum, out.as_deref(), "sum")
        }
        Command::Enlarge {
            file,
            system,
            p,
            name,
            out,
        } => {
            let f = SystemFile::read(file)?;
            let big = f.system(system)?.dynamic_enlarge(*p);
            let name = name.clone().unwrap_or_else(|| format!("Gamma{p}_{system}"));
            write_with(f, &name, &big, out.as_deref(), "enlarge")
        }
        Command::K0 { file, system } => {
            let f = SystemFile::read(file)?;
            let class = k0_class(&f.system(system)?)?;
            let report = json!({
                "command": "k0",
                "system": system,
                "ring": f.ring.name(),
                "k0": class.entries(),
            });
            Ok(Outcome::ok(format!("{class}\n"), report))
        }
        Command::OrbitOracle {
            field,
            max_n,
            inputs,
            all_pairs,
        } => orbit_oracle(*field, *max_n, *inputs, *all_pairs),
    }
}

fn structure_json(g: &AbelianGroupStructure) -> Value {
    json!({
        "free_rank": g.free_rank,
        "torsion": g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn matrix_json(ring: &RingDescriptor, m: &DynMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| ring.format(e)).collect())
        .collect();
    json!(rows)
}

/// Right-aligned columns, one line per row, indented by two spaces.
fn matrix_text(ring: &RingDescriptor, m: &DynMatrix) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("  ({}x{})\n", m.rows(), m.cols());
    }
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| ring.format(e)).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in &cells {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "  [{}]", padded.join("  ")).unwrap();
    }
    out
}

fn invariants(file: &Path, name: &str) -> Result<Outcome> {
    let f = SystemFile::read(file)?;
    let sys = f.system(name)?;
    let rep = compute_chain(&sys)?;
    let ranks = rep.chain_ranks();
    let sig = rep.z_signature();

    let mut text = String::new();
    writeln!(
        text,
        "system {name} over {}, n = {}",
        f.ring, rep.state_rank
    )?;
    let ranks_text: Vec<String> = ranks.iter().map(ToString::to_string).collect();
    writeln!(
        text,
        "chain ranks: {} (s = {})",
        ranks_text.join(" "),
        rep.s
    )?;
    for k in 0..rep.s {
        writeln!(
            text,
            "  k = {}: M = {}, I = {}, Z = {}",
            k + 1,
            rep.m[k],
            rep.i[k],
            rep.z[k]
        )?;
    }
    writeln!(text, "reachable: {}", rep.reachable)?;
    writeln!(text, "locally Brunovsky: {}", rep.locally_brunovsky)?;
    if let Some(s) = &sig {
        writeln!(text, "Z-signature: {s}")?;
    }

    let report = json!({
        "command": "invariants",
        "system": name,
        "ring": f.ring.name(),
        "n": rep.state_rank,
        "s": rep.s,
        "chain_ranks": ranks,
        "M": rep.m.iter().map(structure_json).collect::<Vec<_>>(),
        "I": rep.i.iter().map(structure_json).collect::<Vec<_>>(),
        "Z": rep.z.iter().map(structure_json).collect::<Vec<_>>(),
        "reachable": rep.reachable,
        "locally_brunovsky": rep.locally_brunovsky,
        "z_signature": sig.map(|s| s.entries().to_vec()),
    });
    Ok(Outcome::ok(text, report))
}

fn canon(file: &Path, name: &str) -> Result<Outcome> {
    let f = SystemFile::read(file)?;
    let sys = f.system(name)?;
    let data = brunovsky(&sys)?;
    let cert = canonical_certificate(&f.ring, sys.endo(), sys.input_gens())?;
    let r = &f.ring;

    let idx: Vec<String> = data.indices.iter().map(ToString::to_string).collect();
    let mut text = format!(
        "system {name} over {r}\nBrunovsky indices: ({})\n",
        idx.join(", ")
    );
    for (label, m) in [
        ("A_c", &data.a_c),
        ("B_c", &data.b_c),
        ("P", &cert.p),
        ("K", &cert.k),
        ("Q", &cert.q),
    ] {
        writeln!(text, "{label} =")?;
        text.push_str(&matrix_text(r, m));
    }
    writeln!(
        text,
        "P (A + B K) P^-1 = A_c and P B Q = B_c, with B the canonical input generators"
    )?;

    let report = json!({
        "command": "canon",
        "system": name,
        "ring": r.name(),
        "indices": data.indices,
        "A_c": matrix_json(r, &data.a_c),
        "B_c": matrix_json(r, &data.b_c),
        "P": matrix_json(r, &cert.p),
        "K": matrix_json(r, &cert.k),
        "Q": matrix_json(r, &cert.q),
        "B_padded": matrix_json(r, &cert.b_c),
    });
    Ok(Outcome::ok(text, report))
}

fn equiv(file: &Path, a: &str, b: &str, mode: Mode, p_max: usize) -> Result<Outcome> {
    let f = SystemFile::read(file)?;
    let (sa, sb) = (f.system(a)?, f.system(b)?);
    let (verdict, label, inv_a, inv_b) = match mode {
        Mode::Feedback | Mode::Dynamic => {
            let verdict = if mode == Mode::Feedback {
                feedback_equivalent(&sa, &sb)?
            } else {
                dynamic_equivalent(&sa, &sb, p_max)?
            };
            let za = compute_chain(&sa)?.z_signature();
            let zb = compute_chain(&sb)?.z_signature();
            let show = |z: &Option<fbk_core::ZSignature>| z.as_ref().map(|s| s.entries().to_vec());
            (verdict, "Z-signature", json!(show(&za)), json!(show(&zb)))
        }
        Mode::Stable => {
            let verdict = stable_equivalent(&sa, &sb)?;
            let (ka, kb) = (k0_class(&sa)?, k0_class(&sb)?);
            (
                verdict,
                "K0 class",
                json!(ka.entries()),
                json!(kb.entries()),
            )
        }
    };
    let mode_name = match mode {
        Mode::Feedback => "feedback",
        Mode::Dynamic => "dynamic",
        Mode::Stable => "stable",
    };
    let show = |v: &Value| match v.as_array() {
        Some(items) => {
            let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        }
        None => "undefined".to_string(),
    };
    let text = format!(
        "{label} of {a}: {}\n{label} of {b}: {}\n{mode_name} equivalent: {verdict}\n",
        show(&inv_a),
        show(&inv_b)
    );
    let mut report = json!({
        "command": "equiv",
        "mode": mode_name,
        "ring": f.ring.name(),
        "a": a,
        "b": b,
        "equivalent": verdict,
        "invariant": label,
        "invariant_a": inv_a,
        "invariant_b": inv_b,
    });
    if mode == Mode::Dynamic {
        report["p_max"] = json!(p_max);
    }
    Ok(Outcome::decided(text, report, verdict))
}

fn verify(file: &Path, name: &str) -> Result<Outcome> {
    let f = SystemFile::read(file)?;
    let entry = f.certificate(name)?;
    let source = f.system(&entry.source)?;
    let target = f.system(&entry.target)?;
    let verdict = verify_certificate(&source, &target, &entry.cert)?;
    let text = format!("{verdict}\n");
    let report = json!({
        "command": "verify",
        "certificate": name,
        "source": entry.source,
        "target": entry.target,
        "ring": f.ring.name(),
        "verdict": match verdict {
            Verdict::Accept => "Accept".to_string(),
            Verdict::Reject(r) => format!("Reject({r})"),
        },
    });
    Ok(Outcome::decided(text, report, verdict.is_accept()))
}

fn write_with(
    mut f: SystemFile,
    name: &str,
    sys: &fbk_core::LinearSystem,
    out: Option<&Path>,
    command: &str,
) -> Result<Outcome> {
    f.insert_system(name, sys)?;
    let body = f.to_json();
    let text = match out {
        Some(path) => {
            std::fs::write(path, &body)?;
            format!(
                "wrote {name} (n = {}) to {}\n",
                sys.state_rank(),
                path.display()
            )
        }
        None => body.clone(),
    };
    let file_value: Value = serde_json::from_str(&body)?;
    let report = json!({
        "command": command,
        "system": name,
        "n": sys.state_rank(),
        "out": out.map(|p| p.display().to_string()),
        "file": file_value,
    });
    Ok(Outcome::ok(text, report))
}

fn orbit_oracle(field: u64, max_n: usize, inputs: usize, all_pairs: bool) -> Result<Outcome> {
    if field != 2 && field != 3 {
        bail!("the orbit oracle runs over GF(2) or GF(3), not GF({field})");
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut clean = true;
    for n in 0..=max_n {
        let c = cross_check(field, n, inputs, all_pairs)?;
        writeln!(
            text,
            "GF({field}) n = {n} m = {inputs}: {} pairs, {} reachable, {} classes, {} searches, {} disagreements ({:.2}s)",
            c.pairs,
            c.reachable,
            c.classes,
            c.comparisons,
            c.disagreements.len(),
            c.elapsed.as_secs_f64()
        )?;
        for d in &c.disagreements {
            writeln!(text, "  disagreement: {d}")?;
        }
        clean &= c.disagreements.is_empty();
        rows.push(json!({
            "n": n,
            "pairs": c.pairs,
            "reachable": c.reachable,
            "classes": c.classes,
            "comparisons": c.comparisons,
            "disagreements": c.disagreements,
        }));
    }
    let report = json!({
        "command": "orbit-oracle",
        "field": field,
        "inputs": inputs,
        "all_pairs": all_pairs,
        "runs": rows,
        "agree": clean,
    });
    Ok(Outcome::decided(text, report, clean))
}
