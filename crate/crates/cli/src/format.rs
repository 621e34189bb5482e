//! The system file: one ring, a map of named systems and an optional map of
//! named certificates.
//!
//! ```json
//! {
//!   "ring": {"kind": "GF", "p": 2},
//!   "systems": {
//!     "S1": {"n": 2, "endo": [["0", "0"], ["1", "0"]], "input_gens": [["1"], ["0"]]}
//!   },
//!   "certificates": {
//!     "c": {"source": "S1", "target": "S1", "phi": [...], "psi": [...],
//!           "U": [...], "V": [...], "Kw": [...]}
//!   }
//! }
//! ```
//!
//! Matrices are row-major arrays of element literals. The generator count
//! is the length of the rows of `input_gens`, so a system with `n = 0` has
//! none. Element errors are raised while the document is read, so they
//! carry line and column.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use fbk_core::{
    CommRing, DynMatrix, IsoCertificate, LinearSystem, Matrix, QuotientRing, RingDescriptor,
    RingElement,
};
use serde::de::{self, DeserializeSeed, IgnoredAny, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum RingBlock {
    Q,
    GF { p: u64 },
    Z,
    PolyQuotient { vars: Vec<String>, relation: String },
}

impl RingBlock {
    pub fn descriptor(&self) -> fbk_core::Result<RingDescriptor> {
        match self {
            RingBlock::Q => Ok(RingDescriptor::Rationals),
            RingBlock::GF { p } => RingDescriptor::prime_field(*p),
            RingBlock::Z => Ok(RingDescriptor::Integers),
            RingBlock::PolyQuotient { vars, relation } => Ok(RingDescriptor::PolyQuotient(
                QuotientRing::parse(vars.clone(), relation)?,
            )),
        }
    }

    pub fn of(ring: &RingDescriptor) -> Self {
        match ring {
            RingDescriptor::Rationals => RingBlock::Q,
            RingDescriptor::PrimeField(f) => RingBlock::GF { p: f.modulus() },
            RingDescriptor::Integers => RingBlock::Z,
            RingDescriptor::PolyQuotient(q) => RingBlock::PolyQuotient {
                vars: q.vars().to_vec(),
                relation: q.relation_text(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemEntry {
    pub endo: DynMatrix,
    pub input_gens: DynMatrix,
}

impl SystemEntry {
    pub fn of(sys: &LinearSystem) -> Self {
        let gens = sys.input_gens();
        SystemEntry {
            endo: sys.endo().clone(),
            input_gens: if gens.rows() == 0 {
                Matrix::new(0, 0, Vec::new()).expect("empty")
            } else {
                gens.clone()
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub source: String,
    pub target: String,
    pub cert: IsoCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub ring: RingDescriptor,
    pub systems: BTreeMap<String, SystemEntry>,
    pub certificates: BTreeMap<String, CertificateEntry>,
}

impl SystemFile {
    pub fn new(ring: RingDescriptor) -> Self {
        SystemFile {
            ring,
            systems: BTreeMap::new(),
            certificates: BTreeMap::new(),
        }
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        #[derive(Deserialize)]
        struct Header {
            ring: RingBlock,
        }
        let header: Header = serde_json::from_str(text)?;
        let ring = header.ring.descriptor()?;
        let mut de = serde_json::Deserializer::from_str(text);
        let raw = FileSeed(&ring).deserialize(&mut de)?;
        de.end()?;
        raw.validate(ring)
    }

    /// Pretty JSON with one matrix row per line. Keys are sorted.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let ring =
            serde_json::to_string(&RingBlock::of(&self.ring)).expect("plain data serializes");
        out.push_str(&format!("  \"ring\": {ring},\n  \"systems\": {{"));
        let systems: Vec<String> = self
            .systems
            .iter()
            .map(|(name, s)| {
                format!(
                    "\n    {}: {{\n      \"n\": {},\n      \"endo\": {},\n      \"input_gens\": {}\n    }}",
                    quote(name),
                    s.endo.rows(),
                    self.rows_json(&s.endo, 6),
                    self.rows_json(&s.input_gens, 6)
                )
            })
            .collect();
        out.push_str(&systems.join(","));
        out.push_str(if systems.is_empty() { "}" } else { "\n  }" });
        if !self.certificates.is_empty() {
            out.push_str(",\n  \"certificates\": {");
            let certs: Vec<String> = self
                .certificates
                .iter()
                .map(|(name, c)| {
                    let mut body = format!(
                        "\n    {}: {{\n      \"source\": {},\n      \"target\": {}",
                        quote(name),
                        quote(&c.source),
                        quote(&c.target)
                    );
                    for (key, m) in [
                        ("phi", &c.cert.phi),
                        ("psi", &c.cert.psi),
                        ("U", &c.cert.u),
                        ("V", &c.cert.v),
                        ("Kw", &c.cert.kw),
                    ] {
                        body.push_str(&format!(",\n      \"{key}\": {}", self.rows_json(m, 6)));
                    }
                    body.push_str("\n    }");
                    body
                })
                .collect();
            out.push_str(&certs.join(","));
            out.push_str("\n  }");
        }
        out.push_str("\n}\n");
        out
    }

    fn rows_json(&self, m: &DynMatrix, indent: usize) -> String {
        if m.rows() == 0 {
            return "[]".to_string();
        }
        let pad = " ".repeat(indent + 2);
        let rows: Vec<String> = self
            .literals(m)
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|c| quote(c)).collect();
                format!("{pad}[{}]", cells.join(", "))
            })
            .collect();
        format!("[\n{}\n{}]", rows.join(",\n"), " ".repeat(indent))
    }

    fn literals(&self, m: &DynMatrix) -> Vec<Vec<String>> {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|e| self.ring.format(e)).collect())
            .collect()
    }

    pub fn system(&self, name: &str) -> anyhow::Result<LinearSystem> {
        let entry = self
            .systems
            .get(name)
            .ok_or_else(|| anyhow!("no system named '{name}'"))?;
        Ok(LinearSystem::from_pair(
            self.ring.clone(),
            entry.endo.clone(),
            entry.input_gens.clone(),
        )?)
    }

    pub fn certificate(&self, name: &str) -> anyhow::Result<&CertificateEntry> {
        self.certificates
            .get(name)
            .ok_or_else(|| anyhow!("no certificate named '{name}'"))
    }

    pub fn insert_system(&mut self, name: &str, sys: &LinearSystem) -> anyhow::Result<()> {
        if sys.ring() != &self.ring {
            bail!("system is over {}, file is over {}", sys.ring(), self.ring);
        }
        if self.systems.contains_key(name) {
            bail!("a system named '{name}' already exists");
        }
        self.systems.insert(name.to_string(), SystemEntry::of(sys));
        Ok(())
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

type Rows = Vec<Vec<RingElement>>;

struct RawCertificate {
    source: String,
    target: String,
    phi: Rows,
    psi: Rows,
    u: Rows,
    v: Rows,
    kw: Rows,
}

struct RawFile {
    systems: BTreeMap<String, SystemEntry>,
    certificates: BTreeMap<String, RawCertificate>,
}

/// Builds a `rows × cols` matrix, checking every row length.
fn to_matrix(what: &str, rows: Rows, nrows: usize, ncols: usize) -> anyhow::Result<DynMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        let got: Vec<usize> = rows.iter().map(Vec::len).collect();
        bail!("{what} must be {nrows}x{ncols}, got rows of lengths {got:?}");
    }
    Ok(Matrix::new(
        nrows,
        ncols,
        rows.into_iter().flatten().collect(),
    )?)
}

impl RawFile {
    fn validate(self, ring: RingDescriptor) -> anyhow::Result<SystemFile> {
        let mut certificates = BTreeMap::new();
        for (name, c) in self.certificates {
            let dims = |sys: &str| -> anyhow::Result<(usize, usize)> {
                let s = self
                    .systems
                    .get(sys)
                    .ok_or_else(|| anyhow!("certificate '{name}' names unknown system '{sys}'"))?;
                Ok((s.endo.rows(), s.input_gens.cols()))
            };
            let (n1, m1) = dims(&c.source)?;
            let (n2, m2) = dims(&c.target)?;
            let ctx = |m: &str| format!("certificate '{name}': {m}");
            let cert = IsoCertificate {
                phi: to_matrix(&ctx("phi"), c.phi, n2, n1)?,
                psi: to_matrix(&ctx("psi"), c.psi, n1, n2)?,
                u: to_matrix(&ctx("U"), c.u, m2, m1)?,
                v: to_matrix(&ctx("V"), c.v, m1, m2)?,
                kw: to_matrix(&ctx("Kw"), c.kw, m2, n1)?,
            };
            certificates.insert(
                name,
                CertificateEntry {
                    source: c.source,
                    target: c.target,
                    cert,
                },
            );
        }
        Ok(SystemFile {
            ring,
            systems: self.systems,
            certificates,
        })
    }
}

struct FileSeed<'a>(&'a RingDescriptor);

impl<'de> DeserializeSeed<'de> for FileSeed<'_> {
    type Value = RawFile;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<RawFile, D::Error> {
        d.deserialize_map(self)
    }
}

impl<'de> Visitor<'de> for FileSeed<'_> {
    type Value = RawFile;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a system file object")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RawFile, A::Error> {
        let mut systems = None;
        let mut certificates = None;
        let mut seen_ring = false;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "ring" if !seen_ring => {
                    map.next_value::<IgnoredAny>()?;
                    seen_ring = true;
                }
                "systems" if systems.is_none() => {
                    systems = Some(map.next_value_seed(NamedSeed(SystemSeed(self.0)))?)
                }
                "certificates" if certificates.is_none() => {
                    certificates = Some(map.next_value_seed(NamedSeed(CertificateSeed(self.0)))?)
                }
                "ring" | "systems" | "certificates" => {
                    return Err(de::Error::custom(format!("duplicate field `{key}`")))
                }
                other => {
                    return Err(de::Error::unknown_field(
                        other,
                        &["ring", "systems", "certificates"],
                    ))
                }
            }
        }
        Ok(RawFile {
            systems: systems.ok_or_else(|| de::Error::missing_field("systems"))?,
            certificates: certificates.unwrap_or_default(),
        })
    }
}

/// A JSON object whose keys must be distinct.
struct NamedSeed<S>(S);

impl<'de, S: DeserializeSeed<'de> + Copy> DeserializeSeed<'de> for NamedSeed<S> {
    type Value = BTreeMap<String, S::Value>;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<Self::Value, D::Error> {
        d.deserialize_map(self)
    }
}

impl<'de, S: DeserializeSeed<'de> + Copy> Visitor<'de> for NamedSeed<S> {
    type Value = BTreeMap<String, S::Value>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an object of named entries")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
        let mut out = BTreeMap::new();
        while let Some(name) = map.next_key::<String>()? {
            if out.contains_key(&name) {
                return Err(de::Error::custom(format!("duplicate name '{name}'")));
            }
            let v = map.next_value_seed(self.0)?;
            out.insert(name, v);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy)]
struct RowsSeed<'a>(&'a RingDescriptor);

impl<'de> DeserializeSeed<'de> for RowsSeed<'_> {
    type Value = Rows;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<Rows, D::Error> {
        d.deserialize_seq(self)
    }
}

impl<'de> Visitor<'de> for RowsSeed<'_> {
    type Value = Rows;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an array of rows")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Rows, A::Error> {
        let mut rows = Vec::new();
        while let Some(row) = seq.next_element_seed(RowSeed(self.0))? {
            rows.push(row);
        }
        Ok(rows)
    }
}

struct RowSeed<'a>(&'a RingDescriptor);

impl<'de> DeserializeSeed<'de> for RowSeed<'_> {
    type Value = Vec<RingElement>;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<Self::Value, D::Error> {
        d.deserialize_seq(self)
    }
}

impl<'de> Visitor<'de> for RowSeed<'_> {
    type Value = Vec<RingElement>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an array of element literals")
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
        let mut row = Vec::new();
        while let Some(lit) = seq.next_element::<String>()? {
            row.push(self.0.parse_element(&lit).map_err(de::Error::custom)?);
        }
        Ok(row)
    }
}

#[derive(Clone, Copy)]
struct SystemSeed<'a>(&'a RingDescriptor);

impl<'de> DeserializeSeed<'de> for SystemSeed<'_> {
    type Value = SystemEntry;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<SystemEntry, D::Error> {
        d.deserialize_map(self)
    }
}

impl<'de> Visitor<'de> for SystemSeed<'_> {
    type Value = SystemEntry;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a system {n, endo, input_gens}")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<SystemEntry, A::Error> {
        const FIELDS: &[&str] = &["n", "endo", "input_gens"];
        let (mut n, mut endo, mut gens) = (None, None, None);
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "n" if n.is_none() => n = Some(map.next_value::<usize>()?),
                "endo" if endo.is_none() => endo = Some(map.next_value_seed(RowsSeed(self.0))?),
                "input_gens" if gens.is_none() => {
                    gens = Some(map.next_value_seed(RowsSeed(self.0))?)
                }
                k if FIELDS.contains(&k) => {
                    return Err(de::Error::custom(format!("duplicate field `{k}`")))
                }
                k => return Err(de::Error::unknown_field(k, FIELDS)),
            }
        }
        let n = n.ok_or_else(|| de::Error::missing_field("n"))?;
        let endo = endo.ok_or_else(|| de::Error::missing_field("endo"))?;
        let gens = gens.ok_or_else(|| de::Error::missing_field("input_gens"))?;
        let m = gens.first().map_or(0, Vec::len);
        let endo =
            to_matrix("endo", endo, n, n).map_err(|e| de::Error::custom(format!("{e:#}")))?;
        let input_gens =
            to_matrix("input_gens", gens, n, m).map_err(|e| de::Error::custom(format!("{e:#}")))?;
        Ok(SystemEntry { endo, input_gens })
    }
}

#[derive(Clone, Copy)]
struct CertificateSeed<'a>(&'a RingDescriptor);

impl<'de> DeserializeSeed<'de> for CertificateSeed<'_> {
    type Value = RawCertificate;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<RawCertificate, D::Error> {
        d.deserialize_map(self)
    }
}

impl<'de> Visitor<'de> for CertificateSeed<'_> {
    type Value = RawCertificate;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a certificate {source, target, phi, psi, U, V, Kw}")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RawCertificate, A::Error> {
        const FIELDS: &[&str] = &["source", "target", "phi", "psi", "U", "V", "Kw"];
        let mut names: BTreeMap<&str, String> = BTreeMap::new();
        let mut mats: BTreeMap<&str, Rows> = BTreeMap::new();
        while let Some(key) = map.next_key::<String>()? {
            let Some(&field) = FIELDS.iter().find(|f| **f == key) else {
                return Err(de::Error::unknown_field(&key, FIELDS));
            };
            if names.contains_key(field) || mats.contains_key(field) {
                return Err(de::Error::custom(format!("duplicate field `{field}`")));
            }
            if field == "source" || field == "target" {
                names.insert(field, map.next_value()?);
            } else {
                mats.insert(field, map.next_value_seed(RowsSeed(self.0))?);
            }
        }
        let mut name = |f: &'static str| names.remove(f).ok_or_else(|| de::Error::missing_field(f));
        let (source, target) = (name("source")?, name("target")?);
        let mut mat = |f: &'static str| mats.remove(f).ok_or_else(|| de::Error::missing_field(f));
        Ok(RawCertificate {
            source,
            target,
            phi: mat("phi")?,
            psi: mat("psi")?,
            u: mat("U")?,
            v: mat("V")?,
            kw: mat("Kw")?,
        })
    }
}
