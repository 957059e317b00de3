//! Canonical JSON files for data, tensors and twist certificates.
//!
//! Ring elements are little-endian `F_p` coordinate arrays (`m · h_trunc`
//! integers). Writers emit a fixed key order with one top-level key per line
//! and one row per line for the tables, so that load followed by save is
//! byte-identical.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactbase::{BaseRing, Elem, RingSpecFile};
use crate::normalize::{CertificateEntry, TwistCertificate, TwistTag};
use crate::quasihopf::QuasiHopfDatum;
use crate::tensorops::{Structure, TensorElement};

pub const FORMAT_VERSION: u32 = 1;

type Coords = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub ring: RingSpecFile,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `mul[a][b]` is `e_a e_b`.
    pub mul: Vec<Vec<Vec<Coords>>>,
    pub unit: Vec<Coords>,
    pub counit: Vec<Coords>,
    /// `delta[a]` is `Δ(e_a)`, flat of length `dim²`.
    pub delta: Vec<Vec<Coords>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Coords>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Coords>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_left: Option<Vec<Coords>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_right: Option<Vec<Coords>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub format_version: u32,
    pub ring: RingSpecFile,
    pub dim: usize,
    pub arity: usize,
    pub coeffs: Vec<Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateEntryFile {
    pub tag: String,
    pub coeffs: Vec<Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format_version: u32,
    pub ring: RingSpecFile,
    pub dim: usize,
    pub entries: Vec<CertificateEntryFile>,
}

fn enc(ring: &BaseRing, v: &[Elem]) -> Vec<Coords> {
    v.iter().map(|&c| ring.coords(c)).collect()
}

fn dec(ring: &BaseRing, field: &str, v: &[Coords], len: usize) -> Result<Vec<Elem>> {
    if v.len() != len {
        return Err(Error::invalid(format!("{field}: expected {len} entries, got {}", v.len())));
    }
    v.iter()
        .enumerate()
        .map(|(i, c)| ring.from_coords(c).map_err(|e| Error::invalid(format!("{field}[{i}]: {e}"))))
        .collect()
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::invalid(format!("format_version: unsupported version {v}")));
    }
    Ok(())
}

fn ring_of(spec: &RingSpecFile) -> Result<BaseRing> {
    BaseRing::from_file(spec).map_err(|e| Error::invalid(format!("ring: {e}")))
}

fn tensor_or_identity(
    s: &Structure,
    field: &str,
    v: &Option<Vec<Coords>>,
    arity: usize,
) -> Result<TensorElement> {
    match v {
        None => Ok(s.one(arity)),
        Some(c) => {
            let d = s.dim();
            let coeffs = dec(s.ring(), field, c, d.pow(arity as u32))?;
            TensorElement::from_coeffs(s.ring(), d, arity, coeffs)
        }
    }
}

impl AlgebraFile {
    pub fn from_datum(qh: &QuasiHopfDatum) -> Self {
        let s = qh.structure();
        let ring = s.ring();
        let d = s.dim();
        let opt = |t: &TensorElement, arity: usize| (*t != qh.one(arity)).then(|| enc(ring, t.coeffs()));
        AlgebraFile {
            format_version: FORMAT_VERSION,
            ring: ring.to_file(),
            dim: d,
            basis_names: s.names().to_vec(),
            mul: (0..d).map(|a| (0..d).map(|b| enc(ring, &s.mul_table()[a * d + b])).collect()).collect(),
            unit: enc(ring, s.unit()),
            counit: enc(ring, s.counit()),
            delta: s.delta_table().iter().map(|v| enc(ring, v)).collect(),
            phi: opt(qh.phi(), 3),
            r: opt(qh.r(), 2),
            unit_left: opt(qh.unit_left(), 1),
            unit_right: opt(qh.unit_right(), 1),
        }
    }

    pub fn to_datum(&self) -> Result<QuasiHopfDatum> {
        check_version(self.format_version)?;
        let ring = ring_of(&self.ring)?;
        let d = self.dim;
        if d == 0 {
            return Err(Error::invalid("dim: must be positive"));
        }
        if self.basis_names.len() != d {
            return Err(Error::invalid(format!("basis_names: expected {d} names, got {}", self.basis_names.len())));
        }
        if self.mul.len() != d {
            return Err(Error::invalid(format!("mul: expected {d} rows, got {}", self.mul.len())));
        }
        let mut mul = Vec::with_capacity(d * d);
        for (a, row) in self.mul.iter().enumerate() {
            if row.len() != d {
                return Err(Error::invalid(format!("mul[{a}]: expected {d} entries, got {}", row.len())));
            }
            for (b, v) in row.iter().enumerate() {
                mul.push(dec(&ring, &format!("mul[{a}][{b}]"), v, d)?);
            }
        }
        if self.delta.len() != d {
            return Err(Error::invalid(format!("delta: expected {d} rows, got {}", self.delta.len())));
        }
        let delta = self
            .delta
            .iter()
            .enumerate()
            .map(|(a, v)| dec(&ring, &format!("delta[{a}]"), v, d * d))
            .collect::<Result<Vec<_>>>()?;
        let s = Structure::new(
            &ring,
            self.basis_names.clone(),
            mul,
            dec(&ring, "unit", &self.unit, d)?,
            dec(&ring, "counit", &self.counit, d)?,
            delta,
        )?;
        let phi = tensor_or_identity(&s, "phi", &self.phi, 3)?;
        let r = tensor_or_identity(&s, "r", &self.r, 2)?;
        let lam = tensor_or_identity(&s, "unit_left", &self.unit_left, 1)?;
        let rho = tensor_or_identity(&s, "unit_right", &self.unit_right, 1)?;
        QuasiHopfDatum::new(s, phi, r, lam, rho)
    }
}

/// Canonical text: one top-level key per line; the listed keys get one row per line.
fn canonical<T: Serialize>(value: &T, row_keys: &[&str]) -> String {
    let Value::Object(map) = serde_json::to_value(value).expect("serializable") else {
        unreachable!("file types are structs")
    };
    let mut lines = Vec::with_capacity(map.len());
    for (k, v) in &map {
        let key = serde_json::to_string(k).expect("string");
        let body = match (row_keys.contains(&k.as_str()), v) {
            (true, Value::Array(rows)) if !rows.is_empty() => {
                let rows: Vec<String> =
                    rows.iter().map(|r| format!("    {}", serde_json::to_string(r).expect("json"))).collect();
                format!("[\n{}\n  ]", rows.join(",\n"))
            }
            _ => serde_json::to_string(v).expect("json"),
        };
        lines.push(format!("  {key}: {body}"));
    }
    format!("{{\n{}\n}}\n", lines.join(",\n"))
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed {what} file: {e}")))
}

pub fn write_datum(qh: &QuasiHopfDatum) -> String {
    canonical(&AlgebraFile::from_datum(qh), &["mul", "delta"])
}

pub fn read_datum(text: &str) -> Result<QuasiHopfDatum> {
    parse::<AlgebraFile>(text, "algebra")?.to_datum()
}

pub fn write_tensor(t: &TensorElement) -> String {
    let f = TensorFile {
        format_version: FORMAT_VERSION,
        ring: t.ring().to_file(),
        dim: t.dim(),
        arity: t.arity(),
        coeffs: enc(t.ring(), t.coeffs()),
    };
    canonical(&f, &[])
}

pub fn read_tensor(text: &str) -> Result<TensorElement> {
    let f: TensorFile = parse(text, "tensor")?;
    check_version(f.format_version)?;
    let ring = ring_of(&f.ring)?;
    let coeffs = dec(&ring, "coeffs", &f.coeffs, f.dim.pow(f.arity as u32))?;
    TensorElement::from_coeffs(&ring, f.dim, f.arity, coeffs)
}

pub fn write_certificate(qh: &QuasiHopfDatum, cert: &TwistCertificate) -> String {
    let ring = qh.ring();
    let f = CertificateFile {
        format_version: FORMAT_VERSION,
        ring: ring.to_file(),
        dim: qh.dim(),
        entries: cert
            .entries()
            .iter()
            .map(|e| CertificateEntryFile { tag: e.tag.to_string(), coeffs: enc(ring, e.j.coeffs()) })
            .collect(),
    };
    canonical(&f, &["entries"])
}

pub fn read_certificate(text: &str) -> Result<TwistCertificate> {
    let f: CertificateFile = parse(text, "certificate")?;
    check_version(f.format_version)?;
    let ring = ring_of(&f.ring)?;
    let entries = f
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let tag = match e.tag.as_str() {
                "twist" => TwistTag::Twist,
                "pseudotwist" => TwistTag::Pseudotwist,
                other => return Err(Error::invalid(format!("entries[{i}].tag: unknown tag {other:?}"))),
            };
            let coeffs = dec(&ring, &format!("entries[{i}].coeffs"), &e.coeffs, f.dim * f.dim)?;
            Ok(CertificateEntry { tag, j: TensorElement::from_coeffs(&ring, f.dim, 2, coeffs)? })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TwistCertificate::from_entries(entries))
}
