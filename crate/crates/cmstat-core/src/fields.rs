//! Totally real field records and catalogs: validation, the line-based
//! record format, and synthesis of the degree-2 catalog from scratch.
//!
//! A record line is tab-separated:
//! `label  degree  disc  coeffs  galois  h  reg  r1  r2  [overrides]`
//! with the monic polynomial as comma-separated coefficients low-to-high
//! and splitting overrides as `p:f.e,f.e;p:...` for primes dividing the
//! polynomial index. Lines starting with `#` carry provenance.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::perm;
use crate::polyarith::{discriminant, real_root_count, square_quotient};
use crate::zeta;

/// Smallest totally real field discriminant per degree; anything below is a
/// data error.
pub fn minimal_discriminant(degree: u32) -> Option<u64> {
    Some(match degree {
        1 => 1,
        2 => 5,
        3 => 49,
        4 => 725,
        5 => 14641,
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogError {
    Parse { line: usize, msg: String },
    Invariant { label: String, msg: String },
    DuplicateLabel(String),
    MixedDegrees { expected: u32, got: u32, label: String },
    MixedGroups { label: String },
    Empty(String),
    BadRequest(String),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::Parse { line, msg } => write!(f, "parse error at line {line}: {msg}"),
            CatalogError::Invariant { label, msg } => {
                write!(f, "invariant violation in record {label}: {msg}")
            }
            CatalogError::DuplicateLabel(l) => write!(f, "duplicate label {l}"),
            CatalogError::MixedDegrees {
                expected,
                got,
                label,
            } => write!(f, "record {label} has degree {got}, catalog expects {expected}"),
            CatalogError::MixedGroups { label } => {
                write!(f, "record {label} breaks the single-group requirement")
            }
            CatalogError::Empty(what) => write!(f, "empty catalog: {what}"),
            CatalogError::BadRequest(s) => write!(f, "bad request: {s}"),
        }
    }
}

impl core::error::Error for CatalogError {}

/// Splitting data for a prime dividing the polynomial index, where the
/// factorization of the polynomial mod p says nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalOverride {
    pub p: u64,
    /// `(f, e)` pairs for the primes above `p`.
    pub factors: Vec<(usize, usize)>,
}

/// A totally real number field with the invariants the residue pipeline
/// needs. For synthesized and estimated records the regulator slot carries
/// the product `h*R` with `class_number = 1`; only the product enters the
/// class number formula.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldRecord {
    pub label: String,
    pub degree: u32,
    pub disc: u64,
    /// Monic defining polynomial, coefficients low-to-high.
    pub poly: Vec<i64>,
    pub galois_label: String,
    pub class_number: u64,
    pub regulator: f64,
    pub signature: (u32, u32),
    pub torsion_units: u32,
    pub overrides: Vec<LocalOverride>,
    /// `sqrt(disc(poly)/d_F)`, set during validation.
    pub poly_index: BigInt,
}

impl FieldRecord {
    /// Builds and validates a record in one step.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        label: String,
        degree: u32,
        disc: u64,
        poly: Vec<i64>,
        galois_label: String,
        class_number: u64,
        regulator: f64,
        signature: (u32, u32),
        overrides: Vec<LocalOverride>,
    ) -> Result<Self, CatalogError> {
        let mut rec = FieldRecord {
            label,
            degree,
            disc,
            poly,
            galois_label,
            class_number,
            regulator,
            signature,
            torsion_units: 2,
            overrides,
            poly_index: BigInt::zero(),
        };
        rec.validate()?;
        Ok(rec)
    }

    fn fail(&self, msg: impl Into<String>) -> CatalogError {
        CatalogError::Invariant {
            label: self.label.clone(),
            msg: msg.into(),
        }
    }

    fn validate(&mut self) -> Result<(), CatalogError> {
        let d = self.degree;
        if d == 0 {
            return Err(self.fail("degree must be positive"));
        }
        if self.poly.len() != d as usize + 1 || *self.poly.last().unwrap() != 1 {
            return Err(self.fail("polynomial must be monic of the stated degree"));
        }
        match minimal_discriminant(d) {
            Some(min) if self.disc >= min => {}
            Some(min) => {
                return Err(self.fail(format!(
                    "discriminant {} below the degree-{d} minimum {min}",
                    self.disc
                )))
            }
            None => return Err(self.fail(format!("unsupported degree {d}"))),
        }
        if self.signature != (d, 0) {
            return Err(self.fail("totally real records require signature (d, 0)"));
        }
        if self.class_number == 0 {
            return Err(self.fail("class number missing"));
        }
        if !(self.regulator > 0.0) {
            return Err(self.fail("regulator missing"));
        }
        // disc(poly) = d_F * square
        let pd = discriminant(&self.poly);
        match square_quotient(&pd, &BigInt::from(self.disc)) {
            Some(k) => self.poly_index = k,
            None => {
                return Err(self.fail(format!(
                    "disc(poly) = {pd} is not the field discriminant times a square"
                )))
            }
        }
        // the signature check: all roots real
        if real_root_count(&self.poly) != d as usize {
            return Err(self.fail("polynomial is not totally real"));
        }
        // Galois label sanity for degree <= 5
        if d >= 2 {
            let expected_prefix = format!("{d}T");
            if !self.galois_label.starts_with(&expected_prefix) {
                return Err(self.fail(format!(
                    "galois label {} does not match degree {d}",
                    self.galois_label
                )));
            }
            if perm::transitive_group_generators(&self.galois_label).is_none() {
                return Err(self.fail(format!("unknown galois label {}", self.galois_label)));
            }
        } else if self.galois_label != "1T1" {
            return Err(self.fail("degree-1 records use label 1T1"));
        }
        for ov in &self.overrides {
            let total: usize = ov.factors.iter().map(|&(f, e)| f * e).sum();
            if total != d as usize || ov.factors.is_empty() {
                return Err(self.fail(format!("override at p={} has inconsistent degrees", ov.p)));
            }
        }
        Ok(())
    }
}

/// The record for the rationals, the degenerate end of the pipeline.
pub fn rational_field_record() -> FieldRecord {
    FieldRecord {
        label: String::from("1.1.1.1"),
        degree: 1,
        disc: 1,
        poly: vec![0, 1],
        galois_label: String::from("1T1"),
        class_number: 1,
        regulator: 1.0,
        signature: (1, 0),
        torsion_units: 2,
        overrides: vec![],
        poly_index: BigInt::one(),
    }
}

/// A synthesized real quadratic record; `hr` is the product `h*R`.
pub fn synthetic_quadratic_record(d: u64, hr: f64) -> FieldRecord {
    let poly = if d % 4 == 1 {
        vec![-((d as i64 - 1) / 4), -1, 1]
    } else {
        vec![-(d as i64 / 4), 0, 1]
    };
    FieldRecord {
        label: format!("2.2.{d}.1"),
        degree: 2,
        disc: d,
        poly,
        galois_label: String::from("2T1"),
        class_number: 1,
        regulator: hr,
        signature: (2, 0),
        torsion_units: 2,
        overrides: vec![],
        poly_index: BigInt::one(),
    }
}

/// An ordered, validated set of records of one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    records: Vec<FieldRecord>,
    pub source: String,
    pub degree: u32,
    pub group_filter: Option<String>,
}

impl Catalog {
    /// Sorts, checks degree consistency and label uniqueness, and applies
    /// the optional group filter.
    pub fn from_records(
        mut records: Vec<FieldRecord>,
        degree: u32,
        group_filter: Option<String>,
        source: String,
    ) -> Result<Self, CatalogError> {
        if let Some(g) = &group_filter {
            records.retain(|r| &r.galois_label == g);
        }
        for r in &records {
            if r.degree != degree {
                return Err(CatalogError::MixedDegrees {
                    expected: degree,
                    got: r.degree,
                    label: r.label.clone(),
                });
            }
        }
        records.sort_by(|a, b| (a.disc, &a.label).cmp(&(b.disc, &b.label)));
        for w in records.windows(2) {
            if w[0].label == w[1].label {
                return Err(CatalogError::DuplicateLabel(w[0].label.clone()));
            }
        }
        Ok(Catalog {
            records,
            source,
            degree,
            group_filter,
        })
    }

    pub fn records(&self) -> &[FieldRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn min_disc(&self) -> Option<u64> {
        self.records.first().map(|r| r.disc)
    }

    /// The distinct Galois labels present, in first-seen order.
    pub fn groups(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.records {
            if !out.contains(&r.galois_label) {
                out.push(r.galois_label.clone());
            }
        }
        out
    }

    /// A new catalog restricted to one group label.
    pub fn filtered(&self, group: &str) -> Catalog {
        Catalog {
            records: self
                .records
                .iter()
                .filter(|r| r.galois_label == group)
                .cloned()
                .collect(),
            source: self.source.clone(),
            degree: self.degree,
            group_filter: Some(group.to_string()),
        }
    }

    /// A new catalog keeping only the first `n` records (by discriminant).
    pub fn truncated(&self, n: usize) -> Catalog {
        Catalog {
            records: self.records.iter().take(n).cloned().collect(),
            source: format!("{} (first {n})", self.source),
            degree: self.degree,
            group_filter: self.group_filter.clone(),
        }
    }

    pub fn merge(&self, other: &Catalog) -> Result<Catalog, CatalogError> {
        let mut records = self.records.clone();
        records.extend(other.records.iter().cloned());
        Catalog::from_records(
            records,
            self.degree,
            self.group_filter.clone(),
            format!("{} + {}", self.source, other.source),
        )
    }
}

fn parse_overrides(s: &str, line: usize) -> Result<Vec<LocalOverride>, CatalogError> {
    let mut out = Vec::new();
    if s.is_empty() || s == "-" {
        return Ok(out);
    }
    let err = |msg: &str| CatalogError::Parse {
        line,
        msg: msg.to_string(),
    };
    for part in s.split(';') {
        let (p, facs) = part.split_once(':').ok_or_else(|| err("override needs p:"))?;
        let p: u64 = p.parse().map_err(|_| err("override prime"))?;
        let mut factors = Vec::new();
        for fe in facs.split(',') {
            let (f, e) = fe.split_once('.').ok_or_else(|| err("override f.e"))?;
            factors.push((
                f.parse().map_err(|_| err("override f"))?,
                e.parse().map_err(|_| err("override e"))?,
            ));
        }
        out.push(LocalOverride { p, factors });
    }
    Ok(out)
}

/// Renders a record as one line of the catalog format.
pub fn format_record(r: &FieldRecord) -> String {
    let coeffs: Vec<String> = r.poly.iter().map(|c| c.to_string()).collect();
    let overrides = if r.overrides.is_empty() {
        String::from("-")
    } else {
        let parts: Vec<String> = r
            .overrides
            .iter()
            .map(|o| {
                let fe: Vec<String> =
                    o.factors.iter().map(|(f, e)| format!("{f}.{e}")).collect();
                format!("{}:{}", o.p, fe.join(","))
            })
            .collect();
        parts.join(";")
    };
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{:.15e}\t{}\t{}\t{}",
        r.label,
        r.degree,
        r.disc,
        coeffs.join(","),
        r.galois_label,
        r.class_number,
        r.regulator,
        r.signature.0,
        r.signature.1,
        overrides
    )
}

/// Parses the line-based catalog format. `#` lines are provenance; the
/// first one becomes the catalog source.
pub fn parse_catalog(
    text: &str,
    degree: u32,
    group_filter: Option<&str>,
    fallback_source: &str,
) -> Result<Catalog, CatalogError> {
    let mut records = Vec::new();
    let mut source: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if source.is_none() && !comment.trim().is_empty() {
                source = Some(comment.trim().to_string());
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let err = |msg: String| CatalogError::Parse {
            line: line_no,
            msg,
        };
        if fields.len() < 9 {
            return Err(err(format!("expected at least 9 fields, got {}", fields.len())));
        }
        let label = fields[0].to_string();
        let deg: u32 = fields[1].parse().map_err(|_| err("degree".into()))?;
        let disc: u64 = fields[2].parse().map_err(|_| err("discriminant".into()))?;
        let poly: Vec<i64> = fields[3]
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| err("polynomial coefficients".into()))?;
        let galois = fields[4].to_string();
        let h: u64 = fields[5].parse().map_err(|_| err("class number".into()))?;
        let reg: f64 = fields[6].parse().map_err(|_| err("regulator".into()))?;
        let r1: u32 = fields[7].parse().map_err(|_| err("r1".into()))?;
        let r2: u32 = fields[8].parse().map_err(|_| err("r2".into()))?;
        let overrides = if fields.len() > 9 {
            parse_overrides(fields[9], line_no)?
        } else {
            vec![]
        };
        let record = FieldRecord::new(label, deg, disc, poly, galois, h, reg, (r1, r2), overrides)?;
        records.push(record);
    }
    Catalog::from_records(
        records,
        degree,
        group_filter.map(|s| s.to_string()),
        source.unwrap_or_else(|| fallback_source.to_string()),
    )
}

/// All fundamental discriminants `d` with `5 <= d <= limit` (positive) or
/// `|d| <= limit` (negative), ascending by absolute value.
pub fn fundamental_discriminants(limit: u64, negative: bool) -> Vec<i64> {
    let n = limit as usize;
    if n < 3 {
        return vec![];
    }
    // squarefree sieve
    let mut square_divisible = vec![false; n + 1];
    let mut k = 2usize;
    while k * k <= n {
        let mut j = k * k;
        while j <= n {
            square_divisible[j] = true;
            j += k * k;
        }
        k += 1;
    }
    let mut out = Vec::new();
    for m in 2..=n as i64 {
        let sf = !square_divisible[m as usize];
        if negative {
            // -m with m = 3 mod 4 squarefree, or -4k with k = 1,2 mod 4 squarefree
            if sf && m % 4 == 3 {
                out.push(-m);
            }
        } else if sf && m % 4 == 1 {
            out.push(m);
        }
        if m % 4 == 0 {
            let q = m / 4;
            if !square_divisible[q as usize] {
                if negative && matches!(q % 4, 1 | 2) {
                    out.push(-m);
                } else if !negative && matches!(q % 4, 2 | 3) {
                    out.push(m);
                }
            }
        }
    }
    out.sort_by_key(|d| d.abs());
    out
}

/// Synthesizes the degree-2 catalog up to `max_disc` with no external data:
/// every positive fundamental discriminant, with `h*R` reconstructed from
/// the exact `L(1, chi_d)` value as `sqrt(d) L(1, chi_d) / 2`.
pub fn synthesize_quadratic(max_disc: u64) -> Result<Catalog, CatalogError> {
    let primes = zeta::PrimeTable::new(4);
    let mut records = Vec::new();
    for d in fundamental_discriminants(max_disc, false) {
        let l1 = zeta::l_value(d, 1, 1e-9, &primes).map_err(|e| CatalogError::BadRequest(
            format!("L(1) for d={d}: {e}"),
        ))?;
        let hr = libm::sqrt(d as f64) * l1.value / 2.0;
        let mut rec = synthetic_quadratic_record(d as u64, hr);
        rec.validate().map_err(|e| e)?;
        records.push(rec);
    }
    Catalog::from_records(
        records,
        2,
        None,
        format!("synthesized real quadratic fields, disc <= {max_disc}"),
    )
}
