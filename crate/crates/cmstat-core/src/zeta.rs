//! Dedekind-zeta numerics: Kronecker symbols, Dirichlet L-values, Euler
//! products for `zeta_F(2)`, and residues at `s = 1` via the class number
//! formula.
//!
//! Every analytic value is a double together with an explicitly propagated
//! `tail_bound`; truncation bounds use `sum_{p > P} p^-2 <= 2.6/(P ln P)`,
//! which follows from `pi(x) < 1.3 x / ln x` for `x >= 17`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::fields::FieldRecord;
use crate::polyarith::factor_degrees_mod_p;

pub const PI: f64 = core::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub enum ZetaError {
    NotFundamental(i64),
    /// `L(s, chi)` at `s = 1` for the trivial character diverges.
    PoleAtOne,
    BadArgument(String),
    /// The requested tolerance cannot be met with the supplied prime table.
    TolUnreachable { requested: f64, achieved: f64 },
    IncompleteRecord(String),
}

impl fmt::Display for ZetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaError::NotFundamental(d) => write!(f, "{d} is not a fundamental discriminant"),
            ZetaError::PoleAtOne => write!(f, "zeta has a pole at s = 1"),
            ZetaError::BadArgument(s) => write!(f, "bad argument: {s}"),
            ZetaError::TolUnreachable {
                requested,
                achieved,
            } => write!(
                f,
                "tolerance {requested:.3e} unreachable; achieved {achieved:.3e}"
            ),
            ZetaError::IncompleteRecord(s) => write!(f, "incomplete record: {s}"),
        }
    }
}

impl core::error::Error for ZetaError {}

// ---- Kronecker symbol ----

/// Kronecker symbol `(a | n)`, the fully multiplicative extension of the
/// Jacobi symbol with the standard conventions at 2, -1, and 0.
pub fn kronecker(a: i64, n: i64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut k: i8 = 1;
    // strip twos from n: (a|2) by a mod 8
    let mut v = 0u32;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v % 2 == 1 {
        k = match a.rem_euclid(8) {
            1 | 7 => k,
            3 | 5 => -k,
            _ => return 0,
        };
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    if a < 0 {
        // (-1 | n) for odd n > 0
        if n.rem_euclid(4) == 3 {
            k = -k;
        }
        a = -a;
    }
    // Jacobi loop; n odd positive
    a = a.rem_euclid(n.max(1));
    while a != 0 {
        let mut v = 0u32;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 && matches!(n.rem_euclid(8), 3 | 5) {
            k = -k;
        }
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            k = -k;
        }
        core::mem::swap(&mut a, &mut n);
        a = a.rem_euclid(n);
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// True iff `d` is a fundamental discriminant (including `d = 1`).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    fn squarefree(mut n: i64) -> bool {
        n = n.abs();
        let mut p = 2i64;
        while p * p <= n {
            if n % (p * p) == 0 {
                return false;
            }
            n /= if n % p == 0 { p } else { 1 };
            p += 1;
        }
        true
    }
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

// ---- primes ----

/// A shared prime table built once per run.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    list: Vec<u32>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut list = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                list.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        PrimeTable {
            limit,
            list,
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.list.iter().map(|&p| p as u64)
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }
}

/// Rigorous bound on `sum_{p > x} p^-2` for `x >= 17`.
fn prime_square_tail(x: f64) -> f64 {
    if x < 17.0 {
        // crude but valid: extend with the full zeta tail
        return 1.0 / (x - 1.0);
    }
    2.6 / (x * libm::log(x))
}

// ---- values with error bounds ----

/// An analytic value with a rigorous truncation bound.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct EulerProductValue {
    pub value: f64,
    pub tail_bound: f64,
    pub primes_used: usize,
}

// ---- Dirichlet L-values for real quadratic characters ----

/// Prime-discriminant factor tables for fast evaluation of `chi_d`.
struct CharTables {
    tables: Vec<(u64, Vec<i8>)>, // (modulus, values on residues)
}

impl CharTables {
    fn new(d: i64) -> CharTables {
        // factor d into prime discriminants; each odd component is the
        // Legendre symbol mod p, the 2-part is a table mod 4 or 8
        let mut tables = Vec::new();
        let mut odd = d.unsigned_abs();
        while odd % 2 == 0 {
            odd /= 2;
        }
        let mut m = odd;
        let mut p = 3u64;
        let mut odd_primes = Vec::new();
        while p * p <= m {
            if m % p == 0 {
                odd_primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 2;
        }
        if m > 1 {
            odd_primes.push(m);
        }
        for p in odd_primes {
            // quadratic-residue sieve: chi(r) = legendre(r | p)
            let mut t = vec![-1i8; p as usize];
            t[0] = 0;
            let mut r = 1u64;
            while r <= p / 2 {
                t[((r * r) % p) as usize] = 1;
                r += 1;
            }
            tables.push((p, t));
        }
        // 2-part: whatever is left of d after the odd prime discriminants
        let two_part_mod = match d.unsigned_abs() / odd {
            1 => 1u64,
            4 => 4,
            8 => 8,
            other => other, // not fundamental; caller validated already
        };
        if two_part_mod > 1 || d < 0 {
            // fold sign and 2-part into one small table mod 8
            let mut small = d;
            for &(p, _) in &tables {
                // divide out the positive prime; fix sign via p mod 4
                let signed_p = if p % 4 == 1 { p as i64 } else { -(p as i64) };
                small /= signed_p;
            }
            let m = small.unsigned_abs().max(1) * if small.abs() <= 2 { 8 } else { 1 };
            let m = if m < 8 { 8 } else { m }; // mod 8 always suffices here
            let mut t = vec![0i8; m as usize];
            for (r, slot) in t.iter_mut().enumerate() {
                *slot = kronecker(small, r as i64);
            }
            tables.push((m, t));
        }
        CharTables { tables }
    }

    #[inline]
    fn eval(&self, n: u64) -> i8 {
        let mut v = 1i8;
        for (m, t) in &self.tables {
            v *= t[(n % m) as usize];
            if v == 0 {
                return 0;
            }
        }
        v
    }
}

/// Product accumulator with power-of-two renormalization, so that long
/// products of sines never underflow.
struct LogProduct {
    mantissa: f64,
    exponent: i64,
}

impl LogProduct {
    fn new() -> Self {
        LogProduct {
            mantissa: 1.0,
            exponent: 0,
        }
    }

    #[inline]
    fn mul(&mut self, x: f64) {
        self.mantissa *= x;
        if self.mantissa < 1e-120 {
            let (m, e) = libm::frexp(self.mantissa);
            self.mantissa = m;
            self.exponent += e as i64;
        }
    }

    fn ln(&self) -> f64 {
        libm::log(self.mantissa) + self.exponent as f64 * core::f64::consts::LN_2
    }
}

/// `L(1, chi_d)` for a fundamental discriminant `d > 1` by the exact finite
/// character sum `-(1/sqrt d) sum_a chi(a) ln sin(pi a / d)`, folded over
/// the even symmetry and evaluated as a quotient of sine products.
fn l_one(d: i64) -> EulerProductValue {
    let du = d as u64;
    let chi = CharTables::new(d);
    let mut plus = LogProduct::new();
    let mut minus = LogProduct::new();
    // forward sine recurrence with periodic resync
    let theta = PI / d as f64;
    let two_cos = 2.0 * libm::cos(theta);
    let mut s_prev = 0.0f64; // sin(0)
    let mut s_cur = libm::sin(theta);
    for a in 1..du.div_ceil(2) {
        if a % 256 == 0 {
            s_cur = libm::sin(theta * a as f64);
            s_prev = libm::sin(theta * (a - 1) as f64);
        }
        match chi.eval(a) {
            1 => plus.mul(s_cur),
            -1 => minus.mul(s_cur),
            _ => {}
        }
        let next = two_cos * s_cur - s_prev;
        s_prev = s_cur;
        s_cur = next;
    }
    let (lp, lm) = (plus.ln(), minus.ln());
    let value = 2.0 / libm::sqrt(d as f64) * (lm - lp);
    // rounding slop only; the sum itself is exact
    let tail_bound = 2.0 / libm::sqrt(d as f64) * (libm::fabs(lp) + libm::fabs(lm)) * 1e-13 + 1e-15;
    EulerProductValue {
        value,
        tail_bound,
        primes_used: 0,
    }
}

/// `L(2, chi_d)` as an Euler product with a rigorous truncation bound.
fn l_two(d: i64, tol: f64, primes: &PrimeTable) -> Result<EulerProductValue, ZetaError> {
    let mut value = 1.0f64;
    let mut used = 0usize;
    for p in primes.iter() {
        let c = kronecker(d, p as i64) as f64;
        let x = c / ((p * p) as f64);
        value /= 1.0 - x;
        used += 1;
        if p >= 17 {
            let bound = value * (libm::expm1(1.02 * prime_square_tail(p as f64)));
            if bound <= tol {
                return Ok(EulerProductValue {
                    value,
                    tail_bound: bound,
                    primes_used: used,
                });
            }
        }
    }
    let achieved = value * libm::expm1(1.02 * prime_square_tail(primes.limit() as f64));
    Err(ZetaError::TolUnreachable {
        requested: tol,
        achieved,
    })
}

/// Dirichlet L-value `L(s, chi_D)` for a fundamental discriminant `D >= 1`
/// and `s` in `{1, 2}`.
///
/// At `s = 1` the exact finite character-sum formula is used (no
/// truncation); at `s = 2` an Euler product with a proven tail bound.
/// `D = 1` is the trivial character: `L(2, 1) = pi^2/6`, while `s = 1` is
/// the zeta pole and is rejected.
pub fn l_value(d: i64, s: u32, tol: f64, primes: &PrimeTable) -> Result<EulerProductValue, ZetaError> {
    if !is_fundamental_discriminant(d) {
        return Err(ZetaError::NotFundamental(d));
    }
    if d < 0 {
        return Err(ZetaError::BadArgument(format!(
            "negative discriminant {d}: only totally real data here"
        )));
    }
    match (d, s) {
        (1, 1) => Err(ZetaError::PoleAtOne),
        (1, 2) => Ok(EulerProductValue {
            value: PI * PI / 6.0,
            tail_bound: 1e-15,
            primes_used: 0,
        }),
        (_, 1) => Ok(l_one(d)),
        (_, 2) => l_two(d, tol, primes),
        _ => Err(ZetaError::BadArgument(format!("s = {s} not in {{1, 2}}"))),
    }
}

// ---- splitting types and zeta_F(2) ----

/// How a rational prime decomposes in a field, as far as the Euler factor
/// needs: residue degrees with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingType {
    pub p: u64,
    /// `(f_i, e_i)` pairs; when `index_divisor` is false these are exactly
    /// the residue degrees and ramification indices.
    pub degrees: Vec<(usize, usize)>,
    pub ramified: bool,
    /// Set when `p^2` divides `disc(poly)/d_F`, i.e. the factorization of
    /// the polynomial mod p need not match the splitting of p.
    pub index_divisor: bool,
}

/// Factorization degrees of `poly mod p`, flagged against the record's
/// polynomial index.
pub fn splitting_type(record: &FieldRecord, p: u64) -> SplittingType {
    let degrees = factor_degrees_mod_p(&record.poly, p);
    let ramified = degrees.iter().any(|&(_, e)| e > 1);
    let index_divisor = (&record.poly_index % BigInt::from(p)).is_zero();
    SplittingType {
        p,
        degrees,
        ramified,
        index_divisor,
    }
}

/// Local Euler factor of `zeta_F` at `s = 2` from a splitting type:
/// `prod_i (1 - p^(-2 f_i))^(-1)` over distinct primes above `p`.
fn local_factor_at_2(degrees: &[(usize, usize)], p: u64) -> f64 {
    let mut f = 1.0;
    for &(deg, _) in degrees {
        let q = libm::pow(p as f64, -2.0 * deg as f64);
        f /= 1.0 - q;
    }
    f
}

/// The primes dividing the polynomial index of a record, up to `limit`.
fn index_primes(record: &FieldRecord, limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = record.poly_index.clone();
    if n <= BigInt::from(1) {
        return out;
    }
    let mut p = 2u64;
    while p <= limit {
        let pb = BigInt::from(p);
        if (&n % &pb).is_zero() {
            out.push(p);
            while (&n % &pb).is_zero() {
                n /= &pb;
            }
        }
        if n <= BigInt::from(1) {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    out
}

/// `zeta_F(2)` as an Euler product over rational primes.
///
/// Primes dividing the polynomial index take their local data from the
/// record's override list; with no override the factor is bracketed between
/// the totally split and totally inert extremes and the gap goes into
/// `tail_bound`.
pub fn zeta_f_at_2(
    record: &FieldRecord,
    tol: f64,
    primes: &PrimeTable,
) -> Result<EulerProductValue, ZetaError> {
    let d = record.degree as f64;
    let bad_primes = index_primes(record, primes.limit());
    let quadratic_fast = record.degree == 2;
    let mut value = 1.0f64;
    let mut bracket_slop = 0.0f64;
    let mut used = 0usize;
    let mut scratch: Vec<(usize, usize)> = Vec::with_capacity(6);
    for p in primes.iter() {
        let factor = if let Some(ov) = record.overrides.iter().find(|o| o.p == p) {
            local_factor_at_2(&ov.factors, p)
        } else if bad_primes.contains(&p) {
            let split = libm::pow(1.0 - libm::pow(p as f64, -2.0), -d);
            let inert = 1.0 / (1.0 - libm::pow(p as f64, -2.0 * d));
            let mid = libm::sqrt(split * inert);
            bracket_slop += libm::log(split / inert) / 2.0;
            mid
        } else if quadratic_fast {
            // splitting of p in a quadratic field straight from the symbol
            let q = 1.0 / ((p * p) as f64);
            match kronecker(record.disc as i64, p as i64) {
                1 => 1.0 / ((1.0 - q) * (1.0 - q)),
                -1 => 1.0 / (1.0 - q * q),
                _ => 1.0 / (1.0 - q),
            }
        } else {
            scratch.clear();
            crate::polyarith::factor_degrees_mod_p_into(&record.poly, p, &mut |f, e| {
                scratch.push((f, e))
            });
            local_factor_at_2(&scratch, p)
        };
        value *= factor;
        used += 1;
        if p >= 17 {
            let bound = value * libm::expm1(1.02 * d * prime_square_tail(p as f64) + bracket_slop);
            if bound <= tol {
                return Ok(EulerProductValue {
                    value,
                    tail_bound: bound,
                    primes_used: used,
                });
            }
        }
    }
    let achieved =
        value * libm::expm1(1.02 * d * prime_square_tail(primes.limit() as f64) + bracket_slop);
    Err(ZetaError::TolUnreachable {
        requested: tol,
        achieved,
    })
}

/// Residue of `zeta_F` at `s = 1` by the class number formula:
/// `2^r1 (2 pi)^r2 h R / (w sqrt(d_F))`.
pub fn residue_zeta(record: &FieldRecord) -> Result<f64, ZetaError> {
    if record.class_number == 0 {
        return Err(ZetaError::IncompleteRecord(format!(
            "{}: class number missing",
            record.label
        )));
    }
    if !(record.regulator > 0.0) {
        return Err(ZetaError::IncompleteRecord(format!(
            "{}: regulator missing",
            record.label
        )));
    }
    let (r1, r2) = record.signature;
    let num = libm::pow(2.0, r1 as f64)
        * libm::pow(2.0 * PI, r2 as f64)
        * record.class_number as f64
        * record.regulator;
    Ok(num / (record.torsion_units as f64 * libm::sqrt(record.disc as f64)))
}
