//! Exact integer-polynomial arithmetic: discriminants, real-root counts,
//! and factorization degrees over prime fields.
//!
//! Polynomials are coefficient vectors low-to-high. Degrees stay at most 5,
//! so nothing here tries to be asymptotically clever.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

fn trim<T: Zero>(mut v: Vec<T>) -> Vec<T> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

pub fn degree(poly: &[BigInt]) -> Option<usize> {
    poly.iter().rposition(|c| !c.is_zero())
}

pub fn to_bigint_poly(poly: &[i64]) -> Vec<BigInt> {
    poly.iter().map(|&c| BigInt::from(c)).collect()
}

fn derivative(poly: &[BigInt]) -> Vec<BigInt> {
    if poly.len() <= 1 {
        return vec![];
    }
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Resultant of two integer polynomials via the Sylvester determinant with
/// fraction-free (Bareiss) elimination.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let f = trim(f.to_vec());
    let g = trim(g.to_vec());
    let (n, m) = match (degree(&f), degree(&g)) {
        (Some(n), Some(m)) => (n, m),
        _ => return BigInt::zero(),
    };
    if n == 0 {
        return f[0].clone().pow(m as u32);
    }
    if m == 0 {
        return g[0].clone().pow(n as u32);
    }
    let size = n + m;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for row in 0..m {
        for (j, c) in f.iter().enumerate() {
            a[row][row + (n - j)] = c.clone();
        }
    }
    for row in 0..n {
        for (j, c) in g.iter().enumerate() {
            a[m + row][row + (m - j)] = c.clone();
        }
    }
    // Bareiss: exact division at every step, sign tracked through pivots
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            let swap = (k + 1..size).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[size - 1][size - 1].clone()
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)` of an integer
/// polynomial.
pub fn discriminant(poly: &[i64]) -> BigInt {
    let f = trim(to_bigint_poly(poly));
    let n = match degree(&f) {
        Some(n) if n >= 1 => n,
        _ => return BigInt::zero(),
    };
    let res = resultant(&f, &derivative(&f));
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    BigInt::from(sign) * res / &f[n]
}

/// `v / d` with the largest square dividing `v/d` removed: returns
/// `Some(k)` when `v = d * k^2`, else `None`.
pub fn square_quotient(v: &BigInt, d: &BigInt) -> Option<BigInt> {
    if d.is_zero() || (v % d) != BigInt::zero() {
        return None;
    }
    let q = v / d;
    if q.is_negative() {
        return None;
    }
    let r = q.sqrt();
    if &r * &r == q {
        Some(r)
    } else {
        None
    }
}

// ---- Sturm chains over exact rational polynomials ----

type QPoly = Vec<num_rational::BigRational>;

fn q_trim(mut v: QPoly) -> QPoly {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn q_from_int(poly: &[BigInt]) -> QPoly {
    poly.iter()
        .map(|c| num_rational::BigRational::from_integer(c.clone()))
        .collect()
}

fn q_deriv(p: &QPoly) -> QPoly {
    q_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * num_rational::BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Remainder of `a / b` over the rationals.
fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let db = b.len() - 1;
    let mut r = a.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let c = &r[dr] / &b[db];
        for j in 0..=db {
            let sub = &c * &b[j];
            r[dr - db + j] = &r[dr - db + j] - sub;
        }
        r.pop();
        r = q_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn q_div_exact(a: &QPoly, b: &QPoly) -> QPoly {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let mut r = a.clone();
    let mut q = vec![num_rational::BigRational::zero(); da - db + 1];
    for i in (0..=da - db).rev() {
        let c = &r[db + i] / &b[db];
        q[i] = c.clone();
        for j in 0..=db {
            let sub = &c * &b[j];
            r[i + j] = &r[i + j] - sub;
        }
    }
    q_trim(q)
}

fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut a = q_trim(a.clone());
    let mut b = q_trim(b.clone());
    while !b.is_empty() {
        let r = q_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn q_sign_at_inf(p: &QPoly, positive_end: bool) -> i8 {
    match p.last() {
        None => 0,
        Some(lc) => {
            let d = p.len() - 1;
            let mut s = if lc.is_positive() { 1i8 } else { -1 };
            if !positive_end && d % 2 == 1 {
                s = -s;
            }
            s
        }
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Number of distinct real roots of an integer polynomial, by Sturm's
/// theorem over exact rationals.
pub fn real_root_count(poly: &[i64]) -> usize {
    let f = trim(to_bigint_poly(poly));
    if degree(&f).map_or(true, |d| d == 0) {
        return 0;
    }
    let mut f = q_from_int(&f);
    // squarefree part, so repeated roots cannot break the chain
    let g = q_gcd(&f, &q_deriv(&f));
    if g.len() > 1 {
        f = q_div_exact(&f, &g);
    }
    let mut chain = vec![f.clone(), q_deriv(&f)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r: QPoly = q_rem(&chain[n - 2], &chain[n - 1])
            .iter()
            .map(|c| -c)
            .collect();
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    let at_neg = variations(chain.iter().map(|p| q_sign_at_inf(p, false)));
    let at_pos = variations(chain.iter().map(|p| q_sign_at_inf(p, true)));
    at_neg - at_pos
}

// ---- factorization degrees over F_p ----
//
// Fixed-capacity polynomials keep the distinct-degree factorization
// allocation-free; it sits in the inner loop of every Euler product.

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

const FP_CAP: usize = 12;

/// Polynomial over F_p of degree < FP_CAP; `len` counts coefficients.
#[derive(Copy, Clone)]
struct FpPoly {
    c: [u64; FP_CAP],
    len: usize,
}

impl FpPoly {
    const ZERO: FpPoly = FpPoly {
        c: [0; FP_CAP],
        len: 0,
    };

    fn one() -> FpPoly {
        let mut f = FpPoly::ZERO;
        f.c[0] = 1;
        f.len = 1;
        f
    }

    fn x() -> FpPoly {
        let mut f = FpPoly::ZERO;
        f.c[1] = 1;
        f.len = 2;
        f
    }

    fn from_int(poly: &[i64], p: u64) -> FpPoly {
        let mut f = FpPoly::ZERO;
        for (i, &c) in poly.iter().enumerate() {
            f.c[i] = c.rem_euclid(p as i64) as u64;
        }
        f.len = poly.len();
        f.trim();
        f
    }

    fn trim(&mut self) {
        while self.len > 0 && self.c[self.len - 1] == 0 {
            self.len -= 1;
        }
    }

    fn is_zero(&self) -> bool {
        self.len == 0
    }

    fn deg(&self) -> usize {
        debug_assert!(self.len > 0);
        self.len - 1
    }

    fn monic(mut self, p: u64) -> FpPoly {
        if self.len > 0 && self.c[self.len - 1] != 1 {
            let inv = invmod(self.c[self.len - 1], p);
            for i in 0..self.len {
                self.c[i] = mulmod(self.c[i], inv, p);
            }
        }
        self
    }

    fn deriv(&self, p: u64) -> FpPoly {
        let mut d = FpPoly::ZERO;
        if self.len <= 1 {
            return d;
        }
        for i in 1..self.len {
            d.c[i - 1] = mulmod(self.c[i], (i as u64) % p, p);
        }
        d.len = self.len - 1;
        d.trim();
        d
    }

    fn rem(mut self, m: &FpPoly, p: u64) -> FpPoly {
        let dm = m.deg();
        let inv = invmod(m.c[dm], p);
        while self.len > dm {
            let da = self.len - 1;
            let coef = mulmod(self.c[da], inv, p);
            if coef != 0 {
                for j in 0..=dm {
                    let sub = mulmod(coef, m.c[j], p);
                    let idx = da - dm + j;
                    self.c[idx] = (self.c[idx] + p - sub) % p;
                }
            }
            self.len -= 1;
            self.trim();
        }
        self
    }

    fn gcd(mut self, mut other: FpPoly, p: u64) -> FpPoly {
        while !other.is_zero() {
            let r = self.rem(&other, p);
            self = other;
            other = r;
        }
        self.monic(p)
    }

    /// `(self * other) mod m`; input degrees must stay within capacity.
    fn mul_rem(&self, other: &FpPoly, m: &FpPoly, p: u64) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::ZERO;
        }
        let mut prod = FpPoly::ZERO;
        prod.len = self.len + other.len - 1;
        debug_assert!(prod.len <= FP_CAP);
        for i in 0..self.len {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..other.len {
                prod.c[i + j] = (prod.c[i + j] + mulmod(self.c[i], other.c[j], p)) % p;
            }
        }
        prod.trim();
        if prod.is_zero() {
            return prod;
        }
        prod.rem(m, p)
    }

    fn pow_rem(&self, mut e: u64, m: &FpPoly, p: u64) -> FpPoly {
        let mut result = FpPoly::one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_rem(&base, m, p);
            }
            base = base.mul_rem(&base, m, p);
            e >>= 1;
        }
        result
    }

    /// Exact quotient `self / other`.
    fn div_exact(&self, other: &FpPoly, p: u64) -> FpPoly {
        let da = self.deg();
        let db = other.deg();
        if da < db {
            return FpPoly::one();
        }
        let inv = invmod(other.c[db], p);
        let mut r = *self;
        let mut q = FpPoly::ZERO;
        q.len = da - db + 1;
        for i in (0..=da - db).rev() {
            let c = mulmod(r.c[db + i], inv, p);
            q.c[i] = c;
            if c != 0 {
                for j in 0..=db {
                    let sub = mulmod(c, other.c[j], p);
                    r.c[i + j] = (r.c[i + j] + p - sub) % p;
                }
            }
        }
        q.trim();
        q
    }
}

/// Squarefree decomposition over `F_p` (Yun with the char-p branch):
/// pushes `(g, k)` with `g` squarefree and `f = prod g^k`.
fn fp_squarefree(f: FpPoly, mult: usize, p: u64, out: &mut dyn FnMut(FpPoly, usize)) {
    if f.len <= 1 {
        return;
    }
    let d = f.deriv(p);
    if d.is_zero() {
        // f = g(x^p); coefficients carry over unchanged in F_p
        let stride = p as usize;
        let mut g = FpPoly::ZERO;
        let mut j = 0;
        for i in (0..f.len).step_by(stride) {
            g.c[j] = f.c[i];
            j += 1;
        }
        g.len = j;
        g.trim();
        fp_squarefree(g, mult * stride, p, out);
        return;
    }
    let mut c = f.gcd(d, p);
    let mut w = f.div_exact(&c, p);
    let mut i = 1usize;
    while w.len > 1 {
        let y = w.gcd(c, p);
        let factor = w.div_exact(&y, p);
        if factor.len > 1 {
            out(factor.monic(p), mult * i);
        }
        c = c.div_exact(&y, p);
        w = y;
        i += 1;
    }
    if c.len > 1 {
        // leftover p-th-power part: multiplicities unchanged, the
        // derivative-zero branch extracts the factor of p
        fp_squarefree(c, mult, p, out);
    }
}

/// Distinct-degree split of a squarefree monic polynomial: `(degree, count)`
/// pushed in ascending degree order.
fn fp_distinct_degrees(mut f: FpPoly, p: u64, out: &mut dyn FnMut(usize, usize)) {
    let mut k = 1usize;
    let mut frob = FpPoly::x(); // x^(p^(k-1)) mod f, maintained across rounds
    while f.len > 1 {
        let deg = f.deg();
        if 2 * k > deg {
            out(deg, 1);
            break;
        }
        frob = frob.pow_rem(p, &f, p);
        // gcd(x^(p^k) - x, f)
        let mut diff = frob;
        if diff.len < 2 {
            diff.len = 2;
        }
        diff.c[1] = (diff.c[1] + p - 1) % p;
        diff.trim();
        let g = diff.gcd(f, p);
        if g.len > 1 {
            out(k, g.deg() / k);
            f = f.div_exact(&g, p);
            frob = frob.rem(&f, p);
        }
        k += 1;
    }
}

/// Residue degrees with multiplicities of `poly mod p`: the multiset
/// `{(f_i, e_i)}` of irreducible-factor degrees and their exponents.
pub fn factor_degrees_mod_p(poly: &[i64], p: u64) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    factor_degrees_mod_p_into(poly, p, &mut |f, e| out.push((f, e)));
    out.sort_unstable();
    out
}

/// Callback form of [`factor_degrees_mod_p`], allocation-free.
pub fn factor_degrees_mod_p_into(poly: &[i64], p: u64, out: &mut dyn FnMut(usize, usize)) {
    assert!(poly.len() <= 6, "degrees above 5 are out of range here");
    let f = FpPoly::from_int(poly, p);
    assert!(
        f.len == poly.len(),
        "leading coefficient vanishes mod p (non-monic input?)"
    );
    fp_squarefree(f.monic(p), 1, p, &mut |g, e| {
        fp_distinct_degrees(g, p, &mut |deg, count| {
            for _ in 0..count {
                out(deg, e);
            }
        });
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(&[-1, -1, 1]), BigInt::from(5)); // x^2 - x - 1
        assert_eq!(discriminant(&[-1, -1, 0, 1]), BigInt::from(-23)); // x^3 - x - 1
        assert_eq!(discriminant(&[-1, -3, 0, 1]), BigInt::from(81)); // x^3 - 3x - 1
        assert_eq!(discriminant(&[-1, -2, 1, 1]), BigInt::from(49)); // x^3 + x^2 - 2x - 1
        assert_eq!(discriminant(&[1, 1, 1, 1, 1]), BigInt::from(125)); // Phi_5
        assert_eq!(discriminant(&[1, 0, 0, 0, 1]), BigInt::from(256)); // x^4 + 1
        assert_eq!(
            discriminant(&[1, 1, -4, -3, 3, 1]),
            BigInt::from(14641u64) // x^5+3x^4-3x^3-4x^2+x+1, disc 11^4
        );
    }

    #[test]
    fn real_root_counts() {
        assert_eq!(real_root_count(&[-1, -1, 1]), 2); // x^2-x-1 both real
        assert_eq!(real_root_count(&[1, 0, 1]), 0); // x^2+1
        assert_eq!(real_root_count(&[-1, -1, 0, 1]), 1); // disc < 0 cubic
        assert_eq!(real_root_count(&[-1, -2, 1, 1]), 3); // totally real cubic
        assert_eq!(real_root_count(&[1, 1, -3, -1, 1]), 4); // 4.4.725.1
        assert_eq!(real_root_count(&[1, 1, 1, 1, 1]), 0); // Phi_5
        assert_eq!(real_root_count(&[1, 1, -4, -3, 3, 1]), 5);
        // repeated roots counted once
        assert_eq!(real_root_count(&[1, 2, 1]), 1); // (x+1)^2
    }

    #[test]
    fn factor_degrees() {
        // x^2 - x - 1 is irreducible mod 2, ramified at 5
        assert_eq!(factor_degrees_mod_p(&[-1, -1, 1], 2), vec![(2, 1)]);
        assert_eq!(factor_degrees_mod_p(&[-1, -1, 1], 5), vec![(1, 2)]);
        assert_eq!(factor_degrees_mod_p(&[-1, -1, 1], 11), vec![(1, 1), (1, 1)]);
        // x^3 - 3x - 1 ramifies totally at 3
        assert_eq!(factor_degrees_mod_p(&[-1, -3, 0, 1], 3), vec![(1, 3)]);
        // Phi_5 mod 2 is irreducible; mod 11 splits completely; mod 5 is (x-1)^4
        assert_eq!(factor_degrees_mod_p(&[1, 1, 1, 1, 1], 2), vec![(4, 1)]);
        assert_eq!(
            factor_degrees_mod_p(&[1, 1, 1, 1, 1], 11),
            vec![(1, 1); 4]
        );
        assert_eq!(factor_degrees_mod_p(&[1, 1, 1, 1, 1], 5), vec![(1, 4)]);
        // x^4 + 1 mod 2 = (x+1)^4
        assert_eq!(factor_degrees_mod_p(&[1, 0, 0, 0, 1], 2), vec![(1, 4)]);
        // (x+1)(x+2)^3 mod 3: mixed multiplicity with p dividing one of them
        assert_eq!(
            factor_degrees_mod_p(&[2, 2, 0, 1, 1], 3),
            vec![(1, 1), (1, 3)]
        );
        // (x^2+1)^2 mod 3: p-th power absent, square of an irreducible quadratic
        assert_eq!(factor_degrees_mod_p(&[1, 0, 2, 0, 1], 3), vec![(2, 2)]);
        // sum of f*e equals the degree
        for p in [2u64, 3, 5, 7, 11, 13] {
            for poly in [
                alloc::vec![1i64, 1, -3, -1, 1],
                alloc::vec![1, 1, -4, -3, 3, 1],
                alloc::vec![7, -11, 0, 2, 1],
            ] {
                let total: usize = factor_degrees_mod_p(&poly, p)
                    .iter()
                    .map(|&(f, e)| f * e)
                    .sum();
                assert_eq!(total, poly.len() - 1, "p={p} poly={poly:?}");
            }
        }
    }

    #[test]
    fn square_quotients() {
        assert_eq!(
            square_quotient(&BigInt::from(500), &BigInt::from(5)),
            Some(BigInt::from(10))
        );
        assert_eq!(square_quotient(&BigInt::from(50), &BigInt::from(5)), None);
        assert_eq!(square_quotient(&BigInt::from(49), &BigInt::from(49)), Some(BigInt::one()));
    }
}
