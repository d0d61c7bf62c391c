//! Prime-power fields GF(p^m) with table arithmetic.
//!
//! An element of GF(p^m) is stored as a single integer whose base-p digits,
//! least significant first, are its coordinates in the power basis
//! `1, α, …, α^{m-1}` where `α = x mod poly`. The defining polynomial is the
//! lexicographically smallest primitive monic polynomial of degree `m`, so `α`
//! generates the multiplicative group and discrete logarithms are taken to
//! base `α`. For prime fields (`m = 1`) the generator is the smallest
//! primitive root mod `p`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{guard, Error, Result};
use crate::linalg::Matrix;

/// Largest field order for which [`Field`] builds log/exp tables.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// Largest order accepted by [`find_field`].
pub const SPEC_LIMIT: u64 = 1 << 63;

/// A finite field fixed by its characteristic and defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    /// Coefficients `a_0, …, a_{m-1}, 1`.
    poly: Vec<u64>,
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m)
    }
}

/// Finds the canonical field GF(p^m).
///
/// For `m >= 2` the polynomial is the first primitive monic polynomial when
/// the tuples `(a_0, …, a_{m-1})` are scanned in lexicographic order. For
/// `m = 1` the polynomial is `x` by convention.
pub fn find_field(p: u64, m: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::BadParams("extension degree must be at least 1"));
    }
    let order = p.checked_pow(m).ok_or(Error::Overflow)?;
    if order > SPEC_LIMIT {
        return Err(Error::Overflow);
    }
    if m == 1 {
        return Ok(FieldSpec { p, m, poly: vec![0, 1] });
    }
    let group = order - 1;
    let primes = prime_factors(group);
    let mdeg = m as usize;
    // a_0 is the most significant digit of the scan index; a_0 = 0 makes x a factor.
    let start = p.pow(m - 1);
    let mut coeffs = vec![0u64; mdeg + 1];
    coeffs[mdeg] = 1;
    for t in start..order {
        let mut rest = t;
        for i in (0..mdeg).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        let ring = PolyRing { p, f: &coeffs };
        if ring.is_primitive(group, &primes) {
            return Ok(FieldSpec { p, m, poly: coeffs });
        }
    }
    // Primitive polynomials exist for every degree.
    unreachable!("no primitive polynomial of degree {m} over GF({p})")
}

/// Residues modulo a monic polynomial over GF(p).
struct PolyRing<'a> {
    p: u64,
    f: &'a [u64],
}

impl PolyRing<'_> {
    fn deg(&self) -> usize {
        self.f.len() - 1
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.deg();
        let p = self.p;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let sub = (c as u128 * self.f[j] as u128 % p as u128) as u64;
                let slot = &mut prod[i - m + j];
                *slot = (*slot + p - sub) % p;
            }
        }
        prod.truncate(m);
        prod
    }

    fn pow_x(&self, mut e: u64) -> Vec<u64> {
        let m = self.deg();
        let mut result = vec![0u64; m];
        result[0] = 1;
        let mut base = vec![0u64; m];
        base[1 % m] = 1;
        if m == 1 {
            // x mod (x + a_0) = -a_0
            base[0] = (self.p - self.f[0]) % self.p;
        }
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    fn is_one(v: &[u64]) -> bool {
        v[0] == 1 && v[1..].iter().all(|&c| c == 0)
    }

    /// `x` has multiplicative order exactly `group` in GF(p)[x]/(f).
    fn is_primitive(&self, group: u64, primes: &[u64]) -> bool {
        if self.f[0] == 0 || !Self::is_one(&self.pow_x(group)) {
            return false;
        }
        primes.iter().all(|&r| !Self::is_one(&self.pow_x(group / r)))
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Pollard–Brent rho; `n` must be odd and composite.
fn rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    let mut stack = vec![n];
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime(x) {
            out.push(x);
            continue;
        }
        let d = rho(x);
        stack.push(d);
        stack.push(x / d);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let primes = prime_factors(p - 1);
    (2..p)
        .find(|&g| primes.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

/// GF(p^m) with precomputed log/exp tables.
///
/// Immutable after construction; share it behind an `Arc`.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    order: u32,
    generator: u32,
    /// `exp[i] = ω^i` for `0 <= i < 2(order-1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        let order = spec.order();
        guard("field order", order as u128, TABLE_LIMIT as u128)?;
        let q = order as usize;
        let p = spec.p;
        let m = spec.m as usize;
        let generator = if m == 1 { primitive_root(p) as u32 } else { p as u32 };
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut digits = vec![0u64; m];
        digits[0] = 1;
        for i in 0..q - 1 {
            let v = encode_digits(&digits, p);
            if i > 0 && v == 1 {
                unreachable!("defining polynomial is not primitive");
            }
            exp[i] = v;
            log[v as usize] = i as u32;
            if m == 1 {
                digits[0] = digits[0] * generator as u64 % p;
            } else {
                let top = digits[m - 1];
                for j in (1..m).rev() {
                    digits[j] = digits[j - 1];
                }
                digits[0] = 0;
                for j in 0..m {
                    digits[j] = (digits[j] + (p - spec.poly[j]) * top) % p;
                }
            }
        }
        for i in q - 1..2 * (q - 1) {
            exp[i] = exp[i - (q - 1)];
        }
        let mut field = Field {
            spec,
            order: order as u32,
            generator,
            exp,
            log,
            add_table: None,
        };
        if p != 2 && m > 1 && order <= 1 << 10 {
            let mut table = vec![0u32; q * q];
            for a in 0..q as u32 {
                for b in 0..q as u32 {
                    table[a as usize * q + b as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(table);
        }
        Ok(field)
    }

    /// Shorthand for `Field::new(find_field(p, m)?)`.
    pub fn gf(p: u64, m: u32) -> Result<Self> {
        Field::new(find_field(p, m)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// The element `ω` all discrete logs are taken against.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn contains(&self, v: u64) -> bool {
        v < self.order as u64
    }

    pub fn check(&self, v: u64) -> Result<u32> {
        if self.contains(v) {
            Ok(v as u32)
        } else {
            Err(Error::ValueOutOfRange { value: v, order: self.order as u64 })
        }
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.order
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.spec.p as u32;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p as u32;
        if p == 2 {
            a ^ b
        } else if self.spec.m == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[a as usize * self.order as usize + b as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let p = self.spec.p as u32;
        if p == 2 || a == 0 {
            return a;
        }
        if self.spec.m == 1 {
            return p - a;
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[a as usize];
        Ok(self.exp[((self.order - 1 - l) % (self.order - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let r = (self.log[a as usize] as u64 * (e % (self.order as u64 - 1))) % (self.order as u64 - 1);
        self.exp[r as usize]
    }

    /// Discrete logarithm to base [`Field::generator`], in `[0, order - 1)`.
    pub fn dlog(&self, a: u32) -> Result<u64> {
        if a == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.log[a as usize] as u64)
    }

    /// `ω^r`.
    pub fn exp(&self, r: u64) -> u32 {
        self.exp[(r % (self.order as u64 - 1)) as usize]
    }

    /// The coefficient map φ: base-p digits of `a`, length `m`.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        let p = self.spec.p as u32;
        let mut a = a;
        (0..self.spec.m)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.spec.p as u32 + d)
    }

    /// Companion matrix of the defining polynomial, over GF(p).
    ///
    /// For `m = 1` this is `[1]` by convention.
    pub fn companion_matrix(&self) -> Matrix {
        let m = self.spec.m as usize;
        if m == 1 {
            return Matrix::identity(1);
        }
        let p = self.spec.p;
        let mut a = Matrix::zeros(m, m);
        for i in 0..m - 1 {
            a.set(i, i + 1, 1);
        }
        for j in 0..m {
            a.set(m - 1, j, ((p - self.spec.poly[j]) % p) as u32);
        }
        a
    }

    /// `A(a) = A^{dlog a}` over GF(p), the zero matrix for `a = 0`.
    ///
    /// For prime fields the representation is the 1×1 matrix `[a]`.
    pub fn matrix_rep(&self, a: u32) -> Matrix {
        let m = self.spec.m as usize;
        if a == 0 {
            return Matrix::zeros(m, m);
        }
        if m == 1 {
            return Matrix::from_rows(&[vec![a]]);
        }
        let prime = self.prime_subfield();
        self.companion_matrix().pow(&prime, self.log[a as usize] as u64)
    }

    /// GF(p) as a standalone field.
    pub fn prime_subfield(&self) -> Field {
        if self.spec.m == 1 {
            return self.clone();
        }
        Field::gf(self.spec.p, 1).expect("prime subfield is always constructible")
    }
}

fn encode_digits(digits: &[u64], p: u64) -> u32 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32
}

/// GF(q^d) viewed as a degree-`d` extension of GF(q).
///
/// The base field is embedded by sending its generator to a root of its
/// defining polynomial inside the extension (value-preserving when the base
/// is a prime field). The companion matrix is that of the minimal polynomial
/// of the extension generator `ω` over the embedded base, so
/// `coords(v) · A = coords(v ω)`.
#[derive(Clone, Debug)]
pub struct Extension<'a> {
    base: &'a Field,
    ext: &'a Field,
    degree: u32,
    embed: Vec<u32>,
    restrict: Vec<u32>,
    companion: Matrix,
}

const NOT_IN_BASE: u32 = u32::MAX;

impl<'a> Extension<'a> {
    pub fn new(base: &'a Field, ext: &'a Field) -> Result<Self> {
        if base.p() != ext.p() {
            return Err(Error::FieldMismatch("characteristics differ"));
        }
        if ext.m() % base.m() != 0 {
            return Err(Error::FieldMismatch("extension degree is not a multiple of the base degree"));
        }
        let degree = ext.m() / base.m();
        let q = base.order();
        let big_q = ext.order();

        let mut embed = vec![0u32; q as usize];
        if base.m() == 1 {
            for a in 0..q as u32 {
                embed[a as usize] = a;
            }
        } else {
            let step = (big_q - 1) / (q - 1);
            let poly = &base.spec().poly;
            let beta = (1..q - 1)
                .filter(|&s| gcd(s, q - 1) == 1)
                .map(|s| ext.exp(s * step))
                .find(|&b| {
                    let mut acc = 0u32;
                    for &c in poly.iter().rev() {
                        acc = ext.add(ext.mul(acc, b), c as u32);
                    }
                    acc == 0
                })
                .ok_or(Error::FieldMismatch("no root of the base polynomial in the extension"))?;
            for r in 0..q - 1 {
                embed[base.exp(r) as usize] = ext.pow(beta, r);
            }
        }
        let mut restrict = vec![NOT_IN_BASE; big_q as usize];
        for (b, &e) in embed.iter().enumerate() {
            restrict[e as usize] = b as u32;
        }

        // Minimal polynomial of ω over the base: product of its conjugates.
        let mut mu: Vec<u32> = vec![1];
        let mut frob = 1u64;
        for _ in 0..degree {
            let root = ext.exp(frob);
            let mut next = vec![0u32; mu.len() + 1];
            for (j, &c) in mu.iter().enumerate() {
                next[j + 1] = ext.add(next[j + 1], c);
                next[j] = ext.sub(next[j], ext.mul(root, c));
            }
            mu = next;
            frob = (frob as u128 * q as u128 % (big_q - 1) as u128) as u64;
        }
        let d = degree as usize;
        let mut companion = Matrix::zeros(d, d);
        for i in 0..d.saturating_sub(1) {
            companion.set(i, i + 1, 1);
        }
        for j in 0..d {
            let c = restrict[mu[j] as usize];
            debug_assert_ne!(c, NOT_IN_BASE, "minimal polynomial left the base field");
            companion.set(d - 1, j, base.neg(c));
        }
        Ok(Extension { base, ext, degree, embed, restrict, companion })
    }

    pub fn base(&self) -> &'a Field {
        self.base
    }

    pub fn ext(&self) -> &'a Field {
        self.ext
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn embed(&self, b: u32) -> u32 {
        self.embed[b as usize]
    }

    /// Inverse of [`Extension::embed`] on its image.
    pub fn restrict(&self, a: u32) -> Option<u32> {
        match self.restrict[a as usize] {
            NOT_IN_BASE => None,
            b => Some(b),
        }
    }

    pub fn companion(&self) -> &Matrix {
        &self.companion
    }

    /// `A(a)`: `A^r` for `a = ω^r`, zero for `a = 0`; a `d × d` matrix over the base.
    pub fn matrix_rep(&self, a: u32) -> Matrix {
        let d = self.degree as usize;
        if a == 0 {
            return Matrix::zeros(d, d);
        }
        let r = self.ext.dlog(a).expect("nonzero");
        self.companion.pow(self.base, r)
    }

    /// Coordinates of `a` over the base in the basis `1, ω, …, ω^{d-1}`.
    pub fn coords(&self, a: u32) -> Vec<u32> {
        self.matrix_rep(a).row(0).to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: brute-force irreducibility (no roots / no factor of
    /// degree <= m/2 by trial division of all monic polynomials) and order of x
    /// by repeated multiplication.
    fn brute_primitive(p: u64, coeffs: &[u64]) -> bool {
        let m = coeffs.len() - 1;
        let order = p.pow(m as u32);
        let ring = PolyRing { p, f: coeffs };
        let mut x = vec![0u64; m];
        x[1 % m] = 1;
        let mut acc = x.clone();
        let mut k = 1u64;
        while !PolyRing::is_one(&acc) {
            acc = ring.mul(&acc, &x);
            k += 1;
            if k > order {
                return false;
            }
        }
        k == order - 1
    }

    #[test]
    fn gf4_polynomial() {
        let spec = find_field(2, 2).unwrap();
        assert_eq!(spec.poly(), &[1, 1, 1]);
    }

    #[test]
    fn gf2_is_prime_field() {
        let spec = find_field(2, 1).unwrap();
        assert_eq!(spec.poly(), &[0, 1]);
        let f = Field::new(spec).unwrap();
        assert_eq!(f.mul(1, 1), 1);
        assert_eq!(f.add(1, 1), 0);
    }

    #[test]
    fn gf9_polynomial_is_first_primitive_in_scan() {
        // scan all monic quadratics x^2 + a1 x + a0 in (a0, a1) lex order
        let mut first = None;
        'scan: for a0 in 0..3u64 {
            for a1 in 0..3u64 {
                if brute_primitive(3, &[a0, a1, 1]) {
                    first = Some([a0, a1, 1]);
                    break 'scan;
                }
            }
        }
        let first = first.unwrap();
        assert_eq!(first, [2, 1, 1]);
        assert_eq!(find_field(3, 2).unwrap().poly(), &first);
    }

    #[test]
    fn small_fields_match_brute_force_scan() {
        for (p, m) in [(2u64, 3u32), (2, 4), (2, 5), (3, 3), (5, 2), (7, 2), (2, 6)] {
            let spec = find_field(p, m).unwrap();
            let order = p.pow(m);
            let mut expect = None;
            for t in p.pow(m - 1)..order {
                let mut c = vec![0u64; m as usize + 1];
                c[m as usize] = 1;
                let mut r = t;
                for i in (0..m as usize).rev() {
                    c[i] = r % p;
                    r /= p;
                }
                if brute_primitive(p, &c) {
                    expect = Some(c);
                    break;
                }
            }
            assert_eq!(spec.poly(), expect.unwrap().as_slice(), "GF({p}^{m})");
        }
    }

    #[test]
    fn find_field_errors() {
        assert_eq!(find_field(4, 2), Err(Error::NotPrime(4)));
        assert_eq!(find_field(1, 1), Err(Error::NotPrime(1)));
        assert_eq!(find_field(2, 64), Err(Error::Overflow));
        assert_eq!(find_field(3, 40), Err(Error::Overflow));
    }

    #[test]
    fn large_spec_without_tables() {
        let spec = find_field(2, 40).unwrap();
        assert_eq!(spec.poly().len(), 41);
        assert!(matches!(Field::new(spec), Err(Error::TooLarge { .. })));
        let spec = find_field(2, 63).unwrap();
        assert_eq!(spec.order(), 1 << 63);
    }

    #[test]
    fn determinism() {
        assert_eq!(find_field(3, 5).unwrap(), find_field(3, 5).unwrap());
        assert_eq!(find_field(2, 12).unwrap(), find_field(2, 12).unwrap());
    }

    #[test]
    fn gf4_products() {
        let f = Field::gf(2, 2).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.dlog(3).unwrap(), 2);
        assert_eq!(f.dlog(1).unwrap(), 0);
        for a in f.elements() {
            assert_eq!(f.mul(a, 0), 0);
        }
    }

    #[test]
    fn gf9_alpha_squared() {
        // x^2 = -x - 2 = 2x + 1 mod x^2 + x + 2  ->  digits (1, 2) -> 7
        let f = Field::gf(3, 2).unwrap();
        assert_eq!(f.mul(3, 3), 7);
    }

    #[test]
    fn inverse_and_zero_errors() {
        let f = Field::gf(3, 2).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        assert_eq!(f.dlog(0), Err(Error::LogOfZero));
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn dlog_roundtrip_gf8() {
        let f = Field::gf(2, 3).unwrap();
        for a in 1..8 {
            assert_eq!(f.pow(f.generator(), f.dlog(a).unwrap()), a);
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, m) in [(2u64, 1u32), (3, 1), (2, 2), (2, 3), (3, 2), (5, 1), (2, 4), (7, 1), (5, 2), (3, 3), (2, 5), (2, 6), (2, 9)] {
            let f = Field::gf(p, m).unwrap();
            let q = f.order() as u32;
            let elems: Vec<u32> = if q <= 64 {
                f.elements().collect()
            } else {
                // order 512: check triples over a stride to keep this quick
                f.elements().step_by(7).collect()
            };
            for &a in &elems {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for &b in &elems {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &elems {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn companion_gf4() {
        let f = Field::gf(2, 2).unwrap();
        assert_eq!(f.companion_matrix(), Matrix::from_rows(&[vec![0, 1], vec![1, 1]]));
        assert_eq!(Field::gf(2, 1).unwrap().companion_matrix(), Matrix::identity(1));
    }

    #[test]
    fn phi_intertwines_companion() {
        for (p, m) in [(3u64, 2u32), (2, 2), (2, 3), (2, 4), (5, 2), (3, 3)] {
            let f = Field::gf(p, m).unwrap();
            let gp = f.prime_subfield();
            let a = f.companion_matrix();
            for v in f.elements() {
                let lhs = a.vec_mul(&gp, &f.digits(v));
                assert_eq!(lhs, f.digits(f.mul(v, f.generator())), "GF({p}^{m}) v={v}");
            }
        }
    }

    #[test]
    fn matrix_rep_basics() {
        let f = Field::gf(2, 2).unwrap();
        let gp = f.prime_subfield();
        assert_eq!(f.matrix_rep(0), Matrix::zeros(2, 2));
        assert_eq!(f.matrix_rep(1), Matrix::identity(2));
        assert_eq!(f.matrix_rep(2).mul(&gp, &f.matrix_rep(2)), f.matrix_rep(3));
    }

    #[test]
    fn matrix_rep_homomorphism_and_intertwining() {
        for (p, m) in [(2u64, 2u32), (2, 3), (3, 2), (2, 4), (2, 6), (3, 3)] {
            let f = Field::gf(p, m).unwrap();
            if f.order() > 64 {
                continue;
            }
            let gp = f.prime_subfield();
            let reps: Vec<Matrix> = f.elements().map(|a| f.matrix_rep(a)).collect();
            for a in 1..f.order() as u32 {
                for b in 1..f.order() as u32 {
                    assert_eq!(reps[a as usize].mul(&gp, &reps[b as usize]), reps[f.mul(a, b) as usize]);
                    if a != b {
                        assert_ne!(reps[a as usize], reps[b as usize]);
                    }
                }
                for v in f.elements() {
                    assert_eq!(reps[a as usize].vec_mul(&gp, &f.digits(v)), f.digits(f.mul(v, a)));
                }
            }
        }
    }

    #[test]
    fn phi_examples() {
        let f = Field::gf(2, 2).unwrap();
        assert_eq!(f.digits(0), vec![0, 0]);
        assert_eq!(f.digits(3), vec![1, 1]);
        let f8 = Field::gf(2, 3).unwrap();
        let gp = f8.prime_subfield();
        for a in f8.elements() {
            for b in f8.elements() {
                let lhs = f8.digits(f8.add(a, b));
                let rhs: Vec<u32> = f8.digits(a).iter().zip(f8.digits(b)).map(|(&x, y)| gp.add(x, y)).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn extension_over_prime_matches_absolute() {
        for (p, m) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (3, 3)] {
            let base = Field::gf(p, 1).unwrap();
            let ext = Field::gf(p, m).unwrap();
            let x = Extension::new(&base, &ext).unwrap();
            assert_eq!(x.companion(), &ext.companion_matrix());
            for a in ext.elements() {
                assert_eq!(x.coords(a), ext.digits(a));
                assert_eq!(x.matrix_rep(a), ext.matrix_rep(a));
            }
        }
    }

    #[test]
    fn extension_over_composite_base() {
        for (p, mb, me) in [(2u64, 2u32, 4u32), (2, 2, 6), (2, 3, 6), (3, 2, 4)] {
            let base = Field::gf(p, mb).unwrap();
            let ext = Field::gf(p, me).unwrap();
            let x = Extension::new(&base, &ext).unwrap();
            // embedding is a field homomorphism
            for a in base.elements() {
                for b in base.elements() {
                    assert_eq!(x.embed(base.add(a, b)), ext.add(x.embed(a), x.embed(b)));
                    assert_eq!(x.embed(base.mul(a, b)), ext.mul(x.embed(a), x.embed(b)));
                }
            }
            // coordinates: GF(q)-linear bijection with coords(vω) = coords(v) A
            let mut seen = std::collections::BTreeSet::new();
            for v in ext.elements() {
                let c = x.coords(v);
                assert!(seen.insert(c.clone()));
                assert_eq!(x.companion().vec_mul(&base, &c), x.coords(ext.mul(v, ext.generator())));
                let rebuilt = c.iter().enumerate().fold(0u32, |acc, (i, &ci)| {
                    ext.add(acc, ext.mul(x.embed(ci), ext.exp(i as u64)))
                });
                assert_eq!(rebuilt, v);
            }
        }
    }

    #[test]
    fn extension_rejects_mismatch() {
        let b = Field::gf(2, 2).unwrap();
        let e = Field::gf(2, 3).unwrap();
        assert!(matches!(Extension::new(&b, &e), Err(Error::FieldMismatch(_))));
        let e3 = Field::gf(3, 2).unwrap();
        assert!(matches!(Extension::new(&b, &e3), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn factoring() {
        assert_eq!(prime_factors(1 << 20), vec![2]);
        assert_eq!(prime_factors((1u64 << 61) - 2), vec![2, 3, 5, 7, 11, 13, 31, 41, 61, 151, 331, 1321]);
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
    }
}
