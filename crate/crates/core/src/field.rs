//! Arithmetic in GF(q) for q = p^e <= 256, via precomputed lookup tables.
//!
//! Every field element is handled through its index under a fixed bijection
//! phi: GF(q) -> {0, .., q-1}. For prime fields phi is the natural residue
//! map; for extension fields the element with coefficient vector
//! (c_0, .., c_{e-1}) over GF(p) maps to sum c_i * p^i. In both cases
//! phi(0) = 0 and phi(1) = 1, which the correlation transform relies on
//! (column 0 of a score table must correspond to the zero constant shift).
//!
//! The modulus for each extension field comes from a fixed table shipped
//! below, so index arithmetic is reproducible bit-for-bit across runs.

use crate::error::{Error, Result};
use std::sync::Arc;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 256;

/// One irreducible modulus per supported (p, e) with e >= 2. Coefficients are
/// listed low-to-high including the leading 1. Changing an entry changes phi
/// for that field and therefore every serialized table and file.
const MODULI: &[(u64, u32, &[u8])] = &[
    (2, 2, &[1, 1, 1]),                   // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]),                // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0, 1]),             // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0, 1]),          // x^5 + x^2 + 1
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),       // x^6 + x + 1
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),    // x^7 + x + 1
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]), // x^8 + x^4 + x^3 + x + 1
    (3, 2, &[1, 0, 1]),                   // x^2 + 1
    (3, 3, &[1, 2, 0, 1]),                // x^3 + 2x + 1
    (3, 4, &[2, 1, 0, 0, 1]),             // x^4 + x + 2
    (3, 5, &[1, 2, 0, 0, 0, 1]),          // x^5 + 2x + 1
    (5, 2, &[2, 0, 1]),                   // x^2 + 2
    (5, 3, &[2, 3, 0, 1]),                // x^3 + 3x + 2
    (7, 2, &[1, 0, 1]),                   // x^2 + 1
    (11, 2, &[1, 0, 1]),                  // x^2 + 1
    (13, 2, &[2, 0, 1]),                  // x^2 + 2
];

/// A finite field GF(q), q = p^e, with all arithmetic precomputed as q x q
/// index tables. Immutable after construction; share via `Arc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub q: usize,
    pub p: u64,
    pub e: u32,
    /// Monic irreducible modulus, low-to-high coefficients; empty when e = 1.
    pub modulus: Vec<u8>,
    add_table: Vec<u8>,
    mul_table: Vec<u8>,
    neg_table: Vec<u8>,
    inv_table: Vec<u8>,
}

impl FieldSpec {
    /// Builds GF(p^e). Fails on non-prime p, oversized q, or a missing
    /// modulus entry. Construction verifies that every nonzero index has a
    /// multiplicative inverse, which certifies the modulus is irreducible.
    pub fn new(p: u64, e: u32) -> Result<FieldSpec> {
        if e == 0 {
            return Err(Error::InvalidParameter(
                "extension degree must be >= 1".into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(e), MAX_FIELD_SIZE))?
            as usize;

        let modulus: Vec<u8> = if e == 1 {
            Vec::new()
        } else {
            MODULI
                .iter()
                .find(|&&(mp, me, _)| mp == p && me == e)
                .map(|&(_, _, m)| m.to_vec())
                .ok_or(Error::NoModulus { p, e })?
        };

        let mut add_table = vec![0u8; q * q];
        let mut mul_table = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add_table[a * q + b] = add_raw(p, e, a, b);
                mul_table[a * q + b] = mul_raw(p, e, &modulus, a, b);
            }
        }
        let mut neg_table = vec![0u8; q];
        for a in 0..q {
            let neg = (0..q)
                .find(|&b| add_table[a * q + b] == 0)
                .expect("additive inverse exists");
            neg_table[a] = neg as u8;
        }
        let mut inv_table = vec![0u8; q];
        for a in 1..q {
            let inv = (1..q).find(|&b| mul_table[a * q + b] == 1).ok_or_else(|| {
                Error::InvalidParameter(format!("modulus for GF({p}^{e}) is not irreducible"))
            })?;
            inv_table[a] = inv as u8;
        }

        Ok(FieldSpec {
            q,
            p,
            e,
            modulus,
            add_table,
            mul_table,
            neg_table,
            inv_table,
        })
    }

    /// Builds GF(q) from q itself, factoring it as a prime power.
    pub fn for_size(q: u64) -> Result<FieldSpec> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q, MAX_FIELD_SIZE));
        }
        let (p, e) = factor_prime_power(q).ok_or(Error::NotPrimePower(q))?;
        FieldSpec::new(p, e)
    }

    /// Convenience wrapper returning the field behind an `Arc`.
    pub fn shared(p: u64, e: u32) -> Result<Arc<FieldSpec>> {
        Ok(Arc::new(FieldSpec::new(p, e)?))
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add_table[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul_table[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg_table[a as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_table[a as usize])
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            return (rest == 1).then_some((p, e));
        }
        p += 1;
    }
    Some((q, 1)) // q itself is prime
}

fn digits(p: u64, e: u32, a: usize) -> Vec<u64> {
    let mut a = a as u64;
    let mut out = vec![0u64; e as usize];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn from_digits(p: u64, ds: &[u64]) -> u8 {
    let mut v = 0u64;
    for &d in ds.iter().rev() {
        v = v * p + d;
    }
    v as u8
}

fn add_raw(p: u64, e: u32, a: usize, b: usize) -> u8 {
    let da = digits(p, e, a);
    let db = digits(p, e, b);
    let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
    from_digits(p, &sum)
}

fn mul_raw(p: u64, e: u32, modulus: &[u8], a: usize, b: usize) -> u8 {
    if e == 1 {
        return ((a as u64 * b as u64) % p) as u8;
    }
    let da = digits(p, e, a);
    let db = digits(p, e, b);
    let deg = e as usize;
    let mut prod = vec![0u64; 2 * deg - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce modulo the monic modulus, highest power first.
    for i in (deg..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().enumerate().take(deg) {
            let idx = i - deg + j;
            prod[idx] = (prod[idx] + c * (p - m as u64 % p)) % p;
        }
    }
    from_digits(p, &prod[..deg])
}
