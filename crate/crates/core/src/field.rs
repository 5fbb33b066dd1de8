//! Exact arithmetic in GF(p^s) with a deterministic canonical representation.
//!
//! Elements are identified by an integer code in `[0, q)` encoding the
//! coefficient vector (c_0, ..., c_{s-1}) as sum c_i * p^i. The reduction
//! modulus for s >= 2 is the monic irreducible of degree s whose non-leading
//! coefficient encoding is smallest, found by an ascending scan.

use thiserror::Error;

/// Default cap on the field order q.
pub const DEFAULT_FIELD_ORDER_CAP: u32 = 64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum FieldError {
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u32),
    #[error("DegreeOutOfRange: extension degree must be >= 1, got {0}")]
    DegreeOutOfRange(u32),
    #[error("ElementOutOfRange: code {code} not in [0, {q})")]
    ElementOutOfRange { code: u32, q: u32 },
    #[error("ZeroInverse: zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("NotPrimePower: {0} is not a prime power")]
    NotPrimePower(u32),
    #[error("OrderCapExceeded: field order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: u64, cap: u32 },
}

/// An element of a finite field, identified by its integer code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete field GF(p^s) = GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    s: u32,
    q: u32,
    /// Coefficients c_0..c_s of the monic reduction modulus; [0, 1] for s = 1.
    modulus: Vec<u32>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial remainder of `a` by monic `b` over GF(p). Coefficients low-to-high.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * bc) % p) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn is_zero_poly(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Exhaustive divisor test: `f` (monic, degree s) has no monic divisor of
/// degree 1..=s/2 over GF(p).
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let s = f.len() - 1;
    for d in 1..=s / 2 {
        // all monic polynomials of degree d, low coefficients encoded in base p
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut g = vec![0u32; d + 1];
            let mut e = enc;
            for c in g.iter_mut().take(d) {
                *c = (e % p as u64) as u32;
                e /= p as u64;
            }
            g[d] = 1;
            if is_zero_poly(&poly_rem(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Construct GF(p^s) with the canonical modulus, enforcing the default order cap.
    pub fn new(p: u32, s: u32) -> Result<FieldSpec, FieldError> {
        FieldSpec::with_cap(p, s, DEFAULT_FIELD_ORDER_CAP)
    }

    pub fn with_cap(p: u32, s: u32, cap: u32) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if s < 1 {
            return Err(FieldError::DegreeOutOfRange(s));
        }
        let order = (p as u64).checked_pow(s).unwrap_or(u64::MAX);
        if order > cap as u64 {
            return Err(FieldError::OrderCapExceeded { order, cap });
        }
        let q = order as u32;
        let modulus = if s == 1 {
            vec![0, 1]
        } else {
            // ascending scan over encodings of the non-leading coefficients
            let mut found = None;
            for enc in 0..q {
                let mut f = vec![0u32; s as usize + 1];
                let mut e = enc;
                for c in f.iter_mut().take(s as usize) {
                    *c = e % p;
                    e /= p;
                }
                f[s as usize] = 1;
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            // a monic irreducible of every degree exists over every prime field
            found.expect("no irreducible polynomial found")
        };
        Ok(FieldSpec { p, s, q, modulus })
    }

    /// Construct the field of a given prime-power order.
    pub fn of_order(q: u32) -> Result<FieldSpec, FieldError> {
        if q < 2 {
            return Err(FieldError::NotPrimePower(q));
        }
        let mut p = 2;
        while p * p <= q {
            if q.is_multiple_of(p) {
                break;
            }
            p += 1;
        }
        let p = if q.is_multiple_of(p) { p } else { q };
        let mut s = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            s += 1;
        }
        if rest != 1 {
            return Err(FieldError::NotPrimePower(q));
        }
        FieldSpec::new(p, s)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Validate a raw code as an element of this field.
    pub fn element(&self, code: u32) -> Result<FieldElement, FieldError> {
        if code < self.q {
            Ok(FieldElement(code))
        } else {
            Err(FieldError::ElementOutOfRange { code, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    fn digits(&self, code: u32) -> Vec<u32> {
        let mut d = vec![0u32; self.s as usize];
        let mut c = code;
        for x in d.iter_mut() {
            *x = c % self.p;
            c /= self.p;
        }
        d
    }

    fn encode_digits(&self, d: &[u32]) -> u32 {
        let mut code = 0u32;
        for &x in d.iter().rev() {
            code = code * self.p + x % self.p;
        }
        code
    }

    fn check(&self, a: FieldElement) {
        debug_assert!(
            a.0 < self.q,
            "element {} out of range for GF({})",
            a.0,
            self.q
        );
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if self.s == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        FieldElement(self.encode_digits(&sum))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        if self.s == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let da = self.digits(a.0);
        let n: Vec<u32> = da.iter().map(|x| (self.p - x) % self.p).collect();
        FieldElement(self.encode_digits(&n))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if self.s == 1 {
            return FieldElement((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let da = self.digits(a.0);
        let db = self.digits(b.0);
        let s = self.s as usize;
        let mut prod = vec![0u32; 2 * s - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut full = vec![0u32; s];
        for (i, &c) in rem.iter().enumerate() {
            full[i] = c;
        }
        FieldElement(self.encode_digits(&full))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a);
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }
}
