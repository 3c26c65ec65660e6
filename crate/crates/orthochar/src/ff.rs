//! Exact arithmetic in small finite fields GF(p^k) together with the
//! canonical additive character x -> zeta_p^Tr(x).
//!
//! Elements are stored as integer codes in [0, q): the code of the residue
//! polynomial c_0 + c_1 X + ... + c_{k-1} X^{k-1} is sum c_i p^i. All
//! arithmetic goes through precomputed tables, so a `FieldSpec` is immutable
//! and cheap to share behind an `Rc`/`Arc`.

use std::fmt;
use std::sync::Arc;

use crate::exact::Cyclotomic;

/// Largest field size the artifact will build tables for.
pub const FIELD_SIZE_BOUND: usize = 16;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} out of range (1..=4 supported)")]
    BadDegree(usize),
    #[error("field size {0} exceeds the configured bound {FIELD_SIZE_BOUND}")]
    TooLarge(u64),
    #[error("no canonical modulus on record for GF({p}^{k})")]
    NoModulus { p: u64, k: usize },
}

/// Canonical irreducible moduli, low-to-high coefficients over GF(p).
/// Degree-one entries stand for the prime field itself. The extension
/// entries are the Conway polynomials for their parameters.
fn canonical_modulus(p: u64, k: usize) -> Option<Vec<u8>> {
    if k == 1 {
        return Some(vec![0, 1]); // formally X; arithmetic is plain mod p
    }
    match (p, k) {
        (2, 2) => Some(vec![1, 1, 1]),       // X^2 + X + 1
        (2, 3) => Some(vec![1, 1, 0, 1]),    // X^3 + X + 1
        (2, 4) => Some(vec![1, 1, 0, 0, 1]), // X^4 + X + 1
        (3, 2) => Some(vec![2, 2, 1]),       // X^2 + 2X + 2
        _ => None,
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An immutable description of GF(p^k) with full arithmetic tables.
pub struct FieldSpec {
    pub p: u64,
    pub k: usize,
    pub q: usize,
    /// Monic irreducible modulus, low-to-high coefficients (length k+1).
    pub modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// Field trace to GF(p), as an exponent of zeta_p in 0..p.
    trace: Vec<u8>,
    /// Smallest code generating the multiplicative group.
    pub primitive: u8,
    /// Smallest non-square code in F_q^x for odd q, 1 for even q.
    pub nonsquare: u8,
}

pub type Field = Arc<FieldSpec>;

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

/// Polynomial helpers over GF(p), coefficients low-to-high.
fn poly_mul_mod(a: &[u8], b: &[u8], modulus: &[u8], p: u64) -> Vec<u8> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
        }
    }
    // reduce by the monic modulus
    let k = modulus.len() - 1;
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &mi) in modulus.iter().enumerate().take(k) {
            let idx = d - k + i;
            prod[idx] = (prod[idx] + c * (p - mi as u64) % p) % p;
        }
    }
    prod.truncate(k);
    prod.iter().map(|&c| c as u8).collect()
}

fn code_to_poly(code: usize, p: u64, k: usize) -> Vec<u8> {
    let mut c = code;
    (0..k)
        .map(|_| {
            let d = (c as u64 % p) as u8;
            c /= p as usize;
            d
        })
        .collect()
}

fn poly_to_code(poly: &[u8], p: u64) -> usize {
    poly.iter()
        .rev()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Brute-force irreducibility over GF(p) for the small degrees we need:
/// check divisibility by every monic polynomial of degree 1..=deg/2.
fn poly_is_irreducible(modulus: &[u8], p: u64) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for code in 0..count {
            let mut div = code_to_poly(code, p, d);
            div.push(1); // monic of degree d
            if poly_divides(&div, modulus, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(div: &[u8], f: &[u8], p: u64) -> bool {
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let d = div.len() - 1;
    for i in (d..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        rem[i] = 0;
        for (j, &mj) in div.iter().enumerate().take(d) {
            rem[i - d + j] = (rem[i - d + j] + c * (p - mj as u64) % p) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

impl FieldSpec {
    /// Builds GF(p^k) with the canonical modulus and all arithmetic tables.
    pub fn make(p: u64, k: usize) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 || k > 4 {
            return Err(FieldError::BadDegree(k));
        }
        let q = (p as usize).checked_pow(k as u32).unwrap();
        if q > FIELD_SIZE_BOUND {
            return Err(FieldError::TooLarge(q as u64));
        }
        let modulus = canonical_modulus(p, k).ok_or(FieldError::NoModulus { p, k })?;
        if k > 1 {
            assert!(
                poly_is_irreducible(&modulus, p),
                "canonical modulus for GF({p}^{k}) is not irreducible"
            );
        }

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let pa = code_to_poly(a, p, k);
            for b in 0..q {
                let pb = code_to_poly(b, p, k);
                let sum: Vec<u8> = pa
                    .iter()
                    .zip(&pb)
                    .map(|(&x, &y)| ((x as u64 + y as u64) % p) as u8)
                    .collect();
                add[a * q + b] = poly_to_code(&sum, p) as u8;
                mul[a * q + b] = poly_to_code(&poly_mul_mod(&pa, &pb, &modulus, p), p) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if a != 0 && mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }

        // Trace to GF(p) via the Frobenius orbit x + x^p + ... + x^{p^{k-1}}.
        let mut trace = vec![0u8; q];
        for a in 0..q {
            let mut acc = 0usize;
            let mut frob = a;
            for _ in 0..k {
                acc = add[acc * q + frob] as usize;
                let mut pw = 1usize;
                for _ in 0..p {
                    pw = mul[pw * q + frob] as usize;
                }
                frob = pw;
            }
            assert!(acc < p as usize, "trace landed outside the prime field");
            trace[a] = acc as u8;
        }

        let order_of = |a: usize| -> usize {
            let mut x = a;
            let mut o = 1;
            while x != 1 {
                x = mul[x * q + a] as usize;
                o += 1;
            }
            o
        };
        let primitive = (1..q).find(|&a| order_of(a) == q - 1).unwrap() as u8;

        let nonsquare = if p == 2 {
            1
        } else {
            let mut is_sq = vec![false; q];
            for a in 1..q {
                is_sq[mul[a * q + a] as usize] = true;
            }
            (1..q).find(|&a| !is_sq[a]).unwrap() as u8
        };

        Ok(Arc::new(FieldSpec {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            trace,
            primitive,
            nonsquare,
        }))
    }

    /// Builds the field of order q, factoring q as a prime power.
    pub fn of_order(q: usize) -> Result<Field, FieldError> {
        let mut p = 2;
        while q % p != 0 {
            p += 1;
            if p > q {
                return Err(FieldError::NotPrime(q as u64));
            }
        }
        let mut k = 0;
        let mut rest = q;
        while rest > 1 {
            if rest % p != 0 {
                return Err(FieldError::NotPrime(q as u64));
            }
            rest /= p;
            k += 1;
        }
        FieldSpec::make(p as u64, k)
    }

    #[inline(always)]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }
    #[inline(always)]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }
    #[inline(always)]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    #[inline(always)]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }
    #[inline(always)]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
    #[inline(always)]
    pub fn trace(&self, a: u8) -> u8 {
        self.trace[a as usize]
    }

    pub fn pow(&self, a: u8, e: u64) -> u8 {
        let mut r = 1u8;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    pub fn is_square(&self, a: u8) -> bool {
        (0..self.q).any(|x| self.mul(x as u8, x as u8) == a)
    }

    /// All element codes.
    pub fn elements(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.q).map(|a| a as u8)
    }
}

/// The smallest nu (in code order) such that X^2 + X + nu is irreducible
/// over GF(q); equivalently, x^2 + x + nu has no root in GF(q).
pub fn find_nu(field: &FieldSpec) -> u8 {
    field
        .elements()
        .find(|&nu| {
            field
                .elements()
                .all(|x| field.add(field.add(field.mul(x, x), x), nu) != 0)
        })
        .expect("X^2 + X + nu is irreducible for some nu in every finite field")
}

/// The additive character xi(x) = zeta_p^{Tr(x)} of (F_q, +).
#[derive(Clone)]
pub struct AdditiveCharacter {
    pub field: Field,
}

impl AdditiveCharacter {
    pub fn new(field: &Field) -> Self {
        AdditiveCharacter {
            field: field.clone(),
        }
    }

    /// xi(x) as an exact cyclotomic number of conductor p.
    pub fn value(&self, x: u8) -> Cyclotomic {
        Cyclotomic::root_of_unity(self.field.p as u32, self.field.trace(x) as u32)
    }

    /// The exponent of zeta_p, handy when only the exponent matters.
    pub fn exponent(&self, x: u8) -> u8 {
        self.field.trace(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Cyclotomic;

    #[test]
    fn canonical_fields_build() {
        for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::of_order(q).unwrap();
            assert_eq!(f.q, q);
        }
        assert!(FieldSpec::make(6, 1).is_err());
        assert!(FieldSpec::make(2, 5).is_err());
        assert!(FieldSpec::make(5, 2).is_err()); // 25 > bound
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FieldSpec::of_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn find_nu_matches_known_values() {
        assert_eq!(find_nu(&FieldSpec::of_order(2).unwrap()), 1);
        assert_eq!(find_nu(&FieldSpec::of_order(3).unwrap()), 2);
        assert_eq!(find_nu(&FieldSpec::of_order(5).unwrap()), 1);
        // and the defining property, for every supported field
        for q in [2usize, 3, 4, 5, 7, 8, 9] {
            let f = FieldSpec::of_order(q).unwrap();
            let nu = find_nu(&f);
            for x in f.elements() {
                assert_ne!(f.add(f.add(f.mul(x, x), x), nu), 0);
            }
        }
    }

    #[test]
    fn additive_character_is_a_homomorphism() {
        for q in [2usize, 3, 4, 5, 8, 9] {
            let f = FieldSpec::of_order(q).unwrap();
            let xi = AdditiveCharacter::new(&f);
            assert_eq!(xi.value(0), Cyclotomic::one());
            let mut total = Cyclotomic::zero();
            let mut nontrivial = false;
            for x in f.elements() {
                total = &total + &xi.value(x);
                if xi.value(x) != Cyclotomic::one() {
                    nontrivial = true;
                }
                for y in f.elements() {
                    assert_eq!(xi.value(f.add(x, y)), &xi.value(x) * &xi.value(y));
                }
            }
            assert!(nontrivial, "xi must be non-trivial");
            assert_eq!(total, Cyclotomic::zero(), "sum over F_q of xi must vanish");
        }
    }

    #[test]
    fn trace_on_gf4() {
        let f = FieldSpec::of_order(4).unwrap();
        // omega = code 2 is a root of X^2+X+1; Tr(omega) = omega + omega^2 = 1
        assert_eq!(f.trace(2), 1);
        let xi = AdditiveCharacter::new(&f);
        assert_eq!(xi.value(2), Cyclotomic::from_integer(-1));
    }
}
