//! Exact elements of the cyclotomic fields Q(zeta_N).
//!
//! A value is a dense coefficient vector over the power basis
//! 1, zeta_N, ..., zeta_N^{phi(N)-1} after reduction modulo the N-th
//! cyclotomic polynomial. Mixed-conductor arithmetic lifts both operands to
//! the lcm of their conductors; results are only reduced back to a smaller
//! conductor when it is free (purely rational values drop to N = 1) or on an
//! explicit `reduced()` call.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, parse_rational, Rational};

fn phi(n: u32) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result as usize
}

fn prime_divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Per-conductor data: the cyclotomic polynomial and reduction rows for
/// x^j with j >= phi(N), enough for products of canonical elements and for
/// exponents up to N-1.
struct CycData {
    phi: usize,
    /// red_rows[j - phi] = x^j mod Phi_N as a phi-length integer vector.
    red_rows: Vec<Vec<BigInt>>,
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_poly(d, cache);
            num = poly_div_exact(&num, &div);
        }
    }
    cache.insert(n, num.clone());
    num
}

/// Exact division of integer polynomials (low-to-high), divisor monic.
fn poly_div_exact(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = f.to_vec();
    let dg = g.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dg];
    for i in (dg..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dg] = c.clone();
        for (j, gj) in g.iter().enumerate().take(dg + 1) {
            rem[i - dg + j] -= &c * gj;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

fn cyc_data(n: u32) -> Arc<CycData> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(d) = guard.get(&n) {
        return d.clone();
    }
    let mut poly_cache = HashMap::new();
    let poly = cyclotomic_poly(n, &mut poly_cache);
    let ph = poly.len() - 1;
    debug_assert_eq!(ph, phi(n));
    let max_exp = (2 * ph).saturating_sub(2).max(n as usize - 1).max(ph);
    // row for x^phi comes straight from the monic polynomial
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_exp + 1 - ph);
    let first: Vec<BigInt> = poly[..ph].iter().map(|c| -c.clone()).collect();
    rows.push(first);
    for _ in ph..max_exp {
        let prev = rows.last().unwrap();
        // multiply by x, then reduce the overflow coefficient
        let top = prev[ph - 1].clone();
        let mut next = vec![BigInt::zero(); ph];
        for i in 1..ph {
            next[i] = prev[i - 1].clone();
        }
        if !top.is_zero() {
            for (i, r) in rows[0].iter().enumerate() {
                next[i] += &top * r;
            }
        }
        rows.push(next);
    }
    let data = Arc::new(CycData {
        phi: ph,
        red_rows: rows,
    });
    guard.insert(n, data.clone());
    data
}

/// An exact element of Q(zeta_N).
#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(v.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![r],
        }
    }

    /// zeta_N^e, canonically reduced.
    pub fn root_of_unity(n: u32, e: u32) -> Self {
        Self::new(n, &[(e % n, Rational::one())])
    }

    /// Sum of c_e * zeta_N^e over the given terms; exponents taken mod N.
    pub fn new(n: u32, terms: &[(u32, Rational)]) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let data = cyc_data(n);
        let mut coeffs = vec![Rational::zero(); data.phi];
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            let e = (*e % n) as usize;
            if e < data.phi {
                coeffs[e] += c;
            } else {
                for (i, r) in data.red_rows[e - data.phi].iter().enumerate() {
                    if !r.is_zero() {
                        coeffs[i] += c * r;
                    }
                }
            }
        }
        Cyclotomic { n, coeffs }.demote_rational()
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients at the current conductor.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Drops to conductor 1 when the value is rational; free and keeps
    /// later arithmetic on the fast path.
    fn demote_rational(self) -> Self {
        if self.n != 1 && self.is_rational() {
            Cyclotomic {
                n: 1,
                coeffs: vec![self.coeffs[0].clone()],
            }
        } else {
            self
        }
    }

    /// The same number represented at conductor m (self.n must divide m).
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m % self.n == 0,
            "cannot lift conductor {} into {}",
            self.n,
            m
        );
        if m == self.n {
            return self.clone();
        }
        let ratio = m / self.n;
        let terms: Vec<(u32, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32 * ratio, c.clone()))
            .collect();
        let data = cyc_data(m);
        let mut coeffs = vec![Rational::zero(); data.phi];
        for (e, c) in terms {
            let e = e as usize;
            if e < data.phi {
                coeffs[e] += &c;
            } else {
                for (i, r) in data.red_rows[e - data.phi].iter().enumerate() {
                    if !r.is_zero() {
                        coeffs[i] += &c * r;
                    }
                }
            }
        }
        Cyclotomic { n: m, coeffs }
    }

    /// Image under zeta_N -> zeta_N^k, gcd(k, N) = 1.
    pub fn galois(&self, k: u32) -> Self {
        let k = k % self.n;
        assert_eq!(
            (k.gcd(&self.n)),
            1,
            "galois exponent must be coprime to the conductor"
        );
        let terms: Vec<(u32, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| ((i as u32 * k) % self.n, c.clone()))
            .collect();
        Self::new(self.n, &terms)
    }

    /// Complex conjugation zeta_N -> zeta_N^{N-1}.
    pub fn conj(&self) -> Self {
        if self.n == 1 {
            return self.clone();
        }
        self.galois(self.n - 1)
    }

    /// Minimal-conductor representative of the same number.
    pub fn reduced(&self) -> Self {
        let mut cur = self.clone().demote_rational();
        'outer: loop {
            if cur.n == 1 {
                return cur;
            }
            for p in prime_divisors(cur.n) {
                let d = cur.n / p;
                if let Some(smaller) = cur.try_descend(d) {
                    cur = smaller;
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// Attempts to rewrite the value at conductor d | n.
    fn try_descend(&self, d: u32) -> Option<Cyclotomic> {
        let n = self.n;
        // Galois-fixedness under the subgroup fixing Q(zeta_d)
        for j in (1..n).filter(|j| j % d == 1 && j.gcd(&n) == 1) {
            if j == 1 {
                continue;
            }
            if self.galois(j) != *self {
                return None;
            }
        }
        // Re-express over the embedded basis of Q(zeta_d): solve
        // sum_i c_i * emb(zeta_d^i) = self.
        let phd = phi(d);
        let phn = self.coeffs.len();
        let embedded: Vec<Cyclotomic> = (0..phd)
            .map(|i| Cyclotomic::root_of_unity(d, i as u32).lift(n))
            .collect();
        // rows: phn equations, phd unknowns, augmented with target
        let mut rows: Vec<Vec<Rational>> = (0..phn)
            .map(|r| {
                let mut row: Vec<Rational> =
                    embedded.iter().map(|e| e.coeffs[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let sol = solve_linear(&mut rows, phd)?;
        let terms: Vec<(u32, Rational)> = sol
            .into_iter()
            .enumerate()
            .map(|(i, c)| (i as u32, c))
            .collect();
        Some(Cyclotomic::new(d, &terms))
    }

    /// Deterministic total order on representations, used for canonical
    /// sorting of character lists. Compares as numbers at a common conductor.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let m = lcm_u32(self.n, other.n);
        let a = self.lift(m);
        let b = other.lift(m);
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            match x.cmp(y) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// Solves an augmented linear system by Gaussian elimination; `cols` is the
/// number of unknowns and each row has `cols + 1` entries. Returns None if
/// inconsistent.
pub fn solve_linear(rows: &mut [Vec<Rational>], cols: usize) -> Option<Vec<Rational>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=cols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
    }
    // consistency: no row 0 = nonzero
    for row in rows.iter() {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }
    Some(
        pivot_of_col
            .into_iter()
            .map(|p| match p {
                Some(r) => rows[r][cols].clone(),
                None => Rational::zero(),
            })
            .collect(),
    )
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let m = lcm_u32(self.n, other.n);
        self.lift(m).coeffs == other.lift(m).coeffs
    }
}
impl Eq for Cyclotomic {}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n == rhs.n {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Cyclotomic {
                n: self.n,
                coeffs,
            }
            .demote_rational();
        }
        let m = lcm_u32(self.n, rhs.n);
        &self.lift(m) + &rhs.lift(m)
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.n != rhs.n {
            let m = lcm_u32(self.n, rhs.n);
            return &self.lift(m) * &rhs.lift(m);
        }
        // fast scalar paths
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        let data = cyc_data(self.n);
        let ph = data.phi;
        let mut prod = vec![Rational::zero(); 2 * ph - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        let mut coeffs: Vec<Rational> = prod[..ph].to_vec();
        for (e, c) in prod.iter().enumerate().skip(ph) {
            if c.is_zero() {
                continue;
            }
            for (i, r) in data.red_rows[e - ph].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[i] += c * r;
                }
            }
        }
        Cyclotomic {
            n: self.n,
            coeffs,
        }
        .demote_rational()
    }
}

impl Cyclotomic {
    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

fn fmt_cyc(x: &Cyclotomic, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if x.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in x.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        if i == 0 {
            write!(f, "{}", format_rational(c))?;
        } else if c.is_one() {
            write!(f, "z{}^{}", x.n, i)?;
        } else {
            write!(f, "{}*z{}^{}", format_rational(c), x.n, i)?;
        }
    }
    Ok(())
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_cyc(self, f)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_cyc(self, f)
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut terms = BTreeMap::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(i.to_string(), format_rational(c));
            }
        }
        let mut state = serde_json::Map::new();
        state.insert("N".into(), serde_json::json!(self.n));
        state.insert("terms".into(), serde_json::json!(terms));
        serde_json::Value::Object(state).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "N")]
            n: u32,
            terms: BTreeMap<String, String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut terms = Vec::new();
        for (e, c) in raw.terms {
            let e: u32 = e.parse().map_err(D::Error::custom)?;
            let c = parse_rational(&c).ok_or_else(|| D::Error::custom("bad rational"))?;
            terms.push((e, c));
        }
        Ok(Cyclotomic::new(raw.n, &terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn zeta(n: u32, e: u32) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, e)
    }

    #[test]
    fn imaginary_unit_squares_to_minus_one() {
        let i = zeta(4, 1);
        assert_eq!(&i * &i, Cyclotomic::from_integer(-1));
        assert_eq!(i.conj(), -&i);
    }

    #[test]
    fn sum_of_cube_roots_vanishes() {
        let s = &(&zeta(3, 0) + &zeta(3, 1)) + &zeta(3, 2);
        assert_eq!(s, Cyclotomic::zero());
    }

    #[test]
    fn rational_constants() {
        let c = Cyclotomic::new(1, &[(0, crate::exact::rat_frac(5, 3))]);
        assert_eq!(c.as_rational(), Some(crate::exact::rat_frac(5, 3)));
        assert_eq!(c.conj(), c);
    }

    #[test]
    fn lift_and_reduce_are_inverse() {
        let x = &zeta(3, 1) + &Cyclotomic::from_integer(2);
        let lifted = x.lift(6);
        assert_eq!(lifted.conductor(), 6);
        assert_eq!(lifted, x);
        assert_eq!(lifted.reduced().conductor(), 3);
        assert_eq!(lifted.reduced(), x);

        // zeta_3 = zeta_6^2
        assert_eq!(zeta(3, 1).lift(6), zeta(6, 2));
        // -1 at conductor 6
        assert_eq!(Cyclotomic::from_integer(-1).lift(6), zeta(6, 3));
    }

    #[test]
    fn real_combination_fixed_by_conjugation() {
        let x = &zeta(5, 1) + &zeta(5, 4);
        assert_eq!(x.conj(), x);
        let norm = &x * &x.conj();
        // (z5 + z5^4)(z5 + z5^4) is real; check rationality of x*conj + x + 1 = 0 trick:
        // z + z^4 satisfies t^2 + t - 1 = 0
        let t2 = &norm + &x;
        assert_eq!(t2, Cyclotomic::one());
    }

    #[test]
    fn ring_axioms_spot_checks() {
        let vals = [
            Cyclotomic::from_integer(2),
            zeta(3, 1),
            zeta(4, 1),
            &zeta(8, 1) + &Cyclotomic::from_integer(1),
            &zeta(12, 7).scale(&crate::exact::rat_frac(1, 2)) + &zeta(12, 2),
        ];
        for a in &vals {
            for b in &vals {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!(&(a * b).conj(), &(&a.conj() * &b.conj()));
                for c in &vals {
                    assert_eq!(&(a + b) + c, a + &(b + c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
        }
        for a in &vals {
            assert_eq!(a.conj().conj(), *a);
        }
    }

    #[test]
    fn serialization_round_trip() {
        let x = &zeta(8, 3).scale(&crate::exact::rat_frac(-2, 7)) + &Cyclotomic::from_integer(4);
        let json = serde_json::to_string(&x).unwrap();
        let back: Cyclotomic = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn galois_on_rationals_is_identity() {
        let r = Cyclotomic::from_rational(rat(7));
        assert_eq!(r.galois(1), r);
    }

    #[test]
    fn reduce_through_multiple_primes() {
        // zeta_12^3 = i lives at conductor 4
        let x = zeta(12, 3);
        assert_eq!(x.reduced().conductor(), 4);
        assert_eq!(x.reduced(), zeta(4, 1));
        // zeta_2 = -1 lives at conductor 1
        assert_eq!(zeta(2, 1).conductor(), 1);
    }
}
