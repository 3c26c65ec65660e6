//! Dense matrices over GF(q) with table-driven arithmetic and an injective
//! fixed-width canonical key (base-q digits, row-major) used to index group
//! elements.

use std::fmt;

use crate::ff::Field;

/// Canonical element key. Base-q digits of the row-major entry list packed
/// into a u128; injective as long as q^(n^2) fits, which holds for every
/// ambient this crate enumerates (n <= 7 with q <= 5, n <= 5 with q <= 16).
pub type Key = u128;

#[derive(Clone)]
pub struct Mat {
    pub field: Field,
    pub n: usize,
    pub e: Vec<u8>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.field == other.field && self.e == other.e
    }
}
impl Eq for Mat {}

impl Mat {
    pub fn zero(field: &Field, n: usize) -> Self {
        Mat {
            field: field.clone(),
            n,
            e: vec![0; n * n],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.e[i * n + i] = 1;
        }
        m
    }

    #[inline(always)]
    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.e[i * self.n + j]
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.e[i * self.n + j] = v;
    }

    pub fn key(&self) -> Key {
        debug_assert!(
            (self.n * self.n) as f64 * (self.field.q as f64).log2() < 128.0,
            "element key would overflow u128"
        );
        let q = self.field.q as u128;
        self.e.iter().rev().fold(0u128, |acc, &d| acc * q + d as u128)
    }

    pub fn from_key(field: &Field, n: usize, key: Key) -> Self {
        let q = field.q as u128;
        let mut k = key;
        let e = (0..n * n)
            .map(|_| {
                let d = (k % q) as u8;
                k /= q;
                d
            })
            .collect();
        Mat {
            field: field.clone(),
            n,
            e,
        }
    }

    /// Row-major base-q digit string, the portable serialization format.
    pub fn digits(&self) -> String {
        self.e.iter().map(|d| char::from(b'0' + d)).collect()
    }

    pub fn from_digits(field: &Field, n: usize, s: &str) -> Option<Self> {
        if s.len() != n * n {
            return None;
        }
        let e: Vec<u8> = s.bytes().map(|b| b.wrapping_sub(b'0')).collect();
        if e.iter().any(|&d| d as usize >= field.q) {
            return None;
        }
        Some(Mat {
            field: field.clone(),
            n,
            e,
        })
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let f = &self.field;
        let mut out = Mat::zero(f, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.e[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.e[k * n + j];
                    if b != 0 {
                        let idx = i * n + j;
                        out.e[idx] = f.add(out.e[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u8]) -> Vec<u8> {
        let n = self.n;
        let f = &self.field;
        (0..n)
            .map(|i| {
                let mut acc = 0u8;
                for j in 0..n {
                    acc = f.add(acc, f.mul(self.e[i * n + j], v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(&self.field, n);
        for i in 0..n {
            for j in 0..n {
                out.e[j * n + i] = self.e[i * n + j];
            }
        }
        out
    }

    pub fn scale(&self, c: u8) -> Mat {
        let f = &self.field;
        Mat {
            field: self.field.clone(),
            n: self.n,
            e: self.e.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn det(&self) -> u8 {
        let n = self.n;
        let f = self.field.clone();
        let mut a = self.e.clone();
        let mut det = 1u8;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if p != col {
                for j in 0..n {
                    a.swap(col * n + j, p * n + j);
                }
                det = f.neg(det);
            }
            let pivot = a[col * n + col];
            det = f.mul(det, pivot);
            let pinv = f.inv(pivot);
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let f = self.field.clone();
        let mut a = self.e.clone();
        let mut inv = Mat::identity(&f, n).e;
        for col in 0..n {
            let p = (col..n).find(|&r| a[r * n + col] != 0)?;
            if p != col {
                for j in 0..n {
                    a.swap(col * n + j, p * n + j);
                    inv.swap(col * n + j, p * n + j);
                }
            }
            let pinv = f.inv(a[col * n + col]);
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let s = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], s);
                    let s = f.mul(factor, inv[col * n + j]);
                    inv[r * n + j] = f.sub(inv[r * n + j], s);
                }
            }
        }
        Some(Mat {
            field: self.field.clone(),
            n,
            e: inv,
        })
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        self.e
            .iter()
            .enumerate()
            .all(|(idx, &v)| v == if idx / n == idx % n { 1 } else { 0 })
    }

    /// Multiplicative order; assumes invertibility.
    pub fn elem_order(&self) -> u32 {
        let mut x = self.clone();
        let mut o = 1;
        while !x.is_identity() {
            x = x.mul(self);
            o += 1;
            assert!(o < 1_000_000, "element order runaway");
        }
        o
    }

    /// Copies `sub` into self with top-left corner at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, sub: &Mat) {
        for i in 0..sub.n {
            for j in 0..sub.n {
                self.set(r0 + i, c0 + j, sub.at(i, j));
            }
        }
    }

    /// Extracts the square block of size k with top-left corner at (r0, c0).
    pub fn block(&self, r0: usize, c0: usize, k: usize) -> Mat {
        let mut out = Mat::zero(&self.field, k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.at(r0 + i, c0 + j));
            }
        }
        out
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat{}x{} over GF({})", self.n, self.n, self.field.q)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;

    #[test]
    fn key_round_trip_and_injectivity() {
        let f = FieldSpec::of_order(3).unwrap();
        let mut seen = std::collections::HashSet::new();
        for code in 0..3u32.pow(4) {
            let m = Mat::from_key(&f, 2, code as u128);
            assert_eq!(m.key(), code as u128);
            assert!(seen.insert(m.key()));
            let d = m.digits();
            assert_eq!(Mat::from_digits(&f, 2, &d).unwrap(), m);
        }
    }

    #[test]
    fn inverse_and_det_over_gf5() {
        let f = FieldSpec::of_order(5).unwrap();
        let mut m = Mat::identity(&f, 3);
        m.set(0, 1, 2);
        m.set(1, 2, 3);
        m.set(0, 2, 4);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.det(), 1);
        let mut s = Mat::zero(&f, 2);
        s.set(0, 0, 2);
        s.set(1, 1, 3);
        assert_eq!(s.det(), 1); // 2*3 = 6 = 1 mod 5
    }

    #[test]
    fn associativity_spot_check() {
        let f = FieldSpec::of_order(4).unwrap();
        let a = Mat::from_key(&f, 3, 123456);
        let b = Mat::from_key(&f, 3, 654321);
        let c = Mat::from_key(&f, 3, 111222);
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}
