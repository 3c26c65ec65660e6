//! The quadratic forms Q_{2m+1}, Q+_{2m}, Q-_{2m}, their Gram matrices,
//! isometry tests, reflections, and the classical group order formulas.
//!
//! Coordinate convention:
//!   v = [v_m, ..., v_1, v_0, v_1', ..., v_m']  (odd dimension)
//!   w = [w_m, ..., w_1, w_1', ..., w_m']       (even dimension)

use crate::ff::Field;
use crate::matgrp::matrix::Mat;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormKind {
    Odd,
    Plus,
    Minus,
}

#[derive(Clone)]
pub struct QuadraticForm {
    pub field: Field,
    pub kind: FormKind,
    pub dim: usize,
    /// The nu making X^2 + X + nu irreducible; only used by the minus kind.
    pub nu: u8,
    pub gram: Mat,
}

impl QuadraticForm {
    pub fn odd(field: &Field, m: usize) -> Self {
        let dim = 2 * m + 1;
        let mut gram = Mat::zero(field, dim);
        let two = field.add(1, 1);
        for i in 0..dim {
            if i == m {
                gram.set(m, m, two);
            } else {
                gram.set(i, dim - 1 - i, 1);
            }
        }
        QuadraticForm {
            field: field.clone(),
            kind: FormKind::Odd,
            dim,
            nu: 0,
            gram,
        }
    }

    pub fn plus(field: &Field, m: usize) -> Self {
        let dim = 2 * m;
        let mut gram = Mat::zero(field, dim);
        for i in 0..dim {
            gram.set(i, dim - 1 - i, 1);
        }
        QuadraticForm {
            field: field.clone(),
            kind: FormKind::Plus,
            dim,
            nu: 0,
            gram,
        }
    }

    pub fn minus(field: &Field, m: usize, nu: u8) -> Self {
        assert!(m >= 1);
        let dim = 2 * m;
        let mut gram = Mat::zero(field, dim);
        for i in 0..m - 1 {
            gram.set(i, dim - 1 - i, 1);
            gram.set(dim - 1 - i, i, 1);
        }
        let two = field.add(1, 1);
        gram.set(m - 1, m - 1, two);
        gram.set(m - 1, m, 1);
        gram.set(m, m - 1, 1);
        gram.set(m, m, field.mul(two, nu));
        QuadraticForm {
            field: field.clone(),
            kind: FormKind::Minus,
            dim,
            nu,
            gram,
        }
    }

    /// Value of the defining polynomial.
    pub fn eval(&self, v: &[u8]) -> u8 {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        let f = &self.field;
        match self.kind {
            FormKind::Odd => {
                let m = self.dim / 2;
                // v_0^2 + sum_j v_j v_j'; v_j at index m-j, v_j' at m+j
                let mut acc = f.mul(v[m], v[m]);
                for j in 1..=m {
                    acc = f.add(acc, f.mul(v[m - j], v[m + j]));
                }
                acc
            }
            FormKind::Plus => {
                let m = self.dim / 2;
                // w_j at index m-j, w_j' at index m-1+j
                let mut acc = 0u8;
                for j in 1..=m {
                    acc = f.add(acc, f.mul(v[m - j], v[m - 1 + j]));
                }
                acc
            }
            FormKind::Minus => {
                let m = self.dim / 2;
                let w1 = v[m - 1];
                let w1p = v[m];
                let mut acc = f.mul(w1, w1);
                acc = f.add(acc, f.mul(w1, w1p));
                acc = f.add(acc, f.mul(self.nu, f.mul(w1p, w1p)));
                for j in 2..=m {
                    acc = f.add(acc, f.mul(v[m - j], v[m - 1 + j]));
                }
                acc
            }
        }
    }

    /// Polar form B(v, w) = v^tr * gram * w.
    pub fn polar(&self, v: &[u8], w: &[u8]) -> u8 {
        let f = &self.field;
        let gw = self.gram.mul_vec(w);
        let mut acc = 0u8;
        for i in 0..self.dim {
            acc = f.add(acc, f.mul(v[i], gw[i]));
        }
        acc
    }

    /// Q(xv) = Q(v) for all v. Equivalent, in every characteristic, to
    /// preserving Q on basis vectors together with x^tr * gram * x = gram.
    pub fn is_isometry(&self, x: &Mat) -> bool {
        assert_eq!(x.n, self.dim, "dimension mismatch");
        for i in 0..self.dim {
            let col: Vec<u8> = (0..self.dim).map(|r| x.at(r, i)).collect();
            let mut e = vec![0u8; self.dim];
            e[i] = 1;
            if self.eval(&col) != self.eval(&e) {
                return false;
            }
        }
        x.transpose().mul(&self.gram).mul(x) == self.gram
    }

    /// The reflection in an anisotropic vector w:
    /// v -> v - (B(v,w)/Q(w)) w. An isometry in every characteristic.
    pub fn reflection(&self, w: &[u8]) -> Option<Mat> {
        let qw = self.eval(w);
        if qw == 0 {
            return None;
        }
        let f = &self.field;
        let qinv = f.inv(qw);
        let mut out = Mat::identity(f, self.dim);
        for j in 0..self.dim {
            let mut e = vec![0u8; self.dim];
            e[j] = 1;
            let c = f.mul(self.polar(&e, w), qinv);
            for i in 0..self.dim {
                let cur = out.at(i, j);
                out.set(i, j, f.sub(cur, f.mul(c, w[i])));
            }
        }
        Some(out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    SoOdd,
    GoOdd,
    SoPlus,
    SoMinus,
    GoPlus,
    GoMinus,
}

/// Exact evaluation of the classical order formulas, with
/// d = gcd(2, q-1) and e = gcd(2, q^m -+ 1).
pub fn group_order_formula(kind: OrderKind, m: u32, q: u64) -> u128 {
    let q = q as u128;
    let qp = |e: u32| q.pow(e);
    let d = if q % 2 == 0 { 1u128 } else { 2 };
    match kind {
        OrderKind::SoOdd | OrderKind::GoOdd => {
            let mut o = qp(m * m);
            for j in 1..=m {
                o *= qp(2 * j) - 1;
            }
            if kind == OrderKind::GoOdd {
                o * d
            } else {
                o
            }
        }
        OrderKind::SoPlus | OrderKind::GoPlus | OrderKind::SoMinus | OrderKind::GoMinus => {
            if m == 0 {
                return 1; // convention GO^pm_0(q) = SO^pm_0(q) = {1}
            }
            let minus = matches!(kind, OrderKind::SoMinus | OrderKind::GoMinus);
            let middle = if minus { qp(m) + 1 } else { qp(m) - 1 };
            let mut o = qp(m * (m - 1)) * middle;
            for j in 1..m {
                o *= qp(2 * j) - 1;
            }
            match kind {
                OrderKind::GoPlus | OrderKind::GoMinus => 2 * o,
                _ => {
                    let e = if middle % 2 == 0 { 2 } else { 1 };
                    2 * o / e
                }
            }
        }
    }
}

/// |P_n| for n = 2m+1: q^{m^2} (q-1) (q^{2m-2}-1) ... (q^2-1).
pub fn parabolic_order(m: u32, q: u64) -> u128 {
    let q = q as u128;
    let mut o = q.pow(m * m) * (q - 1);
    for j in 1..m {
        o *= q.pow(2 * j) - 1;
    }
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;

    #[test]
    fn gram_matches_polar_form() {
        for q in [2usize, 3, 4, 5] {
            let f = FieldSpec::of_order(q).unwrap();
            let nu = crate::ff::find_nu(&f);
            let forms = [
                QuadraticForm::odd(&f, 2),
                QuadraticForm::plus(&f, 2),
                QuadraticForm::minus(&f, 2, nu),
            ];
            for form in &forms {
                let dim = form.dim;
                let count = (q as u64).pow(dim as u32).min(4096);
                for a in 0..count {
                    let v = decode(a, q, dim);
                    for b in 0..count.min(64) {
                        let w = decode(b, q, dim);
                        let sum: Vec<u8> =
                            v.iter().zip(&w).map(|(&x, &y)| f.add(x, y)).collect();
                        let lhs = form.polar(&v, &w);
                        let rhs = f.sub(f.sub(form.eval(&sum), form.eval(&v)), form.eval(&w));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    fn decode(mut a: u64, q: usize, dim: usize) -> Vec<u8> {
        (0..dim)
            .map(|_| {
                let d = (a % q as u64) as u8;
                a /= q as u64;
                d
            })
            .collect()
    }

    #[test]
    fn q5_on_basis_vectors() {
        let f = FieldSpec::of_order(3).unwrap();
        let q5 = QuadraticForm::odd(&f, 2);
        // Q5(e_0) = v_0^2 = 1 where e_0 is the middle coordinate
        let mut e0 = vec![0u8; 5];
        e0[2] = 1;
        assert_eq!(q5.eval(&e0), 1);
        // Q(0) = 0
        assert_eq!(q5.eval(&[0, 0, 0, 0, 0]), 0);
        // isotropic basis vector
        let mut em = vec![0u8; 5];
        em[0] = 1;
        assert_eq!(q5.eval(&em), 0);
    }

    #[test]
    fn q4_minus_on_f1_prime() {
        let f = FieldSpec::of_order(3).unwrap();
        let nu = crate::ff::find_nu(&f);
        let q4m = QuadraticForm::minus(&f, 2, nu);
        // coordinates [w_2, w_1, w_1', w_2']; Q(f_1') = nu
        assert_eq!(q4m.eval(&[0, 0, 1, 0]), nu);
    }

    #[test]
    fn identity_is_isometry_and_shear_is_not() {
        let f = FieldSpec::of_order(3).unwrap();
        let q5 = QuadraticForm::odd(&f, 2);
        assert!(q5.is_isometry(&Mat::identity(&f, 5)));
        let mut shear = Mat::identity(&f, 5);
        shear.set(0, 1, 1); // I + E_{12}
        assert!(!q5.is_isometry(&shear));
    }

    #[test]
    fn reflections_are_isometries() {
        for q in [2usize, 3, 4, 5] {
            let f = FieldSpec::of_order(q).unwrap();
            let nu = crate::ff::find_nu(&f);
            for form in [
                QuadraticForm::odd(&f, 1),
                QuadraticForm::plus(&f, 2),
                QuadraticForm::minus(&f, 2, nu),
            ] {
                let mut count = 0;
                for code in 1..(q as u64).pow(form.dim as u32) {
                    let w = decode(code, q, form.dim);
                    if let Some(r) = form.reflection(&w) {
                        assert!(form.is_isometry(&r), "reflection not isometry q={q}");
                        count += 1;
                    }
                }
                assert!(count > 0);
            }
        }
    }

    #[test]
    fn order_formula_spot_values() {
        assert_eq!(group_order_formula(OrderKind::SoOdd, 2, 2), 720);
        assert_eq!(group_order_formula(OrderKind::SoOdd, 3, 2), 1_451_520);
        assert_eq!(group_order_formula(OrderKind::GoMinus, 2, 2), 120);
        assert_eq!(group_order_formula(OrderKind::GoPlus, 1, 3), 4);
        assert_eq!(group_order_formula(OrderKind::GoMinus, 1, 3), 8);
        assert_eq!(group_order_formula(OrderKind::SoOdd, 1, 3), 24);
        assert_eq!(group_order_formula(OrderKind::SoPlus, 0, 5), 1);
        assert_eq!(parabolic_order(2, 2), 48);
        assert_eq!(parabolic_order(2, 3), 1296);
        assert_eq!(parabolic_order(3, 2), 23040);
        assert_eq!(parabolic_order(1, 3), 6);
    }
}
