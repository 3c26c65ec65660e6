//! Constructions specific to the odd orthogonal groups: the quadratic forms
//! and their distinguished matrices (root elements, Levi elements, Weyl
//! representatives), the minus-type transporter b_n, and generator sets for
//! SO_n(q) and GO^pm_{2m}(q).
//!
//! Coordinate convention for n = 2m+1:
//!   index 0 .. n-1  <->  e_m, ..., e_1, e_0, e_1', ..., e_m'
//! and for even dimension 2m:
//!   index 0 .. 2m-1 <->  f_m, ..., f_1, f_1', ..., f_m'.

mod cosets;
mod parabolic;

pub use cosets::CosetSubgroups;
pub use parabolic::{
    lambda_chars, u_char_orbits, OrbitStructure, ParabolicData, UChar, UOrbit, World,
};

use std::sync::Arc;

use crate::ff::{find_nu, Field, FieldSpec};
use crate::matgrp::{
    closure, FormKind, Group, GroupError, Mat, QuadraticForm, DEFAULT_ENUMERATION_BOUND,
};

#[derive(Debug, thiserror::Error)]
pub enum OrthoError {
    #[error("field: {0}")]
    Field(#[from] crate::ff::FieldError),
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("n must be odd and >= 3, got {0}")]
    BadDimension(usize),
    #[error("no transporter b_3 found for q = {0}; this contradicts the classification of odd-dimensional forms")]
    NoTransporter(usize),
    #[error("construction check failed: {0}")]
    CheckFailed(String),
}

/// Shared data for one (n, q): field, forms, nu / nu' / nu'' and the 3x3
/// middle block of the minus-type transporter.
pub struct OrthoContext {
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub field: Field,
    pub nu: u8,
    pub nu_prime: u8,
    /// Non-square for odd q, 1 for even q.
    pub nu_pp: u8,
    pub b3: Mat,
    /// Q_n on F_q^n.
    pub form: QuadraticForm,
    /// Q_{n-2} on F_q^{n-2}.
    pub sub_form: QuadraticForm,
}

pub type Context = Arc<OrthoContext>;

impl OrthoContext {
    pub fn build(n: usize, q: usize) -> Result<Context, OrthoError> {
        if n < 3 || n % 2 == 0 {
            return Err(OrthoError::BadDimension(n));
        }
        let m = n / 2;
        let field = FieldSpec::of_order(q)?;
        let nu = find_nu(&field);
        let nu_pp = if q % 2 == 0 { 1 } else { field.nonsquare };
        let (nu_prime, b3) = find_transporter(&field, nu)?;
        let form = QuadraticForm::odd(&field, m);
        let sub_form = QuadraticForm::odd(&field, m - 1);
        let ctx = Arc::new(OrthoContext {
            n,
            m,
            q,
            field,
            nu,
            nu_prime,
            nu_pp,
            b3,
            form,
            sub_form,
        });
        ctx.check_transporter()?;
        Ok(ctx)
    }

    /// Q'_n(v) = v_0^2 + v_1^2 + v_1 v_1' + nu v_1'^2 + sum_{j>=2} v_j v_j',
    /// evaluated in any odd dimension k = 2l+1 >= 3.
    pub fn q_prime(&self, v: &[u8]) -> u8 {
        let f = &self.field;
        let l = v.len() / 2;
        assert!(v.len() % 2 == 1 && l >= 1);
        let mut acc = f.mul(v[l], v[l]); // v_0^2
        acc = f.add(acc, f.mul(v[l - 1], v[l - 1])); // v_1^2
        acc = f.add(acc, f.mul(v[l - 1], v[l + 1])); // v_1 v_1'
        acc = f.add(acc, f.mul(self.nu, f.mul(v[l + 1], v[l + 1]))); // nu v_1'^2
        for j in 2..=l {
            acc = f.add(acc, f.mul(v[l - j], v[l + j]));
        }
        acc
    }

    /// b_k = diag(nu' I_{(k-3)/2}, b_3, I_{(k-3)/2}) for odd k >= 3.
    pub fn b_mat(&self, k: usize) -> Mat {
        assert!(k % 2 == 1 && k >= 3);
        let border = (k - 3) / 2;
        let mut b = Mat::zero(&self.field, k);
        for i in 0..border {
            b.set(i, i, self.nu_prime);
            b.set(k - 1 - i, k - 1 - i, 1);
        }
        b.set_block(border, border, &self.b3);
        b
    }

    fn check_transporter(&self) -> Result<(), OrthoError> {
        // Q'_k(b_k v) = nu' Q_k(v), exhaustively for q^k <= 10^6.
        for k in [3usize, self.n - 2, self.n] {
            if k < 3 {
                continue;
            }
            let b = self.b_mat(k);
            let form = QuadraticForm::odd(&self.field, k / 2);
            let total = (self.q as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
            let vecs: Vec<Vec<u8>> = if total <= 1_000_000 {
                (0..total).map(|c| decode_vec(c, self.q, k)).collect()
            } else {
                basis_and_pair_vectors(self.q, k)
            };
            for v in vecs {
                let bv = b.mul_vec(&v);
                let lhs = self.q_prime(&bv);
                let rhs = self.field.mul(self.nu_prime, form.eval(&v));
                if lhs != rhs {
                    return Err(OrthoError::CheckFailed(format!(
                        "transporter identity fails in dimension {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The root element u_n(v) of the abelian unipotent radical, for any odd
    /// ambient dimension k = v.len() + 2.
    pub fn u_elem_dim(&self, k: usize, v: &[u8]) -> Mat {
        assert_eq!(v.len(), k - 2);
        let f = &self.field;
        let sub = QuadraticForm::odd(f, (k - 2) / 2);
        let mut u = Mat::identity(f, k);
        // row 0: -(v^tr J') in columns 1..k-1 and -Q(v) in column k-1
        let jv = sub.gram.mul_vec(v);
        for (i, &c) in jv.iter().enumerate() {
            u.set(0, 1 + i, f.neg(c));
        }
        u.set(0, k - 1, f.neg(sub.eval(v)));
        for (i, &c) in v.iter().enumerate() {
            u.set(1 + i, k - 1, c);
        }
        u
    }

    pub fn u_elem(&self, v: &[u8]) -> Mat {
        self.u_elem_dim(self.n, v)
    }

    /// s_n(x, a) = diag(a, x, a^{-1}).
    pub fn s_elem_dim(&self, k: usize, x: &Mat, a: u8) -> Mat {
        assert_eq!(x.n, k - 2);
        assert!(a != 0);
        let f = &self.field;
        let mut s = Mat::zero(f, k);
        s.set(0, 0, a);
        s.set(k - 1, k - 1, f.inv(a));
        s.set_block(1, 1, x);
        s
    }

    pub fn s_elem(&self, x: &Mat, a: u8) -> Mat {
        self.s_elem_dim(self.n, x, a)
    }

    /// diag(I_b, x, I_b) with border b = (k - x.n)/2.
    pub fn embed_mid(&self, k: usize, x: &Mat) -> Mat {
        assert!(k >= x.n && (k - x.n) % 2 == 0);
        let b = (k - x.n) / 2;
        let mut g = Mat::identity(&self.field, k);
        g.set_block(b, b, x);
        g
    }

    /// Middle k x k block.
    pub fn mid_block(&self, g: &Mat, k: usize) -> Mat {
        let b = (g.n - k) / 2;
        g.block(b, b, k)
    }

    /// Weyl representative s_j in dimension k = 2l+1 (1 <= j <= l).
    pub fn weyl_sj_dim(&self, k: usize, j: usize) -> Mat {
        let l = k / 2;
        assert!((1..=l).contains(&j));
        let f = &self.field;
        let mut s = Mat::identity(f, k);
        if j == 1 {
            // middle 3x3 block [. . 1 / . -1 . / 1 . .] on (v_1, v_0, v_1')
            s.set(l - 1, l - 1, 0);
            s.set(l, l, f.neg(1));
            s.set(l + 1, l + 1, 0);
            s.set(l - 1, l + 1, 1);
            s.set(l + 1, l - 1, 1);
        } else {
            // J_2 blocks swapping (e_j, e_{j-1}) and (e_{j-1}', e_j')
            let a = l - j;
            s.set(a, a, 0);
            s.set(a + 1, a + 1, 0);
            s.set(a, a + 1, 1);
            s.set(a + 1, a, 1);
            let b = l + j - 1;
            s.set(b, b, 0);
            s.set(b + 1, b + 1, 0);
            s.set(b, b + 1, 1);
            s.set(b + 1, b, 1);
        }
        s
    }

    pub fn weyl_sj(&self, j: usize) -> Mat {
        self.weyl_sj_dim(self.n, j)
    }

    /// s = s_m, the J_2 / I_{n-4} / J_2 involution (m >= 2).
    pub fn weyl_s(&self) -> Mat {
        assert!(self.m >= 2);
        self.weyl_sj(self.m)
    }

    /// t: swaps e_m and e_m', negates e_0, fixes the rest.
    pub fn weyl_t(&self) -> Mat {
        let n = self.n;
        let f = &self.field;
        let mut t = Mat::zero(f, n);
        t.set(0, n - 1, 1);
        t.set(n - 1, 0, 1);
        for i in 1..n - 1 {
            t.set(i, i, 1);
        }
        t.set(self.m, self.m, f.neg(1));
        t
    }

    /// r = s_{m-1} (m >= 3).
    pub fn weyl_r(&self) -> Mat {
        assert!(self.m >= 3);
        self.weyl_sj(self.m - 1)
    }

    /// Torus element with t_i = c in dimension k = 2l+1 (1-based i <= l).
    pub fn torus_dim(&self, k: usize, i: usize, c: u8) -> Mat {
        let l = k / 2;
        assert!((1..=l).contains(&i) && c != 0);
        let f = &self.field;
        let mut t = Mat::identity(f, k);
        t.set(l - i, l - i, c);
        t.set(l + i, l + i, f.inv(c));
        t
    }

    /// Generators for SO_k(q): root elements u_k(e_i), the Weyl
    /// representatives s_j, and torus generators. Each generator is checked
    /// to be an isometry of determinant one.
    pub fn so_generators_dim(&self, k: usize) -> Vec<Mat> {
        assert!(k % 2 == 1 && k >= 3);
        let l = k / 2;
        let form = QuadraticForm::odd(&self.field, l);
        let mut gens = Vec::new();
        for i in 0..k - 2 {
            let mut v = vec![0u8; k - 2];
            v[i] = 1;
            gens.push(self.u_elem_dim(k, &v));
        }
        for j in 1..=l {
            gens.push(self.weyl_sj_dim(k, j));
        }
        if self.q > 2 {
            for i in 1..=l {
                gens.push(self.torus_dim(k, i, self.field.primitive));
            }
        }
        for g in &gens {
            assert!(form.is_isometry(g), "generator is not an isometry");
            assert_eq!(g.det(), 1, "generator has determinant != 1");
        }
        gens
    }

    pub fn so_generators(&self) -> Vec<Mat> {
        self.so_generators_dim(self.n)
    }

    /// Generators for the parabolic P_n itself: the root elements u_n(e_i),
    /// the embedded generators of SO_{n-2}(q), and a generator of A. Lets
    /// P_n be enumerated standalone when SO_n(q) is beyond the bound.
    pub fn p_generators(&self) -> Vec<Mat> {
        let n = self.n;
        let mut gens = Vec::new();
        for i in 0..n - 2 {
            let mut v = vec![0u8; n - 2];
            v[i] = 1;
            gens.push(self.u_elem(&v));
        }
        if n >= 5 {
            for x in self.so_generators_dim(n - 2) {
                gens.push(self.s_elem(&x, 1));
            }
        }
        if self.q > 2 {
            gens.push(self.s_elem(&Mat::identity(&self.field, n - 2), self.field.primitive));
        }
        for g in &gens {
            assert!(self.form.is_isometry(g) && g.det() == 1);
        }
        gens
    }

    /// The standalone enumeration of P_n(q).
    pub fn p_group(&self, bound: usize) -> Result<Group, OrthoError> {
        Ok(closure(
            &self.field,
            self.n,
            &self.p_generators(),
            bound,
            &format!("P{}({})", self.n, self.q),
        )?)
    }

    /// The fully enumerated SO_k(q) in its own k-dimensional ambient.
    pub fn so_group_dim(&self, k: usize, bound: usize) -> Result<Group, OrthoError> {
        let gens = self.so_generators_dim(k);
        Ok(closure(
            &self.field,
            k,
            &gens,
            bound,
            &format!("SO{}({})", k, self.q),
        )?)
    }

    pub fn so_group(&self) -> Result<Group, OrthoError> {
        self.so_group_dim(self.n, DEFAULT_ENUMERATION_BOUND)
    }
}

fn decode_vec(mut c: u64, q: usize, dim: usize) -> Vec<u8> {
    (0..dim)
        .map(|_| {
            let d = (c % q as u64) as u8;
            c /= q as u64;
            d
        })
        .collect()
}

fn basis_and_pair_vectors(q: usize, dim: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for i in 0..dim {
        for c in 1..q as u8 {
            let mut v = vec![0u8; dim];
            v[i] = c;
            out.push(v);
        }
    }
    for i in 0..dim {
        for j in i + 1..dim {
            for c in 1..q as u8 {
                for d in 1..q as u8 {
                    let mut v = vec![0u8; dim];
                    v[i] = c;
                    v[j] = d;
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Searches for nu' and the 3x3 middle block b_3 with
/// Q'_3(b_3 u) = nu' Q_3(u); lexicographic over canonical keys, first match
/// wins. For even q only nu' = 1 is tried, for odd q first 1 then the
/// canonical non-square.
fn find_transporter(field: &Field, nu: u8) -> Result<(u8, Mat), OrthoError> {
    let q = field.q;
    let qmid = |v: &[u8]| -> u8 {
        // coords (v_1, v_0, v_1'): Q_3 = v_0^2 + v_1 v_1'
        field.add(field.mul(v[1], v[1]), field.mul(v[0], v[2]))
    };
    let qmid_prime = |v: &[u8]| -> u8 {
        // Q'_3 = v_0^2 + v_1^2 + v_1 v_1' + nu v_1'^2
        let mut acc = field.mul(v[1], v[1]);
        acc = field.add(acc, field.mul(v[0], v[0]));
        acc = field.add(acc, field.mul(v[0], v[2]));
        field.add(acc, field.mul(nu, field.mul(v[2], v[2])))
    };
    let test_vecs: Vec<Vec<u8>> = basis_and_pair_vectors(q, 3);
    let candidates: Vec<u8> = if q % 2 == 0 {
        vec![1]
    } else {
        vec![1, field.nonsquare]
    };
    for nu_prime in candidates {
        let total = (q as u128).pow(9);
        for key in 0..total {
            let b = Mat::from_key(field, 3, key);
            let ok = test_vecs
                .iter()
                .all(|v| qmid_prime(&b.mul_vec(v)) == field.mul(nu_prime, qmid(v)));
            if ok && b.det() != 0 {
                return Ok((nu_prime, b));
            }
        }
    }
    Err(OrthoError::NoTransporter(q))
}

/// Generators for GO^pm_{2m}(q): every reflection in an anisotropic vector,
/// plus the hyperbolic-plane swap in the plus case (which reflections miss
/// exactly for GO^+_4(2)).
pub fn go_even_generators(field: &Field, m: usize, kind: FormKind, nu: u8) -> Vec<Mat> {
    assert!(kind != FormKind::Odd);
    let dim = 2 * m;
    let form = match kind {
        FormKind::Plus => QuadraticForm::plus(field, m),
        FormKind::Minus => QuadraticForm::minus(field, m, nu),
        FormKind::Odd => unreachable!(),
    };
    let mut gens = Vec::new();
    let total = (field.q as u64).pow(dim as u32);
    for c in 1..total {
        let v = decode_vec(c, field.q, dim);
        if let Some(r) = form.reflection(&v) {
            gens.push(r);
        }
    }
    if kind == FormKind::Plus && m >= 2 {
        let mut swap = Mat::identity(field, dim);
        swap.set(0, 0, 0);
        swap.set(1, 1, 0);
        swap.set(0, 1, 1);
        swap.set(1, 0, 1);
        swap.set(dim - 2, dim - 2, 0);
        swap.set(dim - 1, dim - 1, 0);
        swap.set(dim - 2, dim - 1, 1);
        swap.set(dim - 1, dim - 2, 1);
        assert!(form.is_isometry(&swap));
        gens.push(swap);
    }
    for g in &gens {
        debug_assert!(form.is_isometry(g));
    }
    gens
}

/// The fully enumerated GO^pm_{2m}(q) in its own ambient.
pub fn go_even_group(
    field: &Field,
    m: usize,
    kind: FormKind,
    nu: u8,
    bound: usize,
) -> Result<Group, OrthoError> {
    if m == 0 {
        // convention GO^pm_0(q) = {1}
        return Ok(closure(field, 1, &[], 2, "GO0")?);
    }
    let sign = if kind == FormKind::Plus { "+" } else { "-" };
    let gens = go_even_generators(field, m, kind, nu);
    Ok(closure(
        field,
        2 * m,
        &gens,
        bound,
        &format!("GO{}{}({})", 2 * m, sign, field.q),
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgrp::{group_order_formula, OrderKind};

    #[test]
    fn transporter_exists_for_small_q() {
        for q in [2usize, 3, 4, 5] {
            let ctx = OrthoContext::build(5, q).unwrap();
            if q % 2 == 0 {
                assert_eq!(ctx.nu_prime, 1, "even q admits nu' = 1");
            } else {
                assert!(ctx.nu_prime == 1 || ctx.nu_prime == ctx.field.nonsquare);
            }
            assert_ne!(ctx.b3.det(), 0);
        }
    }

    #[test]
    fn u_elements_are_isometries_forming_an_abelian_group() {
        for q in [2usize, 3] {
            let ctx = OrthoContext::build(5, q).unwrap();
            let f = &ctx.field;
            let total = (q as u64).pow(3);
            assert!(ctx.u_elem(&[0, 0, 0]).is_identity());
            for a in 0..total {
                let va = decode_vec(a, q, 3);
                let ua = ctx.u_elem(&va);
                assert!(ctx.form.is_isometry(&ua));
                assert_eq!(ua.det(), 1);
                for b in 0..total {
                    let vb = decode_vec(b, q, 3);
                    let sum: Vec<u8> = va.iter().zip(&vb).map(|(&x, &y)| f.add(x, y)).collect();
                    assert_eq!(ua.mul(&ctx.u_elem(&vb)), ctx.u_elem(&sum));
                }
            }
        }
    }

    #[test]
    fn levi_conjugation_acts_linearly_on_u() {
        // ^{s_n(x,a)} u_n(v) = u_n(a x v)
        let ctx = OrthoContext::build(5, 3).unwrap();
        let sub_gens = ctx.so_generators_dim(3);
        for x in &sub_gens {
            for a in 1..3u8 {
                let s = ctx.s_elem(x, a);
                assert!(ctx.form.is_isometry(&s));
                let si = s.inverse().unwrap();
                for c in 0..27u64 {
                    let v = decode_vec(c, 3, 3);
                    let conj = s.mul(&ctx.u_elem(&v)).mul(&si);
                    let xv = x.mul_vec(&v);
                    let axv: Vec<u8> = xv.iter().map(|&e| ctx.field.mul(a, e)).collect();
                    assert_eq!(conj, ctx.u_elem(&axv));
                }
            }
        }
    }

    #[test]
    fn weyl_elements_are_isometries_of_det_one() {
        for (n, q) in [(5usize, 2usize), (5, 3), (7, 2)] {
            let ctx = OrthoContext::build(n, q).unwrap();
            let mut els = vec![ctx.weyl_s(), ctx.weyl_t()];
            if ctx.m >= 3 {
                els.push(ctx.weyl_r());
            }
            for j in 1..=ctx.m {
                els.push(ctx.weyl_sj(j));
            }
            for e in els {
                assert!(ctx.form.is_isometry(&e));
                assert_eq!(e.det(), 1);
                // s, t, r and all s_j here are involutions
            }
            assert!(ctx.weyl_s().mul(&ctx.weyl_s()).is_identity());
            assert!(ctx.weyl_t().mul(&ctx.weyl_t()).is_identity());
        }
    }

    #[test]
    fn so3_orders_match_formula() {
        for q in [2usize, 3, 4, 5] {
            let ctx = OrthoContext::build(3, q).unwrap();
            let g = ctx.so_group().unwrap();
            assert_eq!(
                g.order as u128,
                group_order_formula(OrderKind::SoOdd, 1, q as u64),
                "q = {q}"
            );
        }
    }

    #[test]
    fn so5_of_2_has_order_720_and_11_classes() {
        let ctx = OrthoContext::build(5, 2).unwrap();
        let g = ctx.so_group().unwrap();
        assert_eq!(g.order, 720);
        assert_eq!(g.class_count(), 11);
    }

    #[test]
    fn go_even_orders_match_formula() {
        for q in [2usize, 3, 4, 5] {
            let f = FieldSpec::of_order(q).unwrap();
            let nu = find_nu(&f);
            for m in [1usize, 2] {
                let gp = go_even_group(&f, m, FormKind::Plus, nu, 100_000).unwrap();
                assert_eq!(
                    gp.order as u128,
                    group_order_formula(OrderKind::GoPlus, m as u32, q as u64),
                    "GO+{} q={q}",
                    2 * m
                );
                let gm = go_even_group(&f, m, FormKind::Minus, nu, 100_000).unwrap();
                assert_eq!(
                    gm.order as u128,
                    group_order_formula(OrderKind::GoMinus, m as u32, q as u64),
                    "GO-{} q={q}",
                    2 * m
                );
            }
        }
    }
}
