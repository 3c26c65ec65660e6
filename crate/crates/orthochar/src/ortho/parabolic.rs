//! The maximal parabolic subgroup P_n = U_n x| L_n of SO_n(q), the four
//! orbits of L_n on Irr(U_n) with the linear characters lambda^0, lambda^+,
//! lambda^-, their inertia subgroups, and the distinguished unipotent
//! elements z_0, z_1, z_2.

use std::sync::Arc;

use crate::ff::AdditiveCharacter;
use crate::matgrp::{
    group_order_formula, intersection, parabolic_order, product_subgroup, Group, Mat, OrderKind,
    DEFAULT_ENUMERATION_BOUND,
};

use super::{Context, OrthoContext, OrthoError};

/// A character of U_n, represented by its frequency vector:
/// lambda_w(u_n(v)) = xi(w . v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChar {
    pub w: Vec<u8>,
}

impl UChar {
    pub fn dot(&self, ctx: &OrthoContext, v: &[u8]) -> u8 {
        let f = &ctx.field;
        self.w
            .iter()
            .zip(v)
            .fold(0u8, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }

    /// Value as an exponent of zeta_p.
    pub fn exponent(&self, ctx: &OrthoContext, xi: &AdditiveCharacter, v: &[u8]) -> u8 {
        xi.exponent(self.dot(ctx, v))
    }

    pub fn is_trivial(&self) -> bool {
        self.w.iter().all(|&c| c == 0)
    }
}

/// Which of the four orbits a character of U lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UOrbit {
    Trivial,
    Zero,
    Plus,
    Minus,
}

pub struct OrbitStructure {
    /// sizes of the orbits of (1_U, lambda^0, lambda^+, lambda^-)
    pub sizes: [u64; 4],
    /// orbit membership indexed by the code of w
    pub orbit_of: Vec<Option<UOrbit>>,
}

/// Orbits of L_n on Irr(U_n) computed purely from generator action on the
/// frequency vectors; needs no group enumeration. The action of s_n(x, a)
/// sends lambda_w to lambda_{a^{-1} x^{-tr} w}.
pub fn u_char_orbits(ctx: &OrthoContext) -> Result<OrbitStructure, OrthoError> {
    let d = ctx.n - 2;
    let q = ctx.q;
    let f = &ctx.field;
    let total = q.checked_pow(d as u32).expect("q^{n-2} fits usize");

    // action generators: transpose-inverses of the SO_{n-2} generators,
    // plus the scalar action of A
    let mut actions: Vec<Mat> = if d >= 3 {
        ctx.so_generators_dim(d)
            .iter()
            .map(|x| x.inverse().unwrap().transpose())
            .collect()
    } else {
        Vec::new() // SO_1(q) is trivial
    };
    if q > 2 {
        actions.push(Mat::identity(f, d).scale(f.inv(f.primitive)));
    }

    let code_of = |w: &[u8]| -> usize {
        w.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize)
    };
    let decode = |mut c: usize| -> Vec<u8> {
        (0..d)
            .map(|_| {
                let r = (c % q) as u8;
                c /= q;
                r
            })
            .collect()
    };

    let lambda = lambda_chars(ctx);
    // for n = 3 the orbits of lambda^0 and lambda^- do not exist
    let (rep_codes, tags): (Vec<usize>, Vec<UOrbit>) = if ctx.n >= 5 {
        (
            vec![
                0usize,
                code_of(&lambda.0.w),
                code_of(&lambda.1.w),
                code_of(&lambda.2.w),
            ],
            vec![UOrbit::Trivial, UOrbit::Zero, UOrbit::Plus, UOrbit::Minus],
        )
    } else {
        (
            vec![0usize, code_of(&lambda.1.w)],
            vec![UOrbit::Trivial, UOrbit::Plus],
        )
    };

    let mut orbit_of: Vec<Option<UOrbit>> = vec![None; total];
    let mut sizes = [0u64; 4];
    for (&rep, &tag) in rep_codes.iter().zip(&tags) {
        let tag_i = match tag {
            UOrbit::Trivial => 0,
            UOrbit::Zero => 1,
            UOrbit::Plus => 2,
            UOrbit::Minus => 3,
        };
        if orbit_of[rep].is_some() {
            return Err(OrthoError::CheckFailed(
                "orbit representatives are not in distinct orbits".into(),
            ));
        }
        let mut queue = vec![rep];
        orbit_of[rep] = Some(tag);
        let mut qi = 0;
        while qi < queue.len() {
            let w = decode(queue[qi]);
            qi += 1;
            for act in &actions {
                let img = code_of(&act.mul_vec(&w));
                if orbit_of[img].is_none() {
                    orbit_of[img] = Some(tag);
                    queue.push(img);
                }
            }
        }
        sizes[tag_i] = queue.len() as u64;
    }

    if orbit_of.iter().any(|o| o.is_none()) {
        return Err(OrthoError::CheckFailed(
            "the four orbits do not exhaust Irr(U)".into(),
        ));
    }
    if sizes.iter().sum::<u64>() != total as u64 {
        return Err(OrthoError::CheckFailed("orbit sizes do not add up".into()));
    }
    Ok(OrbitStructure { sizes, orbit_of })
}

/// (lambda^0, lambda^+, lambda^-) as frequency vectors. For n = 3 the 0 and
/// minus entries are placeholders; only lambda^+ exists there.
pub fn lambda_chars(ctx: &OrthoContext) -> (UChar, UChar, UChar) {
    let d = ctx.n - 2;
    let mid = d / 2;
    // lambda^0(u(v)) = xi(v_{m-1}'), the last coordinate (n >= 5 only)
    let mut w0 = vec![0u8; d];
    if ctx.n >= 5 {
        w0[d - 1] = 1;
    }
    // lambda^+(u(v)) = xi(v_0), the middle coordinate
    let mut wp = vec![0u8; d];
    wp[mid] = 1;
    // lambda^-(u(v)) = xi((b_{n-2} v)_0), the middle row of b_{n-2}
    let wm = if ctx.n >= 5 {
        let b = ctx.b_mat(d);
        (0..d).map(|j| b.at(mid, j)).collect()
    } else {
        vec![0u8; d]
    };
    (UChar { w: w0 }, UChar { w: wp }, UChar { w: wm })
}

/// Everything the later sections need about P_n inside an enumerated G.
pub struct ParabolicData {
    pub ctx: Context,
    pub g: Group,
    pub p: Group,
    pub u: Group,
    pub l: Group,
    pub l_prime: Group,
    pub a: Group,
    /// Stabilizer of lambda^0 in L, isomorphic to P_{n-2} (n >= 5).
    pub p_tilde: Option<Group>,
    pub l_plus: Group,
    pub l_minus: Option<Group>,
    pub i0: Option<Group>,
    pub i_plus: Group,
    pub i_minus: Option<Group>,
    /// Cyclic index-2 subgroup of L^pm (n >= 5).
    pub k_plus: Option<Group>,
    pub k_minus: Option<Group>,
    pub lambda0: UChar,
    pub lambda_plus: UChar,
    pub lambda_minus: UChar,
    pub xi: AdditiveCharacter,
    pub weyl_s: Mat,
    pub weyl_t: Mat,
    pub weyl_r: Option<Mat>,
    /// ids of z_0, z_1, z_2 in the store (n >= 5)
    pub z_ids: Option<[u32; 3]>,
    pub orbits: OrbitStructure,
}

impl ParabolicData {
    pub fn build(ctx: &Context, g: &Group) -> Result<ParabolicData, OrthoError> {
        let n = ctx.n;
        let f = &ctx.field;
        let check = |cond: bool, what: &str| -> Result<(), OrthoError> {
            if cond {
                Ok(())
            } else {
                Err(OrthoError::CheckFailed(what.to_string()))
            }
        };

        // P = stabilizer of <e_m>: first column proportional to e_m
        let p = g.subgroup_where(&format!("P{}({})", n, ctx.q), |mat| {
            (1..n).all(|i| mat.at(i, 0) == 0)
        })?;
        check(
            p.order as u128 == parabolic_order(ctx.m as u32, ctx.q as u64),
            "|P| formula",
        )?;

        // U = { u_n(v) }
        let d = n - 2;
        let total = (ctx.q as u64).pow(d as u32);
        let mut u_ids = Vec::with_capacity(total as usize);
        for c in 0..total {
            let v = decode_vec(c, ctx.q, d);
            let id = g
                .id_of(&ctx.u_elem(&v))
                .ok_or_else(|| OrthoError::CheckFailed("u_n(v) missing from G".into()))?;
            u_ids.push(id);
        }
        let u = p.subgroup_from_ids(u_ids, &format!("U{}({})", n, ctx.q))?;

        // L = block-diagonal members of P
        let l = p.subgroup_where(&format!("L{}({})", n, ctx.q), |mat| {
            (1..n).all(|j| mat.at(0, j) == 0) && (1..n - 1).all(|i| mat.at(i, n - 1) == 0)
        })?;
        check(u.order * l.order == p.order, "|U| |L| = |P|")?;
        check(
            intersection(&u, &l, "U&L")?.order == 1,
            "U and L intersect trivially",
        )?;
        let l_prime = l.subgroup_where(&format!("L{}'({})", n, ctx.q), |mat| mat.at(0, 0) == 1)?;
        let a = l.subgroup_where("A", |mat| {
            let mid = mat.block(1, 1, n - 2);
            mid.is_identity()
        })?;
        check(
            l_prime.order * a.order == l.order,
            "L = L' x A orders",
        )?;
        check(
            l_prime.order as u128 == group_order_formula(OrderKind::SoOdd, ctx.m as u32 - 1, ctx.q as u64),
            "|L'| = |SO_{n-2}|",
        )?;

        let (lambda0, lambda_plus, lambda_minus) = lambda_chars(ctx);
        let orbits = u_char_orbits(ctx)?;
        let xi = AdditiveCharacter::new(f);

        // stabilizers in L of the lambda characters
        let stab_of = |w: &UChar, name: &str| -> Result<Group, OrthoError> {
            Ok(l.subgroup_where(name, |mat| {
                let x = mat.block(1, 1, d);
                let ainv = f.inv(mat.at(0, 0));
                let xit = x.inverse().unwrap().transpose();
                let img: Vec<u8> = xit.mul_vec(&w.w).iter().map(|&c| f.mul(ainv, c)).collect();
                img == w.w
            })?)
        };

        let l_plus = stab_of(&lambda_plus, &format!("L{}+({})", n, ctx.q))?;
        check(
            l_plus.order as u128
                == group_order_formula(OrderKind::GoPlus, (ctx.m - 1) as u32, ctx.q as u64),
            "|L^+| = |GO^+_{n-3}|",
        )?;
        let i_plus = product_subgroup(&p, &u, &l_plus, &format!("I+{}", n))?;
        check(i_plus.order == u.order * l_plus.order, "I^+ = U L^+")?;

        let (p_tilde, l_minus, i0, i_minus, k_plus, k_minus, z_ids) = if n >= 5 {
            let p_tilde = stab_of(&lambda0, &format!("Ptilde{}({})", n - 2, ctx.q))?;
            check(
                p_tilde.order as u128 == parabolic_order((ctx.m - 1) as u32, ctx.q as u64),
                "|Ptilde_{n-2}| = |P_{n-2}|",
            )?;
            let l_minus = stab_of(&lambda_minus, &format!("L{}-({})", n, ctx.q))?;
            check(
                l_minus.order as u128
                    == group_order_formula(OrderKind::GoMinus, (ctx.m - 1) as u32, ctx.q as u64),
                "|L^-| = |GO^-_{n-3}|",
            )?;
            let i0 = product_subgroup(&p, &u, &p_tilde, &format!("I0{}", n))?;
            check(i0.order == u.order * p_tilde.order, "I^0 = U Ptilde")?;
            let i_minus = product_subgroup(&p, &u, &l_minus, &format!("I-{}", n))?;
            check(i_minus.order == u.order * l_minus.order, "I^- = U L^-")?;

            // orbit sizes = [P : I^eps]
            check(orbits.sizes[1] == p.order / i0.order, "orbit(lambda^0) size")?;
            check(
                orbits.sizes[2] == p.order / i_plus.order,
                "orbit(lambda^+) size",
            )?;
            check(
                orbits.sizes[3] == p.order / i_minus.order,
                "orbit(lambda^-) size",
            )?;

            // K^pm only makes sense where L^pm is dihedral, i.e. n = 5
            let (k_plus, k_minus) = if n == 5 {
                (
                    Some(cyclic_index_two(ctx, &l_prime, &l_plus)?),
                    Some(cyclic_index_two(ctx, &l_prime, &l_minus)?),
                )
            } else {
                (None, None)
            };

            // z_j = u_n(v_j)
            let mid = d / 2;
            let mut v0 = vec![0u8; d];
            v0[0] = 1; // e_{m-1}
            let mut v1 = vec![0u8; d];
            v1[mid] = 1; // e_0
            let mut v2 = vec![0u8; d];
            v2[0] = 1;
            v2[d - 1] = ctx.nu_pp; // e_{m-1} + nu'' e_{m-1}'
            let z_ids = [
                g.id_of(&ctx.u_elem(&v0)).unwrap(),
                g.id_of(&ctx.u_elem(&v1)).unwrap(),
                g.id_of(&ctx.u_elem(&v2)).unwrap(),
            ];
            (
                Some(p_tilde),
                Some(l_minus),
                Some(i0),
                Some(i_minus),
                k_plus,
                k_minus,
                Some(z_ids),
            )
        } else {
            // n = 3: only the trivial orbit and the lambda^+ orbit exist,
            // and L_3^+ = GO_0^+ = {1}.
            check(l_plus.order == 1, "L_3^+ is trivial")?;
            (None, None, None, None, None, None, None)
        };

        Ok(ParabolicData {
            ctx: ctx.clone(),
            g: g.clone(),
            p,
            u,
            l,
            l_prime,
            a,
            p_tilde,
            l_plus,
            l_minus,
            i0,
            i_plus,
            i_minus,
            k_plus,
            k_minus,
            lambda0,
            lambda_plus,
            lambda_minus,
            xi,
            weyl_s: if ctx.m >= 2 { ctx.weyl_s() } else { ctx.weyl_sj(1) },
            weyl_t: ctx.weyl_t(),
            weyl_r: if ctx.m >= 3 { Some(ctx.weyl_r()) } else { None },
            z_ids,
            orbits,
        })
    }

    /// Unique factorization g = u * l with u in U and l in L, for g in P.
    pub fn levi_factor(&self, g: &Mat) -> (Mat, Mat) {
        let n = self.ctx.n;
        let a = g.at(0, 0);
        let x = g.block(1, 1, n - 2);
        let l = self.ctx.s_elem(&x, a);
        let u = g.mul(&l.inverse().unwrap());
        (u, l)
    }

    /// The v with g = u_n(v); g must be a member of U.
    pub fn u_vector(&self, g: &Mat) -> Vec<u8> {
        let n = self.ctx.n;
        (0..n - 2).map(|i| g.at(1 + i, n - 1)).collect()
    }

    /// Value exponent (power of zeta_p) of lambda^eps at a U-element.
    pub fn lambda_exponent(&self, lam: &UChar, g: &Mat) -> u8 {
        let v = self.u_vector(g);
        lam.exponent(&self.ctx, &self.xi, &v)
    }

    /// Centralizer orders |C_P(z_j)| read off the class data of P.
    pub fn z_centralizer_orders(&self) -> Option<[u64; 3]> {
        let z = self.z_ids?;
        let classes = self.p.classes();
        Some([0, 1, 2].map(|j| {
            let c = classes.class_of(z[j]);
            classes.classes[c].centralizer
        }))
    }
}

/// The cyclic index-2 subgroup K of the dihedral L^pm: L^pm intersected
/// with L' for odd q, the odd-order part for even q (where the cyclic
/// factor has odd order q -+ 1).
fn cyclic_index_two(
    ctx: &OrthoContext,
    l_prime: &Group,
    l_pm: &Group,
) -> Result<Group, OrthoError> {
    let name = format!("K[{}]", l_pm.name);
    let k = if ctx.q % 2 == 1 {
        intersection(l_pm, l_prime, &name)?
    } else {
        let ids: Vec<u32> = l_pm
            .member_ids()
            .into_iter()
            .filter(|&id| l_pm.element_order(id) % 2 == 1)
            .collect();
        l_pm.subgroup_from_ids(ids, &name)?
    };
    if 2 * k.order != l_pm.order {
        return Err(OrthoError::CheckFailed(format!(
            "{name} does not have index 2"
        )));
    }
    Ok(k)
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

/// One fully built level of the recursion: the group, its parabolic data,
/// and the (n-2)-dimensional world below it.
pub struct World {
    pub ctx: Context,
    pub g: Group,
    pub pd: ParabolicData,
    pub child: Option<Arc<World>>,
}

impl World {
    pub fn build(n: usize, q: usize) -> Result<Arc<World>, OrthoError> {
        Self::build_bounded(n, q, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn build_bounded(n: usize, q: usize, bound: usize) -> Result<Arc<World>, OrthoError> {
        let ctx = OrthoContext::build(n, q)?;
        let g = ctx.so_group_dim(n, bound)?;
        let pd = ParabolicData::build(&ctx, &g)?;
        let child = if n > 3 {
            Some(World::build_bounded(n - 2, q, bound)?)
        } else {
            None
        };
        Ok(Arc::new(World { ctx, g, pd, child }))
    }

    pub fn child(&self) -> &Arc<World> {
        self.child.as_ref().expect("no child world below n = 3")
    }

    /// Middle-block map Ptilde_{n-2} (or any bordered subgroup) -> child
    /// ambient.
    pub fn strip_to_child(&self, g: &Mat) -> Mat {
        self.ctx.mid_block(g, self.ctx.n - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_structure_5_3() {
        let ctx = OrthoContext::build(5, 3).unwrap();
        let os = u_char_orbits(&ctx).unwrap();
        // q^{2m-2}-1 = 8, (q-1)q(q+1)/2 = 12, (q-1)q(q-1)/2 = 6
        assert_eq!(os.sizes, [1, 8, 12, 6]);
    }

    #[test]
    fn parabolic_5_2_and_5_3() {
        for q in [2usize, 3] {
            let w = World::build(5, q).unwrap();
            let pd = &w.pd;
            assert_eq!(pd.p.order as u128, parabolic_order(2, q as u64));
            assert_eq!(pd.u.order, (q as u64).pow(3));
            // |Ptilde_3| = q(q-1)
            assert_eq!(
                pd.p_tilde.as_ref().unwrap().order,
                (q * (q - 1)) as u64
            );
            // |L5^-| = 2(q+1), |L5^+| = 2(q-1)
            assert_eq!(pd.l_minus.as_ref().unwrap().order, 2 * (q as u64 + 1));
            assert_eq!(pd.l_plus.order, 2 * (q as u64 - 1));
            // four classes of P inside U
            let fusion =
                crate::matgrp::class_fusion(&pd.u, &pd.p).unwrap();
            let mut images: Vec<usize> = fusion.clone();
            images.sort_unstable();
            images.dedup();
            assert_eq!(images.len(), 4);
        }
    }

    #[test]
    fn z_centralizers_5_3() {
        let w = World::build(5, 3).unwrap();
        let c = w.pd.z_centralizer_orders().unwrap();
        assert_eq!(c, [162, 108, 216]);
        // partition of U: 1 + sum |c_j| = q^3
        let p_order = w.pd.p.order;
        let sum: u64 = c.iter().map(|&cz| p_order / cz).sum();
        assert_eq!(1 + sum, 27);
    }

    #[test]
    fn parabolic_3_2_and_3_3() {
        for q in [2usize, 3] {
            let w = World::build(3, q).unwrap();
            assert_eq!(w.pd.p.order, (q * (q - 1)) as u64);
            assert_eq!(w.pd.l_plus.order, 1);
            assert!(w.pd.p_tilde.is_none());
        }
    }

    #[test]
    fn lambda_values_on_distinguished_vectors() {
        for q in [2usize, 3, 4] {
            let w = World::build(5, q).unwrap();
            let pd = &w.pd;
            let d = 3;
            // lambda^0(u(e_{m-1}')) = xi(1) and lambda^+(u(e_0)) = xi(1),
            // which is zeta_p exactly when Tr(1) = 1 (always for prime q)
            let tr1 = w.ctx.field.trace(1);
            if q == 2 || q == 3 {
                assert_eq!(tr1, 1);
            }
            let mut e_last = vec![0u8; d];
            e_last[d - 1] = 1;
            assert_eq!(pd.lambda_exponent(&pd.lambda0, &w.ctx.u_elem(&e_last)), tr1);
            let mut e_mid = vec![0u8; d];
            e_mid[d / 2] = 1;
            assert_eq!(pd.lambda_exponent(&pd.lambda_plus, &w.ctx.u_elem(&e_mid)), tr1);
            // every lambda is trivial at the identity and none is trivial
            let id = w.ctx.u_elem(&vec![0u8; d]);
            for lam in [&pd.lambda0, &pd.lambda_plus, &pd.lambda_minus] {
                assert_eq!(pd.lambda_exponent(lam, &id), 0);
                assert!(!lam.is_trivial());
            }
        }
    }

    #[test]
    fn weyl_elements_normalize_the_torus() {
        let w = World::build(5, 3).unwrap();
        let ctx = &w.ctx;
        let torus_gens: Vec<crate::matgrp::Mat> = (1..=2)
            .map(|i| ctx.torus_dim(5, i, ctx.field.primitive))
            .collect();
        let t_grp = w.g.subgroup_generated(&torus_gens, "T").unwrap();
        assert_eq!(t_grp.order, 4); // (q-1)^m
        for x in [ctx.weyl_s(), ctx.weyl_t(), ctx.weyl_sj(1)] {
            let conj = t_grp.conjugate_subgroup(&w.g, &x, "^xT").unwrap();
            assert_eq!(conj.member_ids(), t_grp.member_ids());
        }
    }
}
