//! The subgroup lattice around the double cosets P\G/P: the groups R, Q_K,
//! L_K, Q'_K, Y and the parabolic subgroups P^pm_{n-3} of L^pm, together
//! with set-level verification of every identity they satisfy.

use rustc_hash::FxHashSet;

use crate::matgrp::{intersection, Group, Mat};

use super::parabolic::World;
use super::OrthoError;

pub struct CosetSubgroups {
    /// R = (^sU cap U)(^sL cap U)
    pub r_sub: Group,
    /// Q_K = (^sU cap L) L_K = A x P_{n-2}
    pub q_k: Group,
    pub l_k: Group,
    pub rq_k: Group,
    /// ^sU cap L, the embedded U_{n-2}
    pub u_n2: Group,
    /// A_{n-2} = ^sA
    pub a_n2: Group,
    /// U Q_K
    pub p_k: Group,
    /// P^+_{n-3} and P^-_{n-3}, stabilizers of <e_{m-1}> in L^pm
    pub p_plus: Group,
    pub p_minus: Option<Group>,
    /// m >= 3 only
    pub q_k_prime: Option<Group>,
    pub y: Option<Group>,
}

fn ids_of(g: &Group) -> Vec<u32> {
    g.member_ids()
}

fn same_set(a: &[u32], b: &[u32]) -> bool {
    a == b
}

fn product_ids(g: &Group, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = FxHashSet::default();
    for &x in a {
        for &y in b {
            out.insert(g.store.mul_ids(x, y));
        }
    }
    let mut v: Vec<u32> = out.into_iter().collect();
    v.sort_unstable();
    v
}

/// Embeds every member of a k-dimensional group as diag(I_b, x, I_b) into
/// the n-dimensional world and returns the sorted id list.
fn embed_ids(world: &World, small: &Group, ids_name: &str) -> Result<Vec<u32>, OrthoError> {
    let mut ids = Vec::with_capacity(small.order as usize);
    for id in small.member_ids() {
        let m = small.mat(id);
        let big = world.ctx.embed_mid(world.ctx.n, &m);
        ids.push(world.g.id_of(&big).ok_or_else(|| {
            OrthoError::CheckFailed(format!("embedded {ids_name} element missing from G"))
        })?);
    }
    ids.sort_unstable();
    Ok(ids)
}

impl CosetSubgroups {
    /// Builds the whole lattice (rank >= 2; the deeper pieces Q'_K and Y
    /// need rank >= 3) and verifies every identity it satisfies as a set
    /// equality. Any failure is fatal.
    pub fn build(world: &World) -> Result<CosetSubgroups, OrthoError> {
        let ctx = &world.ctx;
        let n = ctx.n;
        let m = ctx.m;
        assert!(m >= 2, "the coset lattice needs m >= 2");
        let pd = &world.pd;
        let g = &world.g;
        let q = ctx.q as u64;
        let fail = |what: &str| OrthoError::CheckFailed(format!("coset lattice: {what}"));
        let check = |cond: bool, what: &str| -> Result<(), OrthoError> {
            if cond {
                Ok(())
            } else {
                Err(fail(what))
            }
        };

        let s = &pd.weyl_s;
        let t = &pd.weyl_t;

        // ^tP cap P = L
        let tp = pd.p.conjugate_subgroup(g, t, "^tP")?;
        let tp_p = intersection(&tp, &pd.p, "^tP&P")?;
        check(
            same_set(&ids_of(&tp_p), &ids_of(&pd.l)),
            "^tP cap P = L",
        )?;

        // conjugates by s
        let su = pd.u.conjugate_subgroup(g, s, "^sU")?;
        let sl = pd.l.conjugate_subgroup(g, s, "^sL")?;
        let sp = pd.p.conjugate_subgroup(g, s, "^sP")?;
        let su_u = intersection(&su, &pd.u, "^sU&U")?;
        let sl_u = intersection(&sl, &pd.u, "^sL&U")?;
        let su_l = intersection(&su, &pd.l, "^sU&L")?;
        let sl_l = intersection(&sl, &pd.l, "^sL&L")?;
        let sp_p = intersection(&sp, &pd.p, "^sP&P")?;

        // ^sU cap U = { u(v) : v supported on v_{m-1} }, order q
        {
            let d = n - 2;
            let mut expect: Vec<u32> = Vec::new();
            for c in 0..ctx.q as u8 {
                let mut v = vec![0u8; d];
                v[0] = c;
                expect.push(g.id_of(&ctx.u_elem(&v)).unwrap());
            }
            expect.sort_unstable();
            check(su_u.order == q, "|^sU cap U| = q")?;
            check(
                same_set(&ids_of(&su_u), &expect),
                "^sU cap U explicit form",
            )?;
        }

        // ^sL cap U = { u(v) : v_{m-1} = v_{m-1}' = 0 }
        {
            let d = n - 2;
            let mut expect: Vec<u32> = Vec::new();
            for c in 0..(q.pow((d - 2) as u32)) {
                let inner = decode_vec(c, ctx.q, d - 2);
                let mut v = vec![0u8; d];
                v[1..d - 1].copy_from_slice(&inner);
                expect.push(g.id_of(&ctx.u_elem(&v)).unwrap());
            }
            expect.sort_unstable();
            check(
                same_set(&ids_of(&sl_u), &expect),
                "^sL cap U explicit form",
            )?;
        }

        // ^sU cap L = embedded U_{n-2}
        let child = world.child();
        {
            let expect = embed_ids(world, &child.pd.u, "U_{n-2}")?;
            check(
                same_set(&ids_of(&su_l), &expect),
                "^sU cap L = U_{n-2}",
            )?;
        }

        // L_K: block-diagonal diag(a, b, x, b^{-1}, a^{-1})
        let l_k = pd.l.subgroup_where("L_K", |mat| {
            let y = mat.block(1, 1, n - 2);
            let k = n - 2;
            (1..k).all(|j| y.at(0, j) == 0 && y.at(j, 0) == 0)
                && (0..k - 1).all(|i| y.at(i, k - 1) == 0 && y.at(k - 1, i) == 0)
        })?;
        // ^sL cap L is the block-diagonal Levi of the next level down
        check(
            same_set(&ids_of(&sl_l), &ids_of(&l_k)),
            "^sL cap L = L_K",
        )?;

        // Q_K = (^sU cap L) L_K with Levi decomposition
        let q_k = world
            .g
            .subgroup_from_ids(product_ids(g, &ids_of(&su_l), &ids_of(&l_k)), "Q_K")
            .map_err(|e| fail(&format!("Q_K product: {e}")))?;
        check(
            q_k.order == su_l.order * l_k.order,
            "Q_K = U_{n-2} x| L_K orders",
        )?;
        check(
            intersection(&su_l, &l_k, "tmp")?.order == 1,
            "U_{n-2} cap L_K = 1",
        )?;

        // Q_K = A x P_{n-2}: expected set from the child parabolic
        {
            let mut expect = Vec::new();
            for pid in child.pd.p.member_ids() {
                let pm = child.pd.p.mat(pid);
                for a in 1..ctx.q as u8 {
                    let big = ctx.s_elem(&pm, a);
                    expect.push(
                        g.id_of(&big)
                            .ok_or_else(|| fail("A x P_{n-2} element missing"))?,
                    );
                }
            }
            expect.sort_unstable();
            check(
                same_set(&ids_of(&q_k), &expect),
                "Q_K = A x P_{n-2}",
            )?;
        }

        // R = (^sU cap U)(^sL cap U) = {u(v) : v_{m-1}' = 0}
        let r_sub = world
            .g
            .subgroup_from_ids(product_ids(g, &ids_of(&su_u), &ids_of(&sl_u)), "R")
            .map_err(|e| fail(&format!("R product: {e}")))?;
        {
            let d = n - 2;
            let mut expect: Vec<u32> = Vec::new();
            for c in 0..(q.pow((d - 1) as u32)) {
                let inner = decode_vec(c, ctx.q, d - 1);
                let mut v = vec![0u8; d];
                v[..d - 1].copy_from_slice(&inner);
                expect.push(g.id_of(&ctx.u_elem(&v)).unwrap());
            }
            expect.sort_unstable();
            check(same_set(&ids_of(&r_sub), &expect), "R explicit form")?;
            check(pd.u.order == r_sub.order * q, "[U:R] = q")?;
        }

        // ^sP cap P = R Q_K
        let rq_k = world
            .g
            .subgroup_from_ids(product_ids(g, &ids_of(&r_sub), &ids_of(&q_k)), "RQ_K")
            .map_err(|e| fail(&format!("RQ_K product: {e}")))?;
        check(
            same_set(&ids_of(&sp_p), &ids_of(&rq_k)),
            "^sP cap P = RQ_K",
        )?;

        // [P_K : RQ_K] = q with P_K = U Q_K
        let p_k = world
            .g
            .subgroup_from_ids(product_ids(g, &ids_of(&pd.u), &ids_of(&q_k)), "P_K")
            .map_err(|e| fail(&format!("P_K product: {e}")))?;
        check(p_k.order == rq_k.order * q, "[P_K:RQ_K] = q")?;

        // A_{n-2} = ^sA and L_K = A x A_{n-2} x L'_{n-2}
        let a_n2 = pd.a.conjugate_subgroup(g, s, "A_{n-2}")?;
        {
            let mut expect = product_ids(g, &ids_of(&pd.a), &ids_of(&a_n2));
            if n >= 7 {
                let lp2 = embed_ids(world, &child.pd.l_prime, "L'_{n-2}")?;
                expect = product_ids_raw(g, &expect, &lp2);
            }
            check(
                same_set(&ids_of(&l_k), &expect),
                "L_K = A x A_{n-2} x L'_{n-2}",
            )?;
        }

        // D_{J,J} = {1, s, t}: the three double cosets partition G
        {
            let s_id = g.id_of(s).ok_or_else(|| fail("s not in G"))?;
            let t_id = g.id_of(t).ok_or_else(|| fail("t not in G"))?;
            check(!pd.p.contains_id(s_id), "s not in P")?;
            check(!pd.p.contains_id(t_id), "t not in P")?;
            let psp = pd.p.order * pd.p.order / rq_k.order;
            let ptp = pd.p.order * pd.p.order / pd.l.order;
            check(
                pd.p.order + psp + ptp == g.order,
                "|P| + |PsP| + |PtP| = |G|",
            )?;
            // t not in PsP: no p1 with s^{-1} p1^{-1} t in P
            let si = s.inverse().unwrap();
            let tm = t.clone();
            let mut found = false;
            pd.p.for_each_member(|pid| {
                if !found {
                    let p1_inv = g.mat(g.store.inv_id(pid));
                    let cand = si.mul(&p1_inv).mul(&tm);
                    if pd.p.contains(&cand) {
                        found = true;
                    }
                }
            });
            check(!found, "t not in PsP")?;
        }

        // P^pm_{n-3} = stabilizer of <e_{m-1}> inside L^pm
        let line_stab = |grp: &Group, name: &str| -> Result<Group, OrthoError> {
            Ok(grp.subgroup_where(name, |mat| {
                (0..n).all(|i| i == 1 || mat.at(i, 1) == 0)
            })?)
        };
        let p_plus = line_stab(&pd.l_plus, "P+_{n-3}")?;
        check(
            p_plus.order * (q.pow((m - 1) as u32) - 1) * (q.pow((m - 2) as u32) + 1)
                == pd.l_plus.order * (q - 1),
            "[L^+ : P^+_{n-3}] index",
        )?;
        let p_minus = match &pd.l_minus {
            Some(lm) => {
                let pm = line_stab(lm, "P-_{n-3}")?;
                if m >= 3 {
                    check(
                        pm.order * (q.pow((m - 1) as u32) + 1) * (q.pow((m - 2) as u32) - 1)
                            == lm.order * (q - 1),
                        "[L^- : P^-_{n-3}] index",
                    )?;
                }
                Some(pm)
            }
            None => None,
        };

        // Q'_K and Y (m >= 3, built only for n = 7)
        let (q_k_prime, y) = if m >= 3 {
            assert_eq!(n, 7, "Q'_K and Y are implemented for n = 7");
            let r_w = pd.weyl_r.clone().unwrap();
            let grand = child.child();

            // P~_{n-4} = U_{n-4} L~_{n-4}
            let mut u_n4_ids = Vec::new();
            for uid in grand.pd.u.member_ids() {
                let um = grand.pd.u.mat(uid);
                u_n4_ids.push(
                    g.id_of(&ctx.embed_mid(n, &um))
                        .ok_or_else(|| fail("U_{n-4} embed"))?,
                );
            }
            let mut l_tilde_n4_ids = Vec::new();
            for a in 1..ctx.q as u8 {
                let f = &ctx.field;
                let mut mat = Mat::identity(f, n);
                for i in 0..3 {
                    mat.set(i, i, a);
                    mat.set(n - 1 - i, n - 1 - i, f.inv(a));
                }
                l_tilde_n4_ids.push(g.id_of(&mat).ok_or_else(|| fail("L~_{n-4} element"))?);
            }
            let p_tilde_n4 = product_ids_raw(g, &u_n4_ids, &l_tilde_n4_ids);

            // Q'_K = A x U_{n-2} P~_{n-4}
            let u_n2_ids = ids_of(&su_l);
            let mut qkp = product_ids_raw(g, &u_n2_ids, &p_tilde_n4);
            qkp = product_ids_raw(g, &ids_of(&pd.a), &qkp);
            let q_k_prime = world
                .g
                .subgroup_from_ids(qkp, "Q'_K")
                .map_err(|e| fail(&format!("Q'_K: {e}")))?;
            check(
                q_k_prime.member_ids().iter().all(|id| q_k.contains_id(*id)),
                "Q'_K <= Q_K",
            )?;

            // A_{n,n-2} and A_{n-4} = ^rA_{n-2}
            let f = &ctx.field;
            let mut a_nn2_ids = Vec::new();
            for a in 1..ctx.q as u8 {
                let mut mat = Mat::identity(f, n);
                mat.set(0, 0, a);
                mat.set(1, 1, a);
                mat.set(n - 2, n - 2, a);
                mat.set(n - 1, n - 1, a);
                a_nn2_ids.push(g.id_of(&mat).ok_or_else(|| fail("A_{n,n-2} element"))?);
            }
            let a_n4 = a_n2.conjugate_subgroup(g, &r_w, "A_{n-4}")?;
            {
                // explicit form diag(1,1,a,I_{n-6},a^{-1},1,1)
                let mut expect = Vec::new();
                for a in 1..ctx.q as u8 {
                    let mut mat = Mat::identity(f, n);
                    mat.set(2, 2, a);
                    mat.set(n - 3, n - 3, f.inv(a));
                    expect.push(g.id_of(&mat).unwrap());
                }
                expect.sort_unstable();
                check(same_set(&ids_of(&a_n4), &expect), "A_{n-4} explicit form")?;
            }

            // intersections of r-conjugates of the embedded child groups
            let u_n2_grp = world.g.subgroup_from_ids(u_n2_ids.clone(), "U_{n-2}emb")?;
            let l_n2_ids = embed_ids(world, &child.pd.l, "L_{n-2}")?;
            let l_n2_grp = world.g.subgroup_from_ids(l_n2_ids, "L_{n-2}emb")?;
            let p_n2_ids = embed_ids(world, &child.pd.p, "P_{n-2}")?;
            let p_n2_grp = world.g.subgroup_from_ids(p_n2_ids, "P_{n-2}emb")?;
            let ru_n2 = u_n2_grp.conjugate_subgroup(g, &r_w, "^rU_{n-2}")?;
            let rl_n2 = l_n2_grp.conjugate_subgroup(g, &r_w, "^rL_{n-2}")?;
            let rp_n2 = p_n2_grp.conjugate_subgroup(g, &r_w, "^rP_{n-2}")?;

            let i1 = intersection(&ru_n2, &u_n2_grp, "^rU&U")?;
            let i2 = intersection(&rl_n2, &u_n2_grp, "^rL&U")?;
            let i3 = intersection(&ru_n2, &l_n2_grp, "^rU&L")?;

            // L'_{n-4} is trivial for n = 7 (SO_1 = 1)
            let mut y_ids = product_ids_raw(g, &ids_of(&i1), &ids_of(&i2));
            y_ids = product_ids_raw(g, &y_ids, &ids_of(&i3));
            let mut abelian_part = product_ids_raw(g, &a_nn2_ids, &ids_of(&a_n4));
            abelian_part.sort_unstable();
            y_ids = product_ids_raw(g, &y_ids, &abelian_part);
            let y = world
                .g
                .subgroup_from_ids(y_ids, "Y")
                .map_err(|e| fail(&format!("Y: {e}")))?;

            // ^{rs}(R Q'_K) cap U P~_{n-2} = (^rR) Y
            let rqkp = world
                .g
                .subgroup_from_ids(
                    product_ids_raw(g, &ids_of(&r_sub), &ids_of(&q_k_prime)),
                    "RQ'_K",
                )
                .map_err(|e| fail(&format!("RQ'_K: {e}")))?;
            let rs = r_w.mul(s);
            let conj_rqkp = rqkp.conjugate_subgroup(g, &rs, "^{rs}(RQ'_K)")?;
            let up_tilde = world
                .g
                .subgroup_from_ids(
                    product_ids_raw(
                        g,
                        &ids_of(&pd.u),
                        &ids_of(pd.p_tilde.as_ref().unwrap()),
                    ),
                    "UP~_{n-2}",
                )
                .map_err(|e| fail(&format!("UP~: {e}")))?;
            let lhs = intersection(&conj_rqkp, &up_tilde, "lhs42")?;
            let rr = r_sub.conjugate_subgroup(g, &r_w, "^rR")?;
            let rhs = product_ids_raw(g, &ids_of(&rr), &ids_of(&y));
            check(
                same_set(&ids_of(&lhs), &rhs),
                "^{rs}(RQ'_K) cap UP~_{n-2} = (^rR)Y",
            )?;

            // A x Y = A x (^rP_{n-2} cap P_{n-2})
            let lhs2 = product_ids_raw(g, &ids_of(&pd.a), &ids_of(&y));
            let rp_p = intersection(&rp_n2, &p_n2_grp, "^rP&P")?;
            let rhs2 = product_ids_raw(g, &ids_of(&pd.a), &ids_of(&rp_p));
            check(
                same_set(&lhs2, &rhs2),
                "A x Y = A x (^rP_{n-2} cap P_{n-2})",
            )?;

            (Some(q_k_prime), Some(y))
        } else {
            (None, None)
        };

        Ok(CosetSubgroups {
            r_sub,
            q_k,
            l_k,
            rq_k,
            u_n2: su_l,
            a_n2,
            p_k,
            p_plus,
            p_minus,
            q_k_prime,
            y,
        })
    }
}

fn product_ids_raw(g: &Group, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = FxHashSet::default();
    for &x in a {
        for &y in b {
            out.insert(g.store.mul_ids(x, y));
        }
    }
    let mut v: Vec<u32> = out.into_iter().collect();
    v.sort_unstable();
    v
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coset_lattice_holds_at_5_2_and_5_3() {
        for q in [2usize, 3] {
            let w = World::build(5, q).unwrap();
            let subs = CosetSubgroups::build(&w).unwrap();
            let q64 = q as u64;
            assert_eq!(w.pd.u.order, subs.r_sub.order * q64);
            // |RQ_K| = |R| |Q_K|
            assert_eq!(subs.rq_k.order, subs.r_sub.order * subs.q_k.order);
            // P_2^+ has order q-1
            assert_eq!(subs.p_plus.order, q64 - 1);
        }
    }
}
