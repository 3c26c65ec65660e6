//! Verification engines for the five induced-character identities that
//! reduce the restriction of Harish-Chandra induced characters to lower
//! rank, and for the Mackey decomposition of R_L^G(sigma) restricted to P.
//! Every identity is checked as an exact equality of class functions.

use crate::chartab::ClassFunction;
use crate::exact::Cyclotomic;
use crate::matgrp::{Group, Mat};
use crate::ortho::CosetSubgroups;

use super::{CliffordError, PWorld, TypeTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InducedPart {
    A,
    B,
    C,
    D,
    E,
}

/// sigma in Irr(L) (A in its kernel) viewed as a character of P.
fn inflate_to_p(pw: &PWorld, sigma: &ClassFunction) -> Result<ClassFunction, CliffordError> {
    let pd = &pw.world.pd;
    Ok(sigma.inflate_along(&pd.p, |g| pd.levi_factor(g).1)?)
}

/// nu in Irr(P_{n-2}) viewed as a character of a subgroup of R Q_K via
/// inflation (kernel R A): the value is nu at the middle block of the Levi
/// part.
fn nu_on_subgroup(
    pw: &PWorld,
    nu: &ClassFunction,
    sub: &Group,
) -> Result<ClassFunction, CliffordError> {
    let world = &pw.world;
    nu.inflate_along(sub, |g| {
        let (_, l) = world.pd.levi_factor(g);
        world.strip_to_child(&l)
    })
    .map_err(|e| CliffordError::Other(format!("nu inflation: {e}")))
}

/// Does sigma have A in its kernel?
pub fn has_a_in_kernel(pw: &PWorld, sigma: &ClassFunction) -> bool {
    let pd = &pw.world.pd;
    let deg = &sigma.values[0];
    pd.a.member_ids()
        .iter()
        .all(|&id| sigma.value_at_id(id) == deg)
}

/// Identity (a): ^t sigma restricted from ^tP to L equals ^t sigma.
fn verify_a(pw: &PWorld, sigma: &ClassFunction) -> Result<(), CliffordError> {
    let world = &pw.world;
    let pd = &world.pd;
    let t = &pd.weyl_t;
    let infl = inflate_to_p(pw, sigma)?;
    let tp = pd.p.conjugate_subgroup(&world.g, t, "^tP")?;
    let ti = t.inverse().unwrap();
    // ^t(Infl sigma) as a class function on ^tP
    let conj_infl = cf_from(&tp, |g: &Mat| {
        let back = ti.mul(g).mul(t);
        Ok(infl.value_at_id(pd.p.id_of(&back).ok_or_else(|| {
            CliffordError::Other("conjugate left P".into())
        })?)
        .clone())
    })?;
    let lhs = conj_infl.restrict(&pd.l)?;
    let rhs = sigma.conjugate(t)?;
    if lhs != rhs {
        return Err(CliffordError::Other(
            "identity (a): ^t sigma|_L != ^t sigma".into(),
        ));
    }
    Ok(())
}

/// Shared left-hand side of parts (b)-(e): (^s nu) induced from R Q_K to P.
fn lhs_induced(
    pw: &PWorld,
    l4: &CosetSubgroups,
    nu: &ClassFunction,
) -> Result<ClassFunction, CliffordError> {
    let s = &pw.world.pd.weyl_s;
    let on_rqk = nu_on_subgroup(pw, nu, &l4.rq_k)?;
    let conj = on_rqk.conjugate(s)?;
    Ok(conj.induce(&pw.world.pd.p)?)
}

fn cf_from(
    group: &Group,
    mut f: impl FnMut(&Mat) -> Result<Cyclotomic, CliffordError>,
) -> Result<ClassFunction, CliffordError> {
    let classes = group.classes();
    let values = classes
        .classes
        .iter()
        .map(|c| f(&group.mat(c.rep)))
        .collect::<Result<_, _>>()?;
    Ok(ClassFunction {
        group: group.clone(),
        values,
    })
}

/// Identity (b): for nu of Type 1, (^s nu)|^P = 0psi_nu + 1psi_Sigma with
/// Sigma = R_{L_K}^L(^s nu).
fn verify_b(
    pw: &PWorld,
    l4: &CosetSubgroups,
    payload: usize,
) -> Result<(), CliffordError> {
    let world = &pw.world;
    let pd = &world.pd;
    let child = pw.child.as_ref().unwrap();
    let nu = &child.irr_p[payload].cf;
    let s = &pd.weyl_s;

    let lhs = lhs_induced(pw, l4, nu)?;

    // Sigma = Ind_{Q_K}^L Infl(^s nu) where ^s nu lives on L_K
    let on_lk = nu_on_subgroup(pw, nu, &l4.l_k)?;
    let s_nu = on_lk.conjugate(s)?;
    let on_qk = s_nu.inflate_along(&l4.q_k, |g| {
        // Levi part of Q_K = U_{n-2} x| L_K: strip, factor in the child
        // world, re-embed with the same corner
        let a = g.at(0, 0);
        let p_child = world.strip_to_child(g);
        let (_, l_child) = child.world.pd.levi_factor(&p_child);
        world.ctx.s_elem(&l_child, a)
    })?;
    let sigma_big = on_qk.induce(&pd.l)?;
    let rhs = pw.irr_p[pw.irr_index(TypeTag::Zero, payload)]
        .cf
        .add(&pw.psi(TypeTag::One, &sigma_big)?);

    if lhs != rhs {
        return Err(CliffordError::Other(format!(
            "induced-character identity (b) fails for payload {payload}"
        )));
    }
    Ok(())
}

/// Identity (c), m >= 3: for nu = 0psi_{nu_0} of Type 0,
/// (^s nu)|^P = 0psi_Sigma with Sigma = (^r nu_0) induced back to P_{n-2}.
fn verify_c(
    pw: &PWorld,
    l4: &CosetSubgroups,
    payload: usize,
) -> Result<(), CliffordError> {
    let child = pw.child.as_ref().unwrap();
    let grand = child.child.as_ref().unwrap();
    let nu = &child.irr_p[payload].cf;
    let nu0_idx = child.irr_p[payload].label;
    assert_eq!(nu0_idx.tag, TypeTag::Zero);
    let nu0 = &grand.irr_p[nu0_idx.payload].cf;

    let lhs = lhs_induced(pw, l4, nu)?;

    // the child-world W = ^r P_{n-2} cap P_{n-2} is the child's R Q_K
    let child_l4 = CosetSubgroups::build(&child.world)?;
    let r_child = &child.world.pd.weyl_s; // r = s_{m-1} acts as the child s
    let on_w = cf_from(&child_l4.rq_k, |g: &Mat| {
        let (_, l) = child.world.pd.levi_factor(g);
        let inner = child.world.strip_to_child(&l);
        let id = grand.world.pd.p.id_of(&inner).ok_or_else(|| {
            CliffordError::Other("W Levi part does not strip into P_{n-4}".into())
        })?;
        Ok(nu0.value_at_id(id).clone())
    })?;
    let conj = on_w.conjugate(r_child)?;
    let sigma = conj.induce(&child.world.pd.p)?;
    let rhs = pw.psi(TypeTag::Zero, &sigma)?;

    if lhs != rhs {
        return Err(CliffordError::Other(format!(
            "induced-character identity (c) fails for payload {payload}"
        )));
    }
    Ok(())
}

/// The inflation maps phi^pm : P^pm_{n-3} -> L^pm_{n-2} of identities (d), (e).
fn phi_plus(pw: &PWorld, g: &Mat) -> Mat {
    let ctx = &pw.world.ctx;
    let n = ctx.n;
    let a = g.at(0, 0);
    let y = ctx.mid_block(g, n - 2);
    let inner = ctx.mid_block(&y, n - 4);
    ctx.s_elem_dim(n - 2, &inner, a)
}

fn phi_minus(pw: &PWorld, g: &Mat) -> Mat {
    let ctx = &pw.world.ctx;
    let n = ctx.n;
    let a = g.at(0, 0);
    let y = ctx.mid_block(g, n - 2);
    let b_n2 = ctx.b_mat(n - 2);
    let x = b_n2.mul(&y).mul(&b_n2.inverse().unwrap());
    let inner = ctx.mid_block(&x, n - 4);
    let b_n4 = ctx.b_mat(n - 4);
    let y_prime = b_n4.inverse().unwrap().mul(&inner).mul(&b_n4);
    ctx.s_elem_dim(n - 2, &y_prime, a)
}

/// Checks that the inflation map is a homomorphism into the child L^pm.
fn check_phi(
    pw: &PWorld,
    sub: &Group,
    target: &Group,
    phi: impl Fn(&PWorld, &Mat) -> Mat,
) -> Result<(), CliffordError> {
    let ids = sub.member_ids();
    let images: Vec<Mat> = ids.iter().map(|&id| phi(pw, &sub.mat(id))).collect();
    for img in &images {
        if target.id_of(img).is_none() {
            return Err(CliffordError::Other(
                "phi image outside the child L^pm".into(),
            ));
        }
    }
    for (i, &a) in ids.iter().enumerate() {
        for (j, &b) in ids.iter().enumerate() {
            let prod = sub.mat(sub.store.mul_ids(a, b));
            if phi(pw, &prod) != images[i].mul(&images[j]) {
                return Err(CliffordError::Other("phi is not a homomorphism".into()));
            }
        }
    }
    Ok(())
}

/// Identity (d) / (e): for nu = pm psi_{theta_0},
/// (^s nu)|^P = pm psi_{theta} with theta = Ind(phi-pullback of theta_0).
fn verify_de(
    pw: &PWorld,
    l4: &CosetSubgroups,
    payload: usize,
    minus: bool,
) -> Result<(), CliffordError> {
    let child = pw.child.as_ref().unwrap();
    let nu = &child.irr_p[payload].cf;
    let lbl = child.irr_p[payload].label;
    assert_eq!(
        lbl.tag,
        if minus { TypeTag::Minus } else { TypeTag::Plus }
    );
    let theta0 = if minus {
        &child.irr_lminus.as_ref().unwrap().irreducibles[lbl.payload]
    } else {
        &child.irr_lplus.irreducibles[lbl.payload]
    };

    let lhs = lhs_induced(pw, l4, nu)?;

    let (p_sub, big) = if minus {
        (
            l4.p_minus.as_ref().unwrap(),
            pw.world.pd.l_minus.as_ref().unwrap(),
        )
    } else {
        (&l4.p_plus, &pw.world.pd.l_plus)
    };
    let child_target = if minus {
        child.world.pd.l_minus.as_ref().unwrap()
    } else {
        &child.world.pd.l_plus
    };
    let phi = if minus { phi_minus } else { phi_plus };
    check_phi(pw, p_sub, child_target, phi)?;

    let theta_tilde = theta0.inflate_along(p_sub, |g| phi(pw, g))?;
    let theta = theta_tilde.induce(big)?;
    let rhs = pw.psi(if minus { TypeTag::Minus } else { TypeTag::Plus }, &theta)?;

    if lhs != rhs {
        return Err(CliffordError::Other(format!(
            "induced-character identity ({}) fails for payload {payload}",
            if minus { 'e' } else { 'd' }
        )));
    }
    Ok(())
}

/// Verifies one identity for one payload. For identity (a) the
/// payload indexes Irr(L) (restricted to A-trivial characters); for (b)-(e)
/// it indexes the child Irr(P) entries of the matching type.
pub fn verify_induced_part(
    pw: &PWorld,
    l4: &CosetSubgroups,
    part: InducedPart,
    payload: usize,
) -> Result<(), CliffordError> {
    match part {
        InducedPart::A => {
            let sigma = &pw.irr_l.irreducibles[payload];
            assert!(has_a_in_kernel(pw, sigma));
            verify_a(pw, sigma)
        }
        InducedPart::B => verify_b(pw, l4, payload),
        InducedPart::C => verify_c(pw, l4, payload),
        InducedPart::D => verify_de(pw, l4, payload, false),
        InducedPart::E => verify_de(pw, l4, payload, true),
    }
}

/// All payload indices eligible for a part.
pub fn eligible_payloads(pw: &PWorld, part: InducedPart) -> Vec<usize> {
    match part {
        InducedPart::A => pw
            .irr_l
            .irreducibles
            .iter()
            .enumerate()
            .filter(|(_, s)| has_a_in_kernel(pw, s))
            .map(|(i, _)| i)
            .collect(),
        _ => {
            let want = match part {
                InducedPart::B => TypeTag::One,
                InducedPart::C => TypeTag::Zero,
                InducedPart::D => TypeTag::Plus,
                InducedPart::E => TypeTag::Minus,
                InducedPart::A => unreachable!(),
            };
            pw.child
                .as_ref()
                .map(|c| {
                    c.irr_p
                        .iter()
                        .enumerate()
                        .filter(|(_, i)| i.label.tag == want)
                        .map(|(i, _)| i)
                        .collect()
                })
                .unwrap_or_default()
        }
    }
}

/// The Mackey decomposition of R_L^G(sigma) restricted back to P:
/// R_L^G(sigma)|_P = sigma + ^s(sigma|_{RQ_K})|^P + (^t sigma|_L)|^P.
pub fn verify_mackey_formula(
    pw: &PWorld,
    l4: &CosetSubgroups,
    sigma: &ClassFunction,
) -> Result<(), CliffordError> {
    let world = &pw.world;
    let pd = &world.pd;
    let infl = inflate_to_p(pw, sigma)?;
    let hc = infl.induce(&world.g)?;
    let lhs = hc.restrict(&pd.p)?;

    let term1 = infl.clone();
    let term2 = infl
        .restrict(&l4.rq_k)?
        .conjugate(&pd.weyl_s)?
        .induce(&pd.p)?;
    // ^t sigma restricted from ^tP to L, then induced to P
    let tp = pd.p.conjugate_subgroup(&world.g, &pd.weyl_t, "^tP")?;
    let ti = pd.weyl_t.inverse().unwrap();
    let conj_infl = cf_from(&tp, |g: &Mat| {
        let back = ti.mul(g).mul(&pd.weyl_t);
        Ok(infl
            .value_at_id(pd.p.id_of(&back).unwrap())
            .clone())
    })?;
    let term3 = conj_infl.restrict(&pd.l)?.induce(&pd.p)?;

    let rhs = term1.add(&term2).add(&term3);
    if lhs != rhs {
        return Err(CliffordError::Other("eq. (LGP) fails".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ortho::{CosetSubgroups, World};

    #[test]
    fn induced_identities_at_5_2() {
        let w = World::build(5, 2).unwrap();
        let pw = PWorld::build(&w).unwrap();
        let l4 = CosetSubgroups::build(&w).unwrap();
        for part in [InducedPart::A, InducedPart::B, InducedPart::D] {
            let payloads = eligible_payloads(&pw, part);
            assert!(!payloads.is_empty());
            for p in payloads {
                verify_induced_part(&pw, &l4, part, p).unwrap();
            }
        }
    }

    #[test]
    fn lgp_holds_for_all_a_trivial_sigma_at_5_2() {
        let w = World::build(5, 2).unwrap();
        let pw = PWorld::build(&w).unwrap();
        let l4 = CosetSubgroups::build(&w).unwrap();
        for i in eligible_payloads(&pw, InducedPart::A) {
            let sigma = pw.irr_l.irreducibles[i].clone();
            verify_mackey_formula(&pw, &l4, &sigma).unwrap();
        }
    }
}
