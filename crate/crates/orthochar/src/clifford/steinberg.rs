//! The Steinberg character: locating it in Irr(G), restricting it to P via
//! the subgroup-side formula, and naming the linear characters nu_j of the
//! dihedral groups L^pm that the tables are written in.

use num_traits::Zero;

use crate::chartab::{CharacterTable, ClassFunction};
use crate::exact::{rat, Rational};
use crate::matgrp::Group;

use super::{CliffordError, PWorld, TypeTag};

/// The Steinberg character as the alternating sum of the permutation
/// characters of the standard parabolic subgroups:
/// St = sum over J of (-1)^{|J|} Ind_{P_J}^G 1.
pub fn steinberg_class_function(pw: &PWorld) -> Result<ClassFunction, CliffordError> {
    let world = &pw.world;
    let ctx = &world.ctx;
    let g = &world.g;
    let n = ctx.n;
    let m = ctx.m;
    // Borel subgroup: stabilizer of the standard maximal isotropic flag
    let borel = g.subgroup_where("B", |mat| {
        (0..m).all(|j| (j + 1..n).all(|i| mat.at(i, j) == 0))
    })?;
    let borel_gens: Vec<crate::matgrp::Mat> =
        borel.gens.iter().map(|&id| borel.mat(id)).collect();

    let mut st = ClassFunction::zero(g);
    for mask in 0u32..(1 << m) {
        let jset: Vec<usize> = (1..=m).filter(|j| mask & (1 << (j - 1)) != 0).collect();
        let sign = if jset.len() % 2 == 0 { 1 } else { -1 };
        let term = if jset.len() == m {
            ClassFunction::trivial(g)
        } else {
            let mut gens = borel_gens.clone();
            for &j in &jset {
                gens.push(ctx.weyl_sj(j));
            }
            let pj = g.subgroup_generated(&gens, &format!("P_J{mask}"))?;
            ClassFunction::trivial(&pj).induce(g)?
        };
        st = st.add(&term.scale_int(sign));
    }
    Ok(st)
}

/// Index of the Steinberg character in Irr(G), located through the
/// parabolic alternating sum (immune to twist ambiguities).
pub fn steinberg_index(pw: &PWorld) -> Result<usize, CliffordError> {
    let st = steinberg_class_function(pw)?;
    let q = pw.world.ctx.q as i64;
    let m = pw.world.ctx.m;
    if st.degree() != rat(q.pow((m * m) as u32)) {
        return Err(CliffordError::Other(
            "alternating sum has the wrong degree for St".into(),
        ));
    }
    pw.irr_g
        .irreducibles
        .iter()
        .position(|chi| *chi == st)
        .ok_or_else(|| CliffordError::Other("Steinberg not found in Irr(G)".into()))
}

/// St_L: the trivial extension to L = L' x A of the Steinberg character of
/// L' = SO_{n-2}(q), pulled from the child world.
pub fn steinberg_l(pw: &PWorld) -> Result<ClassFunction, CliffordError> {
    let child = pw
        .child
        .as_ref()
        .ok_or_else(|| CliffordError::Other("St_L needs n >= 5".into()))?;
    let st_idx = steinberg_index(child)?;
    let st = &child.irr_g.irreducibles[st_idx];
    let world = &pw.world;
    let classes = world.pd.l.classes();
    let child_classes = child.world.g.classes();
    let values = classes
        .classes
        .iter()
        .map(|c| {
            let x = world.strip_to_child(&world.pd.l.mat(c.rep));
            let id = child
                .world
                .g
                .id_of(&x)
                .ok_or_else(|| CliffordError::Other("L element does not strip to SO_{n-2}".into()))?;
            Ok(st.values[child_classes.class_of(id)].clone())
        })
        .collect::<Result<_, CliffordError>>()?;
    Ok(ClassFunction {
        group: world.pd.l.clone(),
        values,
    })
}

/// The table names for Irr(L^pm): 1, nu_1 (kernel contains K), nu_2 / nu_3
/// (kernel does not contain K; nu_3 is the constituent of St_L|_{L^pm}),
/// and the degree-2 characters whose sum is Xi.
pub struct PmCharNames {
    pub trivial: usize,
    pub nu1: usize,
    pub nu2: Option<usize>,
    pub nu3: Option<usize>,
    pub xi_indices: Vec<usize>,
}

impl PmCharNames {
    /// Xi^pm as a class function (zero if there are no degree-2 characters).
    pub fn xi_sum(&self, table: &CharacterTable, group: &Group) -> ClassFunction {
        let mut acc = ClassFunction::zero(group);
        for &i in &self.xi_indices {
            acc = acc.add(&table.irreducibles[i]);
        }
        acc
    }
}

pub fn classify_pm(pw: &PWorld, tag: TypeTag) -> Result<PmCharNames, CliffordError> {
    let pd = &pw.world.pd;
    let (table, group, k_sub) = match tag {
        TypeTag::Plus => (&pw.irr_lplus, &pd.l_plus, pd.k_plus.as_ref().unwrap()),
        TypeTag::Minus => (
            pw.irr_lminus.as_ref().unwrap(),
            pd.l_minus.as_ref().unwrap(),
            pd.k_minus.as_ref().unwrap(),
        ),
        _ => return Err(CliffordError::Other("classify_pm needs a pm type".into())),
    };
    let odd = pw.world.ctx.q % 2 == 1;

    let is_linear = |cf: &ClassFunction| cf.degree() == rat(1);
    let kernel_contains_k = |cf: &ClassFunction| -> Result<bool, CliffordError> {
        let res = cf.restrict(k_sub)?;
        Ok(res == ClassFunction::trivial(k_sub))
    };

    let mut trivial = None;
    let mut nu1 = None;
    let mut off_kernel: Vec<usize> = Vec::new();
    let mut xi_indices = Vec::new();
    for (i, chi) in table.irreducibles.iter().enumerate() {
        if is_linear(chi) {
            if *chi == ClassFunction::trivial(group) {
                trivial = Some(i);
            } else if kernel_contains_k(chi)? {
                if nu1.replace(i).is_some() {
                    return Err(CliffordError::Other(
                        "two non-trivial K-trivial linear characters".into(),
                    ));
                }
            } else {
                off_kernel.push(i);
            }
        } else if chi.degree() == rat(2) {
            xi_indices.push(i);
        } else {
            return Err(CliffordError::Other(
                "dihedral group has a character of degree > 2".into(),
            ));
        }
    }
    let trivial = trivial.ok_or_else(|| CliffordError::Other("missing 1_{L^pm}".into()))?;
    let nu1 = nu1.ok_or_else(|| CliffordError::Other("missing nu_1".into()))?;

    let (nu2, nu3) = if odd {
        if off_kernel.len() != 2 {
            return Err(CliffordError::Other(format!(
                "expected two linear characters off the kernel, found {}",
                off_kernel.len()
            )));
        }
        // nu_3 is the unique one of the two occurring in St_L restricted
        let st_res = steinberg_l(pw)?.restrict(group)?;
        let mults: Vec<Rational> = off_kernel
            .iter()
            .map(|&i| st_res.inner_product(&table.irreducibles[i]))
            .collect::<Result<_, _>>()?;
        let hits: Vec<usize> = (0..2).filter(|&j| !mults[j].is_zero()).collect();
        if hits.len() != 1 || mults[hits[0]] != rat(1) {
            return Err(CliffordError::Other(
                "nu_3 selection from St_L restriction is not unique with multiplicity one".into(),
            ));
        }
        let nu3 = off_kernel[hits[0]];
        let nu2 = off_kernel[1 - hits[0]];
        (Some(nu2), Some(nu3))
    } else {
        if !off_kernel.is_empty() {
            return Err(CliffordError::Other(
                "even q should have no off-kernel linear characters".into(),
            ));
        }
        (None, None)
    };

    Ok(PmCharNames {
        trivial,
        nu1,
        nu2,
        nu3,
        xi_indices,
    })
}

/// The right-hand side of the Steinberg restriction formula:
/// St_G|_P = 1psi_{St_L} + sum <St_{L'}|_{P_{n-2}}, mu> 0psi_mu
///         + sum <St_L|_{L^+}, theta> +psi_theta
///         + sum <St_L|_{L^-}, theta> -psi_theta.
pub fn steinberg_restriction_formula(pw: &PWorld) -> Result<ClassFunction, CliffordError> {
    let child = pw
        .child
        .as_ref()
        .ok_or_else(|| CliffordError::Other("the Steinberg formula needs n >= 5".into()))?;
    let pd = &pw.world.pd;

    let st_l = steinberg_l(pw)?;
    let mut acc = pw.psi(TypeTag::One, &st_l)?;

    // Type 0 part: St_{L'} restricted to P_{n-2}, inside the child world
    let st_child = &child.irr_g.irreducibles[steinberg_index(child)?];
    let st_on_child_p = st_child.restrict(&child.world.pd.p)?;
    acc = acc.add(&pw.psi(TypeTag::Zero, &st_on_child_p)?);

    // Type pm parts
    let res_plus = st_l.restrict(&pd.l_plus)?;
    acc = acc.add(&pw.psi(TypeTag::Plus, &res_plus)?);
    let res_minus = st_l.restrict(pd.l_minus.as_ref().unwrap())?;
    acc = acc.add(&pw.psi(TypeTag::Minus, &res_minus)?);
    Ok(acc)
}

/// St_L restricted to L^pm, decomposed against the named characters; used
/// by the closed-form checks of the Steinberg restriction.
pub fn st_l_pm_decomposition(
    pw: &PWorld,
    tag: TypeTag,
) -> Result<Vec<(usize, u64)>, CliffordError> {
    let (table, group) = match tag {
        TypeTag::Plus => (&pw.irr_lplus, &pw.world.pd.l_plus),
        TypeTag::Minus => (
            pw.irr_lminus.as_ref().unwrap(),
            pw.world.pd.l_minus.as_ref().unwrap(),
        ),
        _ => return Err(CliffordError::Other("pm type expected".into())),
    };
    let res = steinberg_l(pw)?.restrict(group)?;
    let irr: Vec<ClassFunction> = table.irreducibles.to_vec();
    let mults = res.decompose(&irr)?;
    Ok(mults
        .into_iter()
        .enumerate()
        .filter(|&(_, m)| m > 0)
        .collect())
}

/// recover the restriction of St_{L'} to P_3 = 1 + mu for spot checks
pub fn st_lprime_res_p(pw: &PWorld) -> Result<Vec<(usize, u64)>, CliffordError> {
    let child = pw.child.as_ref().unwrap();
    let st_child = &child.irr_g.irreducibles[steinberg_index(child)?];
    let res = st_child.restrict(&child.world.pd.p)?;
    let basis: Vec<ClassFunction> = child.irr_p.iter().map(|i| i.cf.clone()).collect();
    let mults = res.decompose(&basis)?;
    Ok(mults
        .into_iter()
        .enumerate()
        .filter(|&(_, m)| m > 0)
        .collect())
}

