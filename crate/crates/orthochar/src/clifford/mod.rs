//! Irr(P_n) by Clifford theory: the four types of irreducible characters,
//! the additive psi operators, character values on the unipotent classes,
//! component splitting, and the degree reconstruction matrix M.

mod induced;
mod steinberg;

pub use induced::{
    eligible_payloads, has_a_in_kernel, verify_induced_part, verify_mackey_formula, InducedPart,
};
pub use steinberg::{
    classify_pm, st_l_pm_decomposition, st_lprime_res_p, steinberg_index, steinberg_l,
    steinberg_restriction_formula, PmCharNames,
};

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::chartab::{character_table_cached, CharacterTable, ChartabError, ClassFunction};
use crate::exact::{rat, solve_linear, Cyclotomic, Rational};
use crate::matgrp::Mat;
use crate::ortho::World;

#[derive(Debug, thiserror::Error)]
pub enum CliffordError {
    #[error("chartab: {0}")]
    Chartab(#[from] ChartabError),
    #[error("ortho: {0}")]
    Ortho(#[from] crate::ortho::OrthoError),
    #[error("group: {0}")]
    Group(#[from] crate::matgrp::GroupError),
    #[error("completeness failure: {0}")]
    Completeness(String),
    #[error("{0}")]
    Other(String),
}

/// The four Clifford types of Irr(P), by the orbit representative covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeTag {
    One,
    Zero,
    Plus,
    Minus,
}

impl TypeTag {
    pub const ALL: [TypeTag; 4] = [TypeTag::One, TypeTag::Zero, TypeTag::Plus, TypeTag::Minus];

    pub fn index(self) -> usize {
        match self {
            TypeTag::One => 0,
            TypeTag::Zero => 1,
            TypeTag::Plus => 2,
            TypeTag::Minus => 3,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TypeTag::One => "1",
            TypeTag::Zero => "0",
            TypeTag::Plus => "+",
            TypeTag::Minus => "-",
        }
    }
}

/// Constructor data of an irreducible character of P: its type and the
/// index of its payload in the corresponding payload list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IrrPLabel {
    pub tag: TypeTag,
    pub payload: usize,
}

pub struct IrrP {
    pub label: IrrPLabel,
    pub cf: ClassFunction,
}

/// A fully built Clifford level: the world, the character tables of G, L and
/// L^pm, the labeled list Irr(P), and the level below.
pub struct PWorld {
    pub world: Arc<World>,
    pub irr_g: CharacterTable,
    pub irr_l: CharacterTable,
    pub irr_lplus: CharacterTable,
    pub irr_lminus: Option<CharacterTable>,
    pub irr_p: Vec<IrrP>,
    pub child: Option<Arc<PWorld>>,
}

impl PWorld {
    pub fn build(world: &Arc<World>) -> Result<Arc<PWorld>, CliffordError> {
        let child = match &world.child {
            Some(c) => Some(PWorld::build(c)?),
            None => None,
        };
        let pd = &world.pd;
        let irr_g = character_table_cached(&world.g)?;
        let irr_l = character_table_cached(&pd.l)?;
        let irr_lplus = character_table_cached(&pd.l_plus)?;
        let irr_lminus = match &pd.l_minus {
            Some(lm) => Some(character_table_cached(lm)?),
            None => None,
        };

        let mut pw = PWorld {
            world: world.clone(),
            irr_g,
            irr_l,
            irr_lplus,
            irr_lminus,
            irr_p: Vec::new(),
            child,
        };
        pw.irr_p = pw.build_irr_p()?;
        pw.check_completeness()?;
        Ok(Arc::new(pw))
    }

    fn build_irr_p(&self) -> Result<Vec<IrrP>, CliffordError> {
        let world = &self.world;
        let ctx = &world.ctx;
        let pd = &world.pd;
        let n = ctx.n;
        let m = ctx.m;
        let q = ctx.q as i64;
        let mut out = Vec::new();

        // Type 1: inflation through the Levi projection
        for (i, sigma) in self.irr_l.irreducibles.iter().enumerate() {
            let cf = sigma.inflate_along(&pd.p, |g| pd.levi_factor(g).1)?;
            expect_degree(&cf, &sigma.degree(), "Type 1")?;
            out.push(IrrP {
                label: IrrPLabel {
                    tag: TypeTag::One,
                    payload: i,
                },
                cf,
            });
        }

        // Type 0 (n >= 5): induced from I^0 = U Ptilde_{n-2}
        if n >= 5 {
            let child = self.child.as_ref().expect("child world exists for n >= 5");
            let i0 = pd.i0.as_ref().unwrap();
            let deg_factor = rat(q.pow(2 * (m as u32) - 2) - 1);
            for (i, mu) in child.irr_p.iter().enumerate() {
                let mu_cf = &mu.cf;
                let value = |g: &Mat| -> Result<Cyclotomic, CliffordError> {
                    let (u, h) = pd.levi_factor(g);
                    let e = pd.lambda_exponent(&pd.lambda0, &u);
                    let lam = Cyclotomic::root_of_unity(ctx.field.p as u32, e as u32);
                    let hp = world.strip_to_child(&h);
                    let hid = child.world.pd.p.id_of(&hp).ok_or_else(|| {
                        CliffordError::Other("Ptilde element does not strip into P_{n-2}".into())
                    })?;
                    Ok(&lam * mu_cf.value_at_id(hid))
                };
                let on_i0 = class_function_from(i0, value)?;
                let cf = on_i0.induce(&pd.p)?;
                expect_degree(&cf, &(deg_factor.clone() * mu_cf.degree()), "Type 0")?;
                out.push(IrrP {
                    label: IrrPLabel {
                        tag: TypeTag::Zero,
                        payload: i,
                    },
                    cf,
                });
            }
        }

        // Type +/-: induced from I^pm = U L^pm
        let half_q = rat(q.pow((m as u32) - 1));
        let plus_factor = half_q.clone() * rat(q.pow((m as u32) - 1) + 1) * rat(q - 1)
            / rat(2);
        let minus_factor = half_q * rat(q.pow((m as u32) - 1) - 1) * rat(q - 1) / rat(2);
        let mut pm_jobs: Vec<(TypeTag, &CharacterTable, &crate::matgrp::Group, Rational)> = vec![(
            TypeTag::Plus,
            &self.irr_lplus,
            &pd.i_plus,
            plus_factor,
        )];
        if let (Some(tab), Some(im)) = (&self.irr_lminus, &pd.i_minus) {
            pm_jobs.push((TypeTag::Minus, tab, im, minus_factor));
        }
        for (tag, table, inertia, factor) in pm_jobs {
            let lam = if tag == TypeTag::Plus {
                &pd.lambda_plus
            } else {
                &pd.lambda_minus
            };
            for (i, theta) in table.irreducibles.iter().enumerate() {
                let value = |g: &Mat| -> Result<Cyclotomic, CliffordError> {
                    let (u, h) = pd.levi_factor(g);
                    let e = pd.lambda_exponent(lam, &u);
                    let lv = Cyclotomic::root_of_unity(ctx.field.p as u32, e as u32);
                    let hid = theta.group.id_of(&h).ok_or_else(|| {
                        CliffordError::Other("inertia Levi part outside L^pm".into())
                    })?;
                    Ok(&lv * theta.value_at_id(hid))
                };
                let on_i = class_function_from(inertia, value)?;
                let cf = on_i.induce(&pd.p)?;
                expect_degree(&cf, &(factor.clone() * theta.degree()), "Type pm")?;
                out.push(IrrP {
                    label: IrrPLabel { tag, payload: i },
                    cf,
                });
            }
        }
        Ok(out)
    }

    fn check_completeness(&self) -> Result<(), CliffordError> {
        let p = &self.world.pd.p;
        let k = p.class_count();
        if self.irr_p.len() != k {
            return Err(CliffordError::Completeness(format!(
                "{} characters for {} classes of {}",
                self.irr_p.len(),
                k,
                p.name
            )));
        }
        let mut degsq = Rational::zero();
        for irr in &self.irr_p {
            let d = irr.cf.degree();
            degsq += d.clone() * d;
        }
        if degsq != rat(p.order as i64) {
            return Err(CliffordError::Completeness(format!(
                "sum of squared degrees {} != |P| = {}",
                degsq, p.order
            )));
        }
        for (i, a) in self.irr_p.iter().enumerate() {
            for (j, b) in self.irr_p.iter().enumerate().skip(i) {
                let ip = a.cf.inner_product(&b.cf)?;
                let expect = if i == j { Rational::one() } else { Rational::zero() };
                if ip != expect {
                    return Err(CliffordError::Completeness(format!(
                        "<psi_{i}, psi_{j}> = {ip} in {}",
                        p.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Payload character table for a type.
    pub fn payload_degree(&self, label: IrrPLabel) -> Rational {
        match label.tag {
            TypeTag::One => self.irr_l.irreducibles[label.payload].degree(),
            TypeTag::Zero => self.child.as_ref().unwrap().irr_p[label.payload].cf.degree(),
            TypeTag::Plus => self.irr_lplus.irreducibles[label.payload].degree(),
            TypeTag::Minus => self.irr_lminus.as_ref().unwrap().irreducibles[label.payload]
                .degree(),
        }
    }

    /// Finds the irreducible of P with the given label.
    pub fn irr_index(&self, tag: TypeTag, payload: usize) -> usize {
        self.irr_p
            .iter()
            .position(|i| i.label.tag == tag && i.label.payload == payload)
            .expect("label present in Irr(P)")
    }

    /// The additive extension of the psi construction: theta is a character
    /// of the type's payload group, decomposed there and re-assembled on P.
    pub fn psi(&self, tag: TypeTag, theta: &ClassFunction) -> Result<ClassFunction, CliffordError> {
        let basis: Vec<&ClassFunction> = match tag {
            TypeTag::One => self.irr_l.irreducibles.iter().collect(),
            TypeTag::Zero => self
                .child
                .as_ref()
                .unwrap()
                .irr_p
                .iter()
                .map(|i| &i.cf)
                .collect(),
            TypeTag::Plus => self.irr_lplus.irreducibles.iter().collect(),
            TypeTag::Minus => self
                .irr_lminus
                .as_ref()
                .unwrap()
                .irreducibles
                .iter()
                .collect(),
        };
        let mut acc = ClassFunction::zero(&self.world.pd.p);
        let mut residual = theta.clone();
        for (pi, b) in basis.iter().enumerate() {
            let mult = theta.inner_product(b)?;
            if mult.is_zero() {
                continue;
            }
            if !mult.is_integer() {
                return Err(CliffordError::Other(format!(
                    "psi payload has non-integral multiplicity {mult}"
                )));
            }
            let m: i64 = mult.to_integer().try_into().map_err(|_| {
                CliffordError::Other("multiplicity overflow".into())
            })?;
            let idx = self.irr_index(tag, pi);
            acc = acc.add(&self.irr_p[idx].cf.scale_int(m));
            residual = residual.sub(&b.scale_int(m));
        }
        if !residual.is_zero() {
            return Err(CliffordError::Other(
                "psi payload is not a combination of payload irreducibles".into(),
            ));
        }
        Ok(acc)
    }

    /// Class indices in P of z_0, z_1, z_2.
    pub fn z_classes(&self) -> [usize; 3] {
        let pd = &self.world.pd;
        let z = pd.z_ids.expect("z representatives need n >= 5");
        let classes = pd.p.classes();
        [0, 1, 2].map(|j| classes.class_of(z[j]))
    }

    /// Values of a class function on P at (z_0, z_1, z_2).
    pub fn values_on_z(&self, cf: &ClassFunction) -> [Cyclotomic; 3] {
        let zc = self.z_classes();
        [0, 1, 2].map(|j| cf.values[zc[j]].clone())
    }

    /// The expected (z_0, z_1, z_2) values of an irreducible of the given
    /// type with payload degree d, per the parity-dependent value tables.
    pub fn expected_z_values(&self, tag: TypeTag, d: &Rational) -> [Rational; 3] {
        let q = self.world.ctx.q as i64;
        let m = self.world.ctx.m as u32;
        let even = q % 2 == 0;
        let qm1 = rat(q.pow(m - 1));
        let half = rat(1) / rat(2);
        match (tag, even) {
            (TypeTag::One, _) => [d.clone(), d.clone(), d.clone()],
            (TypeTag::Zero, false) => [
                -d.clone(),
                (qm1.clone() - rat(1)) * d.clone(),
                -(qm1 + rat(1)) * d.clone(),
            ],
            (TypeTag::Zero, true) => [
                -d.clone(),
                rat(q.pow(2 * m - 2) - 1) * d.clone(),
                -d.clone(),
            ],
            (TypeTag::Plus, false) => [
                half * qm1.clone() * rat(q - 1) * d.clone(),
                -qm1 * d.clone(),
                Rational::zero(),
            ],
            (TypeTag::Plus, true) => [
                half.clone() * qm1.clone() * rat(q - 1) * d.clone(),
                -half.clone() * qm1.clone() * (qm1.clone() + rat(1)) * d.clone(),
                -half * qm1 * d.clone(),
            ],
            (TypeTag::Minus, false) => [
                -half * qm1.clone() * rat(q - 1) * d.clone(),
                Rational::zero(),
                qm1 * d.clone(),
            ],
            (TypeTag::Minus, true) => [
                -half.clone() * qm1.clone() * rat(q - 1) * d.clone(),
                -half.clone() * qm1.clone() * (qm1.clone() - rat(1)) * d.clone(),
                half * qm1 * d.clone(),
            ],
        }
    }

    /// Checks the value table on every Type 0 / + / - irreducible.
    pub fn verify_z_value_tables(&self) -> Result<(), CliffordError> {
        for irr in &self.irr_p {
            let d = self.payload_degree(irr.label);
            let expect = self.expected_z_values(irr.label.tag, &d);
            let got = self.values_on_z(&irr.cf);
            for j in 0..3 {
                if got[j] != Cyclotomic::from_rational(expect[j].clone()) {
                    return Err(CliffordError::Other(format!(
                        "z-value table mismatch for type {} payload {} at z_{}: {} != {}",
                        irr.label.tag.symbol(),
                        irr.label.payload,
                        j,
                        got[j],
                        expect[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Splits a character of P into its four type components.
    pub fn component_split(&self, chi: &ClassFunction) -> Result<ComponentSplit, CliffordError> {
        let mut mults: [Vec<(usize, u64)>; 4] = Default::default();
        let mut comps: Vec<ClassFunction> = (0..4)
            .map(|_| ClassFunction::zero(&self.world.pd.p))
            .collect();
        let mut degrees: [Rational; 4] = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        let all = self.irr_p.iter().map(|i| i.cf.clone()).collect::<Vec<_>>();
        let m = chi.decompose(&all).map_err(CliffordError::Chartab)?;
        for (idx, &mult) in m.iter().enumerate() {
            if mult == 0 {
                continue;
            }
            let label = self.irr_p[idx].label;
            let t = label.tag.index();
            mults[t].push((label.payload, mult));
            comps[t] = comps[t].add(&self.irr_p[idx].cf.scale_int(mult as i64));
            degrees[t] += rat(mult as i64) * self.payload_degree(label);
        }
        let comps: [ClassFunction; 4] = comps.try_into().map_err(|_| {
            CliffordError::Other("component array".into())
        })?;
        Ok(ComponentSplit {
            mults,
            components: comps,
            payload_degrees: degrees,
        })
    }
}

/// The unique decomposition chi = 1chi + 0chi + +chi + -chi.
pub struct ComponentSplit {
    /// per type: (payload index, multiplicity)
    pub mults: [Vec<(usize, u64)>; 4],
    pub components: [ClassFunction; 4],
    /// the degrees theta^eps(1)
    pub payload_degrees: [Rational; 4],
}

fn class_function_from(
    group: &crate::matgrp::Group,
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

fn expect_degree(cf: &ClassFunction, expect: &Rational, what: &str) -> Result<(), CliffordError> {
    let d = cf.degree();
    if d != *expect {
        return Err(CliffordError::Completeness(format!(
            "{what} character has degree {d}, expected {expect}"
        )));
    }
    Ok(())
}

/// The degree reconstruction matrix M of the chosen parity.
pub fn m_matrix(m: u32, q: i64, even: bool) -> [[Rational; 4]; 4] {
    let qm1 = rat(q.pow(m - 1));
    let half = rat(1) / rat(2);
    let r1 = [
        rat(1),
        rat(q.pow(2 * m - 2) - 1),
        half.clone() * qm1.clone() * (qm1.clone() + rat(1)) * rat(q - 1),
        half.clone() * qm1.clone() * (qm1.clone() - rat(1)) * rat(q - 1),
    ];
    let r2 = [
        rat(1),
        rat(-1),
        half.clone() * qm1.clone() * rat(q - 1),
        -(half.clone() * qm1.clone() * rat(q - 1)),
    ];
    if even {
        [
            r1,
            r2,
            [
                rat(1),
                rat(q.pow(2 * m - 2) - 1),
                -(half.clone() * qm1.clone() * (qm1.clone() + rat(1))),
                -(half.clone() * qm1.clone() * (qm1.clone() - rat(1))),
            ],
            [
                rat(1),
                rat(-1),
                -(half.clone() * qm1.clone()),
                half * qm1,
            ],
        ]
    } else {
        [
            r1,
            r2,
            [rat(1), qm1.clone() - rat(1), -qm1.clone(), rat(0)],
            [rat(1), -(qm1.clone() + rat(1)), rat(0), qm1],
        ]
    }
}

pub fn m_matrix_det(mat: &[[Rational; 4]; 4]) -> Rational {
    // 4x4 determinant by cofactor expansion
    fn det3(a: &[[Rational; 3]; 3]) -> Rational {
        a[0][0].clone() * (a[1][1].clone() * a[2][2].clone() - a[1][2].clone() * a[2][1].clone())
            - a[0][1].clone()
                * (a[1][0].clone() * a[2][2].clone() - a[1][2].clone() * a[2][0].clone())
            + a[0][2].clone()
                * (a[1][0].clone() * a[2][1].clone() - a[1][1].clone() * a[2][0].clone())
    }
    let mut det = Rational::zero();
    for c in 0..4 {
        let mut minor: [[Rational; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
        #[allow(clippy::needless_range_loop)]
        for i in 1..4 {
            let mut jj = 0;
            for j in 0..4 {
                if j == c {
                    continue;
                }
                minor[i - 1][jj] = mat[i][j].clone();
                jj += 1;
            }
        }
        let sign = if c % 2 == 0 { rat(1) } else { rat(-1) };
        det += sign * mat[0][c].clone() * det3(&minor);
    }
    det
}

/// Reconstructs (theta^1(1), theta^0(1), theta^+(1), theta^-(1)) from
/// (chi(1), chi(z_0), chi(z_1), chi(z_2)) by applying M^{-1}.
pub fn degrees_from_values(
    vals: &[Rational; 4],
    m: u32,
    q: i64,
    even: bool,
) -> Result<[Rational; 4], CliffordError> {
    assert!(m >= 2);
    let mm = m_matrix(m, q, even);
    let det = m_matrix_det(&mm);
    let expect_det = if even {
        rat(1) / rat(2) * rat(q.pow(5 * m - 3))
    } else {
        rat(q.pow(4 * m - 2))
    };
    if det != expect_det {
        return Err(CliffordError::Other(format!(
            "det(M) = {det}, expected {expect_det}"
        )));
    }
    let mut rows: Vec<Vec<Rational>> = (0..4)
        .map(|i| {
            let mut row: Vec<Rational> = mm[i].to_vec();
            row.push(vals[i].clone());
            row
        })
        .collect();
    let sol = solve_linear(&mut rows, 4)
        .ok_or_else(|| CliffordError::Other("M-system inconsistent".into()))?;
    let out: [Rational; 4] = sol.try_into().map_err(|_| {
        CliffordError::Other("M-solution shape".into())
    })?;
    for d in &out {
        if !d.is_integer() {
            return Err(CliffordError::Other(format!(
                "non-integral component degree {d}; input values are wrong"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ortho::World;

    #[test]
    fn irr_p_5_2_counts() {
        let w = World::build(5, 2).unwrap();
        let pw = PWorld::build(&w).unwrap();
        assert_eq!(pw.irr_p.len(), 10);
        let by_tag = |t: TypeTag| pw.irr_p.iter().filter(|i| i.label.tag == t).count();
        assert_eq!(by_tag(TypeTag::One), 3);
        assert_eq!(by_tag(TypeTag::Zero), 2);
        assert_eq!(by_tag(TypeTag::Plus), 2);
        assert_eq!(by_tag(TypeTag::Minus), 3);
        pw.verify_z_value_tables().unwrap();
    }

    #[test]
    fn irr_p_5_3_counts_and_values() {
        let w = World::build(5, 3).unwrap();
        let pw = PWorld::build(&w).unwrap();
        assert_eq!(pw.irr_p.len(), 22);
        pw.verify_z_value_tables().unwrap();
        // every constructed character is irreducible
        for irr in &pw.irr_p {
            assert!(irr.cf.is_irreducible().unwrap());
        }
        // ^0psi_1(1) = q^2 - 1 = 8
        let child_trivial = pw
            .child
            .as_ref()
            .unwrap()
            .irr_p
            .iter()
            .position(|i| i.cf.degree() == rat(1) && i.cf.values.iter().all(|v| *v == Cyclotomic::one()))
            .unwrap();
        let idx = pw.irr_index(TypeTag::Zero, child_trivial);
        assert_eq!(pw.irr_p[idx].cf.degree(), rat(8));
        // ^+psi_1(1) = 12
        let lp_trivial = pw
            .irr_lplus
            .irreducibles
            .iter()
            .position(|c| c.values.iter().all(|v| *v == Cyclotomic::one()))
            .unwrap();
        let idx = pw.irr_index(TypeTag::Plus, lp_trivial);
        assert_eq!(pw.irr_p[idx].cf.degree(), rat(12));
    }

    #[test]
    fn psi_is_additive_and_matches_named_degrees() {
        let w = World::build(5, 2).unwrap();
        let pw = PWorld::build(&w).unwrap();
        // additivity on a sum of two Irr(L) members
        let s0 = &pw.irr_l.irreducibles[0];
        let s1 = &pw.irr_l.irreducibles[1];
        let lhs = pw.psi(TypeTag::One, &s0.add(s1)).unwrap();
        let rhs = pw
            .psi(TypeTag::One, s0)
            .unwrap()
            .add(&pw.psi(TypeTag::One, s1).unwrap());
        assert_eq!(lhs, rhs);
        // -psi_{Xi^-}(1) = 2 at (5,2): Xi^- is the degree-2 character of the
        // order-6 dihedral L^-
        let lm_table = pw.irr_lminus.as_ref().unwrap();
        let xi = lm_table
            .irreducibles
            .iter()
            .find(|c| c.degree() == rat(2))
            .unwrap();
        let psi_xi = pw.psi(TypeTag::Minus, xi).unwrap();
        assert_eq!(psi_xi.degree(), rat(2));
    }

    #[test]
    fn m_matrix_dets() {
        for (m, q) in [(2u32, 3i64), (3, 3), (2, 5)] {
            let det = m_matrix_det(&m_matrix(m, q, false));
            assert_eq!(det, rat(q.pow(4 * m - 2)));
        }
        for (m, q) in [(2u32, 2i64), (3, 2), (2, 4)] {
            let det = m_matrix_det(&m_matrix(m, q, true));
            assert_eq!(det, rat(1) / rat(2) * rat(q.pow(5 * m - 3)));
        }
    }

    #[test]
    fn degrees_from_values_spec_example() {
        // chi_{[1,1,1]} at (m, q) = (2, 3): values (24, 6, 3, 0) -> (4,1,1,0)
        let got = degrees_from_values(&[rat(24), rat(6), rat(3), rat(0)], 2, 3, false).unwrap();
        assert_eq!(got, [rat(4), rat(1), rat(1), rat(0)]);
        // trivial character: all-ones value row -> (1,0,0,0)
        let got = degrees_from_values(&[rat(1), rat(1), rat(1), rat(1)], 2, 3, false).unwrap();
        assert_eq!(got, [rat(1), rat(0), rat(0), rat(0)]);
        let got = degrees_from_values(&[rat(1), rat(1), rat(1), rat(1)], 3, 2, true).unwrap();
        assert_eq!(got, [rat(1), rat(0), rat(0), rat(0)]);
    }
}
