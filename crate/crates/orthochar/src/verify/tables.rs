//! The decomposition tables for the restrictions of unipotent characters:
//! expected data, named payload characters, and the exact comparisons.

use crate::chartab::ClassFunction;
use crate::clifford::{classify_pm, PWorld, PmCharNames, TypeTag};
use crate::exact::{rat, Rational};
use crate::symbols::{identify_unipotent, rows_for, UnipotentIds, UnipotentLabel};

use super::VerifyError;

/// Names for characters of P_3 appearing in Type 0 columns.
#[derive(Clone, Copy, Debug)]
pub enum P3Name {
    One,
    Mu,
}

/// Names for characters of the dihedral L^pm appearing in the tables.
/// Nu3 exists only for odd q; Xi is the sum of all degree-2 characters.
#[derive(Clone, Copy, Debug)]
pub enum PmName {
    One,
    Nu1,
    Nu3,
    Xi,
}

/// The named character data of one Clifford level. The nu-names of Irr(L^pm)
/// exist only at n = 5 where L^pm is dihedral.
pub struct NamedChars {
    pub uni_l: Vec<(UnipotentLabel, usize)>,
    pub plus: Option<PmCharNames>,
    pub minus: Option<PmCharNames>,
    /// index of 1_{P_{n-2}} in the child Irr(P) list
    pub child_trivial: usize,
    /// for n = 5: the Type + character mu of P_3
    pub child_mu: usize,
}

impl NamedChars {
    pub fn build(pw: &PWorld) -> Result<NamedChars, VerifyError> {
        let uni_l = crate::symbols::unipotent_l_chars(pw)?;
        let (plus, minus) = if pw.world.ctx.n == 5 {
            (
                Some(classify_pm(pw, TypeTag::Plus)?),
                Some(classify_pm(pw, TypeTag::Minus)?),
            )
        } else {
            (None, None)
        };
        let child = pw.child.as_ref().expect("named chars need n >= 5");
        let child_trivial = child
            .irr_p
            .iter()
            .position(|i| i.cf == ClassFunction::trivial(&child.world.pd.p))
            .expect("trivial character of P_{n-2}");
        let child_mu = child
            .irr_p
            .iter()
            .position(|i| i.label.tag == TypeTag::Plus)
            .expect("P_3 has a unique Type + character");
        Ok(NamedChars {
            uni_l,
            plus,
            minus,
            child_trivial,
            child_mu,
        })
    }

    /// The expected Type-1 payload: a character of L, sum of trivially
    /// extended unipotent characters.
    pub fn t1_payload(&self, pw: &PWorld, labels: &[&str]) -> ClassFunction {
        let mut acc = ClassFunction::zero(&pw.world.pd.l);
        for l in labels {
            let lbl = UnipotentLabel::parse(l).unwrap();
            let (_, idx) = self
                .uni_l
                .iter()
                .find(|(u, _)| *u == lbl)
                .unwrap_or_else(|| panic!("unipotent L-label {l} not identified"));
            acc = acc.add(&pw.irr_l.irreducibles[*idx]);
        }
        acc
    }

    /// The expected Type-0 payload for n = 5 rows: a character of P_3.
    pub fn t0_payload_p3(&self, pw: &PWorld, names: &[P3Name]) -> ClassFunction {
        let child = pw.child.as_ref().unwrap();
        let mut acc = ClassFunction::zero(&child.world.pd.p);
        for n in names {
            let idx = match n {
                P3Name::One => self.child_trivial,
                P3Name::Mu => self.child_mu,
            };
            acc = acc.add(&child.irr_p[idx].cf);
        }
        acc
    }

    /// The expected Type pm payload: a character of L^pm. Nu3 names are
    /// dropped for even q (the bracketed table entries).
    pub fn pm_payload(&self, pw: &PWorld, tag: TypeTag, names: &[PmName]) -> ClassFunction {
        let (table, group, named) = match tag {
            TypeTag::Plus => (
                &pw.irr_lplus,
                &pw.world.pd.l_plus,
                self.plus.as_ref().expect("nu-names need n = 5"),
            ),
            TypeTag::Minus => (
                pw.irr_lminus.as_ref().unwrap(),
                pw.world.pd.l_minus.as_ref().unwrap(),
                self.minus.as_ref().expect("nu-names need n = 5"),
            ),
            _ => unreachable!(),
        };
        let odd = pw.world.ctx.q % 2 == 1;
        let mut acc = ClassFunction::zero(group);
        for n in names {
            match n {
                PmName::One => acc = acc.add(&table.irreducibles[named.trivial]),
                PmName::Nu1 => acc = acc.add(&table.irreducibles[named.nu1]),
                PmName::Nu3 => {
                    if odd {
                        acc = acc.add(&table.irreducibles[named.nu3.unwrap()]);
                    }
                }
                PmName::Xi => acc = acc.add(&named.xi_sum(table, group)),
            }
        }
        acc
    }
}

struct So5Row {
    label: &'static str,
    t1: &'static [&'static str],
    t0: &'static [P3Name],
    tp: &'static [PmName],
    tm: &'static [PmName],
}

/// The decomposition table for the unipotent characters of SO_5(q)
/// restricted to P_5; Nu3 entries exist only for odd q.
const SO5_RESTRICTION_TABLE: &[So5Row] = &[
    So5Row {
        label: "[2,-,1]",
        t1: &["[1,-,1]"],
        t0: &[],
        tp: &[],
        tm: &[],
    },
    So5Row {
        label: "[-,-,3]",
        t1: &[],
        t0: &[],
        tp: &[],
        tm: &[PmName::Nu1],
    },
    So5Row {
        label: "[1^2,-,1]",
        t1: &["[1,-,1]"],
        t0: &[P3Name::One],
        tp: &[],
        tm: &[PmName::One],
    },
    So5Row {
        label: "[1,1,1]",
        t1: &["[1,-,1]", "[-,1,1]"],
        t0: &[P3Name::One],
        tp: &[PmName::One],
        tm: &[],
    },
    So5Row {
        label: "[-,2,1]",
        t1: &["[-,1,1]"],
        t0: &[],
        tp: &[PmName::Nu1],
        tm: &[],
    },
    So5Row {
        label: "[-,1^2,1]",
        t1: &["[-,1,1]"],
        t0: &[P3Name::One, P3Name::Mu],
        tp: &[PmName::One, PmName::Nu1, PmName::Nu3, PmName::Xi],
        tm: &[PmName::Nu3, PmName::Xi],
    },
];

/// The actual payload of one type of a split, as a class function on the
/// payload group.
pub fn actual_payload(
    pw: &PWorld,
    tag: TypeTag,
    mults: &[(usize, u64)],
) -> ClassFunction {
    let mut acc = match tag {
        TypeTag::One => ClassFunction::zero(&pw.world.pd.l),
        TypeTag::Zero => ClassFunction::zero(&pw.child.as_ref().unwrap().world.pd.p),
        TypeTag::Plus => ClassFunction::zero(&pw.world.pd.l_plus),
        TypeTag::Minus => ClassFunction::zero(pw.world.pd.l_minus.as_ref().unwrap()),
    };
    for &(payload, m) in mults {
        let cf = match tag {
            TypeTag::One => &pw.irr_l.irreducibles[payload],
            TypeTag::Zero => &pw.child.as_ref().unwrap().irr_p[payload].cf,
            TypeTag::Plus => &pw.irr_lplus.irreducibles[payload],
            TypeTag::Minus => &pw.irr_lminus.as_ref().unwrap().irreducibles[payload],
        };
        acc = acc.add(&cf.scale_int(m as i64));
    }
    acc
}

/// Verifies the full decomposition table of the restrictions of the six
/// unipotent characters of SO_5(q) to P_5.
pub fn verify_so5_restriction_table(pw: &PWorld, uni: &UnipotentIds) -> Result<(), VerifyError> {
    assert_eq!(pw.world.ctx.n, 5);
    let named = NamedChars::build(pw)?;
    for (ri, row) in SO5_RESTRICTION_TABLE.iter().enumerate() {
        let label = UnipotentLabel::parse(row.label).unwrap();
        let row_idx = uni
            .find(&label)
            .ok_or_else(|| VerifyError::Data(format!("row {label} missing")))?;
        debug_assert_eq!(row_idx, ri);
        let chi = uni.character(pw, row_idx);
        let res = chi.restrict(&pw.world.pd.p)?;
        let split = pw.component_split(&res)?;

        let checks = [
            (TypeTag::One, named.t1_payload(pw, row.t1)),
            (TypeTag::Zero, named.t0_payload_p3(pw, row.t0)),
            (TypeTag::Plus, named.pm_payload(pw, TypeTag::Plus, row.tp)),
            (TypeTag::Minus, named.pm_payload(pw, TypeTag::Minus, row.tm)),
        ];
        for (tag, expect) in checks {
            let actual = actual_payload(pw, tag, &split.mults[tag.index()]);
            if actual != expect {
                return Err(VerifyError::Mismatch(format!(
                    "SO5 restriction table row {label}, Type {} payload differs",
                    tag.symbol()
                )));
            }
        }
    }
    Ok(())
}

struct So7Row {
    label: &'static str,
    t1: &'static [&'static str],
    /// the Type-0 payload of chi|_P, itself a character of P_5 given by its
    /// own type decomposition: Type-1 labels, P_3 names, plus names, minus
    /// names
    t0_t1: &'static [&'static str],
    t0_t0: &'static [P3Name],
    t0_tp: &'static [PmName],
    t0_tm: &'static [PmName],
}

/// Type 1 and Type 0 components of the restrictions of the twelve unipotent
/// characters of SO_7(q) to P_7. The last row's Type-0 payload is the
/// character Gamma built from the level-five names.
const SO7_RESTRICTION_TABLE: &[So7Row] = &[
    So7Row {
        label: "[3,-,1]",
        t1: &["[2,-,1]"],
        t0_t1: &[],
        t0_t0: &[],
        t0_tp: &[],
        t0_tm: &[],
    },
    So7Row {
        label: "[2,1,1]",
        t1: &["[2,-,1]", "[1,1,1]"],
        t0_t1: &["[1,-,1]"],
        t0_t0: &[],
        t0_tp: &[],
        t0_tm: &[],
    },
    So7Row {
        label: "[-,3,1]",
        t1: &["[-,2,1]"],
        t0_t1: &[],
        t0_t0: &[],
        t0_tp: &[],
        t0_tm: &[],
    },
    So7Row {
        label: "[21,-,1]",
        t1: &["[2,-,1]", "[1^2,-,1]"],
        t0_t1: &["[1,-,1]"],
        t0_t0: &[],
        t0_tp: &[],
        t0_tm: &[],
    },
    So7Row {
        label: "[1,-,3]",
        t1: &["[-,-,3]"],
        t0_t1: &[],
        t0_t0: &[],
        t0_tp: &[],
        t0_tm: &[],
    },
    So7Row {
        label: "[1,2,1]",
        t1: &["[1,1,1]", "[-,2,1]"],
        t0_t1: &["[-,1,1]"],
        t0_t0: &[],
        t0_tp: &[],
        t0_tm: &[],
    },
    So7Row {
        label: "[1^2,1,1]",
        t1: &["[1^2,-,1]", "[1,1,1]"],
        t0_t1: &["[1,-,1]", "[-,1,1]"],
        t0_t0: &[P3Name::One],
        t0_tp: &[],
        t0_tm: &[],
    },
    So7Row {
        label: "[1,1^2,1]",
        t1: &["[-,1^2,1]", "[1,1,1]"],
        t0_t1: &["[1,-,1]", "[-,1,1]"],
        t0_t0: &[P3Name::One],
        t0_tp: &[PmName::One],
        t0_tm: &[],
    },
    So7Row {
        label: "[-,21,1]",
        t1: &["[-,1^2,1]", "[-,2,1]"],
        t0_t1: &["[-,1,1]"],
        t0_t0: &[],
        t0_tp: &[PmName::Nu1],
        t0_tm: &[],
    },
    So7Row {
        label: "[1^3,-,1]",
        t1: &["[1^2,-,1]"],
        t0_t1: &["[1,-,1]"],
        t0_t0: &[P3Name::One],
        t0_tp: &[],
        t0_tm: &[PmName::One],
    },
    So7Row {
        label: "[-,1,3]",
        t1: &["[-,-,3]"],
        t0_t1: &[],
        t0_t0: &[],
        t0_tp: &[],
        t0_tm: &[PmName::Nu1],
    },
    So7Row {
        label: "[-,1^3,1]",
        t1: &["[-,1^2,1]"],
        t0_t1: &["[-,1,1]"],
        t0_t0: &[P3Name::One, P3Name::Mu],
        t0_tp: &[PmName::One, PmName::Nu1, PmName::Nu3, PmName::Xi],
        t0_tm: &[PmName::Nu3, PmName::Xi],
    },
];

/// Verifies the Type-1/Type-0 table for SO_7(q) restricted to P_7, and the
/// partial Type pm statements that come with it.
pub fn verify_so7_restriction_table(pw: &PWorld, uni: &UnipotentIds) -> Result<(), VerifyError> {
    assert_eq!(pw.world.ctx.n, 7);
    let named7 = NamedChars::build(pw)?;
    let child = pw.child.as_ref().unwrap();
    let named5 = NamedChars::build(child)?;

    for (ri, row) in SO7_RESTRICTION_TABLE.iter().enumerate() {
        let label = UnipotentLabel::parse(row.label).unwrap();
        let row_idx = uni
            .find(&label)
            .ok_or_else(|| VerifyError::Data(format!("row {label} missing")))?;
        debug_assert_eq!(row_idx, ri);
        let chi = uni.character(pw, row_idx);
        let res = chi.restrict(&pw.world.pd.p)?;
        let split = pw.component_split(&res)?;

        // Type 1
        let t1_actual = actual_payload(pw, TypeTag::One, &split.mults[0]);
        let t1_expect = named7.t1_payload(pw, row.t1);
        if t1_actual != t1_expect {
            return Err(VerifyError::Mismatch(format!(
                "SO7 restriction table row {label}, Type 1 payload differs"
            )));
        }

        // Type 0: a character of P_5 described by its own decomposition
        let t0_actual = actual_payload(pw, TypeTag::Zero, &split.mults[1]);
        let mut t0_expect = ClassFunction::zero(&child.world.pd.p);
        t0_expect = t0_expect.add(&child.psi(
            TypeTag::One,
            &named5.t1_payload(child, row.t0_t1),
        )?);
        t0_expect = t0_expect.add(&child.psi(
            TypeTag::Zero,
            &named5.t0_payload_p3(child, row.t0_t0),
        )?);
        t0_expect = t0_expect.add(&child.psi(
            TypeTag::Plus,
            &named5.pm_payload(child, TypeTag::Plus, row.t0_tp),
        )?);
        t0_expect = t0_expect.add(&child.psi(
            TypeTag::Minus,
            &named5.pm_payload(child, TypeTag::Minus, row.t0_tm),
        )?);
        if t0_actual != t0_expect {
            return Err(VerifyError::Mismatch(format!(
                "SO7 restriction table row {label}, Type 0 payload differs"
            )));
        }
    }

    // partial Type pm statements
    let split_of = |label: &str| -> Result<crate::clifford::ComponentSplit, VerifyError> {
        let l = UnipotentLabel::parse(label).unwrap();
        let chi = uni.character(pw, uni.find(&l).unwrap());
        Ok(pw.component_split(&chi.restrict(&pw.world.pd.p)?)?)
    };
    for label in ["[3,-,1]", "[21,-,1]", "[1,-,3]"] {
        if !split_of(label)?.components[TypeTag::Plus.index()].is_zero() {
            return Err(VerifyError::Mismatch(format!(
                "{label} restriction unexpectedly has a Type + constituent"
            )));
        }
    }
    for label in ["[3,-,1]", "[2,1,1]", "[-,3,1]", "[1,2,1]"] {
        if !split_of(label)?.components[TypeTag::Minus.index()].is_zero() {
            return Err(VerifyError::Mismatch(format!(
                "{label} restriction unexpectedly has a Type - constituent"
            )));
        }
    }
    // Type + of [2,1,1] is +psi_{1_{L+}}, Type - of [21,-,1] is -psi_{1_{L-}}
    {
        let split = split_of("[2,1,1]")?;
        let actual = actual_payload(pw, TypeTag::Plus, &split.mults[2]);
        let expect = ClassFunction::trivial(&pw.world.pd.l_plus);
        if actual != expect {
            return Err(VerifyError::Mismatch(
                "Type + component of [2,1,1] is not 1_{L^+}".into(),
            ));
        }
        let split = split_of("[21,-,1]")?;
        let actual = actual_payload(pw, TypeTag::Minus, &split.mults[3]);
        let expect = ClassFunction::trivial(pw.world.pd.l_minus.as_ref().unwrap());
        if actual != expect {
            return Err(VerifyError::Mismatch(
                "Type - component of [21,-,1] is not 1_{L^-}".into(),
            ));
        }
    }
    Ok(())
}

/// The component-degree tables: the degrees theta^eps(1) of the four type
/// components of each unipotent restriction, as polynomials in q.
pub fn expected_component_degrees(n: usize, row_index: usize, q: i64) -> [Rational; 4] {
    let h = |x: i64| rat(x) / rat(2);
    match (n, row_index) {
        (5, 0) => [rat(1), rat(0), rat(0), rat(0)],
        (5, 1) => [rat(0), rat(0), rat(0), rat(1)],
        (5, 2) => [rat(1), rat(1), rat(0), rat(1)],
        (5, 3) => [rat(q + 1), rat(1), rat(1), rat(0)],
        (5, 4) => [rat(q), rat(0), rat(1), rat(0)],
        (5, 5) => [rat(q), rat(q), rat(q), rat(q)],
        (7, 0) => [rat(1), rat(0), rat(0), rat(0)],
        (7, 1) => [h((q + 2) * (q * q + 1)), rat(1), rat(1), rat(0)],
        (7, 2) => [h(q * (q * q + 1)), rat(0), rat(1), rat(0)],
        (7, 3) => [h((q + 1) * (q * q - q + 2)), rat(1), rat(0), rat(1)],
        (7, 4) => [h(q * (q - 1) * (q - 1)), rat(0), rat(0), rat(1)],
        (7, 5) => [rat(q * (q * q + q + 1)), rat(q), rat(2 * q), rat(0)],
        (7, 6) => [
            rat(q * (q * q + q + 1)),
            rat(q * (q + 1)),
            rat(q * q),
            rat(q * q),
        ],
        (7, 7) => [
            h(q * (2 * q + 1) * (q * q + 1)),
            h(q * (q + 1) * (q + 1)),
            h(q * (q + 1) * (q + 1)),
            h(q * (q * q + 1)),
        ],
        (7, 8) => [
            h(q * (q * q + 2 * q * q * q + 1)),
            h(q * (q * q + 1)),
            h(q * (q + 1) * (q + 1)),
            h(q * (q * q + 1)),
        ],
        (7, 9) => [
            h(q * (q * q + 1)),
            h(q * (q * q + 1)),
            h(q * (q - 1) * (q - 1)),
            h(q * (q * q + 1)),
        ],
        (7, 10) => [
            h(q * (q - 1) * (q - 1)),
            h(q * (q - 1) * (q - 1)),
            h(q * (q - 1) * (q - 1)),
            h(q * (q * q + 1)),
        ],
        (7, 11) => [
            rat(q.pow(4)),
            rat(q.pow(4)),
            rat(q.pow(4)),
            rat(q.pow(4)),
        ],
        _ => panic!("no component-degree row ({n}, {row_index})"),
    }
}

/// Checks, for every unipotent label, that the M-matrix route and the direct
/// component split agree with each other and with the stored
/// component-degree table.
pub fn verify_component_degrees(pw: &PWorld, uni: &UnipotentIds) -> Result<(), VerifyError> {
    let n = pw.world.ctx.n;
    let q = pw.world.ctx.q as i64;
    let m = pw.world.ctx.m as u32;
    let even = q % 2 == 0;
    let rows = rows_for(n);
    for (ri, r) in rows.iter().enumerate() {
        let chi = uni.character(pw, ri);
        let res = chi.restrict(&pw.world.pd.p)?;
        let split = pw.component_split(&res)?;
        let zv = pw.values_on_z(&res);
        let vals: [Rational; 4] = [
            res.degree(),
            zv[0].as_rational().ok_or_else(|| {
                VerifyError::Data("non-rational value at z_0".into())
            })?,
            zv[1].as_rational().unwrap(),
            zv[2].as_rational().unwrap(),
        ];
        let via_m = crate::clifford::degrees_from_values(&vals, m, q, even)?;
        let expect = expected_component_degrees(n, ri, q);
        if via_m != expect {
            return Err(VerifyError::Mismatch(format!(
                "component degrees via M for {} differ from the table",
                r.label
            )));
        }
        if split.payload_degrees != expect {
            return Err(VerifyError::Mismatch(format!(
                "component degrees via splitting for {} differ from the table",
                r.label
            )));
        }
    }
    Ok(())
}

/// degrees_from_values and component_split agree on every irreducible of G.
pub fn verify_m_route_all_irreducibles(pw: &PWorld) -> Result<(), VerifyError> {
    let q = pw.world.ctx.q as i64;
    let m = pw.world.ctx.m as u32;
    let even = q % 2 == 0;
    for chi in &pw.irr_g.irreducibles {
        let res = chi.restrict(&pw.world.pd.p)?;
        let split = pw.component_split(&res)?;
        let zv = pw.values_on_z(&res);
        let to_rat = |c: &crate::exact::Cyclotomic| {
            c.as_rational()
                .ok_or_else(|| VerifyError::Data("irrational value on z".into()))
        };
        let vals = [
            res.degree(),
            to_rat(&zv[0])?,
            to_rat(&zv[1])?,
            to_rat(&zv[2])?,
        ];
        let via_m = crate::clifford::degrees_from_values(&vals, m, q, even)?;
        if via_m != split.payload_degrees {
            return Err(VerifyError::Mismatch(
                "M route and component split disagree".into(),
            ));
        }
    }
    Ok(())
}

/// Every unipotent character's degree polynomial evaluates to the identified
/// character's degree; round trips already run at the symbols layer.
pub fn verify_degree_polynomials(pw: &PWorld, uni: &UnipotentIds) -> Result<(), VerifyError> {
    let q = pw.world.ctx.q as i64;
    for (ri, r) in uni.rows.iter().enumerate() {
        let chi = uni.character(pw, ri);
        if chi.degree() != r.degree.eval(q) {
            return Err(VerifyError::Mismatch(format!(
                "degree polynomial for {} does not match",
                r.label
            )));
        }
    }
    Ok(())
}

pub fn identify(pw: &PWorld) -> Result<UnipotentIds, VerifyError> {
    Ok(identify_unipotent(pw)?)
}
