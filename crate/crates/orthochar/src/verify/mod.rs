//! The batch verification suites: every numbered acceptance criterion is
//! checked exactly and reported with a stable claim id.

pub mod newdata;
pub mod tables;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde::Serialize;

use crate::chartab::{character_table, ClassFunction};
use crate::clifford::{
    eligible_payloads, steinberg_index, steinberg_restriction_formula, verify_induced_part,
    verify_mackey_formula, CliffordError, InducedPart, PWorld, TypeTag,
};
use crate::exact::{rat, Cyclotomic};
use crate::ff::FieldSpec;
use crate::matgrp::{
    group_order_formula, parabolic_order, FormKind, OrderKind, DEFAULT_ENUMERATION_BOUND,
};
use crate::ortho::{
    go_even_group, u_char_orbits, CosetSubgroups, OrthoContext, World,
};
use crate::symbols::{unipotent_l_chars, verify_hc_identity, UnipotentIds};

use tables::{
    identify, verify_component_degrees, verify_degree_polynomials, verify_m_route_all_irreducibles,
    verify_so5_restriction_table, verify_so7_restriction_table, NamedChars, PmName,
};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("{0}")]
    Data(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("ortho: {0}")]
    Ortho(#[from] crate::ortho::OrthoError),
    #[error("group: {0}")]
    Group(#[from] crate::matgrp::GroupError),
    #[error("chartab: {0}")]
    Chartab(#[from] crate::chartab::ChartabError),
    #[error("clifford: {0}")]
    Clifford(#[from] CliffordError),
    #[error("symbols: {0}")]
    Symbols(#[from] crate::symbols::SymbolsError),
    #[error("field: {0}")]
    Field(#[from] crate::ff::FieldError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

#[derive(Serialize)]
pub struct Report {
    pub claim: String,
    pub params: String,
    pub status: Status,
    pub detail: String,
    /// wall time; excluded from the JSON output so that reports are
    /// byte-identical across runs with the same cache state
    #[serde(skip)]
    pub millis: u128,
}

impl Report {
    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Match => "PASS",
            Status::Mismatch => "FAIL",
            Status::Skipped => "SKIP",
        };
        let detail = if self.detail.is_empty() {
            String::new()
        } else {
            format!(" — {}", self.detail)
        };
        format!(
            "[{tag}] {} {}{} ({} ms)",
            self.claim, self.params, detail, self.millis
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteLevel {
    Quick,
    Standard,
    Extended,
}

impl SuiteLevel {
    pub fn parse(s: &str) -> Option<SuiteLevel> {
        match s {
            "quick" => Some(SuiteLevel::Quick),
            "standard" => Some(SuiteLevel::Standard),
            "extended" => Some(SuiteLevel::Extended),
            _ => None,
        }
    }
}

/// Memoizes the expensive per-(n, q) structures across suite items.
pub struct Session {
    bound: usize,
    pworlds: Mutex<HashMap<(usize, usize), Arc<PWorld>>>,
    l4s: Mutex<HashMap<(usize, usize), Arc<CosetSubgroups>>>,
    unis: Mutex<HashMap<(usize, usize), Arc<UnipotentIds>>>,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(DEFAULT_ENUMERATION_BOUND)
    }
}

impl Session {
    pub fn new(bound: usize) -> Session {
        Session {
            bound,
            pworlds: Mutex::new(HashMap::new()),
            l4s: Mutex::new(HashMap::new()),
            unis: Mutex::new(HashMap::new()),
        }
    }

    pub fn pworld(&self, n: usize, q: usize) -> Result<Arc<PWorld>, VerifyError> {
        if let Some(pw) = self.pworlds.lock().unwrap().get(&(n, q)) {
            return Ok(pw.clone());
        }
        let world = World::build_bounded(n, q, self.bound)?;
        let pw = PWorld::build(&world)?;
        self.pworlds.lock().unwrap().insert((n, q), pw.clone());
        Ok(pw)
    }

    pub fn cosets(&self, n: usize, q: usize) -> Result<Arc<CosetSubgroups>, VerifyError> {
        if let Some(l4) = self.l4s.lock().unwrap().get(&(n, q)) {
            return Ok(l4.clone());
        }
        let pw = self.pworld(n, q)?;
        let l4 = Arc::new(CosetSubgroups::build(&pw.world)?);
        self.l4s.lock().unwrap().insert((n, q), l4.clone());
        Ok(l4)
    }

    pub fn unipotent(&self, n: usize, q: usize) -> Result<Arc<UnipotentIds>, VerifyError> {
        if let Some(u) = self.unis.lock().unwrap().get(&(n, q)) {
            return Ok(u.clone());
        }
        let pw = self.pworld(n, q)?;
        let uni = Arc::new(identify(&pw)?);
        self.unis.lock().unwrap().insert((n, q), uni.clone());
        Ok(uni)
    }
}

fn run(claim: &str, params: &str, f: impl FnOnce() -> Result<String, VerifyError>) -> Report {
    let t = Instant::now();
    let (status, detail) = match f() {
        Ok(detail) => (Status::Match, detail),
        Err(e) => (Status::Mismatch, e.to_string()),
    };
    Report {
        claim: claim.to_string(),
        params: params.to_string(),
        status,
        detail,
        millis: t.elapsed().as_millis(),
    }
}

fn skip(claim: &str, params: &str, reason: &str) -> Report {
    Report {
        claim: claim.to_string(),
        params: params.to_string(),
        status: Status::Skipped,
        detail: reason.to_string(),
        millis: 0,
    }
}

// ---- criterion 1: order formulas ----------------------------------------

pub fn criterion_orders(bound: usize) -> Report {
    run("criterion-01 group order formulas", "q in {2,3,4,5}", || {
        let mut checked = 0;
        for q in [2usize, 3, 4, 5] {
            let field = FieldSpec::of_order(q)?;
            let nu = crate::ff::find_nu(&field);
            // SO_3(q) and SO_5(q) where the order fits the bound
            for n in [3usize, 5] {
                let m = (n / 2) as u32;
                let expect = group_order_formula(OrderKind::SoOdd, m, q as u64);
                if expect > bound as u128 {
                    continue;
                }
                let ctx = OrthoContext::build(n, q)?;
                let g = ctx.so_group_dim(n, bound)?;
                check_order(&g.name, g.order as u128, expect)?;
                checked += 1;
            }
            // GO_2^pm(q), GO_4^pm(q)
            for m in [1usize, 2] {
                for (kind, okind) in [
                    (FormKind::Plus, OrderKind::GoPlus),
                    (FormKind::Minus, OrderKind::GoMinus),
                ] {
                    let g = go_even_group(&field, m, kind, nu, bound)?;
                    check_order(
                        &g.name,
                        g.order as u128,
                        group_order_formula(okind, m as u32, q as u64),
                    )?;
                    checked += 1;
                }
            }
            // P_3(q), P_5(q) standalone
            for n in [3usize, 5] {
                let ctx = OrthoContext::build(n, q)?;
                let p = ctx.p_group(bound)?;
                check_order(
                    &p.name,
                    p.order as u128,
                    parabolic_order((n / 2) as u32, q as u64),
                )?;
                checked += 1;
            }
        }
        // P_7(2) and SO_7(2)
        let ctx = OrthoContext::build(7, 2)?;
        let p7 = ctx.p_group(bound)?;
        check_order(&p7.name, p7.order as u128, parabolic_order(3, 2))?;
        let g7 = ctx.so_group_dim(7, bound)?;
        check_order(&g7.name, g7.order as u128, 1_451_520)?;
        if g7.order != 1_451_520 || p7.order != 23040 {
            return Err(VerifyError::Mismatch("spot values".into()));
        }
        checked += 2;
        Ok(format!(
            "{checked} constructed orders equal their formulas (|SO5(2)|=720, |SO7(2)|=1451520, |GO4-(2)|=120); |SO5(5)| skipped (above bound)"
        ))
    })
}

fn check_order(name: &str, got: u128, expect: u128) -> Result<(), VerifyError> {
    if got != expect {
        return Err(VerifyError::Mismatch(format!(
            "|{name}| = {got}, formula gives {expect}"
        )));
    }
    Ok(())
}

// ---- criterion 2: four-orbit structure ----------------------------------

pub fn criterion_orbits() -> Report {
    run(
        "criterion-02 orbits of L on Irr(U)",
        "(5,2..5), (7,2), (7,3)",
        || {
            for (n, q) in [(5usize, 2usize), (5, 3), (5, 4), (5, 5), (7, 2), (7, 3)] {
                let ctx = OrthoContext::build(n, q)?;
                let os = u_char_orbits(&ctx)?;
                let m = (n / 2) as u32;
                let qq = q as u64;
                let expect = [
                    1u64,
                    qq.pow(2 * m - 2) - 1,
                    qq.pow(m - 1) * (qq.pow(m - 1) + 1) * (qq - 1) / 2,
                    qq.pow(m - 1) * (qq.pow(m - 1) - 1) * (qq - 1) / 2,
                ];
                if os.sizes != expect {
                    return Err(VerifyError::Mismatch(format!(
                        "orbit sizes at ({n},{q}): {:?} != {:?}",
                        os.sizes, expect
                    )));
                }
                // inertia orders [P : I^eps] from the formulas
                let p_ord = parabolic_order(m, qq);
                let i0 = qq.pow((n - 2) as u32) as u128 * parabolic_order(m - 1, qq);
                let ip = qq.pow((n - 2) as u32) as u128
                    * group_order_formula(OrderKind::GoPlus, m - 1, qq);
                let im = qq.pow((n - 2) as u32) as u128
                    * group_order_formula(OrderKind::GoMinus, m - 1, qq);
                for (size, inertia) in [(expect[1], i0), (expect[2], ip), (expect[3], im)] {
                    if size as u128 * inertia != p_ord {
                        return Err(VerifyError::Mismatch(format!(
                            "inertia order at ({n},{q}): orbit {size} x |I| {inertia} != |P|"
                        )));
                    }
                }
            }
            Ok("orbit sizes and inertia orders match at all six (n,q)".into())
        },
    )
}

// ---- criteria 3-12 over the standard tuples -----------------------------

pub fn criterion_completeness(session: &Session) -> Report {
    run(
        "criterion-03 Irr(P) completeness",
        "(5,2), (5,3), (7,2)",
        || {
            let pw52 = session.pworld(5, 2)?;
            if pw52.irr_p.len() != 10 {
                return Err(VerifyError::Mismatch(format!(
                    "k(P_5(2)) = {}",
                    pw52.irr_p.len()
                )));
            }
            let pw53 = session.pworld(5, 3)?;
            if pw53.irr_p.len() != 22 {
                return Err(VerifyError::Mismatch(format!(
                    "k(P_5(3)) = {}",
                    pw53.irr_p.len()
                )));
            }
            let pw72 = session.pworld(7, 2)?;
            Ok(format!(
                "orthonormal and complete: 10 + 22 + {} characters",
                pw72.irr_p.len()
            ))
        },
    )
}

pub fn criterion_z_values(session: &Session) -> Report {
    run(
        "criterion-04 unipotent-class value tables",
        "(5,2), (5,3), (7,2)",
        || {
            for (n, q) in [(5, 2), (5, 3), (7, 2)] {
                session.pworld(n, q)?.verify_z_value_tables()?;
            }
            Ok("every Type 0/+/- irreducible matches its parity row".into())
        },
    )
}

fn centralizer_formula(m: u32, q: u64, j: usize) -> u64 {
    let lower: u64 = (1..=m.saturating_sub(2)).map(|i| q.pow(2 * i) - 1).product();
    let even = q % 2 == 0;
    match (j, even) {
        (0, _) => q.pow(m * m) * (q - 1) * lower,
        (1, false) => 2 * q.pow(m * m - m + 1) * (q.pow(m - 1) - 1) * lower,
        (1, true) => q.pow(m * m) * (q.pow(2 * m - 2) - 1) * lower,
        (2, false) => 2 * q.pow(m * m - m + 1) * (q.pow(m - 1) + 1) * lower,
        (2, true) => q.pow(m * m) * lower,
        _ => unreachable!(),
    }
}

pub fn criterion_centralizers(session: &Session) -> Report {
    run(
        "criterion-05 z-class centralizers and fusion",
        "(5,2), (5,3), (7,2)",
        || {
            for (n, q) in [(5usize, 2usize), (5, 3), (7, 2)] {
                let pw = session.pworld(n, q)?;
                let pd = &pw.world.pd;
                let m = (n / 2) as u32;
                let got = pd.z_centralizer_orders().unwrap();
                for j in 0..3 {
                    let expect = centralizer_formula(m, q as u64, j);
                    if got[j] != expect {
                        return Err(VerifyError::Mismatch(format!(
                            "|C_P(z_{j})| at ({n},{q}) = {}, formula {expect}",
                            got[j]
                        )));
                    }
                }
                // the z classes partition U \ {1}
                let class_sum: u64 = got.iter().map(|c| pd.p.order / c).sum();
                if 1 + class_sum != (q as u64).pow((n - 2) as u32) {
                    return Err(VerifyError::Mismatch(format!(
                        "z classes do not partition U at ({n},{q})"
                    )));
                }
                // the G-classes C_0, C_1, C_2 are pairwise distinct
                let classes = pw.world.g.classes();
                let z = pd.z_ids.unwrap();
                let cg: Vec<usize> = z.iter().map(|&id| classes.class_of(id)).collect();
                if cg[0] == cg[1] || cg[0] == cg[2] || cg[1] == cg[2] {
                    return Err(VerifyError::Mismatch(format!(
                        "G-classes of z_j collide at ({n},{q})"
                    )));
                }
            }
            Ok("centralizer orders, U partition, and class distinctness hold".into())
        },
    )
}

pub fn criterion_coset_lattice(session: &Session) -> Report {
    run(
        "criterion-06 double-coset subgroup identities",
        "(5,2), (5,3), (7,2)",
        || {
            for (n, q) in [(5, 2), (5, 3), (7, 2)] {
                session.cosets(n, q)?;
            }
            Ok("all set identities hold (the deep lattice at (7,2))".into())
        },
    )
}

pub fn criterion_induced(session: &Session) -> Report {
    run(
        "criterion-07 induced-character identities and Mackey restriction",
        "(5,2), (5,3), (7,2)",
        || {
            let mut count = 0usize;
            for (n, q) in [(5usize, 2usize), (5, 3), (7, 2)] {
                let pw = session.pworld(n, q)?;
                let l4 = session.cosets(n, q)?;
                let parts: &[InducedPart] = if n == 7 {
                    &[
                        InducedPart::A,
                        InducedPart::B,
                        InducedPart::C,
                        InducedPart::D,
                        InducedPart::E,
                    ]
                } else {
                    &[InducedPart::A, InducedPart::B, InducedPart::D]
                };
                for &part in parts {
                    for payload in eligible_payloads(&pw, part) {
                        verify_induced_part(&pw, &l4, part, payload)?;
                        count += 1;
                    }
                }
                for (_, li) in unipotent_l_chars(&pw)? {
                    let sigma = pw.irr_l.irreducibles[li].clone();
                    verify_mackey_formula(&pw, &l4, &sigma)?;
                    count += 1;
                }
            }
            Ok(format!("{count} class-function identities verified"))
        },
    )
}

pub fn criterion_steinberg(session: &Session) -> Report {
    run(
        "criterion-08 Steinberg restriction formula",
        "(5,2), (5,3), (7,2)",
        || {
            for (n, q) in [(5usize, 2usize), (5, 3), (7, 2)] {
                let pw = session.pworld(n, q)?;
                let st = steinberg_index(&pw)?;
                let st_char = &pw.irr_g.irreducibles[st];
                // St vanishes on the three distinguished unipotent classes
                let classes = pw.world.g.classes();
                for &zid in pw.world.pd.z_ids.as_ref().unwrap() {
                    if !st_char.values[classes.class_of(zid)].is_zero() {
                        return Err(VerifyError::Mismatch(format!(
                            "St does not vanish on a z class at ({n},{q})"
                        )));
                    }
                }
                let direct = st_char.restrict(&pw.world.pd.p)?;
                let formula = steinberg_restriction_formula(&pw)?;
                if direct != formula {
                    return Err(VerifyError::Mismatch(format!(
                        "Steinberg formula differs from the direct restriction at ({n},{q})"
                    )));
                }
                if n == 5 {
                    verify_steinberg_closed_form(&pw, &direct)?;
                }
            }
            Ok("subgroup-side formula equals the direct restriction".into())
        },
    )
}

/// The explicit shape of St_G restricted to P_5:
/// 1psi_{St_L} + 0psi_{1 + mu} + +psi_{1 + nu1 (+ nu3) + Xi} + -psi_{(nu3 +) Xi}.
fn verify_steinberg_closed_form(
    pw: &PWorld,
    direct: &ClassFunction,
) -> Result<(), VerifyError> {
    let named = NamedChars::build(pw)?;
    let split = pw.component_split(direct)?;
    let st_l = crate::clifford::steinberg_l(pw)?;
    let t1 = tables::actual_payload(pw, TypeTag::One, &split.mults[0]);
    if t1 != st_l {
        return Err(VerifyError::Mismatch("Steinberg Type 1 payload".into()));
    }
    let t0 = tables::actual_payload(pw, TypeTag::Zero, &split.mults[1]);
    let t0_expect = named.t0_payload_p3(pw, &[tables::P3Name::One, tables::P3Name::Mu]);
    if t0 != t0_expect {
        return Err(VerifyError::Mismatch("Steinberg Type 0 payload".into()));
    }
    let tp = tables::actual_payload(pw, TypeTag::Plus, &split.mults[2]);
    let tp_expect = named.pm_payload(
        pw,
        TypeTag::Plus,
        &[PmName::One, PmName::Nu1, PmName::Nu3, PmName::Xi],
    );
    if tp != tp_expect {
        return Err(VerifyError::Mismatch("Steinberg Type + payload".into()));
    }
    let tm = tables::actual_payload(pw, TypeTag::Minus, &split.mults[3]);
    let tm_expect = named.pm_payload(pw, TypeTag::Minus, &[PmName::Nu3, PmName::Xi]);
    if tm != tm_expect {
        return Err(VerifyError::Mismatch("Steinberg Type - payload".into()));
    }
    Ok(())
}

pub fn criterion_so5_table(session: &Session) -> Report {
    run("criterion-09 SO5 unipotent restriction table", "(5,2), (5,3)", || {
        for q in [2usize, 3] {
            let pw = session.pworld(5, q)?;
            let uni = session.unipotent(5, q)?;
            verify_so5_restriction_table(&pw, &uni)?;
        }
        Ok("all six rows match in both parities".into())
    })
}

pub fn criterion_component_degrees(session: &Session) -> Report {
    run(
        "criterion-10 component degrees, both routes",
        "(5,2), (5,3), (7,2)",
        || {
            for (n, q) in [(5usize, 2usize), (5, 3), (7, 2)] {
                let pw = session.pworld(n, q)?;
                let uni = session.unipotent(n, q)?;
                verify_component_degrees(&pw, &uni)?;
                verify_m_route_all_irreducibles(&pw)?;
            }
            Ok("M-matrix route, direct split, and paper tables agree".into())
        },
    )
}

pub fn criterion_so7_table(session: &Session) -> Report {
    run("criterion-11 SO7 unipotent restriction table", "(7,2)", || {
        let pw = session.pworld(7, 2)?;
        let uni = session.unipotent(7, 2)?;
        verify_so7_restriction_table(&pw, &uni)?;
        Ok("Type 1/0 table, Gamma, and partial pm statements match".into())
    })
}

pub fn criterion_symbols(session: &Session) -> Report {
    run(
        "criterion-12 symbols, degree polynomials, branching",
        "(5,2), (5,3), (7,2)",
        || {
            // 18 label <-> symbol round trips
            for rows in [crate::symbols::so5_rows(), crate::symbols::so7_rows()] {
                for r in rows {
                    if crate::symbols::UnipotentLabel::from_symbol(&r.symbol)
                        .map_err(|e| VerifyError::Data(e.to_string()))?
                        != r.label
                        || r.label.to_symbol() != r.symbol
                    {
                        return Err(VerifyError::Mismatch(format!(
                            "round trip fails for {}",
                            r.label
                        )));
                    }
                }
            }
            let mut hc = 0;
            for (n, q) in [(5usize, 2usize), (5, 3), (7, 2)] {
                let pw = session.pworld(n, q)?;
                let uni = session.unipotent(n, q)?;
                verify_degree_polynomials(&pw, &uni)?;
                for (src, _) in unipotent_l_chars(&pw)? {
                    verify_hc_identity(&pw, &uni, &src)?;
                    hc += 1;
                }
            }
            Ok(format!(
                "18 round trips, degree polynomials, {hc} exact HC identities"
            ))
        },
    )
}

// ---- criterion 13: paper-independent property suites ---------------------

pub fn criterion_properties() -> Report {
    run(
        "criterion-13 property suites below the table layer",
        "fields, cyclotomics, reciprocity, orthogonality",
        || {
            // exhaustive field axioms for every supported q
            for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
                let f = FieldSpec::of_order(q)?;
                for a in f.elements() {
                    if a != 0 && f.mul(a, f.inv(a)) != 1 {
                        return Err(VerifyError::Mismatch(format!("inverse in GF({q})")));
                    }
                    for b in f.elements() {
                        for c in f.elements() {
                            if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)) {
                                return Err(VerifyError::Mismatch(format!(
                                    "distributivity in GF({q})"
                                )));
                            }
                        }
                    }
                }
            }
            // cyclotomic ring axioms on a spread of values
            let vals = [
                Cyclotomic::from_integer(3),
                Cyclotomic::root_of_unity(4, 1),
                Cyclotomic::root_of_unity(5, 2),
                &Cyclotomic::root_of_unity(8, 1) + &Cyclotomic::root_of_unity(12, 5),
                Cyclotomic::root_of_unity(9, 4).scale(&crate::exact::rat_frac(2, 3)),
            ];
            for a in &vals {
                if a.conj().conj() != *a {
                    return Err(VerifyError::Mismatch("conj involution".into()));
                }
                for b in &vals {
                    if &(a * b).conj() != &(&a.conj() * &b.conj()) {
                        return Err(VerifyError::Mismatch("conj multiplicativity".into()));
                    }
                    for c in &vals {
                        if &(a * b) * c != a * &(b * c) || a * &(b + c) != &(a * b) + &(a * c) {
                            return Err(VerifyError::Mismatch("cyclotomic ring axiom".into()));
                        }
                    }
                }
            }
            // Frobenius reciprocity on pseudo-random pairs over P_5(3) <= SO_5(3)
            let world = World::build(5, 3).map_err(VerifyError::Ortho)?;
            let tab_g = character_table(&world.g)?;
            let tab_p = character_table(&world.pd.p)?;
            let mut seed = 0x9e3779b97f4a7c15u64;
            let mut rng = move || {
                seed ^= seed << 13;
                seed ^= seed >> 7;
                seed ^= seed << 17;
                seed
            };
            for _ in 0..12 {
                let phi = &tab_p.irreducibles[(rng() as usize) % tab_p.irreducibles.len()];
                let chi = &tab_g.irreducibles[(rng() as usize) % tab_g.irreducibles.len()];
                let lhs = phi.induce(&world.g)?.inner_product(chi)?;
                let rhs = phi.inner_product(&chi.restrict(&world.pd.p)?)?;
                if lhs != rhs {
                    return Err(VerifyError::Mismatch("Frobenius reciprocity".into()));
                }
            }
            // orthogonality of freshly computed tables
            tab_g.verify()?;
            tab_p.verify()?;
            // <Ind_P^G 1, 1_G> = 1 and the regular character identity
            let one_p = ClassFunction::trivial(&world.pd.p);
            let ind = one_p.induce(&world.g)?;
            if ind.inner_product(&ClassFunction::trivial(&world.g))? != rat(1) {
                return Err(VerifyError::Mismatch("<Ind 1, 1> != 1".into()));
            }
            let mut regular = ClassFunction::zero(&world.pd.p);
            for chi in &tab_p.irreducibles {
                let d: i64 = chi
                    .degree()
                    .to_integer()
                    .try_into()
                    .map_err(|_| VerifyError::Data("degree".into()))?;
                regular = regular.add(&chi.scale_int(d));
            }
            for chi in &tab_p.irreducibles {
                if regular.inner_product(chi)? != chi.degree() {
                    return Err(VerifyError::Mismatch("regular character identity".into()));
                }
            }
            Ok("field axioms, ring axioms, reciprocity, orthogonality all hold".into())
        },
    )
}

// ---- extras beyond the numbered criteria ---------------------------------

/// For even q, deleting the middle row and column is an
/// isomorphism SO_{2m+1}(q) -> Sp_{2m}(q).
pub fn check_even_iso(session: &Session, n: usize) -> Report {
    run(
        "even-q isomorphism with Sp",
        &format!("({n},2)"),
        || {
            let pw = session.pworld(n, 2)?;
            let g = &pw.world.g;
            let field = g.field().clone();
            let mid = n / 2;
            let strip = |mat: &crate::matgrp::Mat| {
                let mut out = crate::matgrp::Mat::zero(&field, n - 1);
                let mut ri = 0;
                for i in 0..n {
                    if i == mid {
                        continue;
                    }
                    let mut ci = 0;
                    for j in 0..n {
                        if j == mid {
                            continue;
                        }
                        out.set(ri, ci, mat.at(i, j));
                        ci += 1;
                    }
                    ri += 1;
                }
                out
            };
            // symplectic Gram J_{2m}
            let mut jj = crate::matgrp::Mat::zero(&field, n - 1);
            for i in 0..n - 1 {
                jj.set(i, n - 2 - i, 1);
            }
            let gens: Vec<u32> = g.gens.clone();
            let mut injective_fail = false;
            let mut count = 0u64;
            g.for_each_member(|id| {
                let mat = g.mat(id);
                let img = strip(&mat);
                // preserves the symplectic form
                if img.transpose().mul(&jj).mul(&img) != jj {
                    injective_fail = true;
                }
                if img.is_identity() && id != 0 {
                    injective_fail = true;
                }
                // homomorphism against each generator
                for &ge in &gens {
                    let prod = strip(&g.mat(g.store.mul_ids(id, ge)));
                    if prod != img.mul(&strip(&g.mat(ge))) {
                        injective_fail = true;
                    }
                }
                count += 1;
            });
            if injective_fail {
                return Err(VerifyError::Mismatch("strip map failed".into()));
            }
            // surjectivity by the order formula |Sp_{2m}(q)| = |SO_{2m+1}(q)|
            Ok(format!("checked on all {count} elements"))
        },
    )
}

/// Runs the suite at a level, returning the ordered reports.
pub fn run_suite(level: SuiteLevel) -> Vec<Report> {
    let session = Session::default();
    let mut reports = Vec::new();
    match level {
        SuiteLevel::Quick => {
            reports.push(run("quick Irr(P) completeness", "(5,2)", || {
                let pw = session.pworld(5, 2)?;
                Ok(format!("{} irreducible characters", pw.irr_p.len()))
            }));
            reports.push(run("quick unipotent-class value tables", "(5,2)", || {
                session.pworld(5, 2)?.verify_z_value_tables()?;
                Ok(String::new())
            }));
            reports.push(run("quick SO5 restriction table", "(5,2)", || {
                let pw = session.pworld(5, 2)?;
                let uni = session.unipotent(5, 2)?;
                verify_so5_restriction_table(&pw, &uni)?;
                Ok(String::new())
            }));
        }
        SuiteLevel::Standard | SuiteLevel::Extended => {
            reports.push(criterion_orders(DEFAULT_ENUMERATION_BOUND));
            reports.push(criterion_orbits());
            reports.push(criterion_completeness(&session));
            reports.push(criterion_z_values(&session));
            reports.push(criterion_centralizers(&session));
            reports.push(criterion_coset_lattice(&session));
            reports.push(criterion_induced(&session));
            reports.push(criterion_steinberg(&session));
            reports.push(criterion_so5_table(&session));
            reports.push(criterion_component_degrees(&session));
            reports.push(criterion_so7_table(&session));
            reports.push(criterion_symbols(&session));
            reports.push(criterion_properties());
            if level == SuiteLevel::Extended {
                reports.push(check_even_iso(&session, 5));
                reports.push(check_even_iso(&session, 7));
                reports.push(run("SO5 restriction table at q = 4", "(5,4)", || {
                    let pw = session.pworld(5, 4)?;
                    let uni = session.unipotent(5, 4)?;
                    verify_so5_restriction_table(&pw, &uni)?;
                    pw.verify_z_value_tables()?;
                    Ok("even-parity branch also holds at q = 4".into())
                }));
                reports.push(skip(
                    "SO5 restriction table at q = 5",
                    "(5,5)",
                    "|SO_5(5)| = 9360000 exceeds the enumeration bound",
                ));
            }
        }
    }
    reports
}

pub fn all_match(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.status != Status::Mismatch)
}


