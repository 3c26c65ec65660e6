//! Property suites that are independent of the published tables, so a
//! failure here localizes a fault below the table layer.

use num_traits::{One, Zero};
use proptest::prelude::*;

use orthochar::chartab::{character_table, ClassFunction};
use orthochar::exact::{rat, rat_frac, Cyclotomic, Rational};
use orthochar::ff::{AdditiveCharacter, FieldSpec};
use orthochar::matgrp::{class_fusion, QuadraticForm};
use orthochar::ortho::World;

// ---- finite fields -------------------------------------------------------

#[test]
fn field_axioms_all_supported_sizes() {
    for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let f = FieldSpec::of_order(q).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }
}

#[test]
fn additive_character_sums_to_zero() {
    for q in [2usize, 3, 4, 5, 7, 8, 9] {
        let f = FieldSpec::of_order(q).unwrap();
        let xi = AdditiveCharacter::new(&f);
        let total = f
            .elements()
            .fold(Cyclotomic::zero(), |acc, x| &acc + &xi.value(x));
        assert_eq!(total, Cyclotomic::zero());
    }
}

// ---- cyclotomic ring axioms (property-based) ------------------------------

fn arb_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    let conductor = prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 9, 12]);
    (conductor, prop::collection::vec((0u32..12, -4i64..5, 1i64..4), 0..4)).prop_map(
        |(n, terms)| {
            let terms: Vec<(u32, Rational)> = terms
                .into_iter()
                .map(|(e, num, den)| (e % n, rat_frac(num, den)))
                .collect();
            Cyclotomic::new(n, &terms)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms(a in arb_cyclotomic(), b in arb_cyclotomic(), c in arb_cyclotomic()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in arb_cyclotomic(), b in arb_cyclotomic()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
    }

    #[test]
    fn lift_then_reduce_is_identity(a in arb_cyclotomic(), k in prop::sample::select(vec![2u32, 3, 4, 5])) {
        let m = a.conductor() * k;
        let lifted = a.lift(m);
        prop_assert_eq!(&lifted, &a);
        prop_assert_eq!(lifted.reduced(), a.reduced());
    }

    #[test]
    fn norm_of_root_sums_is_nonnegative_rational_when_real(e1 in 0u32..8, e2 in 0u32..8) {
        // x = z8^e1 + z8^e2 + conj of both is real; x * conj(x) = x^2 >= 0
        let x0 = &Cyclotomic::root_of_unity(8, e1) + &Cyclotomic::root_of_unity(8, e2);
        let x = &x0 + &x0.conj();
        let norm = &x * &x.conj();
        prop_assert_eq!(&norm, &(&x * &x));
        if let Some(r) = norm.as_rational() {
            prop_assert!(r >= Rational::zero());
        } else {
            // stays in the real subfield; conjugation fixes it
            prop_assert_eq!(norm.conj(), norm);
        }
    }
}

// ---- quadratic forms -------------------------------------------------------

#[test]
fn isometry_test_agrees_with_exhaustive_check() {
    for q in [2usize, 3] {
        let f = FieldSpec::of_order(q).unwrap();
        let form = QuadraticForm::odd(&f, 1);
        // all 3x3 matrices over GF(q) with q^9 <= 20k: exhaustively compare
        // is_isometry against the definition on every vector
        let total = (q as u64).pow(9);
        let vectors: Vec<Vec<u8>> = (0..(q as u64).pow(3))
            .map(|c| {
                let mut c = c;
                (0..3)
                    .map(|_| {
                        let d = (c % q as u64) as u8;
                        c /= q as u64;
                        d
                    })
                    .collect()
            })
            .collect();
        let mut isometries = 0u64;
        for key in 0..total {
            let m = orthochar::matgrp::Mat::from_key(&f, 3, key as u128);
            if m.det() == 0 {
                continue;
            }
            let direct = vectors
                .iter()
                .all(|v| form.eval(&m.mul_vec(v)) == form.eval(v));
            assert_eq!(form.is_isometry(&m), direct, "disagree at key {key}");
            if direct {
                isometries += 1;
            }
        }
        // |GO_3(q)| = d * |SO_3(q)|
        let d = if q % 2 == 0 { 1 } else { 2 };
        assert_eq!(
            isometries,
            d * (q * (q * q - 1)) as u64
        );
    }
}

// ---- character theory ------------------------------------------------------

#[test]
fn frobenius_reciprocity_exact() {
    let world = World::build(5, 2).unwrap();
    let tab_g = character_table(&world.g).unwrap();
    let tab_p = character_table(&world.pd.p).unwrap();
    for phi in &tab_p.irreducibles {
        let ind = phi.induce(&world.g).unwrap();
        for chi in &tab_g.irreducibles {
            let lhs = ind.inner_product(chi).unwrap();
            let rhs = phi
                .inner_product(&chi.restrict(&world.pd.p).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn induction_degree_and_identities() {
    let world = World::build(5, 2).unwrap();
    // Ind_P^G 1 has degree [G : P] = 15
    let ind = ClassFunction::trivial(&world.pd.p)
        .induce(&world.g)
        .unwrap();
    assert_eq!(ind.degree(), rat(15));
    assert_eq!(
        ind.inner_product(&ClassFunction::trivial(&world.g)).unwrap(),
        rat(1)
    );
    // induction from the group to itself is the identity
    let tab = character_table(&world.g).unwrap();
    for chi in tab.irreducibles.iter().take(3) {
        assert_eq!(&chi.induce(&world.g).unwrap(), chi);
    }
    // induction from the trivial subgroup gives the regular character
    let trivial_sub = world.g.subgroup_from_ids(vec![0], "1").unwrap();
    let reg = ClassFunction::trivial(&trivial_sub)
        .induce(&world.g)
        .unwrap();
    assert_eq!(reg.degree(), rat(world.g.order as i64));
    for chi in &tab.irreducibles {
        assert_eq!(reg.inner_product(chi).unwrap(), chi.degree());
    }
}

#[test]
fn u_classes_fuse_to_four_in_p() {
    for q in [2usize, 3] {
        let world = World::build(5, q).unwrap();
        let fusion = class_fusion(&world.pd.u, &world.pd.p).unwrap();
        let mut images = fusion;
        images.sort_unstable();
        images.dedup();
        assert_eq!(images.len(), 4);
    }
}

#[test]
fn restriction_of_trivial_is_trivial() {
    let world = World::build(3, 3).unwrap();
    let res = ClassFunction::trivial(&world.g)
        .restrict(&world.pd.p)
        .unwrap();
    assert_eq!(res, ClassFunction::trivial(&world.pd.p));
}

#[test]
fn center_of_abelian_u_is_u() {
    let world = World::build(5, 3).unwrap();
    let u = &world.pd.u;
    let members = u.member_ids();
    let center = u
        .subgroup_where("Z(U)", |m| {
            members
                .iter()
                .all(|&id| m.mul(&u.mat(id)) == u.mat(id).mul(m))
        })
        .unwrap();
    assert_eq!(center.order, u.order);
}

#[test]
fn even_q_strip_map_is_an_isomorphism_on_so3() {
    // removing the middle row and column maps SO_3(2) onto Sp_2(2)
    let world = World::build(3, 2).unwrap();
    let g = &world.g;
    let f = g.field().clone();
    let strip = |m: &orthochar::matgrp::Mat| {
        let mut out = orthochar::matgrp::Mat::zero(&f, 2);
        out.set(0, 0, m.at(0, 0));
        out.set(0, 1, m.at(0, 2));
        out.set(1, 0, m.at(2, 0));
        out.set(1, 1, m.at(2, 2));
        out
    };
    let mut jj = orthochar::matgrp::Mat::zero(&f, 2);
    jj.set(0, 1, 1);
    jj.set(1, 0, 1);
    for a in g.member_ids() {
        let sa = strip(&g.mat(a));
        assert_eq!(sa.transpose().mul(&jj).mul(&sa), jj);
        for b in g.member_ids() {
            let ab = g.store.mul_ids(a, b);
            assert_eq!(strip(&g.mat(ab)), sa.mul(&strip(&g.mat(b))));
        }
    }
}

#[test]
fn character_table_orthogonality_small_groups() {
    for (n, q) in [(3usize, 2usize), (3, 4), (3, 5)] {
        let world = World::build(n, q).unwrap();
        let tab = character_table(&world.g).unwrap();
        tab.verify().unwrap();
        let p_tab = character_table(&world.pd.p).unwrap();
        p_tab.verify().unwrap();
    }
}

#[test]
fn tensor_products_decompose_with_nonnegative_multiplicities() {
    let world = World::build(3, 3).unwrap();
    let tab = character_table(&world.g).unwrap();
    let one = ClassFunction::trivial(&world.g);
    for chi in &tab.irreducibles {
        assert_eq!(&chi.tensor(&one), chi);
        for psi in &tab.irreducibles {
            let prod = chi.tensor(psi);
            // a product of characters is a character: the decomposition
            // exists with non-negative integer multiplicities
            let mults = prod.decompose(&tab.irreducibles).unwrap();
            let total: Rational = mults
                .iter()
                .zip(&tab.irreducibles)
                .map(|(&m, b)| rat(m as i64) * b.degree())
                .sum();
            assert_eq!(total, prod.degree());
        }
    }
}

#[test]
fn character_table_json_round_trip() {
    let world = World::build(3, 3).unwrap();
    let tab = character_table(&world.g).unwrap();
    let json = serde_json::to_string(&tab.to_json()).unwrap();
    let parsed: orthochar::chartab::CharacterTableJson = serde_json::from_str(&json).unwrap();
    let back = orthochar::chartab::CharacterTable::from_json(&world.g, parsed).unwrap();
    back.verify().unwrap();
    for (a, b) in tab.irreducibles.iter().zip(&back.irreducibles) {
        assert_eq!(a, b);
    }
}

#[test]
fn fault_injection_is_detected() {
    // a deliberately corrupted identification must be caught by the table
    // comparison, not silently accepted
    let session = orthochar::verify::Session::default();
    let pw = session.pworld(5, 2).unwrap();
    let uni = session.unipotent(5, 2).unwrap();
    assert!(orthochar::verify::tables::verify_so5_restriction_table(&pw, &uni).is_ok());
    let mut corrupted = orthochar::symbols::UnipotentIds {
        rows: orthochar::symbols::so5_rows(),
        irr_index: uni.irr_index.clone(),
    };
    corrupted.irr_index.swap(2, 4); // swap [1^2,-,1] with [-,2,1]
    let res = orthochar::verify::tables::verify_so5_restriction_table(&pw, &corrupted);
    assert!(res.is_err(), "corrupted identification must be reported");
}

#[test]
fn norm_one_characters_are_flagged_irreducible() {
    let world = World::build(3, 3).unwrap();
    let tab = character_table(&world.g).unwrap();
    for chi in &tab.irreducibles {
        assert!(chi.is_irreducible().unwrap());
    }
    let sum = tab.irreducibles[0].add(&tab.irreducibles[0]);
    assert!(!sum.is_irreducible().unwrap());
    assert_eq!(sum.norm().unwrap(), rat(4));
    assert!(Rational::one() == tab.irreducibles[0].norm().unwrap());
}
