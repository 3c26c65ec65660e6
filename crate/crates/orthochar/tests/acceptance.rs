//! The acceptance suite: every numbered criterion runs exactly once and
//! prints one pass/fail line. All comparisons are exact; there are no
//! tolerances anywhere.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use orthochar::matgrp::DEFAULT_ENUMERATION_BOUND;
use orthochar::verify::{self, Report, Session, Status};

#[test]
fn acceptance_criteria() {
    let session = Session::default();
    let reports: Vec<Report> = vec![
        verify::criterion_orders(DEFAULT_ENUMERATION_BOUND),
        verify::criterion_orbits(),
        verify::criterion_completeness(&session),
        verify::criterion_z_values(&session),
        verify::criterion_centralizers(&session),
        verify::criterion_coset_lattice(&session),
        verify::criterion_induced(&session),
        verify::criterion_steinberg(&session),
        verify::criterion_so5_table(&session),
        verify::criterion_component_degrees(&session),
        verify::criterion_so7_table(&session),
        verify::criterion_symbols(&session),
        verify::criterion_properties(),
    ];
    let mut failed = Vec::new();
    for r in &reports {
        println!("{}", r.line());
        if r.status == Status::Mismatch {
            failed.push(r.claim.clone());
        }
    }
    assert!(
        failed.is_empty(),
        "acceptance criteria failed: {failed:?}"
    );

    // exercise the new-data operation: the Type pm components of the SO_7(2)
    // restrictions, internally checked against the component-degree table
    let pw = session.pworld(7, 2).expect("session already built (7,2)");
    let uni = session.unipotent(7, 2).expect("identified");
    let records = orthochar::verify::newdata::compute_new_pm_components(&pw, &uni)
        .expect("pm components consistent with the degree table");
    assert_eq!(records.len(), 12);
    println!("[PASS] new SO7(2) pm-component data: 12 records, degrees consistent");
}
