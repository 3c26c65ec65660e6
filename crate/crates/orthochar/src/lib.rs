//! Exact construction and verification engine for the character theory of
//! the odd special orthogonal groups SO5(q) and SO7(q), their maximal
//! parabolic subgroup P, and the restriction of unipotent characters to P.
//!
//! Everything is computed exactly: group elements are matrices over GF(q)
//! with table-driven arithmetic, and all character values live in cyclotomic
//! fields with rational coefficients. There are no tolerances anywhere.

pub mod clifford;
pub mod exact;
pub mod ff;
pub mod chartab;
pub mod matgrp;
pub mod ortho;
pub mod symbols;
pub mod verify;
