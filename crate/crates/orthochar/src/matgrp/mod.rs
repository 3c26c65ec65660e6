//! Matrices over GF(q), the quadratic forms of the orthogonal groups, and
//! generic finite matrix-group machinery (closure, conjugacy classes,
//! fusion, subgroup recognition).

mod form;
mod group;
mod matrix;

pub use form::{group_order_formula, parabolic_order, FormKind, OrderKind, QuadraticForm};
pub use group::{
    class_fusion, closure, intersection, product_subgroup, ClassData, ConjClass, ElementStore,
    FiniteMatrixGroup, Group, GroupError, Members, DEFAULT_ENUMERATION_BOUND,
};
pub use matrix::{Key, Mat};
