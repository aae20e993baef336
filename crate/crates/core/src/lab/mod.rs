//! Seeded random nets and empirical theorem checks.

mod gen;
mod theorems;

pub use gen::{gen_random_net, ClassConstraint, GenConfig, REJECTION_BUDGET};
pub use theorems::{
    check_theorem, fair_lasso_probes, longest_path, implication_matrix, lasso_probes, ImplicationMatrix, LabBounds, PeProperty, TheoremId,
    TheoremReport, Violation, TRUE_IMPLICATIONS,
};
