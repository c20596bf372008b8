//! Deviation bounds for `N_f(D, k, b)`, numerical checks of the
//! character-sum estimates behind them, and verdicts against exact counts.

mod charsums;
mod report;
mod theorems;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::counting::CountError;

pub use charsums::{
    check_hua, check_weil, eval_mod, full_sums_zn, gauss_sum_deviation, HuaCheck, SumCheck, SUM_SLACK,
};
pub use report::{
    bound_rows, judge_table, main_term, verify_table, verify_theorem, BoundReport, Theorem, TheoremSetup,
};
pub use theorems::{
    applicability_abelian, applicability_fq, applicability_zn, bound_abelian, bound_fq, bound_zn,
    Applicability, ConstantChoice,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("inconsistent constant: {0}")]
    InconsistentConstant(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("theorem does not apply to this structure: {0}")]
    WrongStructure(String),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
