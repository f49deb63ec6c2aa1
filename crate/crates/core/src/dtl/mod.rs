//! The dotted Temperley–Lieb category: diagram words, the expression language,
//! evaluation into the state-space model, and the parameterized sl₂ action.

mod action;
mod expr;
mod spanning;
mod verify;
mod word;

pub use action::{evaluate_expr, expand, Deriv, DtlAction, DtlParams, Evaluator, Jet};
pub use expr::{parse_expr, Expr, Macro, MAX_MACRO_STRANDS};
pub use spanning::{hom_rank, hom_rank_bounded, normalize, spanning_set, DottedMatching, HOM_RANK_BOUND};
pub use word::{DiagramWord, WordComb};
pub use verify::{
    check_bridge, check_h_degree, check_word_brackets, defining_relations, random_expr, random_word, verify_relations,
    word_degree, Relation, RelationCheck, RelationReport, SampleFailure, SampleReport, Status,
    RELATION_CONTEXT_STRANDS,
};
