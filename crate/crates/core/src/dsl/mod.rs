//! The `.qid` identity language.
//!
//! ```text
//! identity "RR1" order 200 tags(classical) {
//!   lhs = sum(n >= 0; q^(n^2) / poch(q; q; n));
//!   rhs = 1 / (poch(q; q^5; inf) * poch(q^4; q^5; inf));
//! }
//! ```
//!
//! Entries are parsed by [`parse_catalog`], assigned a coefficient ring by
//! [`infer_entry`], lowered to [`Plan`]s and checked by [`verify`].

mod ast;
mod infer;
mod lexer;
mod lower;
mod parser;
mod printer;
mod verify;

pub use ast::{BinOp, Expr, IdentityEntry, RingHint};
pub use infer::{infer_entry, infer_expr, RingKind};
pub use lower::{eval_expr, lower, DslRing, Plan, SeriesPlan};
pub use parser::{parse_catalog, parse_expr};
pub use printer::{print_catalog, print_entry, print_expr};
pub use verify::{
    as_constant_term, compare_entry, expand, mutate, resolve_order, verify, verify_catalog, Expansion,
    Status, VerificationReport, DEFAULT_ORDER,
};
