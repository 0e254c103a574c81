//! First-order syntax without function symbols: terms are variables or
//! constants. Provides the AST, a parser and printer for the textual format,
//! and the normal forms used downstream (NNF, standard form, clause form).

pub mod ast;
pub mod cnf;
pub mod error;
pub mod fresh;
pub mod normal;
pub mod parse;
pub mod prenex;
pub mod print;

pub use ast::{Atom, Formula, Quantifier, Signature, Term};
pub use cnf::{classify_cnf, cnf_matrix, CnfClass, CnfMatrix, Clause, Literal, DEFAULT_CLAUSE_LIMIT};
pub use error::SyntaxError;
pub use fresh::NameGen;
pub use normal::{formula_len, miniscope, rename_apart, substitute, substitute_one, to_nnf};
pub use parse::{parse, parse_atom, parse_formula};
pub use prenex::{to_standard_form, Block, StandardFormSentence};
pub use print::{canonical_key, print_formula};
