//! Arithmetic in `F_p(t)` and in rational extensions `F_p(s)`, `t = phi(s)`.

pub mod extension;
pub mod factor;
pub mod field;
pub mod parse;
pub mod place;
pub mod poly;
pub mod ratfunc;

pub use extension::{minimal_polynomial, weil_height, ExtensionMap, PlaceOverData};
pub use factor::{factor, factor_with_seed, is_irreducible, set_seed, Factorization};
pub use field::ConstantField;
pub use parse::parse_rational_function;
pub use place::{order_at, order_or_inf, residue, support, Place, ResidueField};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
