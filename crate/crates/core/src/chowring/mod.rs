//! Exact arithmetic in the Chow ring of a projective bundle `P(E) -> Y`,
//! presented by formal generators and truncated at the base and total
//! dimensions.

mod eval;
mod expr;
mod ring;

pub use eval::{integrate_base, integrate_top, lift_to_top, pushforward, BaseAssignment};
pub use expr::{is_normal, normal_form, ClassExpr, FreePoly, Monomial, Rational};
pub use ring::{make_fibration_ring, make_scroll_ring, Generator, GeneratorKind, Ring, RingSpec};

#[cfg(test)]
mod tests;
