//! Exact preprocessing for sum-of-squares programs.
//!
//! A polynomial `p` is a sum of squares when `p = zᵀQz` for a monomial
//! vector `z` and a positive semidefinite `Q`. The size of `z` drives the
//! cost of the resulting semidefinite program, so this crate shrinks it
//! before a solver ever sees the problem:
//!
//! * [`newton`] keeps the monomials inside half the Newton polytope,
//!   using an exact rational LP ([`ratlp`]) for hull membership.
//! * [`zda`] drops monomials whose Gram diagonal is forced to zero, which
//!   can cut below the Newton bound.
//! * [`simplify`] applies the same idea to SOS programs with decision
//!   variables and also finds decision variables that must vanish.
//! * [`sdp_io`] writes the reduced problem as SDPA sparse data and JSON
//!   reports.
//!
//! All arithmetic is exact over `BigRational`.
//!
//! ```
//! use sos_prune::{basis::full_basis, poly::parse_polynomial, zda::zda_reduce_polynomial};
//!
//! let p = parse_polynomial("x1^2 + x2^2 + x1^4*x2^4", None).unwrap();
//! let r = zda_reduce_polynomial(&p, &full_basis(2, 4)).unwrap();
//! assert_eq!(r.final_basis.names(), ["x1", "x2", "x1^2*x2^2"]);
//! ```

pub mod basis;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod gram;
pub mod newton;
pub mod pipeline;
pub mod poly;
pub mod ratlp;
pub mod sdp_io;
pub mod simplify;
pub mod zda;

pub use basis::{count_monomials, full_basis, heuristic_init, MonomialBasis};
pub use error::{Error, Result};
pub use gram::{build_gram_system, evaluate_gram, GramConstraintSystem, GramMatrix};
pub use newton::{even_vertex_screen, hull_membership, newton_reduce};
pub use poly::{parse_polynomial, Coefficient, DegreeVector, Polynomial};
pub use simplify::{build_program_system, simplify_program, SosProgram};
pub use zda::{zda_reduce, zda_reduce_polynomial};
