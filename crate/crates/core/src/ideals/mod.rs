//! Exact sparse polynomials, monomial orders, reduced Gröbner bases and
//! ideal operations.

mod binomial;
mod coeff;
mod groebner;
mod ideal;
mod io;
mod monomial;
mod poly;
mod ring;

pub use binomial::{ideal_of, ideal_of_in, inner_minor, vertex_ring};
pub use coeff::{Field, Fp, Rational};
pub use groebner::{normal_form, reduced_groebner};
pub use ideal::Ideal;
pub use io::{parse_polynomial, polynomial_from_json, polynomial_to_json};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::{MonomialOrder, Ring, Var, VariableTable};
