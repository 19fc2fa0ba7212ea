//! Kapranov motivic zeta functions of curves in a symbolic model of the
//! Grothendieck ring of varieties, Severi-Brauer class calculus, and a
//! brute-force finite-field oracle that checks every identity through the
//! point-counting specialization.
//!
//! * [`ring`]: the ring `Z[L, s1, ...]` with substitution and counting.
//! * [`series`]: truncated power series and factored rational forms.
//! * [`zeta`]: zeta-function constructors for projective spaces, curves
//!   with and without rational points, and zero-dimensional schemes.
//! * [`sb`]: classes of Severi-Brauer schemes.
//! * [`oracle`]: finite fields, curve models, point and divisor counts,
//!   Weil L-polynomials, and specialization checks.

pub mod oracle;
pub mod ring;
pub mod sb;
pub mod series;
pub mod zeta;

pub use ring::{projective_space_class, CountAssignment, Monomial, RingElement, RingError, Substitution, Symbol};
pub use series::{DenominatorFactor, RationalForm, SeriesError, TPolynomial, TruncatedSeries};
