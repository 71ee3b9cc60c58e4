//! Exact computations in the stylic monoid `Styl(A)`, its integral monoid
//! algebra, the primitive orthogonal idempotents `e_γ`, the quiver `Q(A)`
//! presenting the algebra, and the Cartan invariants.

pub mod algebra;
pub mod alphabet;
pub mod cartan;
pub mod error;
pub mod matrix;
pub mod monoid;
pub mod quiver;
pub mod tableaux;
pub mod verify;

pub use alphabet::{Alphabet, Column, Letter, Word};
pub use error::StylicError;
pub use monoid::{ElemId, StylElement, StylMonoid};
