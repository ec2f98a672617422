//! Exact computations with monomial ideals in blocked polynomial rings:
//! ideal arithmetic, irreducible and primary decomposition, associated
//! primes, multigraded Betti numbers via simplicial homology, and the
//! construction toolbox for Veronese-type, generalized mixed product, and
//! transversal polymatroidal ideals.

pub mod constructions;
pub mod decomposition;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod resolution;
pub mod ring;
pub mod simplicial;

pub use error::{Error, Result};
pub use ideal::{IdealJson, MonomialIdeal, MonomialPrime, Provenance};
pub use monomial::Monomial;
pub use ring::{BlockedRing, Ring};
