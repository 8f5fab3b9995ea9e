//! Point counts for two families of plane sextics over finite fields.
//!
//! Both families have Jacobians that split, up to isogeny, into elliptic
//! curves and one genus-2 factor, so their point counts over F_{p^k} reduce to
//! traces of Frobenius of small curves over F_p. The crate finds the splitting,
//! counts the factors, lifts the traces, and classifies each curve against the
//! Serre bound. [`hunt`] sweeps parameters and writes auditable record files;
//! [`coverfilter`] holds the arithmetic side of a non-coverage argument for
//! quotients of the Hermitian curve.

pub mod coverfilter;
pub mod curves;
pub mod error;
pub mod families;
pub mod gf;
pub mod hunt;
pub mod par;
pub mod poly;
pub mod split;

pub use error::{Error, Result};
pub use families::{count_s, count_w, BoundClass, CurveReport, Family, FamilyContext};
pub use gf::{FieldElement, PrimeField};
pub use poly::Poly;
pub use split::{find_split, LegendreCubic, NotApplicable, SplitResult};
