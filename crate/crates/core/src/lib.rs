//! Uniserial varieties of finite dimensional quiver algebras.
//!
//! The algebra `Λ = KΓ/I` is given by a quiver, relations and a nilpotency
//! bound over `Q` or `GF(q)`. For a sequence of simple modules the crate
//! computes the masts, the affine charts `V_p` with their equations, the
//! corresponding submodules of `Λe`, the normalized matrix representations,
//! and certificates ruling out degenerations between uniserial modules.
//!
//! ```
//! use unisvar::fixtures;
//! use unisvar::scalar::Field;
//! use unisvar::uniserial::{masts, SimpleSequence};
//!
//! let sys = fixtures::fix_c(Field::Rational);
//! let series = SimpleSequence::parse(sys.quiver(), "1,2,3").unwrap();
//! let found = masts(&sys, &series);
//! assert_eq!(found.len(), 1);
//! assert_eq!(found[0].name(sys.quiver()), "b*c");
//! ```

pub mod algebra;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod grassmann;
pub mod io;
pub mod linalg;
pub mod modvar;
pub mod poly;
pub mod quiver;
pub mod scalar;
pub mod uniserial;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/quiver-files.md")]
    mod quiver_files {}
    #[doc = include_str!("../../../book/src/masts.md")]
    mod masts {}
    #[doc = include_str!("../../../book/src/charts.md")]
    mod charts {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
