//! Local character expansions and degenerate Whittaker dimensions of
//! irreducible integral principal representations of `GL_n` over a p-adic
//! field, computed from Zelevinsky multisegments.
//!
//! ```
//! use lce_core::{lce, klpoly::KlEngine, multiseg::Multisegment};
//!
//! let engine = KlEngine::new();
//! let m: Multisegment = "[0,1]+[1,2]".parse().unwrap();
//! let c = lce::c_via_kl(&engine, &m);
//! assert_eq!(c.to_string(), "{(2):1, (1,1):-1}");
//! assert_eq!(c, lce::c_via_decomposition(&engine, &m));
//! ```

pub mod combinat;
pub mod error;
pub mod klpoly;
pub mod lce;
pub mod multiseg;
pub mod report;
pub mod symgroup;

pub use error::{Error, Result};
