pub mod chevalley;
pub mod classify;
pub mod crosscheck;
pub mod cohomology;
pub mod error;
pub mod gamma;
pub mod expr;
pub mod gate;
pub mod induction;
pub mod linalg;
pub mod oracle;
pub mod par;
pub mod rootsums;
pub mod rootsys;
pub mod weight;

pub use error::{Error, Result};
pub use rootsys::{RootSystem, WeylElement};
pub use weight::{TChar, Weight};
