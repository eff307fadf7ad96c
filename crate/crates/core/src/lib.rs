//! Desk-scale computational number theory workbench: sieved arithmetic
//! functions, exact verification of weighted summation-inversion identities
//! over a formal prime-log basis, power sums over arithmetic progressions,
//! twisted Möbius sums with closed-form targets, prime-constellation counting
//! with Hardy–Littlewood predictions, and Germain-prime primitive-root scans.

pub mod ap;
pub mod constellations;
pub mod error;
pub mod logs;
pub mod mangoldt;
pub mod modmath;
pub mod pnt;
pub mod primitive_roots;
pub mod qr;
pub mod sieve;
pub mod twisted;
pub mod verify;

pub use error::{Error, Result};
pub use logs::{bilinear_product, LogBilinear, LogCombination};
pub use sieve::{SieveTables, DEFAULT_MEM_CEILING};
