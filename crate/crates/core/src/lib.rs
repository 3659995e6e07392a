//! Counting representations and augmentations of Legendrian knots and their
//! satellites over finite fields.

pub mod braid;
pub mod gf;
pub mod homfly;
pub mod knotlib;
pub mod matrix;
pub mod ncdga;
pub mod pathsets;
pub mod repcount;
pub mod ruling;
pub mod satellite;
pub mod sqrtq;
pub mod verify;
