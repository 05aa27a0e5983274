pub mod cache;
pub mod catalog;
pub mod classify;
pub mod congruence;
pub mod diffop;
pub mod error;
pub mod frobenius;
pub mod padic;
pub mod polyrat;
pub mod table;
pub mod wedge;

pub use error::{Error, Result};
