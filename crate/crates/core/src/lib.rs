#![no_std]
extern crate alloc;

pub mod atlas;
pub mod equiv;
pub mod error;
pub mod exactnum;
pub mod jets;
pub mod liftop;
pub mod moebius;
pub mod rep;

pub use error::{Error, Result};
