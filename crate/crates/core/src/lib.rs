#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exact;
pub mod faulhaber;
pub mod mp;
pub mod oracle;
pub mod special;
pub mod weniger;

pub use error::{Error, Result};
