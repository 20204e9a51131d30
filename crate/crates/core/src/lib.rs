//! Attribute continuous formal contexts over finite data.

pub mod concepts;
pub mod context;
pub mod error;
pub mod generate;
pub mod io;
pub mod kernel;
pub mod morphisms;
pub mod order;
pub mod representation;
pub mod sets;
pub mod subclasses;
pub mod suite;
pub mod symbolic;

pub use error::{Error, Result};
pub use sets::{AttrSet, ObjSet};
