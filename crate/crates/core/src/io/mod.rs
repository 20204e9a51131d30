pub mod cxt;
pub mod json;
