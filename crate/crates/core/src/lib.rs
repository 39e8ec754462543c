pub mod algebra;
pub mod classifier;
pub mod current;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod metric;
pub mod pbw;
pub mod super_ym;
pub mod tensor;
pub mod yang_mills;

pub use error::{Error, Result};
