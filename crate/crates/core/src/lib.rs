//! Multiply constant-weight codes: bounds, constructions and search.

pub mod bounds;
pub mod code;
pub mod combin;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod format;
pub mod search;

pub use code::{Code, Codeword, Shape};
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/codes.md")]
    mod codes {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/designs.md")]
    mod designs {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/two-dimensional.md")]
    mod two_dimensional {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
