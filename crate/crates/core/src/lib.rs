pub mod polyring;
pub mod proofcore;
pub mod reslin;
pub mod xlate;
pub mod bvp;

mod json;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/proofs.md")]
    mod proofs {}
    #[doc = include_str!("../../../book/src/reslin.md")]
    mod reslin {}
    #[doc = include_str!("../../../book/src/translations.md")]
    mod translations {}
    #[doc = include_str!("../../../book/src/bvp.md")]
    mod bvp {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
