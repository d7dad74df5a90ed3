//! Doctests for the guide in `book/`.

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/structures.md")]
mod structures {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/ideals.md")]
mod ideals {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/growth.md")]
mod growth {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/metric.md")]
mod metric {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/ashes.md")]
mod ashes {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/ternary.md")]
mod ternary {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
