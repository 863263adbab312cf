//! Compiles and runs every code listing in the guide under `book/src`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/corrections.md")]
pub mod corrections {}

#[doc = include_str!("../../../book/src/surfaces.md")]
pub mod surfaces {}

#[doc = include_str!("../../../book/src/vertex-star.md")]
pub mod vertex_star {}

#[doc = include_str!("../../../book/src/lantern.md")]
pub mod lantern {}

#[doc = include_str!("../../../book/src/convergence.md")]
pub mod convergence {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
