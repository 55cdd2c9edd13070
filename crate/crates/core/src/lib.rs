//! dg Cohn and dg Leavitt path algebras attached to finite-dimensional quiver
//! algebras, with an independent singular Yoneda model and exact cohomology.

pub mod cohomology;
pub mod dg_leavitt;
pub mod fdalgebra;
pub mod fixtures;
pub mod foundation;
pub mod quiver;
pub mod render;
pub mod singular_yoneda;
