//! Polygon-decomposition coordinates on the Fricke space of the
//! once-punctured torus, for the binding curve `A³B²`.
//!
//! A chart point `(t, s)` determines a punctured bigon (the cusp) and a
//! hexagon with equal opposite sides. The length of `A³B²` is the sum
//! `2a + c + d` of their side lengths.
//!
//! * [`hplane`]: upper half-plane kernel.
//! * [`decomposition`]: the chart, its regions, the bigon and the clearances.
//! * [`hexagon`]: construction and verification of the hexagon.
//! * [`lengths`]: the length function, its closed form on `s = 0`, the
//!   minimizer and the boundary probes.
//! * [`oracle`]: an independent check through trace coordinates.

// `!(x < y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decomposition;
pub mod error;
pub mod hexagon;
pub mod hplane;
pub mod lengths;
pub mod oracle;

pub use decomposition::{bigon_from_t, classify, make_vpoint, PuncturedBigon, Region, VPoint};
pub use error::{Error, Result};
