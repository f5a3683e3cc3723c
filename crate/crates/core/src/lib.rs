//! Exact certification of holomorphic fixed points for rational self-maps of
//! the projective plane P² and of P¹×P¹.

pub mod arith;
pub mod catalog;
pub mod fixpoint;
pub mod ideal;
pub mod io;
pub mod lab;
pub mod numeric;
pub mod poly;
pub mod proj;
pub mod transfer;
