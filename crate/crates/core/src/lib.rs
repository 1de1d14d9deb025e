// `^` is the wedge product, so `a ^ a` is meaningful
#![allow(clippy::eq_op, clippy::suspicious_arithmetic_impl)]

pub mod exterior;
pub mod liealg;
pub mod splitting;
pub mod su3;
pub mod catalog;
pub mod obstruction;
