//! Small numerical building blocks shared by the solver and its oracles.

pub mod fd;
pub mod ode;
pub mod quad;
