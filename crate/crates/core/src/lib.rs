//! Exact computations for the Hopf algebra `U = k<u,w>/(u^p, w^p - w, wu - uw - u)`
//! over finite fields: its modules, its Green ring, and its actions on quadratic
//! algebras of global dimension at most three.

pub mod action;
pub mod cli;
pub mod families;
pub mod gf;
pub mod green;
pub mod quadalg;
pub mod umod;
