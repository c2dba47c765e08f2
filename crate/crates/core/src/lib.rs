//! Exact construction and certification of graded exceptional Lie algebras.

pub mod autos;
pub mod exactla;
pub mod field;
pub mod io;
pub mod liecore;
pub mod models;
pub mod pipeline;
pub mod verify;
