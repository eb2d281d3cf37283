pub mod chibra;
pub mod dops;
pub mod error;
pub mod liesuper;
pub mod linalg;
pub mod rational;
pub mod superpoly;
pub mod wgen;
