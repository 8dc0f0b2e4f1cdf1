pub mod algebra;
pub mod check;
pub mod cli;
pub mod covering;
pub mod derivatives;
pub mod error;
pub mod graph;
pub mod random;
pub mod spanning;
pub mod suites;
pub mod zeta;
