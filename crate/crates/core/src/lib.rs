pub mod algebra;
pub mod bounds;
pub mod counting;
pub mod numtheory;
pub mod suites;
