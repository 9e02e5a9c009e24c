pub mod bautin;
pub mod bounds;
pub mod error;
pub mod field;
pub mod numeric;
pub mod parallel;
pub mod poincare;
pub mod precise;
pub mod selftest;
pub mod symbolic;
