pub mod calculus;
pub mod cli;
pub mod exterior;
pub mod gwistor;
pub mod scalars;
pub mod theorems;
