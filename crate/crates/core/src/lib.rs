pub mod describe;
pub mod eval;
pub mod model;
pub mod repr;
pub mod spatial;
