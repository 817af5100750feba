pub mod lp;
pub mod thermo;
pub mod market;
pub mod dispatch;
pub mod economics;
pub mod search;
pub mod cli;
