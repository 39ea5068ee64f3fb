pub mod cli;
pub mod constructions;
pub mod dimension;
pub mod exactnum;
pub mod exponents;
pub mod template;
