pub mod field;
pub mod prime;
pub mod unipoly;
pub mod perm;
pub mod curve;
pub mod report;
pub mod verify;
pub mod cli;
