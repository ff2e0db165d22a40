pub mod bitseq;
pub mod bounds;
pub mod cli;
pub mod codes;
pub mod complexity;
pub mod correlation;
pub mod error;
pub mod generators;
pub mod oracle;
pub mod verify;
