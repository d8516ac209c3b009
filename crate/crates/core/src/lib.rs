pub mod formal;
pub mod rational;
pub mod report;
pub mod voa;
pub mod axioms;
pub mod contragredient;
pub mod linalg;
pub mod fusion;
pub mod moduli;
pub mod suite;
