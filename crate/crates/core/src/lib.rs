pub mod corpus;
pub mod equivalence;
pub mod exactfield;
pub mod exec;
pub mod facering;
pub mod fan;
pub mod format;
pub mod realize;
pub mod simplicial;
