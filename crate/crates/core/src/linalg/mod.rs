pub mod abelian;
pub mod int;
pub mod modular;
