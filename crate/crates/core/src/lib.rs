pub mod group;
pub mod laurent;
pub mod mat3;
pub mod matrix_model;
pub mod quotients;
pub mod separation;
pub mod word;
