//! Exact computation of homology-ribbon obstructions for algebraically
//! slice knots given by Seifert-form data, together with Milnor triple
//! linking numbers of derivative links.

pub mod algebra;
pub mod seifert;
pub mod json;
pub mod obstruction;
pub mod quotient;
pub mod milnor;
pub mod report;
