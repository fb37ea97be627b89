//! Vector space retrieval (tf-idf weighting, cosine ranking) extended with
//! validated matrix group actions on document vectors and the matching
//! dual representation on linear functionals.

pub mod cli;
pub mod dual;
pub mod groups;
pub mod linalg;
pub mod vsm;
