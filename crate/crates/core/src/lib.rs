//! Higher Nakayama algebras: Kupisch series, the combinatorial module calculus
//! of their distinguished d𝐙-cluster-tilting subcategory, an exact finite
//! dimensional algebra oracle, and the search for nd𝐙-cluster-tilting
//! subcategories.

pub mod cluster;
pub mod finalg;
pub mod kupisch;
pub mod linalg;
pub mod modcat;
pub mod oracle;
pub mod ordseq;
