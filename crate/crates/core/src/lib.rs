pub mod anick;
pub mod cartan;
pub mod corpus;
pub mod exact_poly;
pub mod graded_algebra;
pub mod homotopy_ranks;
pub mod weyl_series;
