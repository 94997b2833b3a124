//! q-de Rham complexes of polynomial rings over `ℤ[q]`, their weight
//! decomposition and cohomology.

mod cohomology;
mod complex;
mod forms;
mod maps;
mod taylor;

pub use cohomology::{
    cohomology, cohomology_over, differential_factors, graded_cohomology, Coeff, CohomologyReport, CohomologyRow,
    DegreeCohomology,
};
pub use complex::{build_complex, build_complex_on, tensor, weight_piece, weights, CochainComplex, ComplexKind, PolyMatrix};
pub use forms::{d_form, d_twisted, nabla_q, wedge_sign, weight_strings, Form, FormBasisElement};
pub use maps::{decalage, quasi_iso_check, ChainMap, DecalageCertificate, PrimeCheck, QuasiIsoReport};
pub use taylor::{cosimplicial_face_check, q_taylor, CosimplicialReport, TaylorReport};
