//! Named instances (Witt, so(n), matrix algebras, sl(2) and the skew
//! pencils), the export registry, and the claims matrix.

mod builders;
mod claims;
mod registry;

pub use builders::{
    check_restriction, diag, element_matrix, make_assoc_mat, make_example2, make_gl, make_sl2,
    make_sl2_bracket, make_so, make_witt, make_witt_shift, mat_element, matrix_bracket,
    matrix_unit, sl2_fundamental, so_basis, symmetric_offdiag3, Example2, Sl2Example,
};
pub use claims::{
    assoc_instances, bimyb_polynomial_set, claims_matrix, fact, myb_instances, polynomial_set,
    ClaimRow, ClaimsConfig, ClaimsMatrix, Flag,
};
pub use registry::{build, Bundle, CatalogEntry, PencilRefs, RepresentationRefs, ENTRIES};
