//! Combinatorial substrates: factorizations of `K_n`, Latin rectangles,
//! families of disjoint triple packings and α-resolvable designs.

mod factor;
mod resolvable;
mod store;
mod triples;

pub use factor::{
    factorization, gamma, latin_rectangle, near_one_factorization, one_factorization, Edge, FactorSet,
    LatinRectangle,
};
pub use resolvable::{check_necessary_conditions, is_known_exception, ResolvableDesign};
pub use store::{import_design, parse_design, write_design, Design, DesignStore, DESIGNS_DIR_ENV};
pub use triples::{extra_packings, max_disjoint_optimal, Triple, TriplePackingFamily};

use crate::error::Result;

/// The bundled family of disjoint 2-(n,3,1) packings.
pub fn disjoint_triple_packings(n: usize) -> Result<TriplePackingFamily> {
    DesignStore::bundled().triple_packings(n)
}

/// An α-resolvable BIBD(M, k, λ) from the built-in recipes and bundled data.
pub fn alpha_resolvable_bibd(m: usize, k: usize, lambda: usize, alpha: usize) -> Result<ResolvableDesign> {
    DesignStore::bundled().alpha_resolvable_bibd(m, k, lambda, alpha)
}
