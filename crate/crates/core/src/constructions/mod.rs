//! Pipelines that produce verified certificates: rational tori, the pencil
//! and rank-4 constructions for irrational 3-tori, the Pythagorean
//! non-homogeneous family, the Bryant 2-torus family and a catalog of known
//! examples.

pub mod bryant;
pub mod catalog;
pub mod pencil;
pub mod pythagorean;
pub mod rational;

pub use bryant::{bryant_2torus, bryant_equations, bryant_weights, Bryant2TorusParams};
pub use catalog::{catalog, catalog_ids, catalog_item, CatalogItem};
pub use pencil::{
    construct_pencil_3torus, hull_weights, IrrationalityReport, PencilConstruction, Require,
};
pub use pythagorean::{
    centroid_weights, pythagorean_family, pythagorean_matrix_data, pythagorean_q, pythagorean_y,
    PythagoreanParams,
};
pub use rational::{construct_rational, RationalConstruction, RationalPipelineConfig};
