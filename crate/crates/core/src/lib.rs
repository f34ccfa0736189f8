//! Exact folding operators on combinatorial galleries in affine Coxeter
//! complexes, and the building retractions that realize them.

pub mod arith;
pub mod folding;
pub mod gallery;
pub mod glued_complex;
pub mod path_bridge;
pub mod root_geometry;
pub mod tree_building;

pub use arith::Rational;
pub use gallery::{Face, Gallery, GalleryError, GalleryType, Violation};
pub use root_geometry::{
    build_root_system, AffineIsometry, CartanType, Hyperplane, Point, Root, RootError, RootSystem,
    Sign,
};
