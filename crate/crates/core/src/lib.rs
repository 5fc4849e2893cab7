//! Enumeration of prime connected k-tangle projections.
//!
//! Projections are planar maps in a disk with `2k` legs ([`map`]). Every
//! prime projection can be drawn as a cascade, one crossing per level, and
//! written as a cascade code ([`cascade`]). Choosing the cascade by peeling
//! canonical root-vertices ([`rootcode`]) gives a canonical code with the
//! nesting property ([`canonical`]), which drives isomorph-free generation
//! ([`enumerate`]). Flype classes ([`flype`]) give alternating tangle counts.

pub mod canonical;
pub mod catalog;
pub mod cascade;
pub mod dihedral;
pub mod enumerate;
pub mod error;
pub mod flype;
pub mod map;
pub mod rootcode;
pub mod tables;

pub use canonical::{canonical_code, genealogy, parent, Genealogy};
pub use cascade::{CascadeCode, Pattern, Step};
pub use dihedral::DihedralElement;
pub use enumerate::{children, enumerate_levels, extension_sites, weak_filter, Class, CountsTable, ExtensionSite};
pub use error::{Error, Result};
pub use flype::{apply_flype, flype_class, flype_sites, FlypeSite};
pub use map::{End, Face, PlanarMap};
pub use rootcode::{face_code, invariant_root_code, Direction, FaceCode, Root, RootCode};
