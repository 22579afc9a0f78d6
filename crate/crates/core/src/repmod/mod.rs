//! The module category as quiver representations: Hom, Ext, covers, presentations and
//! the Auslander-Reiten translate.

mod homological;
mod module;
mod proj;

pub use homological::*;
pub use module::*;
pub use proj::*;
