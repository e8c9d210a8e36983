//! Combinatorial models of necklace-type wild Cantor sets.
//!
//! A defining sequence is stored as a tree of linked chains of solid tori.
//! From it the crate computes geometric-index facts, local genus, stage
//! equivalence, unsplittability and symmetry groups, and builds the three
//! families of necklaces realising `Z/m`, `Z` and any finitely generated
//! abelian group.

pub mod autgroup;
pub mod constructions;
pub mod equivalence;
pub mod genus;
pub mod index;
pub mod model;
