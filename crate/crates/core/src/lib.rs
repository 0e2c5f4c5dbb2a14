//! Edgewise subdivisions `T_{k,q}` of a simplex: facet codes, links and
//! stars of faces, star clusters, shellings and h-vectors, each checked
//! against an independent brute-force route.
//!
//! ```
//! use edgewise::Edgewise;
//!
//! let t = Edgewise::new(3, 2)?;
//! assert_eq!(t.build_complex()?.f_vector(), vec![1, 6, 9, 4]);
//! assert!(t.shelling_order()?.certificate.valid);
//! # Ok::<(), edgewise::Error>(())
//! ```

mod bigserde;
pub mod combinatorics;
pub mod complex;
pub mod edgewise;
pub mod error;
pub mod poset;
pub mod shelling;
pub mod starcluster;

pub use combinatorics::{Partition, Word};
pub use complex::{are_isomorphic, h_from_f, verify_shelling, ShellingCertificate, SimplicialComplex};
pub use edgewise::{
    Edgewise, FaceLink, FacetCode, LatticeVertex, LinkClass, LinkDescriptor, VertexLink, VertexType,
    DEFAULT_MAX_FACETS,
};
pub use error::{Error, Result};
pub use poset::{GradedPoset, HRoute};
pub use shelling::{FacetKey, HVectorReport, ShellingReport};
pub use starcluster::StarClusterReport;
