//! Combinatorics of quiver varieties: stability faces, the Crawley–Boevey
//! nonemptiness criterion, stratum enumeration, affine type A crystals and
//! level-rank duality, each cross-checked against an independent computation.

pub mod crystal;
pub mod error;
pub mod km;
pub mod levelrank;
mod linalg;
pub mod modrep;
pub mod mult;
pub mod nonempty;
pub mod rational;
pub mod stability;
pub mod strata;
pub mod verify;

pub use error::{Error, Result};
pub use km::{
    cartan_from_graph, expected_dim, extend_quiver, p_value, pairing, AffineWeight, CartanMatrix, DimVector,
    ExtendedQuiver, QuiverGraph,
};
pub use mult::{dominant_conjugate, freudenthal, positive_roots, root_mult_extended, RootDatum, WeightMultTable};
pub use stability::{face_of, in_closure, is_chamber, normalize, rplus, slope, Face, FaceKind, FaceSpec, StabilityParam};
pub use crystal::{crystal_b_lambda, mv_count, ColoredPartition, TensorCrystal};
pub use levelrank::{duality_dims, tensor_multiplicity, transpose, unique_mu_lift, DualityReport, Gyd, MayaDiagram};
pub use modrep::{hn_filtration, jh_factors, stability_verdict, GradedModule, HNFiltration, JHFactor, Verdict};
pub use nonempty::{affine_stratum_nonempty, ale_stable_dimvectors, cb_stable_nonempty, CBVerdict, CBWitness};
pub use strata::{enumerate_strata_ale, enumerate_strata_levi, local_model, LocalModel, StratumIndex};
