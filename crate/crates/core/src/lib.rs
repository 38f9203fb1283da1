//! Exact eigenfunctions of Johnson graphs `J(n, w)`.
//!
//! The crate builds eigenfunctions with the radial, minimal-support,
//! difference, lift and inducing constructions, decides whether an
//! eigenfunction is determined by its values on a sphere or a ball, and
//! checks every such claim against brute-force exact linear algebra.
//!
//! All arithmetic is exact: integers are `BigInt` and function values are
//! `BigRational`.

pub mod combinatorics;
pub mod eigen;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod reconstruct;

pub use combinatorics::{binom, eberlein, eigenvalue, multiplicity, ExactInt, ExactRational};
pub use eigen::{
    difference, eigenspace_basis, f0, induce, induce_stepwise, is_eigenfunction, lift, lift_at,
    paired_function, proportionality_alpha, radial, sphere_sum_check, tableau_basis, BasisCache,
    BasisRoute, EigenIndex, EigenspaceBasis, ProportionalityWitness, VertexFunction,
};
pub use error::{Error, Result};
pub use graph::{ball, distance, neighbors, sphere, JohnsonParams, SphereSpec, Vertex};
pub use linalg::{nullspace, rank, rref, solve, RationalMatrix, Solution};
pub use reconstruct::{
    counterexample_sphere, criterion, f1, f2, hypothesis_holds, oracle_on_set, CriterionReport,
    Oracle, OracleVerdict, Reason, ReconstructionResult, Verdict, WhichF,
};
