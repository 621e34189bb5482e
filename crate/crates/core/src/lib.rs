//! Exact classification of linear control systems over commutative rings.
//!
//! A system `Σ = (Rⁿ, f, B)` is an endomorphism of a free module together
//! with an input submodule given by generators. This crate computes the
//! invariant chain `N_i = B + f(N_{i-1})` and its derived modules over
//! `Q`, `GF(p)` and `Z`, decides feedback, dynamic and stable equivalence
//! for locally Brunovsky systems, produces Brunovsky certificates over
//! fields, and checks explicit isomorphism certificates over any supported
//! ring, including `Q[x₁..x_k]/(g)`.
//!
//! The algorithms are generic over [`CommRing`]; [`RingDescriptor`] and
//! [`RingElement`] give a runtime-tagged ring for file-driven use.
//!
//! ```
//! use fbk_core::{compute_chain, feedback_equivalent, LinearSystem, MatrixRing, RingDescriptor};
//!
//! let q = RingDescriptor::Rationals;
//! let shift = LinearSystem::from_pair(
//!     q.clone(),
//!     q.mat_from_i64(&[&[0, 0], &[1, 0]]),
//!     q.mat_from_i64(&[&[1], &[0]]),
//! )?;
//! let report = compute_chain(&shift)?;
//! assert!(report.locally_brunovsky);
//! assert_eq!(report.z_signature().unwrap().to_string(), "(0, 1)");
//!
//! let split = LinearSystem::from_pair(q.clone(), q.zeros(2, 2), q.identity(2))?;
//! assert!(!feedback_equivalent(&shift, &split)?);
//! # Ok::<(), fbk_core::Error>(())
//! ```

pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod ring;
pub mod system;

pub use equivalence::{
    dynamic_equivalent, feedback_equivalent, feedback_equivalent_pairs_bruteforce, k0_class,
    stable_equivalent, verify_certificate, IsoCertificate, K0Class, RejectReason, Verdict,
};
pub use error::{Error, Result};
pub use invariants::{
    brunovsky, canonical_certificate, canonical_pair, compute_chain, z_signature, BrunovskyData,
    CanonicalCertificate, InvariantReport, ZSignature,
};
pub use linalg::{AbelianGroupStructure, ModuleRing, SmithDecomposition};
pub use matrix::{Matrix, MatrixRing};
pub use ring::{
    CommRing, Field, Integers, Polynomial, PrimeField, QuotientRing, Rationals, RingDescriptor,
    RingElement, TypedRing,
};
pub use system::{is_morphism, LinearSystem, SystemMorphism};

pub type RationalMatrix = Matrix<num_rational::BigRational>;
pub type IntMatrix = Matrix<num_bigint::BigInt>;
pub type ResidueMatrix = Matrix<u64>;
pub type PolyMatrix = Matrix<Polynomial>;
pub type DynMatrix = Matrix<RingElement>;
