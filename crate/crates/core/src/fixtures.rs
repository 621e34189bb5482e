//! The unit-sphere example over `Q[x,y,z]/(x² + y² + z² − 1)`.
//!
//! `f` sends `e₁` to `e₄`; `f′` sends `e₁, e₂, e₃` to `x e₄, y e₄, z e₄`.
//! After adding `Γ(1)` in front, the lower-triangular `φ` on `R⁵` with
//! first column `(1, x, y, z, 0)` relates the two systems.
//!
//! Two input modules are provided:
//!
//! * `main`: `B = span{(x, y, z, 0), e₄}`, the input module for which the
//!   printed `φ` is a feedback isomorphism. Neither system is reachable.
//! * `e123`: `B = span{e₁, e₂, e₃}`. Both systems are locally Brunovsky
//!   with `Z = (R², R)` and `Z = (P, R)`, `P = ker (x y z)`. The printed `φ`
//!   does not carry `B` onto itself here, so the certificate uses
//!   `φ₊ = φ·E·S`, where `E` clears the first row and `S` rotates the
//!   first two coordinates.

use crate::equivalence::IsoCertificate;
use crate::matrix::{Matrix, MatrixRing};
use crate::ring::{QuotientRing, RingDescriptor};
use crate::system::{DynMatrix, LinearSystem};

pub fn sphere_ring() -> RingDescriptor {
    RingDescriptor::PolyQuotient(QuotientRing::sphere())
}

fn mat(ring: &RingDescriptor, rows: &[&[&str]]) -> DynMatrix {
    let entries: Vec<Vec<_>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| ring.parse_element(t).expect("fixture literal"))
                .collect()
        })
        .collect();
    Matrix::from_rows(entries).expect("rectangular fixture")
}

pub fn f() -> DynMatrix {
    mat(
        &sphere_ring(),
        &[
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["1", "0", "0", "0"],
        ],
    )
}

pub fn f_prime() -> DynMatrix {
    mat(
        &sphere_ring(),
        &[
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["0", "0", "0", "0"],
            &["x", "y", "z", "0"],
        ],
    )
}

pub fn phi() -> DynMatrix {
    mat(
        &sphere_ring(),
        &[
            &["1", "0", "0", "0", "0"],
            &["x", "1", "0", "0", "0"],
            &["y", "0", "1", "0", "0"],
            &["z", "0", "0", "1", "0"],
            &["0", "0", "0", "0", "1"],
        ],
    )
}

/// Inverse of `φ`: negate the entries below the diagonal.
pub fn phi_inverse() -> DynMatrix {
    mat(
        &sphere_ring(),
        &[
            &["1", "0", "0", "0", "0"],
            &["-x", "1", "0", "0", "0"],
            &["-y", "0", "1", "0", "0"],
            &["-z", "0", "0", "1", "0"],
            &["0", "0", "0", "0", "1"],
        ],
    )
}

#[derive(Clone, Debug)]
pub struct SphereFixture {
    pub name: &'static str,
    pub sigma: LinearSystem,
    pub sigma_prime: LinearSystem,
    /// `Γ(1) ⊕ Σ`.
    pub source: LinearSystem,
    /// `Γ(1) ⊕ Σ′`.
    pub target: LinearSystem,
    pub cert: IsoCertificate,
}

fn systems(b: DynMatrix) -> (LinearSystem, LinearSystem, LinearSystem, LinearSystem) {
    let r = sphere_ring();
    let sigma = LinearSystem::from_pair(r.clone(), f(), b.clone()).expect("fixture shapes");
    let sigma_prime = LinearSystem::from_pair(r, f_prime(), b).expect("fixture shapes");
    let source = sigma.dynamic_enlarge(1);
    let target = sigma_prime.dynamic_enlarge(1);
    (sigma, sigma_prime, source, target)
}

/// Input module `span{(x, y, z, 0), e₄}` with the printed `φ`.
pub fn sphere_main() -> SphereFixture {
    let r = sphere_ring();
    let b = mat(&r, &[&["x", "0"], &["y", "0"], &["z", "0"], &["0", "1"]]);
    let (sigma, sigma_prime, source, target) = systems(b);
    // Global generators: e₀, (0, x, y, z, 0), e₄. φ fixes the last two and
    // sends e₀ to their first plus e₀.
    let u = r.mat_from_i64(&[&[1, 0, 0], &[1, 1, 0], &[0, 0, 1]]);
    let v = r.mat_from_i64(&[&[1, 0, 0], &[-1, 1, 0], &[0, 0, 1]]);
    // f₂φ − φf₁ is zero except for its e₄ row (1, x − 1, y, z, 0).
    let kw = mat(
        &r,
        &[
            &["0", "0", "0", "0", "0"],
            &["0", "0", "0", "0", "0"],
            &["1", "x - 1", "y", "z", "0"],
        ],
    );
    SphereFixture {
        name: "main",
        sigma,
        sigma_prime,
        source,
        target,
        cert: IsoCertificate {
            phi: phi(),
            psi: phi_inverse(),
            u,
            v,
            kw,
        },
    }
}

/// Clears the first row of `φ` below its diagonal entry.
fn clear_first_row() -> (DynMatrix, DynMatrix) {
    let r = sphere_ring();
    let e = mat(
        &r,
        &[
            &["1", "-x", "-y", "-z", "0"],
            &["0", "1", "0", "0", "0"],
            &["0", "0", "1", "0", "0"],
            &["0", "0", "0", "1", "0"],
            &["0", "0", "0", "0", "1"],
        ],
    );
    let e_inv = mat(
        &r,
        &[
            &["1", "x", "y", "z", "0"],
            &["0", "1", "0", "0", "0"],
            &["0", "0", "1", "0", "0"],
            &["0", "0", "0", "1", "0"],
            &["0", "0", "0", "0", "1"],
        ],
    );
    (e, e_inv)
}

/// `(e₀, e₁) ↦ (−e₁, e₀)` and its inverse.
fn rotation() -> (DynMatrix, DynMatrix) {
    let r = sphere_ring();
    let s = r.mat_from_i64(&[
        &[0, 1, 0, 0, 0],
        &[-1, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0],
        &[0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 1],
    ]);
    (s.clone(), s.transpose())
}

/// `φ₊ = φ·E·S` and its inverse `S⁻¹·E⁻¹·φ⁻¹`.
pub fn phi_plus() -> (DynMatrix, DynMatrix) {
    let r = sphere_ring();
    let (e, e_inv) = clear_first_row();
    let (s, s_inv) = rotation();
    let forward = r.mat_mul(&r.mat_mul(&phi(), &e), &s);
    let back = r.mat_mul(&r.mat_mul(&s_inv, &e_inv), &phi_inverse());
    (forward, back)
}

/// Input module `span{e₁, e₂, e₃}` with `φ₊`.
pub fn sphere_e123() -> SphereFixture {
    let r = sphere_ring();
    let b = r.mat_from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let (sigma, sigma_prime, source, target) = systems(b);
    let (forward, back) = phi_plus();
    // φ₊ preserves span{e₀, …, e₃} and commutes with the dynamics, so the
    // witnesses are its leading 4×4 block, that of the inverse, and zero.
    let u = forward.submatrix(0..4, 0..4);
    let v = back.submatrix(0..4, 0..4);
    let kw = r.zeros(4, 5);
    SphereFixture {
        name: "e123",
        sigma,
        sigma_prime,
        source,
        target,
        cert: IsoCertificate {
            phi: forward,
            psi: back,
            u,
            v,
            kw,
        },
    }
}

pub fn sphere_fixtures() -> Vec<SphereFixture> {
    vec![sphere_main(), sphere_e123()]
}
