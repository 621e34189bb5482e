//! Linear systems `(R^n, f, B)` and their morphisms.
//!
//! The input submodule `B` is carried by a generator matrix. Over fields
//! and the integers the generators are stored canonically, so two systems
//! with the same endomorphism and the same input submodule compare equal
//! regardless of how `B` was presented.

use crate::error::{Error, Result};
use crate::linalg::{self, with_module_ring, ModuleRing};
use crate::matrix::{lower_matrix, Matrix, MatrixRing};
use crate::ring::{CommRing, Integers, Rationals, RingDescriptor, RingElement};

pub type DynMatrix = Matrix<RingElement>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSystem {
    ring: RingDescriptor,
    endo: DynMatrix,
    input_gens: DynMatrix,
}

fn check_entries(ring: &RingDescriptor, m: &DynMatrix) -> Result<()> {
    match m.entries().iter().find(|e| !ring.contains(e)) {
        Some(e) => Err(Error::DescriptorMismatch {
            expected: ring.name(),
            found: format!("{e:?}"),
        }),
        None => Ok(()),
    }
}

impl LinearSystem {
    /// `Σ_{A,B} = (R^n, A, Im B)`.
    pub fn from_pair(ring: RingDescriptor, a: DynMatrix, b: DynMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Shape(format!(
                "endomorphism must be square, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if b.rows() != a.rows() {
            return Err(Error::Shape(format!(
                "input generators have {} rows, state rank is {}",
                b.rows(),
                a.rows()
            )));
        }
        check_entries(&ring, &a)?;
        check_entries(&ring, &b)?;
        let input_gens = if ring.has_module_calculus() {
            linalg::canonical_span(&ring, &b)?
        } else {
            b
        };
        Ok(LinearSystem {
            ring,
            endo: a,
            input_gens,
        })
    }

    /// `Γ(p) = (R^p, 0, R^p)`.
    pub fn gamma(ring: RingDescriptor, p: usize) -> Self {
        LinearSystem {
            endo: ring.zeros(p, p),
            input_gens: ring.identity(p),
            ring,
        }
    }

    /// The monoidal unit `(0, 0, 0)`.
    pub fn zero_system(ring: RingDescriptor) -> Self {
        Self::gamma(ring, 0)
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn state_rank(&self) -> usize {
        self.endo.rows()
    }

    pub fn endo(&self) -> &DynMatrix {
        &self.endo
    }

    pub fn input_gens(&self) -> &DynMatrix {
        &self.input_gens
    }

    pub fn input_count(&self) -> usize {
        self.input_gens.cols()
    }

    fn same_ring(&self, other: &LinearSystem) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        Ok(())
    }

    /// `Σ₁ ⊕ Σ₂ = (X₁ ⊕ X₂, f₁ ⊕ f₂, B₁ ⊕ B₂)`.
    pub fn direct_sum(&self, other: &LinearSystem) -> Result<LinearSystem> {
        self.same_ring(other)?;
        let r = &self.ring;
        LinearSystem::from_pair(
            r.clone(),
            r.block_diag(&self.endo, &other.endo),
            r.block_diag(&self.input_gens, &other.input_gens),
        )
    }

    /// `Γ(p) ⊕ Σ`; the ancillary coordinates come first.
    pub fn dynamic_enlarge(&self, p: usize) -> LinearSystem {
        LinearSystem::gamma(self.ring.clone(), p)
            .direct_sum(self)
            .expect("same ring")
    }
}

/// Checks that `phi: X₁ → X₂` satisfies `φ(B₁) ⊆ B₂` and
/// `Im(f₂φ − φf₁) ⊆ B₂`.
pub fn is_morphism(phi: &DynMatrix, source: &LinearSystem, target: &LinearSystem) -> Result<bool> {
    source.same_ring(target)?;
    if phi.shape() != (target.state_rank(), source.state_rank()) {
        return Err(Error::Shape(format!(
            "map is {}x{}, expected {}x{}",
            phi.rows(),
            phi.cols(),
            target.state_rank(),
            source.state_rank()
        )));
    }
    check_entries(&source.ring, phi)?;
    with_module_ring!(&source.ring, "is_morphism", r => {
        let phi = lower_matrix(r, phi);
        let g1 = lower_matrix(r, &source.input_gens);
        let g2 = lower_matrix(r, &target.input_gens);
        let f1 = lower_matrix(r, &source.endo);
        let f2 = lower_matrix(r, &target.endo);
        morphism_conditions(r, &phi, &f1, &g1, &f2, &g2)
    })
}

pub(crate) fn morphism_conditions<R: ModuleRing>(
    r: &R,
    phi: &Matrix<R::Elem>,
    f1: &Matrix<R::Elem>,
    g1: &Matrix<R::Elem>,
    f2: &Matrix<R::Elem>,
    g2: &Matrix<R::Elem>,
) -> bool {
    let image = r.mat_mul(phi, g1);
    let defect = r.mat_sub(&r.mat_mul(f2, phi), &r.mat_mul(phi, f1));
    r.span_contains(g2, &image) && r.span_contains(g2, &defect)
}

/// A map of state modules verified to be a morphism of linear systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemMorphism {
    source: LinearSystem,
    target: LinearSystem,
    map: DynMatrix,
}

impl SystemMorphism {
    pub fn new(map: DynMatrix, source: LinearSystem, target: LinearSystem) -> Result<Self> {
        if !is_morphism(&map, &source, &target)? {
            return Err(Error::NotAMorphism);
        }
        Ok(SystemMorphism {
            source,
            target,
            map,
        })
    }

    pub fn identity(sys: &LinearSystem) -> Self {
        SystemMorphism {
            source: sys.clone(),
            target: sys.clone(),
            map: sys.ring.identity(sys.state_rank()),
        }
    }

    pub fn source(&self) -> &LinearSystem {
        &self.source
    }

    pub fn target(&self) -> &LinearSystem {
        &self.target
    }

    pub fn map(&self) -> &DynMatrix {
        &self.map
    }

    /// `next ∘ self`. Re-verified, so a failure would expose a broken
    /// composition law.
    pub fn then(&self, next: &SystemMorphism) -> Result<SystemMorphism> {
        if next.source != self.target {
            return Err(Error::Shape(
                "composing morphisms with mismatched systems".into(),
            ));
        }
        let map = self.source.ring.mat_mul(&next.map, &self.map);
        SystemMorphism::new(map, self.source.clone(), next.target.clone())
    }
}

/// Projections and injections of `Σ₁ ⊕ Σ₂`.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub sum: LinearSystem,
    pub pi1: SystemMorphism,
    pub pi2: SystemMorphism,
    pub iota1: SystemMorphism,
    pub iota2: SystemMorphism,
}

pub fn biproduct_witnesses(s1: &LinearSystem, s2: &LinearSystem) -> Result<Biproduct> {
    let sum = s1.direct_sum(s2)?;
    let r = &s1.ring;
    let (n1, n2) = (s1.state_rank(), s2.state_rank());
    let pi1 = r.identity(n1).hstack(&r.zeros(n1, n2))?;
    let pi2 = r.zeros(n2, n1).hstack(&r.identity(n2))?;
    Ok(Biproduct {
        pi1: SystemMorphism::new(pi1.clone(), sum.clone(), s1.clone())?,
        pi2: SystemMorphism::new(pi2.clone(), sum.clone(), s2.clone())?,
        iota1: SystemMorphism::new(pi1.transpose(), s1.clone(), sum.clone())?,
        iota2: SystemMorphism::new(pi2.transpose(), s2.clone(), sum.clone())?,
        sum,
    })
}

/// `(x₁, x₂) ↦ (x₂, x₁)` from `X₁ ⊕ X₂` to `X₂ ⊕ X₁`.
pub fn swap_map(ring: &RingDescriptor, n1: usize, n2: usize) -> DynMatrix {
    Matrix::from_fn(n1 + n2, n1 + n2, |i, j| {
        let hit = if i < n2 { j == n1 + i } else { j == i - n2 };
        if hit {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

/// Product pairing `Γ → Σ₁ ⊕ Σ₂` of two maps out of a common source.
pub fn pairing(psi1: &DynMatrix, psi2: &DynMatrix) -> Result<DynMatrix> {
    psi1.vstack(psi2)
}

/// Coproduct copairing `Σ₁ ⊕ Σ₂ → Γ`.
pub fn copairing(phi1: &DynMatrix, phi2: &DynMatrix) -> Result<DynMatrix> {
    phi1.hstack(phi2)
}
