//! Seeded random data for the law batteries and verification suites.
//!
//! Everything flows from a ChaCha8 stream keyed by a `u64` seed, so a run is
//! reproducible on any platform from the seed alone and a reported
//! counterexample can be replayed exactly. Coefficients are small Gaussian
//! integers: large numerators cost time without strengthening an exact
//! identity check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraElement};
use crate::connection::{perturbed, Connection};
use crate::derivation::{Derivation, DerivationBasis};
use crate::forms::DerForm;
use crate::linalg::{vec_add_scaled, SubspaceBasis};
use crate::scalar::Scalar;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A small rational integer in `[-2, 2]`.
    pub fn int_scalar(&mut self) -> Scalar {
        Scalar::from_int(self.rng.gen_range(-2i64..=2))
    }

    /// A small Gaussian integer, both parts in `[-2, 2]`.
    pub fn scalar(&mut self) -> Scalar {
        Scalar::gaussian(self.rng.gen_range(-2i64..=2), self.rng.gen_range(-2i64..=2), 1)
    }

    pub fn vector(&mut self, len: usize) -> Vec<Scalar> {
        (0..len).map(|_| self.scalar()).collect()
    }

    pub fn element(&mut self, algebra: &Algebra) -> AlgebraElement {
        algebra.element(self.vector(algebra.dim()))
    }

    pub fn derivation(&mut self, derb: &DerivationBasis) -> Derivation {
        let coords = self.vector(derb.dim());
        derb.from_coordinates(&coords)
    }

    /// A random vector inside a subspace. When the subspace is the whole
    /// ambient space the combination step is skipped: the reduced basis is the
    /// identity and a direct draw is the same distribution at a fraction of
    /// the cost.
    pub fn in_subspace(&mut self, space: &SubspaceBasis) -> Vec<Scalar> {
        if space.dim() == space.ambient() {
            return self.vector(space.ambient());
        }
        let mut out = vec![Scalar::zero(); space.ambient()];
        for vector in space.vectors() {
            let c = self.scalar();
            if !c.is_zero() {
                vec_add_scaled(&mut out, vector, &c);
            }
        }
        out
    }

    /// A random form of the given degree drawn from `space`, which must be
    /// the matching degree slice of the center-multilinear forms.
    pub fn form(&mut self, derb: &DerivationBasis, degree: usize, space: &SubspaceBasis) -> DerForm {
        let flat = self.in_subspace(space);
        DerForm::from_flat(derb, degree, &flat)
    }

    /// A sparse draw from a subspace: a combination of at most `terms` basis
    /// vectors. Exact differentials of dense high-degree forms cost time
    /// proportional to every component, so large batteries sample sparsely.
    pub fn sparse_in_subspace(&mut self, space: &SubspaceBasis, terms: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); space.ambient()];
        if space.dim() == 0 {
            return out;
        }
        for _ in 0..terms {
            let idx = self.rng.gen_range(0..space.dim());
            let c = self.scalar();
            if !c.is_zero() {
                vec_add_scaled(&mut out, space.basis_vector(idx), &c);
            }
        }
        out
    }

    /// Sparse counterpart of [`Sampler::form`].
    pub fn sparse_form(
        &mut self,
        derb: &DerivationBasis,
        degree: usize,
        space: &SubspaceBasis,
        terms: usize,
    ) -> DerForm {
        let flat = self.sparse_in_subspace(space, terms);
        DerForm::from_flat(derb, degree, &flat)
    }

    /// `base` shifted by a random combination of perturbation vectors. The
    /// space must come from `perturbation_space` for the same module, so the
    /// shifted rule is again a connection.
    pub fn connection(&mut self, base: &Connection, space: &SubspaceBasis) -> Connection {
        let gamma = self.in_subspace(space);
        perturbed(base, &gamma).expect("perturbation vectors preserve the connection axioms")
    }
}
