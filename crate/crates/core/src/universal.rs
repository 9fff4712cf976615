//! The universal differential calculus at degree ≤ 2.
//!
//! `Ω¹_u(A)` is the kernel of the product map `μ : A⊗A → A`, a bimodule under
//! `x·(a⊗b)·y = xa ⊗ by`, with universal derivation `d_u x = 1⊗x − x⊗1`.
//! Every derivation `δ : A → M` into a central bimodule factors uniquely as
//! `δ = j_δ ∘ d_u` through the bimodule map `j_δ(Σ x_i ⊗ y_i) = Σ x_i·δ(y_i)`.
//!
//! Degree 2 is the balanced tensor square `Ω¹_u ⊗_A Ω¹_u`, materialized inside
//! `A⊗A⊗A` by collapsing the middle pair: `(a⊗b) ⊗_A (u⊗v) ↦ a ⊗ bu ⊗ v`.
//! Degrees 3 and up are never materialized; their dimension grows as
//! `dim(A)·(dim(A)−1)ⁿ` and degree 2 already exercises the graded involution
//! `(x_0 ⊗ … ⊗ x_n)* = (−1)^{n(n+1)/2} x_n* ⊗ … ⊗ x_0*`.
//!
//! The canonical surjection onto derivation-based forms sends `Σ x_i ⊗ y_i`
//! to the 1-form `X ↦ Σ x_i X(y_i)`, which is exactly `j_X` evaluated
//! derivation by derivation.

use crate::algebra::{Algebra, AlgebraElement};
use crate::derivation::{Derivation, DerivationBasis};
use crate::forms::DerForm;
use crate::linalg::{vec_is_zero, Matrix, SubspaceBasis};
use crate::module::BimoduleDerivation;
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum UniversalError {
    #[error("tensor does not lie in ker μ")]
    NotInKernel,
    #[error("UnsupportedDegree: universal involution is implemented for degrees 0..=2, got {degree}")]
    UnsupportedDegree { degree: usize },
}

/// An element of `Ω¹_u(A) = ker μ ⊂ A⊗A`, stored as the coefficient matrix
/// of `Σ t[i][j] e_i ⊗ e_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct UniversalOneForm {
    algebra: Algebra,
    tensor: Matrix,
}

impl fmt::Debug for UniversalOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniversalOneForm over {}", self.algebra.name())
    }
}

/// `μ` applied to a coefficient matrix: `Σ t[i][j] e_i e_j`.
fn mu(algebra: &Algebra, tensor: &Matrix) -> Vec<Scalar> {
    let d = algebra.dim();
    let mut out = vec![Scalar::zero(); d];
    for i in 0..d {
        for j in 0..d {
            let t = tensor.at(i, j);
            if t.is_zero() {
                continue;
            }
            for k in 0..d {
                let c = algebra.structure_constant(i, j, k);
                if !c.is_zero() {
                    out[k] += &(t * c);
                }
            }
        }
    }
    out
}

impl UniversalOneForm {
    /// Wrap a tensor, verifying the kernel invariant.
    pub fn new(algebra: &Algebra, tensor: Matrix) -> Result<Self, UniversalError> {
        let d = algebra.dim();
        assert_eq!((tensor.rows(), tensor.cols()), (d, d), "tensor shape mismatch");
        if !vec_is_zero(&mu(algebra, &tensor)) {
            return Err(UniversalError::NotInKernel);
        }
        Ok(UniversalOneForm { algebra: algebra.clone(), tensor })
    }

    fn wrap(algebra: &Algebra, tensor: Matrix) -> Self {
        debug_assert!(vec_is_zero(&mu(algebra, &tensor)));
        UniversalOneForm { algebra: algebra.clone(), tensor }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        UniversalOneForm { algebra: algebra.clone(), tensor: Matrix::zeros(algebra.dim(), algebra.dim()) }
    }

    /// `d_u x = 1⊗x − x⊗1`.
    pub fn d_u(x: &AlgebraElement) -> Self {
        let algebra = x.algebra().clone();
        let d = algebra.dim();
        let unit = algebra.unit();
        let mut tensor = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut v = &unit.coeffs()[i] * &x.coeffs()[j];
                v -= &(&x.coeffs()[i] * &unit.coeffs()[j]);
                *tensor.at_mut(i, j) = v;
            }
        }
        Self::wrap(&algebra, tensor)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn tensor(&self) -> &Matrix {
        &self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.algebra == other.algebra);
        UniversalOneForm { algebra: self.algebra.clone(), tensor: self.tensor.add(&other.tensor) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.algebra == other.algebra);
        UniversalOneForm { algebra: self.algebra.clone(), tensor: self.tensor.sub(&other.tensor) }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        UniversalOneForm { algebra: self.algebra.clone(), tensor: self.tensor.scale(s) }
    }

    /// Left bimodule action `x·(a⊗b) = xa ⊗ b`.
    pub fn mul_left(&self, x: &AlgebraElement) -> Self {
        let lx = self.algebra.left_mult_of(x);
        Self::wrap(&self.algebra, lx.matmul(&self.tensor))
    }

    /// Right bimodule action `(a⊗b)·y = a ⊗ by`.
    pub fn mul_right(&self, y: &AlgebraElement) -> Self {
        let ry = self.algebra.right_mult_of(y);
        Self::wrap(&self.algebra, self.tensor.matmul(&ry.transpose()))
    }

    /// Graded involution in degree 1: `(x⊗y)* = −(y* ⊗ x*)`.
    pub fn star(&self) -> Self {
        let flat = universal_involution(&self.algebra, 1, &self.flatten())
            .expect("degree 1 is supported");
        Self::from_flat(&self.algebra, &flat)
    }

    /// Row-major coefficients, index `i·dim + j`.
    pub fn flatten(&self) -> Vec<Scalar> {
        let d = self.algebra.dim();
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            out.extend(self.tensor.row(i).iter().cloned());
        }
        out
    }

    pub fn from_flat(algebra: &Algebra, flat: &[Scalar]) -> Self {
        let d = algebra.dim();
        assert_eq!(flat.len(), d * d);
        Self::wrap(algebra, Matrix::from_fn(d, d, |i, j| flat[i * d + j].clone()))
    }

    /// Product `Ω¹_u ⊗_A Ω¹_u`, collapsed into `A⊗A⊗A`.
    pub fn product(&self, other: &Self) -> UniversalTwoForm {
        assert!(self.algebra == other.algebra);
        let d = self.algebra.dim();
        let mut tensor = vec![Scalar::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let a = self.tensor.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for u in 0..d {
                    for v in 0..d {
                        let b = other.tensor.at(u, v);
                        if b.is_zero() {
                            continue;
                        }
                        let f = a * b;
                        for m in 0..d {
                            let c = self.algebra.structure_constant(j, u, m);
                            if !c.is_zero() {
                                tensor[(i * d + m) * d + v] += &(&f * c);
                            }
                        }
                    }
                }
            }
        }
        UniversalTwoForm { algebra: self.algebra.clone(), tensor }
    }

    /// `d_u` in degree 1: writing `w = Σ x_i d_u y_i`, this is
    /// `Σ d_u x_i · d_u y_i`. On coefficients (using `Σ x_i y_i = 0`):
    /// `Σ t[i][j] (1 ⊗ e_i ⊗ e_j − e_i ⊗ 1 ⊗ e_j + e_i ⊗ e_j ⊗ 1)`.
    pub fn differential(&self) -> UniversalTwoForm {
        let d = self.algebra.dim();
        let unit = self.algebra.unit();
        let mut tensor = vec![Scalar::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let t = self.tensor.at(i, j);
                if t.is_zero() {
                    continue;
                }
                for (u, c) in unit.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let f = t * c;
                    tensor[(u * d + i) * d + j] += &f;
                    tensor[(i * d + u) * d + j] -= &f;
                    tensor[(i * d + j) * d + u] += &f;
                }
            }
        }
        UniversalTwoForm { algebra: self.algebra.clone(), tensor }
    }

    /// The canonical image in degree-1 derivation forms:
    /// `X ↦ Σ t[i][j] e_i X(e_j)`.
    pub fn project_to_der(&self, derb: &DerivationBasis) -> DerForm {
        assert!(self.algebra == *derb.algebra());
        let d = self.algebra.dim();
        let components: Vec<Vec<Scalar>> = (0..derb.dim())
            .map(|a| {
                let xm = derb.derivation(a).matrix();
                let mut acc = vec![Scalar::zero(); d];
                for i in 0..d {
                    for j in 0..d {
                        let t = self.tensor.at(i, j);
                        if t.is_zero() {
                            continue;
                        }
                        let image = xm.col_vec(j);
                        let prod = self
                            .algebra
                            .mul_coeffs(self.algebra.basis_element(i).coeffs(), &image);
                        crate::linalg::vec_add_scaled(&mut acc, &prod, t);
                    }
                }
                acc
            })
            .collect();
        DerForm::from_components(derb, 1, components)
    }
}

/// An element of `Ω²_u(A) = Ω¹_u ⊗_A Ω¹_u`, stored by its representative in
/// `A⊗A⊗A` (flat index `(i·dim + j)·dim + k`).
#[derive(Clone, PartialEq, Eq)]
pub struct UniversalTwoForm {
    algebra: Algebra,
    tensor: Vec<Scalar>,
}

impl fmt::Debug for UniversalTwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniversalTwoForm over {}", self.algebra.name())
    }
}

impl UniversalTwoForm {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn tensor(&self) -> &[Scalar] {
        &self.tensor
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.tensor)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.algebra == other.algebra);
        UniversalTwoForm {
            algebra: self.algebra.clone(),
            tensor: crate::linalg::vec_add(&self.tensor, &other.tensor),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.algebra == other.algebra);
        UniversalTwoForm {
            algebra: self.algebra.clone(),
            tensor: crate::linalg::vec_sub(&self.tensor, &other.tensor),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        UniversalTwoForm {
            algebra: self.algebra.clone(),
            tensor: crate::linalg::vec_scale(&self.tensor, s),
        }
    }

    /// Graded involution in degree 2: `(x⊗y⊗z)* = −(z* ⊗ y* ⊗ x*)`.
    pub fn star(&self) -> Self {
        let flat = universal_involution(&self.algebra, 2, &self.tensor)
            .expect("degree 2 is supported");
        UniversalTwoForm { algebra: self.algebra.clone(), tensor: flat }
    }
}

/// The graded involution on a flat degree-`n` tensor in `A^{⊗(n+1)}`:
/// reverse the factors, star each, and apply the sign `(−1)^{n(n+1)/2}`.
pub fn universal_involution(
    algebra: &Algebra,
    degree: usize,
    flat: &[Scalar],
) -> Result<Vec<Scalar>, UniversalError> {
    if degree > 2 {
        return Err(UniversalError::UnsupportedDegree { degree });
    }
    let d = algebra.dim();
    let slots = degree + 1;
    assert_eq!(flat.len(), d.pow(slots as u32), "tensor length mismatch");
    // Star matrix on coefficients: column j holds the coefficients of e_j*.
    let star = Matrix::from_fn(d, d, |r, c| {
        algebra.star_coeffs(algebra.basis_element(c).coeffs())[r].clone()
    });
    let negate = degree * (degree + 1) / 2 % 2 == 1;
    let mut out = vec![Scalar::zero(); flat.len()];
    // Iterate source multi-indices; scatter into reversed starred slots.
    let mut idx = vec![0usize; slots];
    for v in flat {
        let here: Vec<usize> = idx.clone();
        if !v.is_zero() {
            let c = v.conj();
            // Product of star-matrix columns over reversed slots.
            scatter(&mut out, &star, &here, &c, negate, d);
        }
        // Advance the multi-index, last slot fastest.
        let mut k = slots;
        while k > 0 {
            k -= 1;
            idx[k] += 1;
            if idx[k] < d {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(out)
}

/// Adds `sign · c · (e_{i_n}* ⊗ … ⊗ e_{i_0}*)` to `out`.
fn scatter(out: &mut [Scalar], star: &Matrix, src: &[usize], c: &Scalar, negate: bool, d: usize) {
    let slots = src.len();
    // Expand the tensor product of star-matrix columns for the reversed
    // index word.
    let mut terms: Vec<(usize, Scalar)> = vec![(0, if negate { -c } else { c.clone() })];
    for step in 0..slots {
        let col = src[slots - 1 - step];
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (base, coeff) in &terms {
            for r in 0..d {
                let s = star.at(r, col);
                if !s.is_zero() {
                    next.push((base * d + r, coeff * s));
                }
            }
        }
        terms = next;
    }
    for (pos, coeff) in terms {
        out[pos] += &coeff;
    }
}

/// Canonical basis of `Ω¹_u(A) = ker μ` inside `A⊗A` (flat index `i·dim + j`).
pub fn universal_one_space(algebra: &Algebra) -> SubspaceBasis {
    let d = algebra.dim();
    let m = Matrix::from_fn(d, d * d, |k, col| {
        let (i, j) = (col / d, col % d);
        algebra.structure_constant(i, j, k).clone()
    });
    m.nullspace()
}

/// Canonical basis of `Ω²_u(A)` inside `A⊗A⊗A`, as the span of products of
/// `Ω¹_u` basis elements. Cost grows with `dim(A)⁶`; callers should gate on
/// the algebra dimension.
pub fn universal_two_space(algebra: &Algebra) -> SubspaceBasis {
    let one = universal_one_space(algebra);
    let forms: Vec<UniversalOneForm> = one
        .vectors()
        .iter()
        .map(|v| UniversalOneForm::from_flat(algebra, v))
        .collect();
    let d = algebra.dim();
    let ambient = d * d * d;
    let cap = d * (d - 1) * (d - 1);
    SubspaceBasis::from_spanning_capped(
        ambient,
        forms
            .iter()
            .flat_map(|a| forms.iter().map(move |b| a.product(b).tensor().to_vec())),
        cap,
    )
}

/// `Ω²_u` computed the other way, as `ker μ₁₂ ∩ ker μ₂₃` for
/// `μ₁₂(x⊗y⊗z) = xy⊗z` and `μ₂₃(x⊗y⊗z) = x⊗yz`.
pub fn universal_two_space_by_kernels(algebra: &Algebra) -> SubspaceBasis {
    let d = algebra.dim();
    let rows = 2 * d * d;
    let m = Matrix::from_fn(rows, d * d * d, |row, col| {
        let (i, rest) = (col / (d * d), col % (d * d));
        let (j, k) = (rest / d, rest % d);
        if row < d * d {
            // μ₁₂ component (p, q): coefficient of e_p ⊗ e_q.
            let (p, q) = (row / d, row % d);
            if q == k {
                algebra.structure_constant(i, j, p).clone()
            } else {
                Scalar::zero()
            }
        } else {
            let r = row - d * d;
            let (p, q) = (r / d, r % d);
            if p == i {
                algebra.structure_constant(j, k, q).clone()
            } else {
                Scalar::zero()
            }
        }
    });
    m.nullspace()
}

/// The universal factorization `j_δ(Σ x_i ⊗ y_i) = Σ x_i · δ(y_i)` through
/// `d_u`, landing in the target bimodule's coordinates.
pub fn universal_factor(delta: &BimoduleDerivation, w: &UniversalOneForm) -> Vec<Scalar> {
    let module = delta.module();
    assert!(module.algebra() == w.algebra());
    let d = w.algebra().dim();
    let mut acc = vec![Scalar::zero(); module.dim()];
    for j in 0..d {
        let dy = delta.apply(&w.algebra().basis_element(j));
        for i in 0..d {
            let t = w.tensor().at(i, j);
            if t.is_zero() {
                continue;
            }
            let moved = module
                .left_action_of(&w.algebra().basis_element(i))
                .expect("basis elements act on a central bimodule")
                .mul_vec(&dy);
            crate::linalg::vec_add_scaled(&mut acc, &moved, t);
        }
    }
    acc
}

/// `j_X` for an algebra derivation, valued in `A` itself.
pub fn universal_factor_in_algebra(x: &Derivation, w: &UniversalOneForm) -> AlgebraElement {
    let algebra = w.algebra();
    assert!(algebra == x.algebra());
    let d = algebra.dim();
    let mut acc = vec![Scalar::zero(); d];
    for j in 0..d {
        let dy = x.matrix().col_vec(j);
        for i in 0..d {
            let t = w.tensor().at(i, j);
            if t.is_zero() {
                continue;
            }
            let prod = algebra.mul_coeffs(algebra.basis_element(i).coeffs(), &dy);
            crate::linalg::vec_add_scaled(&mut acc, &prod, t);
        }
    }
    algebra.element(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::derivation::DerivationBasis;
    use crate::module::{BimoduleDerivation, Module, ModuleKind};

    #[test]
    fn one_space_dimension_is_dim_squared_minus_dim() {
        for a in catalog::bundled() {
            let d = a.dim();
            assert_eq!(universal_one_space(&a).dim(), d * d - d, "{}", a.name());
        }
    }

    #[test]
    fn d_u_kills_the_unit_and_is_linear() {
        let a = catalog::matrix_algebra(2);
        assert!(UniversalOneForm::d_u(&a.unit()).is_zero());
        let x = a.basis_element(1);
        let y = a.basis_element(2);
        let lam = Scalar::gaussian(2, -1, 3);
        let lhs = UniversalOneForm::d_u(&(&x + &y.scale(&lam)));
        let rhs = UniversalOneForm::d_u(&x).add(&UniversalOneForm::d_u(&y).scale(&lam));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn constructor_rejects_tensors_outside_the_kernel() {
        let a = catalog::matrix_algebra(2);
        let mut t = Matrix::zeros(4, 4);
        *t.at_mut(0, 0) = Scalar::one(); // e11 ⊗ e11, product e11 ≠ 0
        assert_eq!(UniversalOneForm::new(&a, t).unwrap_err(), UniversalError::NotInKernel);
    }

    #[test]
    fn universal_property_on_basis_derivations() {
        for a in catalog::bundled() {
            let derb = DerivationBasis::compute(&a);
            for x in derb.basis() {
                for k in 0..a.dim() {
                    let ek = a.basis_element(k);
                    let w = UniversalOneForm::d_u(&ek);
                    assert_eq!(universal_factor_in_algebra(x, &w), x.apply(&ek));
                }
            }
        }
    }

    #[test]
    fn universal_factor_through_bimodule_matches() {
        let a = catalog::matrix_algebra(2);
        let derb = DerivationBasis::compute(&a);
        let x = derb.derivation(0);
        let delta = BimoduleDerivation::from_derivation(x);
        // j_δ(x·d_u y) = x·δ(y)
        let xe = a.basis_element(1);
        let ye = a.basis_element(2);
        let w = UniversalOneForm::d_u(&ye).mul_left(&xe);
        let got = universal_factor(&delta, &w);
        let expect = (&xe * &x.apply(&ye)).into_coeffs();
        assert_eq!(got, expect);
        assert_eq!(a.element(got), universal_factor_in_algebra(x, &w));
    }

    #[test]
    fn zero_derivation_factors_to_zero() {
        let a = catalog::matrix_algebra(2);
        let m = Module::regular(&a, ModuleKind::CENTRAL_BIMODULE, "regular");
        let delta = BimoduleDerivation::new(&m, Matrix::zeros(4, 4)).unwrap();
        for v in universal_one_space(&a).vectors() {
            let w = UniversalOneForm::from_flat(&a, v);
            assert!(vec_is_zero(&universal_factor(&delta, &w)));
        }
    }

    #[test]
    fn projection_agrees_with_derivation_differential() {
        let a = catalog::matrix_algebra(2);
        let derb = DerivationBasis::compute(&a);
        for k in 0..a.dim() {
            let x = a.basis_element(k);
            let lhs = UniversalOneForm::d_u(&x).project_to_der(&derb);
            let rhs = DerForm::d_of(&derb, &x);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projection_is_a_bimodule_map() {
        let a = catalog::matrix_algebra(2);
        let derb = DerivationBasis::compute(&a);
        let w = UniversalOneForm::d_u(&a.basis_element(1));
        let x = a.basis_element(2);
        let y = a.basis_element(0);
        let lhs = w.mul_left(&x).mul_right(&y).project_to_der(&derb);
        let rhs = w.project_to_der(&derb).mul_left(&x).mul_right(&y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_vanishes_without_derivations_while_omega_u_does_not() {
        let a = catalog::complex_pair();
        let derb = DerivationBasis::compute(&a);
        assert_eq!(derb.dim(), 0);
        let one = universal_one_space(&a);
        assert_eq!(one.dim(), 2);
        for v in one.vectors() {
            let w = UniversalOneForm::from_flat(&a, v);
            assert!(!w.is_zero());
            assert!(w.project_to_der(&derb).is_zero());
        }
    }

    #[test]
    fn involution_signs_and_involutivity() {
        let a = catalog::matrix_algebra(2);
        // Degree 1: (x⊗y)* = −(y*⊗x*) on d_u of a basis element.
        let x = a.basis_element(1); // e12, with e12* = e21
        let w = UniversalOneForm::d_u(&x);
        assert_eq!(w.star(), UniversalOneForm::d_u(&x.star()));
        assert_eq!(w.star().star(), w);
        // Degree 2 on a product representative.
        let w2 = w.product(&UniversalOneForm::d_u(&a.basis_element(2)));
        assert_eq!(w2.star().star(), w2);
        // (αβ)* = (−1)^{1·1} β*α* in the graded sense.
        let alpha = UniversalOneForm::d_u(&a.basis_element(1));
        let beta = UniversalOneForm::d_u(&a.basis_element(2));
        let lhs = alpha.product(&beta).star();
        let rhs = beta.star().product(&alpha.star()).scale(&Scalar::from_int(-1));
        assert_eq!(lhs, rhs);
        // Degree cap.
        assert!(matches!(
            universal_involution(&a, 3, &vec![Scalar::zero(); 256]),
            Err(UniversalError::UnsupportedDegree { degree: 3 })
        ));
    }

    #[test]
    fn two_space_dimensions_and_kernel_presentation_agree() {
        for a in catalog::bundled() {
            if a.dim() > 5 {
                continue;
            }
            let d = a.dim();
            let two = universal_two_space(&a);
            assert_eq!(two.dim(), d * (d - 1) * (d - 1), "{}", a.name());
            let kernels = universal_two_space_by_kernels(&a);
            assert!(two.same_subspace(&kernels), "{}", a.name());
        }
    }

    #[test]
    fn differential_satisfies_leibniz_shape() {
        let a = catalog::matrix_algebra(2);
        // d_u(x · d_u y) = d_u x · d_u y
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let x = a.basis_element(i);
                let y = a.basis_element(j);
                let lhs = UniversalOneForm::d_u(&y).mul_left(&x).differential();
                let rhs = UniversalOneForm::d_u(&x).product(&UniversalOneForm::d_u(&y));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn products_land_in_the_two_space() {
        let a = catalog::triangular2();
        let two = universal_two_space(&a);
        let one = universal_one_space(&a);
        for v in one.vectors() {
            for u in one.vectors() {
                let p = UniversalOneForm::from_flat(&a, v)
                    .product(&UniversalOneForm::from_flat(&a, u));
                assert!(two.contains(p.tensor()));
            }
        }
    }
}
