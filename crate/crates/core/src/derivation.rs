//! Derivations of an algebra and the canonical basis of Der(A).
//!
//! A derivation is a linear map `X : A → A` with `X(xy) = X(x)y + xX(y)`.
//! Der(A) is computed exactly as the kernel of the Leibniz system over all
//! basis pairs; the reduced echelon kernel gives a canonical basis, fixed once
//! per algebra. Der(A) is a Lie algebra under `[X, Y] = XY − YX`, carries the
//! involution `X*(x) = (X(x*))*`, and acts on the center-stable structure of
//! everything downstream: differential forms are multilinear maps on Der(A),
//! and connections differentiate along it.
//!
//! Inner derivations are the image of `x ↦ ad(x) = [x, ·]`. Whether a given
//! derivation is inner is an exact linear solve; the witness is returned when
//! one exists.

use crate::algebra::{Algebra, AlgebraElement};
use crate::linalg::{vec_is_zero, LinearSolution, Matrix, SubspaceBasis};
use crate::scalar::Scalar;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum DerivationError {
    #[error("NotADerivation: Leibniz fails on basis pair (e{i}, e{j})")]
    NotADerivation { i: usize, j: usize },
}

/// A single derivation, stored as its matrix on coefficient vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    algebra: Algebra,
    matrix: Matrix,
}

impl Derivation {
    /// Validate the Leibniz rule on every basis pair and wrap the map.
    pub fn new(algebra: &Algebra, matrix: Matrix) -> Result<Self, DerivationError> {
        let dim = algebra.dim();
        assert_eq!((matrix.rows(), matrix.cols()), (dim, dim), "matrix shape mismatch");
        for i in 0..dim {
            let x_ei = matrix.col_vec(i);
            for j in 0..dim {
                let x_ej = matrix.col_vec(j);
                let prod: Vec<Scalar> =
                    (0..dim).map(|k| algebra.structure_constant(i, j, k).clone()).collect();
                let lhs = matrix.mul_vec(&prod);
                let term1 = algebra.right_mult_matrix(j).mul_vec(&x_ei);
                let term2 = algebra.left_mult_matrix(i).mul_vec(&x_ej);
                let rhs = crate::linalg::vec_add(&term1, &term2);
                if lhs != rhs {
                    return Err(DerivationError::NotADerivation { i, j });
                }
            }
        }
        Ok(Derivation { algebra: algebra.clone(), matrix })
    }

    /// `ad(x) = [x, ·]`, always a derivation.
    pub fn inner(x: &AlgebraElement) -> Self {
        let algebra = x.algebra().clone();
        let matrix = algebra.left_mult_of(x).sub(&algebra.right_mult_of(x));
        Derivation { algebra, matrix }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        Derivation { algebra: algebra.clone(), matrix: Matrix::zeros(algebra.dim(), algebra.dim()) }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        self.algebra.assert_owns(x);
        self.algebra.element(self.matrix.mul_vec(x.coeffs()))
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        assert!(self.algebra == other.algebra, "derivations on different algebras");
        Derivation { algebra: self.algebra.clone(), matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        assert!(self.algebra == other.algebra, "derivations on different algebras");
        Derivation { algebra: self.algebra.clone(), matrix: self.matrix.sub(&other.matrix) }
    }

    pub fn scale(&self, s: &Scalar) -> Derivation {
        Derivation { algebra: self.algebra.clone(), matrix: self.matrix.scale(s) }
    }

    /// `z·X` for central `z`; central factors keep the Leibniz rule.
    pub fn central_multiple(&self, z: &AlgebraElement) -> Derivation {
        assert!(z.is_central(), "multiplier must be central");
        Derivation {
            algebra: self.algebra.clone(),
            matrix: self.algebra.left_mult_of(z).matmul(&self.matrix),
        }
    }

    /// `[X, Y] = XY − YX`. The result is validated: the bracket of two
    /// derivations must again satisfy Leibniz.
    pub fn lie_bracket(&self, other: &Derivation) -> Derivation {
        assert!(self.algebra == other.algebra, "derivations on different algebras");
        let m = self.matrix.matmul(&other.matrix).sub(&other.matrix.matmul(&self.matrix));
        Derivation::new(&self.algebra, m).expect("bracket of derivations satisfies Leibniz")
    }

    /// The involution `X*(x) = (X(x*))*`, antilinear in `X`.
    pub fn star(&self) -> Derivation {
        let dim = self.algebra.dim();
        let mut matrix = Matrix::zeros(dim, dim);
        for i in 0..dim {
            let e_star = self.algebra.basis_element(i).star();
            let col = self.algebra.star_coeffs(&self.matrix.mul_vec(e_star.coeffs()));
            for r in 0..dim {
                *matrix.at_mut(r, i) = col[r].clone();
            }
        }
        Derivation { algebra: self.algebra.clone(), matrix }
    }

    fn flatten(&self) -> Vec<Scalar> {
        let dim = self.algebra.dim();
        let mut v = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            v.extend(self.matrix.row(r).iter().cloned());
        }
        v
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation on {} {:?}", self.algebra.name(), self.matrix)
    }
}

struct DerivationBasisInner {
    algebra: Algebra,
    /// Kernel of the Leibniz system on flattened matrices (row-major).
    space: SubspaceBasis,
    basis: Vec<Derivation>,
    /// `bracket[a][b]` holds the coordinates of `[X_a, X_b]`.
    bracket: Vec<Vec<Vec<Scalar>>>,
    /// `star[a]` holds the coordinates of `X_a*`.
    star: Vec<Vec<Scalar>>,
    /// Flattened `ad(e_i)` matrices as columns: solves `ad(x) = X`.
    ad_map: Matrix,
    inner_space: SubspaceBasis,
}

/// The canonical basis of Der(A) with its bracket table, involution table and
/// inner-derivation data. Cheap to clone; computed once per algebra.
#[derive(Clone)]
pub struct DerivationBasis {
    inner: Arc<DerivationBasisInner>,
}

impl PartialEq for DerivationBasis {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.algebra() == other.algebra() && self.inner.space == other.inner.space)
    }
}

impl Eq for DerivationBasis {}

impl fmt::Debug for DerivationBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DerivationBasis({}, dim {})", self.algebra().name(), self.dim())
    }
}

impl DerivationBasis {
    /// Solve the Leibniz system and assemble the canonical basis.
    pub fn compute(algebra: &Algebra) -> Self {
        let dim = algebra.dim();
        let unknowns = dim * dim;
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut row = vec![Scalar::zero(); unknowns];
                    // X(e_i e_j)_k = Σ_m c[i][j][m] X[k][m]
                    for m in 0..dim {
                        let c = algebra.structure_constant(i, j, m);
                        if !c.is_zero() {
                            row[k * dim + m] += c;
                        }
                    }
                    // −(X(e_i) e_j)_k = −Σ_m R_j[k][m] X[m][i]
                    for m in 0..dim {
                        let c = algebra.right_mult_matrix(j).at(k, m);
                        if !c.is_zero() {
                            row[m * dim + i] -= c;
                        }
                    }
                    // −(e_i X(e_j))_k = −Σ_m L_i[k][m] X[m][j]
                    for m in 0..dim {
                        let c = algebra.left_mult_matrix(i).at(k, m);
                        if !c.is_zero() {
                            row[m * dim + j] -= c;
                        }
                    }
                    if !vec_is_zero(&row) {
                        rows.push(row);
                    }
                }
            }
        }
        let system = Matrix::from_rows(rows);
        let space = if system.rows() == 0 {
            // No constraints (dim 1): every matrix is a derivation of ℂ only
            // if zero; the Leibniz system for dim 1 forces X(1)=0 and is
            // nonempty, so this branch only guards the degenerate shape.
            Matrix::zeros(1, unknowns).nullspace()
        } else {
            system.nullspace()
        };

        let basis: Vec<Derivation> = space
            .vectors()
            .iter()
            .map(|v| {
                let m = Matrix::from_fn(dim, dim, |r, c| v[r * dim + c].clone());
                Derivation::new(algebra, m).expect("kernel vectors satisfy Leibniz")
            })
            .collect();

        let n = basis.len();
        let mut bracket = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let xy = basis[a].lie_bracket(&basis[b]);
                bracket[a][b] = space
                    .coordinates(&xy.flatten())
                    .expect("Der(A) is closed under the bracket");
            }
        }
        let star = basis
            .iter()
            .map(|x| {
                space
                    .coordinates(&x.star().flatten())
                    .expect("Der(A) is closed under the involution")
            })
            .collect();

        let ad_map = Matrix::from_fn(unknowns, dim, |u, i| {
            let (r, c) = (u / dim, u % dim);
            let ad = algebra.left_mult_matrix(i).sub(algebra.right_mult_matrix(i));
            ad.at(r, c).clone()
        });
        let inner_space = SubspaceBasis::from_spanning(
            unknowns,
            (0..dim).map(|i| {
                let ad = algebra.left_mult_matrix(i).sub(algebra.right_mult_matrix(i));
                (0..unknowns).map(|u| ad.at(u / dim, u % dim).clone()).collect()
            }),
        );

        DerivationBasis {
            inner: Arc::new(DerivationBasisInner {
                algebra: algebra.clone(),
                space,
                basis,
                bracket,
                star,
                ad_map,
                inner_space,
            }),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.inner.algebra
    }

    /// Dimension of Der(A).
    pub fn dim(&self) -> usize {
        self.inner.basis.len()
    }

    pub fn basis(&self) -> &[Derivation] {
        &self.inner.basis
    }

    pub fn derivation(&self, a: usize) -> &Derivation {
        &self.inner.basis[a]
    }

    /// Coordinates of a derivation in the canonical basis.
    pub fn coordinates(&self, x: &Derivation) -> Option<Vec<Scalar>> {
        assert!(self.algebra() == x.algebra(), "derivation on a different algebra");
        self.inner.space.coordinates(&x.flatten())
    }

    /// Derivation with the given coordinates.
    pub fn from_coordinates(&self, coords: &[Scalar]) -> Derivation {
        let dim = self.algebra().dim();
        let v = self.inner.space.combination(coords);
        let m = Matrix::from_fn(dim, dim, |r, c| v[r * dim + c].clone());
        Derivation { algebra: self.algebra().clone(), matrix: m }
    }

    /// Coordinates of `[X_a, X_b]`.
    pub fn bracket_coords(&self, a: usize, b: usize) -> &[Scalar] {
        &self.inner.bracket[a][b]
    }

    /// Coordinates of `X_a*`. Involutions are antilinear: for
    /// `X = Σ λ_a X_a`, `X* = Σ conj(λ_a) X_a*`.
    pub fn star_coords(&self, a: usize) -> &[Scalar] {
        &self.inner.star[a]
    }

    /// Dimension of the space of inner derivations.
    pub fn inner_dim(&self) -> usize {
        self.inner.inner_space.dim()
    }

    pub fn all_inner(&self) -> bool {
        self.inner_dim() == self.dim()
    }

    /// Solve `ad(x) = X`; returns a witness when `X` is inner.
    pub fn inner_witness(&self, x: &Derivation) -> Option<AlgebraElement> {
        assert!(self.algebra() == x.algebra(), "derivation on a different algebra");
        match self.inner.ad_map.solve(&x.flatten()) {
            LinearSolution::Unique(v) => Some(self.algebra().element(v)),
            LinearSolution::Affine { particular, .. } => Some(self.algebra().element(particular)),
            LinearSolution::Inconsistent => None,
        }
    }
}
