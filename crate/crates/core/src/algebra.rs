//! Finite-dimensional associative unital *-algebras over the Gaussian
//! rationals, presented by structure constants.
//!
//! An algebra of dimension `dim` is given on a basis `e_0, …, e_{dim-1}` by
//! the table `c[i][j][k]` with `e_i e_j = Σ_k c[i][j][k] e_k`, a unit vector,
//! and an involution `x ↦ x*` (antilinear, `(xy)* = y* x*`, `x** = x`).
//! Loading validates all of this exhaustively on basis tuples: associativity
//! on every triple, the unit law on every basis element, and the involution
//! laws on every pair. A spec that fails any law is rejected with the
//! violating indices; there are no partially-valid algebras downstream.
//!
//! [`Algebra`] is a cheap-clone handle (the table lives behind an `Arc`), so
//! elements, derivations and forms can carry their algebra without copying
//! the multiplication table around.

use crate::linalg::{vec_is_zero, Matrix, SubspaceBasis};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

/// On-disk description of an algebra. All scalars use the exact text grammar,
/// so serialize → deserialize round-trips values bit-exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    /// Basis labels, used in human-readable output.
    pub basis: Vec<String>,
    /// `structure_constants[i][j][k]` is the `e_k`-coefficient of `e_i e_j`.
    pub structure_constants: Vec<Vec<Vec<Scalar>>>,
    /// Coefficients of the unit element.
    pub unit: Vec<Scalar>,
    /// Row `i` lists the coefficients of `(e_i)*`.
    pub involution: Vec<Vec<Scalar>>,
}

/// Rejection reasons for an algebra spec.
#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("failed to read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("ParseError: {0}")]
    ParseError(String),
    #[error("dim must be at least 1")]
    DimZero,
    #[error("{field} has wrong shape (expected {expected} entries, got {got})")]
    BadShape { field: String, expected: usize, got: usize },
    #[error("basis labels must be distinct and non-empty")]
    BadLabels,
    #[error("NotAssociative: (e{i}·e{j})·e{k} != e{i}·(e{j}·e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("NoUnit: the declared unit fails on basis element e{witness}")]
    NoUnit { witness: usize },
    #[error("BadInvolution: {law} fails at basis indices ({i}, {j})")]
    BadInvolution { law: &'static str, i: usize, j: usize },
}

struct AlgebraInner {
    spec: AlgebraSpec,
    /// `left_mult[i]` acts on coefficient vectors as multiplication by `e_i`
    /// from the left.
    left_mult: Vec<Matrix>,
    right_mult: Vec<Matrix>,
    /// Coefficients of `x*` are `star · conj(coeffs(x))`.
    star: Matrix,
    center: SubspaceBasis,
}

/// Validated *-algebra handle. Cloning is cheap and clones refer to the same
/// underlying table.
#[derive(Clone)]
pub struct Algebra {
    inner: Arc<AlgebraInner>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name(), self.dim())
    }
}

impl Algebra {
    /// Validate a spec and build the algebra.
    pub fn from_spec(spec: AlgebraSpec) -> Result<Self, AlgebraError> {
        let dim = spec.dim;
        if dim == 0 {
            return Err(AlgebraError::DimZero);
        }
        check_shape("basis", spec.basis.len(), dim)?;
        check_shape("structure_constants", spec.structure_constants.len(), dim)?;
        for (i, plane) in spec.structure_constants.iter().enumerate() {
            check_shape(&format!("structure_constants[{i}]"), plane.len(), dim)?;
            for (j, row) in plane.iter().enumerate() {
                check_shape(&format!("structure_constants[{i}][{j}]"), row.len(), dim)?;
            }
        }
        check_shape("unit", spec.unit.len(), dim)?;
        check_shape("involution", spec.involution.len(), dim)?;
        for (i, row) in spec.involution.iter().enumerate() {
            check_shape(&format!("involution[{i}]"), row.len(), dim)?;
        }
        if spec.basis.iter().any(String::is_empty)
            || (1..dim).any(|i| spec.basis[i..].contains(&spec.basis[i - 1]))
        {
            return Err(AlgebraError::BadLabels);
        }

        let left_mult: Vec<Matrix> = (0..dim)
            .map(|i| Matrix::from_fn(dim, dim, |k, j| spec.structure_constants[i][j][k].clone()))
            .collect();
        let right_mult: Vec<Matrix> = (0..dim)
            .map(|i| Matrix::from_fn(dim, dim, |k, j| spec.structure_constants[j][i][k].clone()))
            .collect();
        // Row i of the file lists (e_i)*; acting on coordinates needs the
        // transpose.
        let star = Matrix::from_fn(dim, dim, |k, i| spec.involution[i][k].clone());

        // Unit law on every basis element.
        for i in 0..dim {
            let e_i: Vec<Scalar> =
                (0..dim).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect();
            let left = mul_coeffs(&spec, &spec.unit, &e_i);
            let right = mul_coeffs(&spec, &e_i, &spec.unit);
            if left != e_i || right != e_i {
                return Err(AlgebraError::NoUnit { witness: i });
            }
        }

        // Associativity on every basis triple.
        for i in 0..dim {
            for j in 0..dim {
                let ij = spec.structure_constants[i][j].clone();
                for k in 0..dim {
                    let e_k: Vec<Scalar> = (0..dim)
                        .map(|m| if m == k { Scalar::one() } else { Scalar::zero() })
                        .collect();
                    let lhs = mul_coeffs(&spec, &ij, &e_k);
                    let jk = &spec.structure_constants[j][k];
                    let e_i: Vec<Scalar> = (0..dim)
                        .map(|m| if m == i { Scalar::one() } else { Scalar::zero() })
                        .collect();
                    let rhs = mul_coeffs(&spec, &e_i, jk);
                    if lhs != rhs {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                }
            }
        }

        // Involution laws: x** = x, (xy)* = y* x*, 1* = 1.
        let star_vec = |v: &[Scalar]| -> Vec<Scalar> {
            let conj: Vec<Scalar> = v.iter().map(Scalar::conj).collect();
            star.mul_vec(&conj)
        };
        for i in 0..dim {
            let e_i: Vec<Scalar> =
                (0..dim).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect();
            if star_vec(&star_vec(&e_i)) != e_i {
                return Err(AlgebraError::BadInvolution { law: "x** = x", i, j: i });
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let lhs = star_vec(&spec.structure_constants[i][j]);
                let e_i: Vec<Scalar> = (0..dim)
                    .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
                    .collect();
                let e_j: Vec<Scalar> = (0..dim)
                    .map(|k| if k == j { Scalar::one() } else { Scalar::zero() })
                    .collect();
                let rhs = mul_coeffs(&spec, &star_vec(&e_j), &star_vec(&e_i));
                if lhs != rhs {
                    return Err(AlgebraError::BadInvolution { law: "(xy)* = y*x*", i, j });
                }
            }
        }
        if star_vec(&spec.unit) != spec.unit {
            return Err(AlgebraError::BadInvolution { law: "1* = 1", i: 0, j: 0 });
        }

        // Center: x with e_i x = x e_i for every basis e_i.
        let mut rows = Matrix::zeros(0, dim);
        for i in 0..dim {
            rows = rows.vstack(&left_mult[i].sub(&right_mult[i]));
        }
        let center = rows.nullspace();

        Ok(Algebra {
            inner: Arc::new(AlgebraInner { spec, left_mult, right_mult, star, center }),
        })
    }

    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        let spec: AlgebraSpec =
            serde_json::from_str(text).map_err(|e| AlgebraError::ParseError(e.to_string()))?;
        Self::from_spec(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AlgebraError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| AlgebraError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.inner.spec
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(&self.inner.spec).expect("spec serializes");
        out.push('\n');
        out
    }

    pub fn name(&self) -> &str {
        &self.inner.spec.name
    }

    pub fn dim(&self) -> usize {
        self.inner.spec.dim
    }

    pub fn label(&self, i: usize) -> &str {
        &self.inner.spec.basis[i]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.inner.spec.structure_constants[i][j][k]
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut coeffs = vec![Scalar::zero(); self.dim()];
        coeffs[i] = Scalar::one();
        AlgebraElement { algebra: self.clone(), coeffs }
    }

    pub fn element(&self, coeffs: Vec<Scalar>) -> AlgebraElement {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count mismatch");
        AlgebraElement { algebra: self.clone(), coeffs }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.element(vec![Scalar::zero(); self.dim()])
    }

    pub fn unit(&self) -> AlgebraElement {
        self.element(self.inner.spec.unit.clone())
    }

    /// Matrix of left multiplication by `e_i` on coefficient vectors.
    pub fn left_mult_matrix(&self, i: usize) -> &Matrix {
        &self.inner.left_mult[i]
    }

    pub fn right_mult_matrix(&self, i: usize) -> &Matrix {
        &self.inner.right_mult[i]
    }

    /// Matrix of left multiplication by an arbitrary element.
    pub fn left_mult_of(&self, x: &AlgebraElement) -> Matrix {
        self.assert_owns(x);
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.inner.left_mult[i].scale(c));
            }
        }
        m
    }

    pub fn right_mult_of(&self, x: &AlgebraElement) -> Matrix {
        self.assert_owns(x);
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.inner.right_mult[i].scale(c));
            }
        }
        m
    }

    /// Product on raw coefficient vectors.
    pub fn mul_coeffs(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        mul_coeffs(&self.inner.spec, x, y)
    }

    /// Antilinear involution on coefficient vectors.
    pub fn star_coeffs(&self, v: &[Scalar]) -> Vec<Scalar> {
        let conj: Vec<Scalar> = v.iter().map(Scalar::conj).collect();
        self.inner.star.mul_vec(&conj)
    }

    /// Canonical echelon basis of the center `{z : zx = xz for all x}`.
    pub fn center(&self) -> &SubspaceBasis {
        &self.inner.center
    }

    /// A center spanned by the unit alone.
    pub fn has_trivial_center(&self) -> bool {
        self.inner.center.dim() == 1
    }

    pub fn is_commutative(&self) -> bool {
        self.inner.center.dim() == self.dim()
    }

    pub fn center_element(&self, k: usize) -> AlgebraElement {
        self.element(self.inner.center.basis_vector(k).to_vec())
    }

    pub(crate) fn assert_owns(&self, x: &AlgebraElement) {
        assert!(self == &x.algebra, "element belongs to a different algebra");
    }
}

fn check_shape(field: &str, got: usize, expected: usize) -> Result<(), AlgebraError> {
    if got == expected {
        Ok(())
    } else {
        Err(AlgebraError::BadShape { field: field.to_owned(), expected, got })
    }
}

/// Product on raw coefficient vectors, used during validation before the
/// `Algebra` handle exists.
fn mul_coeffs(spec: &AlgebraSpec, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let dim = spec.dim;
    let mut out = vec![Scalar::zero(); dim];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let f = xi * yj;
            for (k, c) in spec.structure_constants[i][j].iter().enumerate() {
                if !c.is_zero() {
                    out[k] += &(&f * c);
                }
            }
        }
    }
    out
}

/// Element of an [`Algebra`], held as coefficients on the defining basis.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Algebra,
    coeffs: Vec<Scalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        vec_is_zero(&self.coeffs)
    }

    pub fn scale(&self, s: &Scalar) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// The involution `x ↦ x*`.
    pub fn star(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.star_coeffs(&self.coeffs),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }

    pub fn is_central(&self) -> bool {
        self.algebra.center().contains(&self.coeffs)
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &AlgebraElement) -> AlgebraElement {
        &(self * other) - &(other * self)
    }

    /// Apply a linear form given as a covector on the basis.
    pub fn pair_with_form(&self, form: &[Scalar]) -> Scalar {
        assert_eq!(form.len(), self.coeffs.len());
        let mut acc = Scalar::zero();
        for (f, c) in form.iter().zip(&self.coeffs) {
            if !f.is_zero() && !c.is_zero() {
                acc += &(f * c);
            }
        }
        acc
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_element(&self.algebra, &self.coeffs))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_element(&self.algebra, &self.coeffs))
    }
}

/// Human-readable form `c0·label0 + …`, omitting zero terms.
pub fn format_element(algebra: &Algebra, coeffs: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(algebra.label(i).to_owned());
        } else {
            parts.push(format!("({})·{}", c, algebra.label(i)));
        }
    }
    if parts.is_empty() {
        "0".to_owned()
    } else {
        parts.join(" + ")
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.algebra.assert_owns(rhs);
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: crate::linalg::vec_add(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.algebra.assert_owns(rhs);
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: crate::linalg::vec_sub(&self.coeffs, &rhs.coeffs),
        }
    }
}

impl std::ops::Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.algebra.assert_owns(rhs);
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: mul_coeffs(&self.algebra.inner.spec, &self.coeffs, &rhs.coeffs),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn matrix_algebra_multiplies_like_matrix_units() {
        let a = catalog::matrix_algebra(2);
        // e01 · e10 = e00, e01 · e01 = 0.
        let e01 = a.basis_element(1);
        let e10 = a.basis_element(2);
        assert_eq!(&e01 * &e10, a.basis_element(0));
        assert!((&e01 * &e01).is_zero());
        // Conjugate transpose: (e01)* = e10.
        assert_eq!(e01.star(), e10);
    }

    #[test]
    fn center_of_matrix_algebra_is_the_unit_line() {
        let a = catalog::matrix_algebra(2);
        assert!(a.has_trivial_center());
        assert!(a.center().contains(a.unit().coeffs()));
    }

    #[test]
    fn center_of_direct_sum_is_two_dimensional() {
        let a = catalog::complex_pair();
        assert_eq!(a.center().dim(), 2);
        assert!(a.is_commutative());
    }

    #[test]
    fn rejects_broken_associativity() {
        let mut spec = catalog::matrix_algebra(2).spec().clone();
        spec.structure_constants[1][2][0] = Scalar::from_int(2);
        match Algebra::from_spec(spec) {
            Err(AlgebraError::NotAssociative { .. }) => {}
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn rejects_broken_unit() {
        let mut spec = catalog::matrix_algebra(2).spec().clone();
        spec.unit = vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()];
        match Algebra::from_spec(spec) {
            Err(AlgebraError::NoUnit { .. }) => {}
            other => panic!("expected NoUnit, got {other:?}"),
        }
    }

    #[test]
    fn rejects_broken_involution() {
        let mut spec = catalog::matrix_algebra(2).spec().clone();
        // Send e01 to itself: breaks (xy)* = y*x*.
        spec.involution[1] = vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()];
        match Algebra::from_spec(spec) {
            Err(AlgebraError::BadInvolution { .. }) => {}
            other => panic!("expected BadInvolution, got {other:?}"),
        }
    }

    #[test]
    fn rejects_dim_zero_and_malformed_scalars() {
        let empty = AlgebraSpec {
            name: "empty".into(),
            dim: 0,
            basis: vec![],
            structure_constants: vec![],
            unit: vec![],
            involution: vec![],
        };
        assert!(matches!(Algebra::from_spec(empty), Err(AlgebraError::DimZero)));

        let bad = r#"{"name":"x","dim":1,"basis":["e"],
            "structure_constants":[[["oops"]]],"unit":["1"],"involution":[["1"]]}"#;
        assert!(matches!(Algebra::from_json(bad), Err(AlgebraError::ParseError(_))));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        for a in catalog::bundled() {
            let text = a.to_json();
            let back = Algebra::from_json(&text).unwrap();
            assert_eq!(back.spec(), a.spec());
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn involution_is_antilinear_on_elements() {
        let a = catalog::matrix_algebra(2);
        let x = a.basis_element(1).scale(&Scalar::i());
        // (i·e01)* = -i·e10.
        assert_eq!(x.star(), a.basis_element(2).scale(&-Scalar::i()));
    }

    #[test]
    fn star_of_product_reverses_factors() {
        let a = catalog::matrix_algebra(3);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let x = a.basis_element(i).scale(&Scalar::gaussian(1, 2, 3));
                let y = a.basis_element(j).scale(&Scalar::gaussian(-2, 5, 7));
                assert_eq!((&x * &y).star(), &y.star() * &x.star());
            }
        }
    }
}
