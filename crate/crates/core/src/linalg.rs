//! Exact linear algebra over the Gaussian rationals.
//!
//! Everything downstream (derivation spaces, centers, Hom solves, quotients)
//! reduces to three primitives implemented here: reduced row echelon form,
//! kernel bases, and linear solves. Pivoting is deterministic: columns are
//! scanned left to right and the first row with a nonzero entry wins, so the
//! reduced form, and with it every "canonical basis" the engine reports, is a
//! pure function of the input with no platform or ordering dependence.
//!
//! The reduced row echelon form of a matrix is unique; [`SubspaceBasis`]
//! exploits that to give subspaces a canonical representation on which
//! membership and equality are literal comparisons.

use crate::scalar::Scalar;
use std::fmt;

/// Dense matrix of [`Scalar`]s, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            *m.at_mut(k, k) = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let t = a * b;
                        *out.at_mut(r, c) += &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for c in 0..self.cols {
                    let a = self.at(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += &(a * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product; block `(r, c)` is `self[r][c] * other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.at(r / other.rows, c / other.cols) * other.at(r % other.rows, c % other.cols)
        })
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// In-place reduction to reduced row echelon form.
    ///
    /// Deterministic pivoting: columns are scanned left to right, and within a
    /// column the lowest-index candidate row is chosen. Returns the pivot
    /// columns in increasing order; the rank is their count.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) =
                (next_row..self.rows).find(|&r| !self.at(r, col).is_zero())
            else {
                continue;
            };
            self.swap_rows(next_row, pivot_row);
            let inv = self.at(next_row, col).inv().expect("pivot is nonzero");
            self.scale_row(next_row, &inv);
            for r in 0..self.rows {
                if r != next_row && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    self.sub_scaled_row(r, next_row, &factor);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Canonical basis of `{ v : self · v = 0 }`.
    ///
    /// Built from one vector per free column (carrying `1` in that column),
    /// then re-echelonized so every `SubspaceBasis`, however constructed,
    /// presents a given subspace by the same unique reduced basis.
    pub fn nullspace(&self) -> SubspaceBasis {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -m.at(row, free);
            }
            vectors.push(v);
        }
        SubspaceBasis::from_spanning(self.cols, vectors)
    }

    /// Solve `self · x = rhs` exactly.
    pub fn solve(&self, rhs: &[Scalar]) -> LinearSolution {
        assert_eq!(self.rows, rhs.len(), "rhs length mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = rhs[r].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return LinearSolution::Inconsistent;
        }
        let mut particular = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            particular[p] = aug.at(row, self.cols).clone();
        }
        let kernel = self.nullspace();
        if kernel.dim() == 0 {
            LinearSolution::Unique(particular)
        } else {
            LinearSolution::Affine { particular, kernel }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.at(r, c);
            if !v.is_zero() {
                let t = v * s;
                *self.at_mut(r, c) = t;
            }
        }
    }

    fn sub_scaled_row(&mut self, target: usize, source: usize, factor: &Scalar) {
        for c in 0..self.cols {
            let v = self.at(source, c);
            if !v.is_zero() {
                let t = v * factor;
                *self.at_mut(target, c) -= &t;
            }
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}{}", self.at(r, c), if c + 1 == self.cols { "" } else { ", " })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// Exactly one solution.
    Unique(Vec<Scalar>),
    /// Solution set `particular + kernel`.
    Affine { particular: Vec<Scalar>, kernel: SubspaceBasis },
    /// No solution.
    Inconsistent,
}

impl LinearSolution {
    pub fn unique(self) -> Option<Vec<Scalar>> {
        match self {
            LinearSolution::Unique(v) => Some(v),
            _ => None,
        }
    }

    pub fn any_solution(self) -> Option<Vec<Scalar>> {
        match self {
            LinearSolution::Unique(v) => Some(v),
            LinearSolution::Affine { particular, .. } => Some(particular),
            LinearSolution::Inconsistent => None,
        }
    }
}

/// A linear subspace held as its unique reduced echelon basis.
///
/// Two `SubspaceBasis` values describe the same subspace of the same ambient
/// space exactly when they are `==`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    /// The zero subspace of `ambient`-dimensional space.
    pub fn empty(ambient: usize) -> Self {
        SubspaceBasis { ambient, vectors: Vec::new(), pivots: Vec::new() }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn from_spanning<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        Self::from_spanning_capped(ambient, vectors, ambient)
    }

    /// Like [`from_spanning`](Self::from_spanning) but stops consuming input
    /// once the span reaches `cap` dimensions. The echelon basis of a span does
    /// not depend on insertion order, so early exit keeps the result canonical.
    pub fn from_spanning_capped<I>(ambient: usize, vectors: I, cap: usize) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut basis = SubspaceBasis::empty(ambient);
        for v in vectors {
            basis.insert(v);
            if basis.dim() >= cap {
                break;
            }
        }
        basis
    }

    /// Insert one vector, keeping the reduced echelon invariant. Returns true
    /// if the span grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        self.reduce_in_place(&mut v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv().expect("leading entry is nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.vectors.iter_mut() {
            if !row[lead].is_zero() {
                let factor = row[lead].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    if !b.is_zero() {
                        *a -= &(&factor * b);
                    }
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.vectors.insert(pos, v);
        true
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vector(&self, k: usize) -> &[Scalar] {
        &self.vectors[k]
    }

    /// Residual of `v` after subtracting its projection along the basis.
    fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (row, &p) in self.vectors.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a -= &(&factor * b);
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut residual = v.to_vec();
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| residual[p].clone()).collect();
        self.reduce_in_place(&mut residual);
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    /// Reconstruct the vector with the given coordinates.
    pub fn combination(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim(), "coordinate count mismatch");
        let mut v = vec![Scalar::zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.vectors) {
            if c.is_zero() {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a += &(c * b);
                }
            }
        }
        v
    }

    /// Whether both bases present the same subspace.
    pub fn same_subspace(&self, other: &SubspaceBasis) -> bool {
        self == other
    }
}

/// Pointwise vector sum `a + b`.
pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Pointwise vector difference `a - b`.
pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scalar multiple `s * a`.
pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

/// `target += s * a`.
pub fn vec_add_scaled(target: &mut [Scalar], a: &[Scalar], s: &Scalar) {
    assert_eq!(target.len(), a.len());
    if s.is_zero() {
        return;
    }
    for (t, x) in target.iter_mut().zip(a) {
        if !x.is_zero() {
            *t += &(s * x);
        }
    }
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
        )
    }

    #[test]
    fn rref_is_canonical_and_idempotent() {
        let mut a = m(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5]]);
        let pivots = a.rref_in_place();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a, m(&[&[1, 0, -1], &[0, 1, 2], &[0, 0, 0]]));
        let mut again = a.clone();
        again.rref_in_place();
        assert_eq!(again, a);
    }

    #[test]
    fn lowest_index_pivot_wins() {
        // Both rows could serve as the first pivot; row 0 must be chosen, so
        // the reduced form starts from row 0's scaling.
        let mut a = m(&[&[2, 4], &[3, 5]]);
        a.rref_in_place();
        assert_eq!(a, Matrix::identity(2));
    }

    #[test]
    fn nullspace_vectors_satisfy_the_system() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns.dim() + a.rank(), a.cols());
        for v in ns.vectors() {
            assert!(vec_is_zero(&a.mul_vec(v)));
        }
    }

    #[test]
    fn solve_classifies_all_three_outcomes() {
        let a = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            a.solve(&[Scalar::from_int(3), Scalar::from_int(4)]),
            LinearSolution::Unique(vec![Scalar::from_int(3), Scalar::from_int(4)])
        );

        let b = m(&[&[1, 1], &[2, 2]]);
        match b.solve(&[Scalar::from_int(1), Scalar::from_int(2)]) {
            LinearSolution::Affine { particular, kernel } => {
                assert!(vec_is_zero(&vec_sub(&b.mul_vec(&particular), &[
                    Scalar::from_int(1),
                    Scalar::from_int(2)
                ])));
                assert_eq!(kernel.dim(), 1);
            }
            other => panic!("expected affine solution set, got {other:?}"),
        }

        assert_eq!(
            b.solve(&[Scalar::from_int(1), Scalar::from_int(3)]),
            LinearSolution::Inconsistent
        );
    }

    #[test]
    fn subspace_basis_is_insertion_order_independent() {
        let v1 = vec![Scalar::from_int(1), Scalar::from_int(2), Scalar::from_int(0)];
        let v2 = vec![Scalar::from_int(0), Scalar::from_int(1), Scalar::from_int(1)];
        let v3 = vec_add(&v1, &v2);
        let a = SubspaceBasis::from_spanning(3, vec![v1.clone(), v2.clone(), v3.clone()]);
        let b = SubspaceBasis::from_spanning(3, vec![v3, v2, v1]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = SubspaceBasis::from_spanning(
            3,
            vec![
                vec![Scalar::from_int(1), Scalar::i(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::from_int(2), Scalar::from_int(1)],
            ],
        );
        let target = vec_add(
            &vec_scale(basis.basis_vector(0), &Scalar::gaussian(1, 1, 2)),
            &vec_scale(basis.basis_vector(1), &Scalar::from_int(-3)),
        );
        let coords = basis.coordinates(&target).unwrap();
        assert_eq!(basis.combination(&coords), target);
        assert!(basis.coordinates(&[Scalar::one(), Scalar::zero(), Scalar::one()]).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-4i64..=4, -4i64..=4), r * c).prop_map(move |entries| {
                let mut m = Matrix::zeros(r, c);
                for (k, (a, b)) in entries.into_iter().enumerate() {
                    *m.at_mut(k / c, k % c) = Scalar::gaussian(a, b, 1);
                }
                m
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity_holds(a in small_matrix()) {
            prop_assert_eq!(a.rank() + a.nullspace().dim(), a.cols());
        }

        #[test]
        fn nullspace_annihilates(a in small_matrix()) {
            for v in a.nullspace().vectors() {
                prop_assert!(vec_is_zero(&a.mul_vec(v)));
            }
        }

        #[test]
        fn solve_residual_is_zero(a in small_matrix(), seed in proptest::collection::vec((-3i64..=3, -3i64..=3), 4)) {
            let x: Vec<Scalar> = (0..a.cols()).map(|k| {
                let (p, q) = seed[k % seed.len()];
                Scalar::gaussian(p, q, 1)
            }).collect();
            let rhs = a.mul_vec(&x);
            let sol = a.solve(&rhs).any_solution().expect("constructed system is consistent");
            prop_assert!(vec_is_zero(&vec_sub(&a.mul_vec(&sol), &rhs)));
        }
    }
}
