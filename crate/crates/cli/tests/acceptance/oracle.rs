//! Dense brute-force dimension oracle, independent of the engine's solvers.
//!
//! Everything here is deliberately written against its own scalar type with
//! its own elimination strategy (right-to-left columns, bottom-most pivot, no
//! echelon normalization), so agreement with the engine is evidence rather
//! than tautology. Only the structure constants are read from the engine.

use ncdg_core::Algebra;
use num_rational::BigRational;
use num_traits::Zero;

/// Gaussian rational, kept apart from the engine's scalar on purpose.
#[derive(Clone, Debug, PartialEq)]
pub struct Cq {
    re: BigRational,
    im: BigRational,
}

impl Cq {
    fn zero() -> Self {
        Cq { re: BigRational::zero(), im: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn sub(&self, other: &Cq) -> Cq {
        Cq { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    fn mul(&self, other: &Cq) -> Cq {
        Cq {
            re: &(&self.re * &other.re) - &(&self.im * &other.im),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }

    /// Division by a nonzero value, via the conjugate over the square norm.
    fn div(&self, other: &Cq) -> Cq {
        let norm = &(&other.re * &other.re) + &(&other.im * &other.im);
        let re = &(&(&self.re * &other.re) + &(&self.im * &other.im)) / &norm;
        let im = &(&(&self.im * &other.re) - &(&self.re * &other.im)) / &norm;
        Cq { re, im }
    }
}

/// Row-major dense matrix with forward elimination only.
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cq>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![Cq::zero(); rows * cols] }
    }

    fn at(&self, r: usize, c: usize) -> &Cq {
        &self.data[r * self.cols + c]
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Cq) {
        let cell = &mut self.data[r * self.cols + c];
        *cell = Cq { re: &cell.re + &v.re, im: &cell.im + &v.im };
    }

    pub fn sub_at(&mut self, r: usize, c: usize, v: &Cq) {
        let cell = &mut self.data[r * self.cols + c];
        *cell = cell.sub(v);
    }

    /// Rank by elimination over the columns from right to left, always taking
    /// the bottom-most unused nonzero row as pivot. Once a column is
    /// processed every unused row is zero there, so later row operations only
    /// need the columns at or left of the current one.
    pub fn rank(mut self) -> usize {
        let mut used = vec![false; self.rows];
        let mut rank = 0;
        for col in (0..self.cols).rev() {
            let pivot_row = match (0..self.rows)
                .rev()
                .find(|&r| !used[r] && !self.at(r, col).is_zero())
            {
                Some(r) => r,
                None => continue,
            };
            used[pivot_row] = true;
            rank += 1;
            let pivot = self.at(pivot_row, col).clone();
            for r in 0..self.rows {
                if used[r] || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).div(&pivot);
                for c in 0..=col {
                    if self.at(pivot_row, c).is_zero() {
                        continue;
                    }
                    let delta = factor.mul(self.at(pivot_row, c));
                    self.sub_at(r, c, &delta);
                }
            }
        }
        rank
    }

    pub fn nullity(self) -> usize {
        let cols = self.cols;
        cols - self.rank()
    }
}

fn constant(algebra: &Algebra, i: usize, j: usize, k: usize) -> Cq {
    let s = algebra.structure_constant(i, j, k);
    Cq { re: s.re().clone(), im: s.im().clone() }
}

/// dim Z(A): nullity of the stacked commutator system `x e_j - e_j x = 0`.
pub fn center_dim(algebra: &Algebra) -> usize {
    let d = algebra.dim();
    let mut system = DenseMatrix::zeros(d * d, d);
    for j in 0..d {
        for k in 0..d {
            let row = j * d + k;
            for i in 0..d {
                system.add_at(row, i, &constant(algebra, i, j, k));
                system.sub_at(row, i, &constant(algebra, j, i, k));
            }
        }
    }
    system.nullity()
}

/// dim Der(A): nullity of the stacked Leibniz system on the matrix entries
/// `D_{l k}` of a candidate derivation (`D(e_k) = sum_l D_{l k} e_l`).
pub fn derivation_dim(algebra: &Algebra) -> usize {
    let d = algebra.dim();
    let var = |l: usize, k: usize| l * d + k;
    let mut system = DenseMatrix::zeros(d * d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                let row = (i * d + j) * d + l;
                // e_l coefficient of D(e_i e_j) - D(e_i) e_j - e_i D(e_j).
                for k in 0..d {
                    system.add_at(row, var(l, k), &constant(algebra, i, j, k));
                    system.sub_at(row, var(k, i), &constant(algebra, k, j, l));
                    system.sub_at(row, var(k, j), &constant(algebra, i, k, l));
                }
            }
        }
    }
    system.nullity()
}

/// dim ad(A): rank of the map `x -> [x, .]`, columns indexed by the basis.
pub fn inner_rank(algebra: &Algebra) -> usize {
    let d = algebra.dim();
    let mut system = DenseMatrix::zeros(d * d, d);
    for j in 0..d {
        for i in 0..d {
            for k in 0..d {
                let row = k * d + i;
                system.add_at(row, j, &constant(algebra, j, i, k));
                system.sub_at(row, j, &constant(algebra, i, j, k));
            }
        }
    }
    system.rank()
}
