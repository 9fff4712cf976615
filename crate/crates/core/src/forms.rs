//! Derivation-based differential forms.
//!
//! A degree-`n` form is an alternating `ℂ`-multilinear map `Der(A)ⁿ → A`,
//! stored by its values on strictly increasing tuples of basis derivations.
//! `Z(A)`-multilinearity is a property checked by [`DerForm::is_z_multilinear`]
//! (and carved out as a subspace by [`z_multilinear_space`]) rather than baked
//! into the storage: `Der(A)` need not be free over the center, while
//! components over a fixed `ℂ`-basis are always faithful.
//!
//! The graded product is the shuffle sum without factorial normalization, so
//! it is associative over any field and restricts in degree 0 to the product
//! of the algebra. The differential is the Chevalley-Eilenberg formula
//!
//! ```text
//! (dω)(X_0,…,X_n) = Σ_k (−1)^k X_k(ω(…k̂…)) + Σ_{r<s} (−1)^{r+s} ω([X_r,X_s],…r̂…ŝ…)
//! ```
//!
//! and the interior product contracts the first slot. The minimal calculus is
//! the span of monomials `x_0 dx_1 ⋯ dx_n` over basis words; membership comes
//! with an exact certificate.

use crate::algebra::AlgebraElement;
use crate::derivation::{Derivation, DerivationBasis};
use crate::linalg::{vec_add_scaled, vec_is_zero, Matrix, SubspaceBasis};
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormError {
    #[error("AlgebraMismatch: forms live over different derivation bases")]
    AlgebraMismatch,
    #[error("DegreeZero: cannot contract a 0-form")]
    DegreeZero,
}

/// Binomial coefficient, 0 when `k > n`.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1usize;
    for i in 0..k {
        // Exact at every step: r holds C(n, i) before the update.
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Strictly increasing `n`-tuples in `0..d`, lexicographic order.
pub(crate) fn tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(d, n));
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    if n > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next tuple.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != d - n + i {
                break;
            }
        }
        if cur[i] == d - n + i {
            return out;
        }
        cur[i] += 1;
        for j in i + 1..n {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Lexicographic rank of a strictly increasing tuple in `0..d`.
pub(crate) fn tuple_rank(d: usize, t: &[usize]) -> usize {
    let n = t.len();
    let mut rank = 0;
    let mut next = 0usize;
    for (i, &ti) in t.iter().enumerate() {
        for v in next..ti {
            rank += binomial(d - 1 - v, n - 1 - i);
        }
        next = ti + 1;
    }
    rank
}

/// Sorts the indices, returning the permutation sign; `None` on a repeat.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    Some(negative)
}

/// Determinant by first-row expansion; only used for tiny matrices
/// (degree-many rows).
fn det(rows: &[Vec<Scalar>]) -> Scalar {
    match rows.len() {
        0 => Scalar::one(),
        1 => rows[0][0].clone(),
        n => {
            let mut acc = Scalar::zero();
            for c in 0..n {
                if rows[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Scalar>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][c] * &det(&minor);
                if c % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// An alternating multilinear `A`-valued form on `Der(A)`.
#[derive(Clone, PartialEq, Eq)]
pub struct DerForm {
    derb: DerivationBasis,
    degree: usize,
    /// `components[rank(T)]` is the coefficient vector of the value on the
    /// increasing tuple `T` of basis derivations.
    components: Vec<Vec<Scalar>>,
}

impl fmt::Debug for DerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DerForm(degree {}, {} components)", self.degree, self.components.len())
    }
}

impl DerForm {
    pub fn zero(derb: &DerivationBasis, degree: usize) -> Self {
        let count = binomial(derb.dim(), degree);
        let dim = derb.algebra().dim();
        DerForm {
            derb: derb.clone(),
            degree,
            components: vec![vec![Scalar::zero(); dim]; count],
        }
    }

    /// An algebra element as a 0-form.
    pub fn scalar(derb: &DerivationBasis, x: &AlgebraElement) -> Self {
        DerForm { derb: derb.clone(), degree: 0, components: vec![x.coeffs().to_vec()] }
    }

    /// The 1-form `dx`, with `(dx)(X) = X(x)`.
    pub fn d_of(derb: &DerivationBasis, x: &AlgebraElement) -> Self {
        Self::scalar(derb, x).differential()
    }

    pub fn from_components(derb: &DerivationBasis, degree: usize, components: Vec<Vec<Scalar>>) -> Self {
        assert_eq!(components.len(), binomial(derb.dim(), degree), "component count mismatch");
        let dim = derb.algebra().dim();
        assert!(components.iter().all(|c| c.len() == dim), "component length mismatch");
        DerForm { derb: derb.clone(), degree, components }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn derivations(&self) -> &DerivationBasis {
        &self.derb
    }

    pub fn algebra(&self) -> &crate::algebra::Algebra {
        self.derb.algebra()
    }

    /// Value on the increasing tuple with the given rank.
    pub fn component(&self, rank: usize) -> &[Scalar] {
        &self.components[rank]
    }

    pub fn components(&self) -> &[Vec<Scalar>] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| vec_is_zero(c))
    }

    /// Value on basis derivations in arbitrary order (sign rules applied,
    /// zero on repeats).
    pub fn value_on(&self, indices: &[usize]) -> Vec<Scalar> {
        assert_eq!(indices.len(), self.degree, "wrong number of arguments");
        let dim = self.algebra().dim();
        let mut sorted = indices.to_vec();
        match sort_with_sign(&mut sorted) {
            None => vec![Scalar::zero(); dim],
            Some(negative) => {
                if sorted.last().is_some_and(|&l| l >= self.derb.dim()) {
                    panic!("derivation index out of range");
                }
                let comp = &self.components[tuple_rank(self.derb.dim(), &sorted)];
                if negative {
                    comp.iter().map(|c| -c).collect()
                } else {
                    comp.clone()
                }
            }
        }
    }

    /// Multilinear evaluation at derivations given by coordinate vectors.
    pub fn value_at_coords(&self, vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
        assert_eq!(vectors.len(), self.degree, "wrong number of arguments");
        let d = self.derb.dim();
        let dim = self.algebra().dim();
        let mut acc = vec![Scalar::zero(); dim];
        for (rank, t) in tuples(d, self.degree).iter().enumerate() {
            if vec_is_zero(&self.components[rank]) {
                continue;
            }
            let minor: Vec<Vec<Scalar>> = vectors
                .iter()
                .map(|v| t.iter().map(|&k| v[k].clone()).collect())
                .collect();
            let coeff = det(&minor);
            if !coeff.is_zero() {
                vec_add_scaled(&mut acc, &self.components[rank], &coeff);
            }
        }
        acc
    }

    /// Multilinear evaluation at arbitrary derivations.
    pub fn value_at(&self, xs: &[&Derivation]) -> AlgebraElement {
        let coords: Vec<Vec<Scalar>> = xs
            .iter()
            .map(|x| self.derb.coordinates(x).expect("argument is a derivation of the algebra"))
            .collect();
        self.algebra().element(self.value_at_coords(&coords))
    }

    pub fn add(&self, other: &DerForm) -> DerForm {
        self.zip_check(other);
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| crate::linalg::vec_add(a, b))
            .collect();
        DerForm { derb: self.derb.clone(), degree: self.degree, components }
    }

    pub fn sub(&self, other: &DerForm) -> DerForm {
        self.zip_check(other);
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| crate::linalg::vec_sub(a, b))
            .collect();
        DerForm { derb: self.derb.clone(), degree: self.degree, components }
    }

    pub fn neg(&self) -> DerForm {
        let components =
            self.components.iter().map(|c| c.iter().map(|x| -x).collect()).collect();
        DerForm { derb: self.derb.clone(), degree: self.degree, components }
    }

    pub fn scale(&self, s: &Scalar) -> DerForm {
        let components = self.components.iter().map(|c| crate::linalg::vec_scale(c, s)).collect();
        DerForm { derb: self.derb.clone(), degree: self.degree, components }
    }

    /// Pointwise left multiplication `x·ω` in `A`.
    pub fn mul_left(&self, x: &AlgebraElement) -> DerForm {
        let a = self.algebra();
        let components =
            self.components.iter().map(|c| a.mul_coeffs(x.coeffs(), c)).collect();
        DerForm { derb: self.derb.clone(), degree: self.degree, components }
    }

    /// Pointwise right multiplication `ω·x` in `A`.
    pub fn mul_right(&self, x: &AlgebraElement) -> DerForm {
        let a = self.algebra();
        let components =
            self.components.iter().map(|c| a.mul_coeffs(c, x.coeffs())).collect();
        DerForm { derb: self.derb.clone(), degree: self.degree, components }
    }

    fn zip_check(&self, other: &DerForm) {
        assert!(self.derb == other.derb, "forms over different derivation bases");
        assert_eq!(self.degree, other.degree, "degree mismatch");
    }

    /// Shuffle product: `(αβ)(X_1,…,X_{a+b}) = Σ_σ sgn(σ) α(X_σ…)β(X_σ…)`
    /// over `(a, b)`-shuffles, without factorial normalization.
    pub fn wedge(&self, other: &DerForm) -> Result<DerForm, FormError> {
        if self.derb != other.derb {
            return Err(FormError::AlgebraMismatch);
        }
        let (p, q) = (self.degree, other.degree);
        let d = self.derb.dim();
        let algebra = self.algebra();
        let dim = algebra.dim();
        let mut components = Vec::with_capacity(binomial(d, p + q));
        for t in tuples(d, p + q) {
            let mut acc = vec![Scalar::zero(); dim];
            for positions in tuples(p + q, p) {
                // Shuffle sign: move the chosen positions to the front.
                let mut shift = 0usize;
                for (k, &pos) in positions.iter().enumerate() {
                    shift += pos - k;
                }
                let mut taken = vec![false; p + q];
                for &pos in &positions {
                    taken[pos] = true;
                }
                let left: Vec<usize> = positions.iter().map(|&pos| t[pos]).collect();
                let right: Vec<usize> =
                    (0..p + q).filter(|&k| !taken[k]).map(|k| t[k]).collect();
                let lv = &self.components[tuple_rank(d, &left)];
                let rv = &other.components[tuple_rank(d, &right)];
                let prod = algebra.mul_coeffs(lv, rv);
                if shift % 2 == 0 {
                    for (a, b) in acc.iter_mut().zip(&prod) {
                        *a += b;
                    }
                } else {
                    for (a, b) in acc.iter_mut().zip(&prod) {
                        *a -= b;
                    }
                }
            }
            components.push(acc);
        }
        Ok(DerForm { derb: self.derb.clone(), degree: p + q, components })
    }

    /// Chevalley-Eilenberg differential.
    pub fn differential(&self) -> DerForm {
        let n = self.degree;
        let d = self.derb.dim();
        let algebra = self.algebra();
        let dim = algebra.dim();
        let mut components = Vec::with_capacity(binomial(d, n + 1));
        for t in tuples(d, n + 1) {
            let mut acc = vec![Scalar::zero(); dim];
            // Σ_k (−1)^k X_k(ω(… k̂ …))
            for (k, &tk) in t.iter().enumerate() {
                let rest: Vec<usize> =
                    t.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                let inner = &self.components[tuple_rank(d, &rest)];
                let image = self.derb.derivation(tk).matrix().mul_vec(inner);
                if k % 2 == 0 {
                    for (a, b) in acc.iter_mut().zip(&image) {
                        *a += b;
                    }
                } else {
                    for (a, b) in acc.iter_mut().zip(&image) {
                        *a -= b;
                    }
                }
            }
            // Σ_{r<s} (−1)^{r+s} ω([X_r, X_s], … r̂ … ŝ …)
            if n > 0 {
                for r in 0..n + 1 {
                    for s in r + 1..n + 1 {
                        let bracket = self.derb.bracket_coords(t[r], t[s]);
                        let rest: Vec<usize> = t
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != r && j != s)
                            .map(|(_, &v)| v)
                            .collect();
                        let mut value = vec![Scalar::zero(); dim];
                        for (a, c) in bracket.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let mut args = Vec::with_capacity(n);
                            args.push(a);
                            args.extend_from_slice(&rest);
                            let v = self.value_on(&args);
                            vec_add_scaled(&mut value, &v, c);
                        }
                        if (r + s) % 2 == 0 {
                            for (a, b) in acc.iter_mut().zip(&value) {
                                *a += b;
                            }
                        } else {
                            for (a, b) in acc.iter_mut().zip(&value) {
                                *a -= b;
                            }
                        }
                    }
                }
            }
            components.push(acc);
        }
        DerForm { derb: self.derb.clone(), degree: n + 1, components }
    }

    /// Interior product `i_X` in the first slot, with `X` given by Der
    /// coordinates.
    pub fn contract_coords(&self, x: &[Scalar]) -> Result<DerForm, FormError> {
        if self.degree == 0 {
            return Err(FormError::DegreeZero);
        }
        assert_eq!(x.len(), self.derb.dim(), "coordinate length mismatch");
        let n = self.degree;
        let d = self.derb.dim();
        let dim = self.algebra().dim();
        let mut components = Vec::with_capacity(binomial(d, n - 1));
        for t in tuples(d, n - 1) {
            let mut acc = vec![Scalar::zero(); dim];
            for (a, c) in x.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut args = Vec::with_capacity(n);
                args.push(a);
                args.extend_from_slice(&t);
                let v = self.value_on(&args);
                vec_add_scaled(&mut acc, &v, c);
            }
            components.push(acc);
        }
        Ok(DerForm { derb: self.derb.clone(), degree: n - 1, components })
    }

    pub fn contract(&self, x: &Derivation) -> Result<DerForm, FormError> {
        let coords =
            self.derb.coordinates(x).expect("argument is a derivation of the algebra");
        self.contract_coords(&coords)
    }

    /// Lie derivative `L_X = d ∘ i_X + i_X ∘ d`, with `i_X` of a 0-form read
    /// as 0.
    pub fn lie_derive_coords(&self, x: &[Scalar]) -> DerForm {
        let term2 = self
            .differential()
            .contract_coords(x)
            .expect("differential has positive degree");
        match self.contract_coords(x) {
            Ok(inner) => inner.differential().add(&term2),
            Err(_) => term2,
        }
    }

    pub fn lie_derive(&self, x: &Derivation) -> DerForm {
        let coords =
            self.derb.coordinates(x).expect("argument is a derivation of the algebra");
        self.lie_derive_coords(&coords)
    }

    /// Involution `ω*(X_1,…,X_n) = (ω(X_1*,…,X_n*))*`; antilinear.
    pub fn star(&self) -> DerForm {
        let d = self.derb.dim();
        let algebra = self.algebra();
        let starred: Vec<Vec<Scalar>> =
            (0..d).map(|a| self.derb.star_coords(a).to_vec()).collect();
        let components = tuples(d, self.degree)
            .into_iter()
            .map(|t| {
                let vectors: Vec<Vec<Scalar>> =
                    t.iter().map(|&a| starred[a].clone()).collect();
                algebra.star_coeffs(&self.value_at_coords(&vectors))
            })
            .collect();
        DerForm { derb: self.derb.clone(), degree: self.degree, components }
    }

    /// `Z(A)`-multilinearity: `ω(zX, …) = z·ω(X, …)` for central `z`, checked
    /// in every slot via alternation.
    pub fn is_z_multilinear(&self) -> bool {
        let flat = self.flatten();
        z_multilinear_space(&self.derb, self.degree).contains(&flat)
    }

    /// Components flattened tuple-major.
    pub fn flatten(&self) -> Vec<Scalar> {
        let dim = self.algebra().dim();
        let mut out = Vec::with_capacity(self.components.len() * dim);
        for c in &self.components {
            out.extend(c.iter().cloned());
        }
        out
    }

    pub fn from_flat(derb: &DerivationBasis, degree: usize, flat: &[Scalar]) -> DerForm {
        let dim = derb.algebra().dim();
        let count = binomial(derb.dim(), degree);
        assert_eq!(flat.len(), count * dim, "flat length mismatch");
        let components = (0..count).map(|t| flat[t * dim..(t + 1) * dim].to_vec()).collect();
        DerForm { derb: derb.clone(), degree, components }
    }

    /// Report shape: degree plus nonzero components keyed by index tuple.
    pub fn to_report_value(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (rank, t) in tuples(self.derb.dim(), self.degree).iter().enumerate() {
            if vec_is_zero(&self.components[rank]) {
                continue;
            }
            let key = t.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let vals: Vec<serde_json::Value> = self.components[rank]
                .iter()
                .map(|s| serde_json::Value::String(s.to_string()))
                .collect();
            map.insert(key, serde_json::Value::Array(vals));
        }
        serde_json::json!({ "degree": self.degree, "components": map })
    }
}

/// The subspace of component vectors satisfying `Z(A)`-multilinearity in
/// degree `n`, inside the flat component space.
///
/// For every center basis element `z`, derivation index `a` and increasing
/// `(n−1)`-tuple `B` the constraint reads `ω(zX_a, B) = z·ω(X_a, B)`; by
/// alternation that covers every slot. With trivial center this is the full
/// space.
pub fn z_multilinear_space(derb: &DerivationBasis, degree: usize) -> SubspaceBasis {
    let d = derb.dim();
    let algebra = derb.algebra();
    let dim = algebra.dim();
    let count = binomial(d, degree);
    let ambient = count * dim;
    if degree == 0 || ambient == 0 {
        return SubspaceBasis::from_spanning(
            ambient,
            (0..ambient).map(|k| {
                let mut v = vec![Scalar::zero(); ambient];
                v[k] = Scalar::one();
                v
            }),
        );
    }
    let center_dim = algebra.center().dim();
    // z_action[z] column a = coordinates of z·X_a.
    let z_actions: Vec<Matrix> = (0..center_dim)
        .map(|zi| {
            let z = algebra.center_element(zi);
            let mut m = Matrix::zeros(d, d);
            for a in 0..d {
                let za = derb.derivation(a).central_multiple(&z);
                let coords = derb
                    .coordinates(&za)
                    .expect("central multiples of derivations are derivations");
                for r in 0..d {
                    *m.at_mut(r, a) = coords[r].clone();
                }
            }
            m
        })
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let rest_tuples = tuples(d, degree - 1);
    for zi in 0..center_dim {
        let z = algebra.center_element(zi);
        let lz = algebra.left_mult_of(&z);
        for a in 0..d {
            for b in &rest_tuples {
                // Row per output coefficient k: Σ_c Z[c][a]·ω([c]++B)_k − (z·ω([a]++B))_k.
                let mut row = vec![vec![Scalar::zero(); ambient]; dim];
                for c in 0..d {
                    let coeff = z_actions[zi].at(c, a);
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut args = vec![c];
                    args.extend_from_slice(b);
                    if let Some(negative) = sort_with_sign(&mut args) {
                        let rank = tuple_rank(d, &args);
                        let signed =
                            if negative { -coeff } else { coeff.clone() };
                        for (k, r) in row.iter_mut().enumerate() {
                            r[rank * dim + k] += &signed;
                        }
                    }
                }
                let mut args = vec![a];
                args.extend_from_slice(b);
                if let Some(negative) = sort_with_sign(&mut args) {
                    let rank = tuple_rank(d, &args);
                    for (k, r) in row.iter_mut().enumerate() {
                        for m in 0..dim {
                            let coeff = lz.at(k, m);
                            if !coeff.is_zero() {
                                if negative {
                                    r[rank * dim + m] += coeff;
                                } else {
                                    r[rank * dim + m] -= coeff;
                                }
                            }
                        }
                    }
                }
                for r in row {
                    if !vec_is_zero(&r) {
                        rows.push(r);
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        Matrix::zeros(1, ambient).nullspace()
    } else {
        Matrix::from_rows(rows).nullspace()
    }
}

/// The span of monomials `x_0 dx_1 ⋯ dx_n` over basis words in one degree,
/// with generator-level certificates.
pub struct MinimalCalculus {
    derb: DerivationBasis,
    degree: usize,
    span: SubspaceBasis,
    /// Independent generating subset: basis word `(x_0, …, x_n)` and the
    /// flattened form it produced.
    generators: Vec<(Vec<usize>, Vec<Scalar>)>,
}

impl MinimalCalculus {
    /// Build the span, stopping early once it fills the whole component
    /// space.
    pub fn compute(derb: &DerivationBasis, degree: usize) -> MinimalCalculus {
        let algebra = derb.algebra().clone();
        let dim = algebra.dim();
        let d = derb.dim();
        let ambient = binomial(d, degree) * dim;
        let mut span = SubspaceBasis::empty(ambient);
        let mut generators = Vec::new();
        // dx for each basis element, reused across words.
        let dxs: Vec<DerForm> =
            (0..dim).map(|i| DerForm::d_of(derb, &algebra.basis_element(i))).collect();
        let mut word = vec![0usize; degree + 1];
        'words: loop {
            let mut form = DerForm::scalar(derb, &algebra.basis_element(word[0]));
            for &xi in &word[1..] {
                form = form.wedge(&dxs[xi]).expect("same derivation basis");
            }
            let flat = form.flatten();
            if span.insert(flat.clone()) {
                generators.push((word.clone(), flat));
                if span.dim() == ambient {
                    break;
                }
            }
            // Next word in lex order.
            let mut i = degree + 1;
            loop {
                if i == 0 {
                    break 'words;
                }
                i -= 1;
                word[i] += 1;
                if word[i] < dim {
                    break;
                }
                word[i] = 0;
            }
        }
        MinimalCalculus { derb: derb.clone(), degree, span, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn span(&self) -> &SubspaceBasis {
        &self.span
    }

    /// Whether the span is all alternating component vectors of this degree.
    pub fn is_full(&self) -> bool {
        self.span.dim() == self.span.ambient()
    }

    pub fn contains(&self, form: &DerForm) -> bool {
        assert!(form.derb == self.derb && form.degree == self.degree);
        self.span.contains(&form.flatten())
    }

    /// Expansion over the stored monomial generators, when the form lies in
    /// the span. Each entry pairs a basis word `(x_0, …, x_n)` with its
    /// coefficient.
    pub fn certificate(&self, form: &DerForm) -> Option<Vec<(Vec<usize>, Scalar)>> {
        assert!(form.derb == self.derb && form.degree == self.degree);
        let ambient = self.span.ambient();
        let r = self.generators.len();
        let mat = Matrix::from_fn(ambient, r, |row, col| self.generators[col].1[row].clone());
        match mat.solve(&form.flatten()) {
            crate::linalg::LinearSolution::Inconsistent => None,
            sol => {
                let coeffs = sol.any_solution().expect("solution exists");
                Some(
                    self.generators
                        .iter()
                        .zip(coeffs)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|((word, _), c)| (word.clone(), c))
                        .collect(),
                )
            }
        }
    }

    /// Rebuild the form described by a certificate.
    pub fn from_certificate(&self, cert: &[(Vec<usize>, Scalar)]) -> DerForm {
        let algebra = self.derb.algebra();
        let mut acc = DerForm::zero(&self.derb, self.degree);
        for (word, c) in cert {
            let mut form = DerForm::scalar(&self.derb, &algebra.basis_element(word[0]));
            for &xi in &word[1..] {
                form = form
                    .wedge(&DerForm::d_of(&self.derb, &algebra.basis_element(xi)))
                    .expect("same derivation basis");
            }
            acc = acc.add(&form.scale(c));
        }
        acc
    }
}

/// Ranks of the evaluation pairing between the degree-1 minimal span and
/// `Der(A)`: first the rank over forms (injectivity of `ω ↦ (ω(X_a))_a`),
/// then over derivations (injectivity of `X ↦ (ω_s(X))_s`). The pairing is
/// nondegenerate when they equal the span dimension and `dim Der(A)`.
pub fn biduality_ranks(minimal: &MinimalCalculus) -> (usize, usize) {
    assert_eq!(minimal.degree, 1, "biduality pairing is a degree-1 statement");
    let d = minimal.derb.dim();
    let dim = minimal.derb.algebra().dim();
    let s = minimal.span.dim();
    // Components of degree-1 forms are exactly their values on the basis, so
    // the form-side matrix is the span basis itself.
    let form_side = Matrix::from_fn(s, d * dim, |row, col| {
        minimal.span.basis_vector(row)[col].clone()
    });
    let der_side = Matrix::from_fn(d, s * dim, |a, col| {
        let (row, k) = (col / dim, col % dim);
        minimal.span.basis_vector(row)[a * dim + k].clone()
    });
    (form_side.rank(), der_side.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::catalog;
    use crate::derivation::DerivationBasis;

    fn m2() -> (Algebra, DerivationBasis) {
        let a = catalog::matrix_algebra(2);
        let derb = DerivationBasis::compute(&a);
        (a, derb)
    }

    fn int_form(derb: &DerivationBasis, degree: usize, seed: i64) -> DerForm {
        // Deterministic small-integer components.
        let dim = derb.algebra().dim();
        let count = binomial(derb.dim(), degree);
        let mut state = seed;
        let components = (0..count)
            .map(|_| {
                (0..dim)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        Scalar::from_int((state >> 33) % 5 - 2)
                    })
                    .collect()
            })
            .collect();
        DerForm::from_components(derb, degree, components)
    }

    #[test]
    fn tuple_enumeration_and_rank_agree() {
        for d in 0..6 {
            for n in 0..=d + 1 {
                let ts = tuples(d, n);
                assert_eq!(ts.len(), binomial(d, n));
                for (i, t) in ts.iter().enumerate() {
                    assert_eq!(tuple_rank(d, t), i);
                }
            }
        }
    }

    #[test]
    fn differential_of_element_evaluates_derivations() {
        let (a, derb) = m2();
        for i in 0..a.dim() {
            let x = a.basis_element(i);
            let dx = DerForm::d_of(&derb, &x);
            for b in 0..derb.dim() {
                let lhs = a.element(dx.value_on(&[b]).to_vec());
                let rhs = derb.derivation(b).apply(&x);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn differential_kills_the_unit() {
        let (a, derb) = m2();
        assert!(DerForm::d_of(&derb, &a.unit()).is_zero());
    }

    #[test]
    fn d_squared_is_zero() {
        let (_, derb) = m2();
        for degree in 0..3 {
            for seed in 0..4 {
                let form = int_form(&derb, degree, 37 * seed + degree as i64);
                assert!(form.differential().differential().is_zero());
            }
        }
    }

    #[test]
    fn wedge_of_one_forms_expands_to_two_shuffles() {
        let (a, derb) = m2();
        let alpha = int_form(&derb, 1, 5);
        let beta = int_form(&derb, 1, 11);
        let prod = alpha.wedge(&beta).unwrap();
        for x in 0..derb.dim() {
            for y in x + 1..derb.dim() {
                let ax = alpha.value_on(&[x]);
                let ay = alpha.value_on(&[y]);
                let bx = beta.value_on(&[x]);
                let by = beta.value_on(&[y]);
                let expect = crate::linalg::vec_sub(&a.mul_coeffs(&ax, &by), &a.mul_coeffs(&ay, &bx));
                assert_eq!(prod.value_on(&[x, y]), expect);
            }
        }
    }

    #[test]
    fn square_of_an_exact_one_form_need_not_vanish() {
        let (a, derb) = m2();
        let alpha = DerForm::d_of(&derb, &a.basis_element(1));
        let square = alpha.wedge(&alpha).unwrap();
        assert!(!square.is_zero());
        // (αα)(X, Y) = [X(x), Y(x)] for α = dx: check against inner
        // derivations by e11 and e21, which give [e12, e22 − e11] = 2·e12.
        let x = crate::derivation::Derivation::inner(&a.basis_element(0));
        let y = crate::derivation::Derivation::inner(&a.basis_element(2));
        let got = square.value_at(&[&x, &y]);
        let expect = a.basis_element(1).scale(&Scalar::from_int(2));
        assert_eq!(got, expect);
    }

    #[test]
    fn wedge_is_associative() {
        let (_, derb) = m2();
        let a1 = int_form(&derb, 1, 3);
        let b1 = int_form(&derb, 1, 19);
        let c0 = int_form(&derb, 0, 23);
        let lhs = a1.wedge(&b1).unwrap().wedge(&c0).unwrap();
        let rhs = a1.wedge(&b1.wedge(&c0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_leibniz_for_d() {
        let (_, derb) = m2();
        let alpha = int_form(&derb, 1, 7);
        let beta = int_form(&derb, 1, 13);
        let lhs = alpha.wedge(&beta).unwrap().differential();
        let rhs = alpha
            .differential()
            .wedge(&beta)
            .unwrap()
            .sub(&alpha.wedge(&beta.differential()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_anticommutes_and_squares_to_zero() {
        let (_, derb) = m2();
        let omega = int_form(&derb, 2, 41);
        let mut x = vec![Scalar::zero(); derb.dim()];
        x[0] = Scalar::from_int(2);
        x[2] = Scalar::from_int(-1);
        let mut y = vec![Scalar::zero(); derb.dim()];
        y[1] = Scalar::one();
        y[2] = Scalar::from_int(3);
        let xy = omega
            .contract_coords(&x)
            .unwrap()
            .contract_coords(&y)
            .unwrap();
        let yx = omega
            .contract_coords(&y)
            .unwrap()
            .contract_coords(&x)
            .unwrap();
        assert_eq!(xy, yx.neg());
        let xx = omega.contract_coords(&x).unwrap().contract_coords(&x).unwrap();
        assert!(xx.is_zero());
        assert_eq!(
            int_form(&derb, 0, 1).contract_coords(&x).unwrap_err(),
            FormError::DegreeZero
        );
    }

    #[test]
    fn contraction_is_an_antiderivation() {
        let (_, derb) = m2();
        let alpha = int_form(&derb, 1, 29);
        let beta = int_form(&derb, 1, 31);
        let mut x = vec![Scalar::zero(); derb.dim()];
        x[0] = Scalar::one();
        x[1] = Scalar::from_int(-2);
        // i_X(αβ) = (i_Xα)β + (−1)^deg α · α(i_Xβ), with the 0-form factors
        // multiplied from the side the shuffle product dictates.
        let lhs = alpha.wedge(&beta).unwrap().contract_coords(&x).unwrap();
        let rhs = alpha
            .contract_coords(&x)
            .unwrap()
            .wedge(&beta)
            .unwrap()
            .sub(&alpha.wedge(&beta.contract_coords(&x).unwrap()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_on_scalars_is_application() {
        let (a, derb) = m2();
        let x = a.basis_element(1);
        let form = DerForm::scalar(&derb, &x);
        for b in 0..derb.dim() {
            let mut coords = vec![Scalar::zero(); derb.dim()];
            coords[b] = Scalar::one();
            let lx = form.lie_derive_coords(&coords);
            assert_eq!(lx.degree(), 0);
            assert_eq!(a.element(lx.component(0).to_vec()), derb.derivation(b).apply(&x));
        }
    }

    #[test]
    fn lie_derivative_commutes_with_d() {
        let (_, derb) = m2();
        let omega = int_form(&derb, 1, 43);
        let mut coords = vec![Scalar::zero(); derb.dim()];
        coords[0] = Scalar::from_int(3);
        coords[2] = Scalar::one();
        let lhs = omega.differential().lie_derive_coords(&coords);
        let rhs = omega.lie_derive_coords(&coords).differential();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_bracket_relations_hold() {
        let (_, derb) = m2();
        let omega = int_form(&derb, 2, 47);
        let x = derb.derivation(0).clone();
        let y = derb.derivation(2).clone();
        let xy = x.lie_bracket(&y);
        // L_X i_Y − i_Y L_X = i_[X,Y]
        let lhs = omega
            .contract(&y)
            .unwrap()
            .lie_derive(&x)
            .sub(&omega.lie_derive(&x).contract(&y).unwrap());
        let rhs = omega.contract(&xy).unwrap();
        assert_eq!(lhs, rhs);
        // L_X L_Y − L_Y L_X = L_[X,Y]
        let lhs = omega.lie_derive(&y).lie_derive(&x).sub(&omega.lie_derive(&x).lie_derive(&y));
        let rhs = omega.lie_derive(&xy);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn involution_is_involutive_and_compatible_with_d() {
        let (a, derb) = m2();
        let omega = int_form(&derb, 2, 53).add(&int_form(&derb, 2, 59).scale(&Scalar::i()));
        assert_eq!(omega.star().star(), omega);
        for i in 0..a.dim() {
            let dx = DerForm::d_of(&derb, &a.basis_element(i));
            let dxs = DerForm::d_of(&derb, &a.basis_element(i).star());
            assert_eq!(dx.star(), dxs);
        }
        let alpha = int_form(&derb, 1, 61);
        assert_eq!(alpha.differential().star(), alpha.star().differential());
    }

    #[test]
    fn involution_reverses_products_with_graded_sign() {
        let (_, derb) = m2();
        let alpha = int_form(&derb, 1, 67).add(&int_form(&derb, 1, 71).scale(&Scalar::i()));
        let beta = int_form(&derb, 1, 73);
        // (αβ)* = (−1)^{1·1} β*α*
        let lhs = alpha.wedge(&beta).unwrap().star();
        let rhs = beta.star().wedge(&alpha.star()).unwrap().neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn z_multilinear_space_is_full_for_trivial_center() {
        let (a, derb) = m2();
        let space = z_multilinear_space(&derb, 1);
        assert_eq!(space.dim(), derb.dim() * a.dim());
        assert!(int_form(&derb, 1, 79).is_z_multilinear());
    }

    #[test]
    fn z_multilinear_space_cuts_down_over_dual_numbers() {
        let a = catalog::triangular2();
        let derb = DerivationBasis::compute(&a);
        assert_eq!(derb.dim(), 1);
        // Values must land in ℂ·n: one dimension out of two.
        let space = z_multilinear_space(&derb, 1);
        assert_eq!(space.dim(), 1);
        let honest = DerForm::from_flat(&derb, 1, space.basis_vector(0));
        assert!(honest.is_z_multilinear());
        let dishonest = DerForm::scalar(&derb, &a.unit());
        let dishonest = DerForm::from_components(&derb, 1, vec![dishonest.component(0).to_vec()]);
        assert!(!dishonest.is_z_multilinear());
    }

    #[test]
    fn minimal_calculus_fills_degree_one_over_m2() {
        let (a, derb) = m2();
        let minimal = MinimalCalculus::compute(&derb, 1);
        assert!(minimal.is_full());
        assert_eq!(minimal.dim(), derb.dim() * a.dim());
        let (rank_forms, rank_der) = biduality_ranks(&minimal);
        assert_eq!(rank_forms, minimal.dim());
        assert_eq!(rank_der, derb.dim());
    }

    #[test]
    fn minimal_membership_produces_working_certificates() {
        let (a, derb) = m2();
        let minimal = MinimalCalculus::compute(&derb, 1);
        let omega = DerForm::d_of(&derb, &a.basis_element(1)).mul_left(&a.basis_element(2));
        assert!(minimal.contains(&omega));
        let cert = minimal.certificate(&omega).unwrap();
        assert_eq!(minimal.from_certificate(&cert), omega);
    }

    #[test]
    fn minimal_calculus_is_empty_without_derivations() {
        let a = catalog::complex_pair();
        let derb = DerivationBasis::compute(&a);
        let minimal = MinimalCalculus::compute(&derb, 1);
        assert_eq!(minimal.dim(), 0);
        assert_eq!(minimal.span().ambient(), 0);
    }
}
