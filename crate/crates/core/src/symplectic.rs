//! Symplectic structures and Poisson brackets on derivation forms.
//!
//! A 2-form `ω` is nondegenerate when every element `x` admits a unique
//! Hamiltonian derivation with `ω(X, Ham(x)) = X(x)` for all `X`; this is
//! deliberately stronger than injectivity of `X ↦ i_X ω`. Closed and
//! nondegenerate makes `ω` symplectic, and `{x, y} = ω(Ham x, Ham y)` is then
//! a Poisson bracket; the Jacobi identity holds exactly when `dω = 0`, and
//! [`PoissonBracketTable::new_nondegenerate`] exists precisely to exhibit that
//! correspondence from the failing side.
//!
//! Algebras with trivial center whose derivations are all inner carry a
//! canonical symplectic form: writing a basis derivation as `X_a = ad(i x_a)`,
//! set `ω(ad(ix), ad(iy)) = i[x, y]`. A central normalized linear form `τ`
//! yields the potential `θ(ad(ix)) = x − τ(x)·1` with `dθ = ω`, so the
//! canonical form is exact. Hamiltonian solves report `CenterNotTrivial` for
//! algebras with larger centers rather than inventing a `Z(A)`-linear
//! semantics the construction does not cover.

use crate::algebra::{format_element, Algebra, AlgebraElement};
use crate::derivation::{Derivation, DerivationBasis};
use crate::forms::DerForm;
use crate::linalg::{LinearSolution, Matrix};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SymplecticError {
    #[error("CenterNotTrivial: the construction requires Z(A) = C·1")]
    CenterNotTrivial,
    #[error("OuterDerivationsExist: the construction requires every derivation to be inner")]
    OuterDerivationsExist,
    #[error("Degenerate: no Hamiltonian derivation exists for {witness}")]
    Degenerate { witness: String },
    #[error("NonUnique: the Hamiltonian system has an affine solution set")]
    NonUnique,
    #[error("NotSymplectic: the 2-form is not closed and nondegenerate")]
    NotSymplectic,
    #[error("NotCentral: the linear form fails tau(xy) = tau(yx)")]
    NotCentral,
    #[error("NotNormalized: the linear form has tau(1) != 1")]
    NotNormalized,
}

/// Stacked pairing matrix of a 2-form: rows indexed by (basis derivation a,
/// coefficient k), column b carrying `ω(X_a, X_b)_k`.
fn pairing_matrix(omega: &DerForm) -> Matrix {
    assert_eq!(omega.degree(), 2, "pairing matrix needs a 2-form");
    let derb = omega.derivations();
    let d = derb.dim();
    let dim = derb.algebra().dim();
    let mut m = Matrix::zeros(d * dim, d);
    for a in 0..d {
        for b in 0..d {
            let v = omega.value_on(&[a, b]);
            for k in 0..dim {
                *m.at_mut(a * dim + k, b) = v[k].clone();
            }
        }
    }
    m
}

fn require_trivial_center(algebra: &Algebra) -> Result<(), SymplecticError> {
    if algebra.has_trivial_center() {
        Ok(())
    } else {
        Err(SymplecticError::CenterNotTrivial)
    }
}

/// Solve `ω(X, Ham(x)) = X(x)` for `Ham(x)`.
pub fn hamiltonian(omega: &DerForm, x: &AlgebraElement) -> Result<Derivation, SymplecticError> {
    let derb = omega.derivations();
    let algebra = derb.algebra();
    require_trivial_center(algebra)?;
    let d = derb.dim();
    let dim = algebra.dim();
    let m = pairing_matrix(omega);
    let mut rhs = Vec::with_capacity(d * dim);
    for a in 0..d {
        rhs.extend(derb.derivation(a).apply(x).into_coeffs());
    }
    match m.solve(&rhs) {
        LinearSolution::Unique(h) => Ok(derb.from_coordinates(&h)),
        LinearSolution::Affine { .. } => Err(SymplecticError::NonUnique),
        LinearSolution::Inconsistent => Err(SymplecticError::Degenerate {
            witness: format_element(algebra, x.coeffs()),
        }),
    }
}

/// Whether every basis element has a unique Hamiltonian derivation.
pub fn is_nondegenerate(omega: &DerForm) -> Result<bool, SymplecticError> {
    let derb = omega.derivations();
    let algebra = derb.algebra();
    require_trivial_center(algebra)?;
    for i in 0..algebra.dim() {
        match hamiltonian(omega, &algebra.basis_element(i)) {
            Ok(_) => {}
            Err(SymplecticError::Degenerate { .. } | SymplecticError::NonUnique) => {
                return Ok(false)
            }
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

/// Closed and nondegenerate.
pub fn is_symplectic(omega: &DerForm) -> Result<bool, SymplecticError> {
    Ok(omega.differential().is_zero() && is_nondegenerate(omega)?)
}

/// The canonical 2-form `ω(ad(ix), ad(iy)) = i[x, y]` on a trivial-center
/// algebra whose derivations are all inner.
pub fn canonical_symplectic(derb: &DerivationBasis) -> Result<DerForm, SymplecticError> {
    let algebra = derb.algebra();
    require_trivial_center(algebra)?;
    if !derb.all_inner() {
        return Err(SymplecticError::OuterDerivationsExist);
    }
    // X_a = ad(w_a) = ad(i·x_a) with x_a = −i·w_a, so
    // ω(X_a, X_b) = i[x_a, x_b] = −i[w_a, w_b]; the witness is unique up to
    // the (trivial) center, which the commutator kills.
    let witnesses: Vec<AlgebraElement> = (0..derb.dim())
        .map(|a| {
            derb.inner_witness(derb.derivation(a))
                .expect("every derivation is inner")
        })
        .collect();
    let minus_i = -Scalar::i();
    let components: Vec<Vec<Scalar>> = crate::forms::tuples(derb.dim(), 2)
        .into_iter()
        .map(|t| {
            witnesses[t[0]]
                .commutator(&witnesses[t[1]])
                .scale(&minus_i)
                .into_coeffs()
        })
        .collect();
    Ok(DerForm::from_components(derb, 2, components))
}

/// The potential `θ(ad(ix)) = x − τ(x)·1` for a central normalized linear
/// form `τ` (given by its values on the basis); `dθ` is the canonical `ω`.
pub fn canonical_theta(derb: &DerivationBasis, tau: &[Scalar]) -> Result<DerForm, SymplecticError> {
    let algebra = derb.algebra();
    require_trivial_center(algebra)?;
    if !derb.all_inner() {
        return Err(SymplecticError::OuterDerivationsExist);
    }
    let dim = algebra.dim();
    assert_eq!(tau.len(), dim, "linear form length mismatch");
    let eval = |coeffs: &[Scalar]| -> Scalar {
        let mut acc = Scalar::zero();
        for (c, t) in coeffs.iter().zip(tau) {
            if !c.is_zero() && !t.is_zero() {
                acc += &(c * t);
            }
        }
        acc
    };
    for i in 0..dim {
        for j in 0..dim {
            let ij: Vec<Scalar> =
                (0..dim).map(|k| algebra.structure_constant(i, j, k).clone()).collect();
            let ji: Vec<Scalar> =
                (0..dim).map(|k| algebra.structure_constant(j, i, k).clone()).collect();
            if eval(&ij) != eval(&ji) {
                return Err(SymplecticError::NotCentral);
            }
        }
    }
    if !eval(algebra.unit().coeffs()).is_one() {
        return Err(SymplecticError::NotNormalized);
    }
    let minus_i = -Scalar::i();
    let unit = algebra.unit();
    let components: Vec<Vec<Scalar>> = (0..derb.dim())
        .map(|a| {
            let w = derb
                .inner_witness(derb.derivation(a))
                .expect("every derivation is inner");
            // θ(X_a) = −i·(w_a − τ(w_a)·1)
            let centered = &w - &unit.scale(&eval(w.coeffs()));
            centered.scale(&minus_i).into_coeffs()
        })
        .collect();
    Ok(DerForm::from_components(derb, 1, components))
}

/// The normalized trace of the left regular representation,
/// `τ(x) = Tr(L_x) / dim(A)`: central and normalized for every unital `A`.
pub fn normalized_trace(algebra: &Algebra) -> Vec<Scalar> {
    let dim = algebra.dim();
    let denom = Scalar::from_int(dim as i64);
    (0..dim)
        .map(|i| {
            let l = algebra.left_mult_matrix(i);
            let mut tr = Scalar::zero();
            for k in 0..dim {
                tr += l.at(k, k);
            }
            &tr * &denom.inv().expect("dimension is nonzero")
        })
        .collect()
}

/// Seeded search for a nondegenerate 2-form whose bracket violates Jacobi.
///
/// These exist only when the Hamiltonian image is a proper subspace of the
/// derivation space. When every derivation is inner over a trivial center
/// the nondegenerate forms are scalar multiples of the canonical one (the
/// pairing columns must solve `ω(X_a, X_b) = [w_a, φ(w_b)]` with
/// `[w, φv] = [φw, v]`, which pins `φ` to the scalars on `sl_n`), so they
/// are all closed and the search returns `None`. Algebras with outer
/// derivations leave room; the Kronecker quiver is the bundled example.
///
/// The construction runs backwards from the identity
/// `{x,{y,z}} + cyc = −dω(Ham x, Ham y, Ham z)`: prescribe the candidate
/// Hamiltonian map `H` first (the pairing values `ω(X, H(e_k)) = X(e_k)`
/// are linear in `ω` once `H` is fixed, and `H` must make them
/// antisymmetric), solve for `ω`, randomize the unconstrained part, and
/// keep the first sample that is nondegenerate with a Jacobi violation.
pub fn nonclosed_nondegenerate_witness(
    derb: &DerivationBasis,
    seed: u64,
    tries: usize,
) -> Result<Option<DerForm>, SymplecticError> {
    let algebra = derb.algebra();
    require_trivial_center(algebra)?;
    let d = derb.dim();
    let dim = algebra.dim();
    if d < 3 {
        return Ok(None);
    }
    // X_b(e_l) as coefficient vectors, reused throughout.
    let applied: Vec<Vec<Vec<Scalar>>> = (0..d)
        .map(|b| {
            (0..dim)
                .map(|l| derb.derivation(b).apply(&algebra.basis_element(l)).into_coeffs())
                .collect()
        })
        .collect();
    // Valid candidate maps H (unknowns H[b][k] at b·dim + k) satisfy
    // (H e_k)(e_l) + (H e_l)(e_k) = 0 and H(1) = 0.
    let pair_rows = dim * dim;
    let mut h_sys = Matrix::zeros(pair_rows * dim + d, d * dim);
    let mut row = 0;
    for k in 0..dim {
        for l in 0..dim {
            for c in 0..dim {
                for b in 0..d {
                    *h_sys.at_mut(row, b * dim + k) += &applied[b][l][c];
                    *h_sys.at_mut(row, b * dim + l) += &applied[b][k][c];
                }
                row += 1;
            }
        }
    }
    let unit = algebra.unit();
    for b in 0..d {
        for k in 0..dim {
            *h_sys.at_mut(row + b, b * dim + k) += &unit.coeffs()[k];
        }
    }
    let h_space = h_sys.nullspace();
    if h_space.dim() == 0 {
        return Ok(None);
    }
    let pairs = crate::forms::tuples(d, 2);
    let flat_len = pairs.len() * dim;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let small = |rng: &mut ChaCha8Rng| Scalar::from_int(rng.gen_range(-2i64..=2));
    for _ in 0..tries {
        // Random candidate Hamiltonian map.
        let mut h = vec![Scalar::zero(); d * dim];
        for v in h_space.vectors() {
            let c = small(&mut rng);
            if !c.is_zero() {
                crate::linalg::vec_add_scaled(&mut h, v, &c);
            }
        }
        // Linear system for ω: for all a, k: ω(X_a, Σ_b H[b][k] X_b) = X_a(e_k).
        let mut sys = Matrix::zeros(d * dim * dim, flat_len);
        let mut rhs = Vec::with_capacity(d * dim * dim);
        for a in 0..d {
            for k in 0..dim {
                let base = (a * dim + k) * dim;
                for b in 0..d {
                    let coeff = &h[b * dim + k];
                    if coeff.is_zero() || a == b {
                        continue;
                    }
                    let (rank, sign) = if a < b {
                        (crate::forms::tuple_rank(d, &[a, b]), false)
                    } else {
                        (crate::forms::tuple_rank(d, &[b, a]), true)
                    };
                    for c in 0..dim {
                        let cell = sys.at_mut(base + c, rank * dim + c);
                        if sign {
                            *cell -= coeff;
                        } else {
                            *cell += coeff;
                        }
                    }
                }
                for c in 0..dim {
                    rhs.push(applied[a][k][c].clone());
                }
            }
        }
        let (particular, kernel) = match sys.solve(&rhs) {
            LinearSolution::Unique(v) => (v, None),
            LinearSolution::Affine { particular, kernel } => (particular, Some(kernel)),
            LinearSolution::Inconsistent => continue,
        };
        let mut flat = particular;
        if let Some(kernel) = kernel {
            for v in kernel.vectors() {
                let c = small(&mut rng);
                if !c.is_zero() {
                    crate::linalg::vec_add_scaled(&mut flat, v, &c);
                }
            }
        }
        let omega = DerForm::from_flat(derb, 2, &flat);
        if !is_nondegenerate(&omega)? {
            continue;
        }
        let table = PoissonBracketTable::new_nondegenerate(&omega)?;
        if table.find_jacobi_violation().is_some() {
            debug_assert!(!omega.differential().is_zero());
            return Ok(Some(omega));
        }
    }
    Ok(None)
}

/// Hamiltonians and brackets of a nondegenerate 2-form, solved once per
/// basis element.
#[derive(Clone)]
pub struct PoissonBracketTable {
    omega: DerForm,
    hams: Vec<Derivation>,
    /// `table[i][j]` holds `{e_i, e_j}` coefficients.
    table: Vec<Vec<Vec<Scalar>>>,
}

impl std::fmt::Debug for PoissonBracketTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PoissonBracketTable")
            .field("algebra", &self.algebra().name())
            .finish_non_exhaustive()
    }
}

impl PoissonBracketTable {
    /// Requires a symplectic form.
    pub fn new(omega: &DerForm) -> Result<Self, SymplecticError> {
        if !omega.differential().is_zero() {
            return Err(SymplecticError::NotSymplectic);
        }
        Self::new_nondegenerate(omega).map_err(|e| match e {
            SymplecticError::Degenerate { .. } | SymplecticError::NonUnique => {
                SymplecticError::NotSymplectic
            }
            other => other,
        })
    }

    /// Requires only nondegeneracy. The bracket of a non-closed form fails
    /// Jacobi; this constructor exists to exhibit that correspondence.
    pub fn new_nondegenerate(omega: &DerForm) -> Result<Self, SymplecticError> {
        let derb = omega.derivations().clone();
        let algebra = derb.algebra().clone();
        let hams: Vec<Derivation> = (0..algebra.dim())
            .map(|i| hamiltonian(omega, &algebra.basis_element(i)))
            .collect::<Result<_, _>>()?;
        let coords: Vec<Vec<Scalar>> = hams
            .iter()
            .map(|h| derb.coordinates(h).expect("solutions live in the derivation space"))
            .collect();
        let table: Vec<Vec<Vec<Scalar>>> = (0..algebra.dim())
            .map(|i| {
                (0..algebra.dim())
                    .map(|j| omega.value_at_coords(&[coords[i].clone(), coords[j].clone()]))
                    .collect()
            })
            .collect();
        Ok(PoissonBracketTable { omega: omega.clone(), hams, table })
    }

    pub fn algebra(&self) -> &Algebra {
        self.omega.algebra()
    }

    pub fn omega(&self) -> &DerForm {
        &self.omega
    }

    pub fn ham(&self, i: usize) -> &Derivation {
        &self.hams[i]
    }

    /// `Ham(x)` by linearity.
    pub fn ham_of(&self, x: &AlgebraElement) -> Derivation {
        let mut acc = Derivation::zero(self.algebra());
        for (i, c) in x.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.hams[i].scale(c));
            }
        }
        acc
    }

    /// `{e_i, e_j}`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> AlgebraElement {
        self.algebra().element(self.table[i][j].clone())
    }

    /// `{x, y} = ω(Ham x, Ham y)` by bilinearity.
    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let algebra = self.algebra();
        let mut acc = vec![Scalar::zero(); algebra.dim()];
        for (i, a) in x.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs().iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let f = a * b;
                crate::linalg::vec_add_scaled(&mut acc, &self.table[i][j], &f);
            }
        }
        algebra.element(acc)
    }

    /// `{x,{y,z}} + {y,{z,x}} + {z,{x,y}}`; zero exactly when `ω` is closed.
    pub fn jacobi_defect(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
        z: &AlgebraElement,
    ) -> AlgebraElement {
        let a = self.bracket(x, &self.bracket(y, z));
        let b = self.bracket(y, &self.bracket(z, x));
        let c = self.bracket(z, &self.bracket(x, y));
        &(&a + &b) + &c
    }

    /// First basis triple violating Jacobi, if any.
    pub fn find_jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let algebra = self.algebra();
        let n = algebra.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let defect = self.jacobi_defect(
                        &algebra.basis_element(i),
                        &algebra.basis_element(j),
                        &algebra.basis_element(k),
                    );
                    if !defect.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}
