//! Connections on modules: axioms, curvature, duality, tensor products,
//! conjugates, and torsion of linear connections.
//!
//! A connection on a module `M` of kind `(i, j)` assigns to every derivation
//! `X` an endomorphism `∇_X` of `M`, `Z(A)`-linearly in `X`, satisfying the
//! two-sided Leibniz rule `∇_X(a m b) = X(a) m b + a ∇_X(m) b + a m X(b)`
//! with `a` from `A_i` and `b` from `A_j`. Connections form an affine space
//! over the module-morphism-valued 1-forms; [`perturbation_space`] computes
//! that space exactly so callers can enumerate or sample valid connections
//! around a reference one.
//!
//! Torsion lives on two modules tied by duality. On `Der(A)` (a `Z(A)`-module)
//! it is `T(X,Y) = ∇_X(Y) − ∇_Y(X) − [X,Y]`; on its dual, the module of
//! `Z(A)`-multilinear 1-forms, it is `(Tω)(X,Y) = dω(X,Y) − (∇_Xω)(Y) +
//! (∇_Yω)(X)`. For a connection on `Der(A)` and its dual connection the two
//! agree through the evaluation pairing: `(Tω)(X,Y) = ω(T(X,Y))`.

use crate::algebra::{format_element, AlgebraElement};
use crate::derivation::{Derivation, DerivationBasis};
use crate::forms::DerForm;
use crate::linalg::{Matrix, SubspaceBasis};
use crate::module::{der_module, DualModule, Module, TensorModule};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConnectionError {
    #[error("InvalidConnection: {violation}")]
    InvalidConnection { violation: String },
    #[error("KindMismatch: middle kinds {left} and {right} do not match")]
    KindMismatch { left: String, right: String },
    #[error("NoInvolution: the module carries no involution")]
    NoInvolution,
    #[error("WrongModule: expected {expected}")]
    WrongModule { expected: String },
    #[error("BadShape: expected {expected} endomorphisms of size {dim}")]
    BadShape { expected: usize, dim: usize },
}

/// A connection, stored as one endomorphism matrix per basis derivation.
#[derive(Clone, PartialEq, Eq)]
pub struct Connection {
    module: Module,
    derb: DerivationBasis,
    nabla: Vec<Matrix>,
}

impl std::fmt::Debug for Connection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Connection")
            .field("module", &self.module.name())
            .field("derivations", &self.nabla.len())
            .finish_non_exhaustive()
    }
}

/// Matrix of the action of a central element on the module. Any side works;
/// a `1` side accepts every algebra element and a `0` side accepts exactly
/// the central ones.
fn central_action(module: &Module, z: &AlgebraElement) -> Matrix {
    module
        .left_action_of(z)
        .expect("central elements act through either side")
}

/// Check both connection axioms, returning every violation with a witness.
pub fn validation_report(
    module: &Module,
    derb: &DerivationBasis,
    nabla: &[Matrix],
) -> Vec<String> {
    assert!(module.algebra() == derb.algebra(), "module and derivations over different algebras");
    let algebra = module.algebra();
    let dim = module.dim();
    let mut violations = Vec::new();
    if nabla.len() != derb.dim()
        || nabla.iter().any(|m| m.rows() != dim || m.cols() != dim)
    {
        violations.push(format!(
            "shape: expected {} endomorphisms of size {}",
            derb.dim(),
            dim
        ));
        return violations;
    }
    // Z(A)-linearity in the derivation slot: ∇_{zX} = z·∇_X.
    for k in 0..algebra.center().dim() {
        let z = algebra.center_element(k);
        let zm = central_action(module, &z);
        for a in 0..derb.dim() {
            let zx = derb.derivation(a).central_multiple(&z);
            let coords = derb
                .coordinates(&zx)
                .expect("central multiples stay in the derivation space");
            let mut lhs = Matrix::zeros(dim, dim);
            for (b, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    lhs = lhs.add(&nabla[b].scale(c));
                }
            }
            if lhs != zm.matmul(&nabla[a]) {
                violations.push(format!(
                    "Z-linearity fails for z = {} on basis derivation {}",
                    format_element(algebra, z.coeffs()),
                    a
                ));
            }
        }
    }
    // Two-sided Leibniz on basis triples.
    for a in 0..derb.dim() {
        let x = derb.derivation(a);
        for u in 0..module.left_count() {
            let ue = module.left_basis_element(u);
            let xu = central_action_or_full(module, true, &x.apply(&ue));
            for v in 0..module.right_count() {
                let ve = module.right_basis_element(v);
                let xv = central_action_or_full(module, false, &x.apply(&ve));
                let lu = module.left_action(u);
                let rv = module.right_action(v);
                let lhs = nabla[a].matmul(&lu.matmul(rv));
                let rhs = xu
                    .matmul(rv)
                    .add(&lu.matmul(&rv.matmul(&nabla[a])))
                    .add(&lu.matmul(&xv));
                if lhs != rhs {
                    violations.push(format!(
                        "Leibniz fails on (X_{}, {}, {})",
                        a,
                        format_element(algebra, ue.coeffs()),
                        format_element(algebra, ve.coeffs())
                    ));
                }
            }
        }
    }
    violations
}

/// Action matrix of `x` on the named side. Derivations map the center into
/// itself, so images of side elements always act.
fn central_action_or_full(module: &Module, left: bool, x: &AlgebraElement) -> Matrix {
    let m = if left {
        module.left_action_of(x)
    } else {
        module.right_action_of(x)
    };
    m.expect("derivations preserve the acting side")
}

impl Connection {
    /// Validate and wrap. The error carries the first violation.
    pub fn new(
        module: &Module,
        derb: &DerivationBasis,
        nabla: Vec<Matrix>,
    ) -> Result<Connection, ConnectionError> {
        let report = validation_report(module, derb, &nabla);
        if let Some(violation) = report.into_iter().next() {
            return Err(ConnectionError::InvalidConnection { violation });
        }
        Ok(Connection { module: module.clone(), derb: derb.clone(), nabla })
    }

    /// The derivation action `∇_X = X` on a regular module `M = A`.
    pub fn regular(module: &Module, derb: &DerivationBasis) -> Result<Connection, ConnectionError> {
        let nabla = (0..derb.dim()).map(|a| derb.derivation(a).matrix().clone()).collect();
        Connection::new(module, derb, nabla)
    }

    /// The bracket connection `∇_X(Y) = [X, Y]` on the derivation module;
    /// `Z(A)`-linearity requires a trivial center.
    pub fn bracket(derb: &DerivationBasis) -> Result<Connection, ConnectionError> {
        let module = der_module(derb);
        let d = derb.dim();
        let nabla = (0..d)
            .map(|a| {
                Matrix::from_fn(d, d, |r, b| derb.bracket_coords(a, b)[r].clone())
            })
            .collect();
        Connection::new(&module, derb, nabla)
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn derivations(&self) -> &DerivationBasis {
        &self.derb
    }

    /// Endomorphism of the `a`-th basis derivation.
    pub fn matrix(&self, a: usize) -> &Matrix {
        &self.nabla[a]
    }

    /// All basis endomorphisms, indexed like the derivation basis.
    pub fn matrices(&self) -> &[Matrix] {
        &self.nabla
    }

    /// `∇_X` for an arbitrary derivation, by linearity.
    pub fn along(&self, x: &Derivation) -> Matrix {
        let coords = self
            .derb
            .coordinates(x)
            .expect("derivation outside the computed basis span");
        let dim = self.module.dim();
        let mut m = Matrix::zeros(dim, dim);
        for (b, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.nabla[b].scale(c));
            }
        }
        m
    }

    pub fn apply(&self, x: &Derivation, m: &[Scalar]) -> Vec<Scalar> {
        self.along(x).mul_vec(m)
    }

    /// `R_{X_a, X_b} = ∇_a∇_b − ∇_b∇_a − ∇_{[X_a, X_b]}`.
    pub fn curvature_basis(&self, a: usize, b: usize) -> Matrix {
        let mut r = self.nabla[a]
            .matmul(&self.nabla[b])
            .sub(&self.nabla[b].matmul(&self.nabla[a]));
        for (c, coeff) in self.derb.bracket_coords(a, b).iter().enumerate() {
            if !coeff.is_zero() {
                r = r.sub(&self.nabla[c].scale(coeff));
            }
        }
        r
    }

    /// Curvature along arbitrary derivations, by bilinearity.
    pub fn curvature(&self, x: &Derivation, y: &Derivation) -> Matrix {
        let cx = self.derb.coordinates(x).expect("derivation outside the basis span");
        let cy = self.derb.coordinates(y).expect("derivation outside the basis span");
        let dim = self.module.dim();
        let mut r = Matrix::zeros(dim, dim);
        for (a, ca) in cx.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in cy.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                r = r.add(&self.curvature_basis(a, b).scale(&(ca * cb)));
            }
        }
        r
    }

    pub fn is_flat(&self) -> bool {
        let d = self.derb.dim();
        (0..d).all(|a| (a + 1..d).all(|b| self.curvature_basis(a, b).is_zero()))
    }

    /// Blockwise sum on the direct sum module.
    pub fn direct_sum(name: &str, c1: &Connection, c2: &Connection) -> Connection {
        assert!(c1.derb == c2.derb, "connections over different derivation bases");
        let module = Module::direct_sum(name, &c1.module, &c2.module);
        let (d1, d2) = (c1.module.dim(), c2.module.dim());
        let nabla = c1
            .nabla
            .iter()
            .zip(&c2.nabla)
            .map(|(m1, m2)| {
                Matrix::from_fn(d1 + d2, d1 + d2, |r, c| {
                    if r < d1 && c < d1 {
                        m1.at(r, c).clone()
                    } else if r >= d1 && c >= d1 {
                        m2.at(r - d1, c - d1).clone()
                    } else {
                        Scalar::zero()
                    }
                })
            })
            .collect();
        Connection::new(&module, &c1.derb, nabla).expect("blockwise Leibniz holds")
    }

    /// `∇*_X(m) = (∇_{X*}(m*))*`; antilinear conjugation of the matrices.
    ///
    /// Built without revalidation: the involution is an antilinear
    /// anti-isomorphism exchanging the two actions, so both connection axioms
    /// transport along it. The test battery revalidates conjugates explicitly.
    pub fn conjugate(&self) -> Result<Connection, ConnectionError> {
        let s = self.module.star_matrix().ok_or(ConnectionError::NoInvolution)?;
        let dim = self.module.dim();
        let nabla = (0..self.derb.dim())
            .map(|a| {
                let mut star_nabla = Matrix::zeros(dim, dim);
                for (b, c) in self.derb.star_coords(a).iter().enumerate() {
                    if !c.is_zero() {
                        star_nabla = star_nabla.add(&self.nabla[b].scale(c));
                    }
                }
                s.matmul(&star_nabla.conj()).matmul(&s.conj())
            })
            .collect();
        Ok(Connection { module: self.module.clone(), derb: self.derb.clone(), nabla })
    }

    /// Real connections are their own conjugates.
    pub fn is_real(&self) -> Result<bool, ConnectionError> {
        Ok(self.conjugate()?.nabla == self.nabla)
    }
}

/// The linear space of valid perturbations: flat vectors `γ` (layout
/// `a·dim² + r·dim + c`) such that `∇ + γ` is again a connection whenever
/// `∇` is. Each `γ_a` must commute with both actions, and the assignment
/// `a ↦ γ_a` must be `Z(A)`-linear.
pub fn perturbation_space(module: &Module, derb: &DerivationBasis) -> SubspaceBasis {
    let algebra = module.algebra();
    let dim = module.dim();
    let d = derb.dim();
    let unknowns = d * dim * dim;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    // Morphism constraints: γ_a·S − S·γ_a = 0 for every action matrix S.
    let mut actions: Vec<&Matrix> = Vec::new();
    for k in 0..module.left_count() {
        actions.push(module.left_action(k));
    }
    for k in 0..module.right_count() {
        actions.push(module.right_action(k));
    }
    for a in 0..d {
        for s in &actions {
            for r in 0..dim {
                for c in 0..dim {
                    let mut row = vec![Scalar::zero(); unknowns];
                    for m in 0..dim {
                        // (γ_a S)[r][c] has γ_a[r][m] S[m][c];
                        // (S γ_a)[r][c] has S[r][m] γ_a[m][c].
                        let idx = a * dim * dim + r * dim + m;
                        row[idx] = &row[idx] + s.at(m, c);
                        let idx = a * dim * dim + m * dim + c;
                        row[idx] = &row[idx] - s.at(r, m);
                    }
                    rows.push(row);
                }
            }
        }
    }
    // Z(A)-linearity: γ over zX_a equals (z-action)·γ_a.
    for k in 0..algebra.center().dim() {
        let z = algebra.center_element(k);
        let zm = central_action(module, &z);
        for a in 0..d {
            let coords = derb
                .coordinates(&derb.derivation(a).central_multiple(&z))
                .expect("central multiples stay in the derivation space");
            for r in 0..dim {
                for c in 0..dim {
                    let mut row = vec![Scalar::zero(); unknowns];
                    for (b, coeff) in coords.iter().enumerate() {
                        if !coeff.is_zero() {
                            let idx = b * dim * dim + r * dim + c;
                            row[idx] = &row[idx] + coeff;
                        }
                    }
                    for m in 0..dim {
                        let idx = a * dim * dim + m * dim + c;
                        row[idx] = &row[idx] - zm.at(r, m);
                    }
                    rows.push(row);
                }
            }
        }
    }
    let nr = rows.len();
    Matrix::from_fn(nr, unknowns, |r, c| rows[r][c].clone()).nullspace()
}

/// Add a flat perturbation vector to a connection.
pub fn perturbed(conn: &Connection, gamma: &[Scalar]) -> Result<Connection, ConnectionError> {
    let dim = conn.module.dim();
    let d = conn.derb.dim();
    if gamma.len() != d * dim * dim {
        return Err(ConnectionError::BadShape { expected: d, dim });
    }
    let nabla = (0..d)
        .map(|a| {
            let add = Matrix::from_fn(dim, dim, |r, c| gamma[a * dim * dim + r * dim + c].clone());
            conn.nabla[a].add(&add)
        })
        .collect();
    Connection::new(&conn.module, &conn.derb, nabla)
}

/// The unique connection on `M'` with
/// `X(⟨m, m'⟩) = ⟨∇_X m, m'⟩ + ⟨m, ∇'_X m'⟩`. Writing the pairing as hom
/// evaluation pins `(∇'_X F)(m) = X(F(m)) − F(∇_X m)`, so the defining
/// identity determines each `∇'_X F` pointwise and no solve is needed.
pub fn dual_connection(
    conn: &Connection,
    dual: &DualModule,
) -> Result<Connection, ConnectionError> {
    if dual.source() != &conn.module {
        return Err(ConnectionError::WrongModule {
            expected: format!("the dual of {}", conn.module.name()),
        });
    }
    let r = dual.dim();
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(conn.derb.dim() * r);
    for a in 0..conn.derb.dim() {
        let da = conn.derb.derivation(a).matrix();
        for p in 0..r {
            let f = dual.hom(p);
            let g = da.matmul(f).sub(&f.matmul(&conn.nabla[a]));
            let coords = dual.coordinates_of_hom(&g).ok_or_else(|| {
                ConnectionError::InvalidConnection {
                    violation: format!(
                        "dual image of hom {} along basis derivation {} leaves the hom space",
                        p, a
                    ),
                }
            })?;
            columns.push(coords);
        }
    }
    let nabla = (0..conn.derb.dim())
        .map(|a| Matrix::from_fn(r, r, |i, p| columns[a * r + p][i].clone()))
        .collect();
    // Validity of the dual rule is a theorem for valid inputs, and `conn`
    // was validated on construction, so skip the O(dim³) re-validation; the
    // law batteries cover it on the small modules.
    Ok(Connection {
        module: dual.module().clone(),
        derb: conn.derb.clone(),
        nabla,
    })
}

/// `D_X = ∇¹_X ⊗ id + id ⊗ ∇²_X`, descended to the balanced tensor product.
pub fn tensor_connection(
    name: &str,
    c1: &Connection,
    c2: &Connection,
) -> Result<(TensorModule, Connection), ConnectionError> {
    assert!(c1.derb == c2.derb, "connections over different derivation bases");
    if c1.module.kind().1 != c2.module.kind().0 {
        return Err(ConnectionError::KindMismatch {
            left: c1.module.kind().to_string(),
            right: c2.module.kind().to_string(),
        });
    }
    let tensor = TensorModule::new(name, &c1.module, &c2.module);
    let (d1, d2) = (c1.module.dim(), c2.module.dim());
    let nabla = c1
        .nabla
        .iter()
        .zip(&c2.nabla)
        .map(|(n1, n2)| {
            let plain = n1.kron(&Matrix::identity(d2)).add(&Matrix::identity(d1).kron(n2));
            tensor
                .descend_endomorphism(&plain)
                .expect("the Leibniz terms balance across the middle action")
        })
        .collect();
    let conn = Connection::new(tensor.module(), &c1.derb, nabla)?;
    Ok((tensor, conn))
}

/// `T(X, Y) = ∇_X(Y) − ∇_Y(X) − [X, Y]` for a connection on `Der(A)`.
pub fn torsion_der(
    conn: &Connection,
    x: &Derivation,
    y: &Derivation,
) -> Result<Derivation, ConnectionError> {
    let expected = der_module(&conn.derb);
    if conn.module != expected {
        return Err(ConnectionError::WrongModule { expected: expected.name().to_owned() });
    }
    let cx = conn.derb.coordinates(x).expect("derivation outside the basis span");
    let cy = conn.derb.coordinates(y).expect("derivation outside the basis span");
    let mut t = conn.along(x).mul_vec(&cy);
    let down = conn.along(y).mul_vec(&cx);
    for (a, b) in t.iter_mut().zip(&down) {
        *a -= b;
    }
    let bracket = conn
        .derb
        .coordinates(&x.lie_bracket(y))
        .expect("brackets stay in the derivation space");
    for (a, b) in t.iter_mut().zip(&bracket) {
        *a -= b;
    }
    Ok(conn.derb.from_coordinates(&t))
}

/// `(Tω)(X, Y) = dω(X, Y) − (∇_Xω)(Y) + (∇_Yω)(X)` for a connection on the
/// dual of `Der(A)`, i.e. on the `Z(A)`-multilinear 1-forms. Takes and
/// returns forms in module coordinates alongside `DerForm` views.
pub fn torsion_form(
    conn: &Connection,
    dual: &DualModule,
    omega: &[Scalar],
) -> Result<DerForm, ConnectionError> {
    let expected = der_module(&conn.derb);
    if dual.source() != &expected || &conn.module != dual.module() {
        return Err(ConnectionError::WrongModule {
            expected: format!("the dual of {}", expected.name()),
        });
    }
    let derb = &conn.derb;
    let d = derb.dim();
    let form = one_form_of(derb, dual, omega);
    let domega = form.differential();
    // (∇_aω) as evaluation-ready homs.
    let nabla_omega: Vec<Matrix> = (0..d)
        .map(|a| dual.hom_of(&conn.nabla[a].mul_vec(omega)))
        .collect();
    let components: Vec<Vec<Scalar>> = crate::forms::tuples(d, 2)
        .into_iter()
        .map(|t| {
            let (a, b) = (t[0], t[1]);
            let mut v = domega.value_on(&[a, b]);
            let mut eb = vec![Scalar::zero(); d];
            eb[b] = Scalar::one();
            let mut ea = vec![Scalar::zero(); d];
            ea[a] = Scalar::one();
            let na_b = nabla_omega[a].mul_vec(&eb);
            let nb_a = nabla_omega[b].mul_vec(&ea);
            for ((x, y), z) in v.iter_mut().zip(&na_b).zip(&nb_a) {
                *x -= y;
                *x += z;
            }
            v
        })
        .collect();
    Ok(DerForm::from_components(derb, 2, components))
}

/// The degree-1 `DerForm` presented by a dual-module vector.
pub fn one_form_of(derb: &DerivationBasis, dual: &DualModule, omega: &[Scalar]) -> DerForm {
    let hom = dual.hom_of(omega);
    let components: Vec<Vec<Scalar>> = (0..derb.dim())
        .map(|a| {
            let mut e = vec![Scalar::zero(); derb.dim()];
            e[a] = Scalar::one();
            hom.mul_vec(&e)
        })
        .collect();
    DerForm::from_components(derb, 1, components)
}

/// Module coordinates of a `Z(A)`-multilinear 1-form in the dual module.
pub fn coords_of_one_form(dual: &DualModule, form: &DerForm) -> Option<Vec<Scalar>> {
    assert_eq!(form.degree(), 1, "only 1-forms live in the dual of Der");
    let derb = form.derivations();
    let da = derb.algebra().dim();
    let hom = Matrix::from_fn(da, derb.dim(), |r, a| form.component(a)[r].clone());
    dual.coordinates_of_hom(&hom)
}
