//! Acceptance battery: eight criteria, each a single test printing one
//! pass/fail line. Every comparison is exact; nothing is approximate.

mod oracle;

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;

use ncdg_core::catalog::{bundled, kronecker_quiver, matrix_algebra};
use ncdg_core::forms::DerForm;
use ncdg_core::universal::UniversalOneForm;
use ncdg_core::{
    bidual_map, canonical_symplectic, canonical_theta, classical_poisson, coords_of_one_form,
    dual_connection, dual_module, der_module, hamiltonian, is_nondegenerate,
    nonclosed_nondegenerate_witness, normalized_trace, omega_ccr_eval, one_form_of,
    perturbation_space, quantum_poisson, tensor_connection, torsion_der, torsion_form,
    universal_factor_in_algebra, universal_involution, universal_one_space, validation_report,
    z_multilinear_space, Algebra, Connection, Derivation, DerivationBasis, Matrix, Module,
    ModuleKind, PoissonBracketTable, Sampler, Scalar, SubspaceBasis, WeylElement,
};

/// Sampling seed shared by every criterion; the laws are theorems, so the
/// value only pins the reports.
const SEED: u64 = 7;
const SAMPLES: usize = 50;

fn criterion(name: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {name}: pass"),
        Err(cause) => {
            println!("criterion {name}: FAIL");
            resume_unwind(cause);
        }
    }
}

// -------------------------------------------------------------------------
// 1. fleet facts against the independent oracle

#[test]
fn criterion_1_algebra_fleet_facts() {
    criterion("1 (algebra fleet facts)", || {
        for (n, der_dim) in [(2usize, 3usize), (3, 8)] {
            let a = matrix_algebra(n);
            assert_eq!(oracle::center_dim(&a), 1, "oracle center of m{n}");
            assert_eq!(oracle::derivation_dim(&a), der_dim, "oracle derivations of m{n}");
            assert_eq!(
                oracle::inner_rank(&a),
                der_dim,
                "the inner derivations of m{n} span everything"
            );
            assert_eq!(a.center().dim(), 1, "engine center of m{n}");
            let derb = DerivationBasis::compute(&a);
            assert_eq!(derb.dim(), der_dim, "engine derivations of m{n}");
            assert!(derb.all_inner(), "engine inner split of m{n}");
        }
        let cc = ncdg_core::catalog::complex_pair();
        assert_eq!(oracle::derivation_dim(&cc), 0, "oracle derivations of c_plus_c");
        assert_eq!(DerivationBasis::compute(&cc).dim(), 0, "engine derivations of c_plus_c");
    });
}

// -------------------------------------------------------------------------
// shared sampling helpers

struct FormSampler {
    derb: DerivationBasis,
    spaces: Vec<SubspaceBasis>,
    sampler: Sampler,
}

impl FormSampler {
    fn new(algebra: &Algebra) -> Self {
        let derb = DerivationBasis::compute(algebra);
        let spaces = (0..=3).map(|k| z_multilinear_space(&derb, k)).collect();
        FormSampler { derb, spaces, sampler: Sampler::new(SEED) }
    }

    /// A random form of the given degree; sparse where the dense coefficient
    /// count would dominate the runtime.
    fn form(&mut self, degree: usize) -> DerForm {
        if degree >= 2 && self.derb.dim() > 4 {
            self.sampler.sparse_form(&self.derb, degree, &self.spaces[degree], 6)
        } else {
            self.sampler.form(&self.derb, degree, &self.spaces[degree])
        }
    }

    fn derivation(&mut self) -> Derivation {
        self.sampler.derivation(&self.derb)
    }
}

/// `i_X` with the degree-0 convention `i_X a = 0`.
fn contract(form: &DerForm, x: &Derivation) -> DerForm {
    if form.degree() == 0 {
        DerForm::zero(form.derivations(), 0)
    } else {
        form.contract(x).expect("degree checked")
    }
}

// -------------------------------------------------------------------------
// 2. differential calculus laws on sampled forms

#[test]
fn criterion_2_calculus_laws() {
    criterion("2 (differential calculus laws)", || {
        for algebra in [matrix_algebra(2), matrix_algebra(3)] {
            let name = algebra.name().to_owned();
            let mut fs = FormSampler::new(&algebra);

            for i in 0..SAMPLES {
                let form = fs.form(i % 4);
                assert!(
                    form.differential().differential().is_zero(),
                    "d^2 != 0 on {name}, sample {i}"
                );
            }

            let pairs = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3)];
            for i in 0..SAMPLES {
                let (da, db) = pairs[i % pairs.len()];
                let alpha = fs.form(da);
                let beta = fs.form(db);
                let lhs = alpha.wedge(&beta).expect("same basis").differential();
                let mut rhs = alpha.differential().wedge(&beta).expect("same basis");
                let tail = alpha.wedge(&beta.differential()).expect("same basis");
                rhs = if da % 2 == 1 { rhs.sub(&tail) } else { rhs.add(&tail) };
                assert_eq!(lhs, rhs, "graded Leibniz fails on {name}, sample {i}");
            }

            for i in 0..SAMPLES {
                let form = fs.form(2 + i % 2);
                let x = fs.derivation();
                let y = fs.derivation();
                let xy = contract(&contract(&form, &x), &y);
                let yx = contract(&contract(&form, &y), &x);
                assert_eq!(xy, yx.neg(), "contractions fail to anticommute on {name}, sample {i}");
            }

            for i in 0..SAMPLES {
                let form = fs.form(i % 4);
                let x = fs.derivation();
                let lhs = form.lie_derive(&x);
                let mut rhs = contract(&form.differential(), &x);
                if form.degree() > 0 {
                    rhs = rhs.add(&contract(&form, &x).differential());
                }
                assert_eq!(lhs, rhs, "homotopy formula fails on {name}, sample {i}");
            }

            for i in 0..SAMPLES {
                let form = fs.form(1 + i % 3);
                let x = fs.derivation();
                let y = fs.derivation();
                let lhs = contract(&form, &y).lie_derive(&x).sub(&contract(&form.lie_derive(&x), &y));
                let rhs = contract(&form, &x.lie_bracket(&y));
                assert_eq!(lhs, rhs, "interlock identity fails on {name}, sample {i}");
            }

            for i in 0..SAMPLES {
                let form = fs.form(i % 4);
                let x = fs.derivation();
                let y = fs.derivation();
                let lhs = form.lie_derive(&y).lie_derive(&x).sub(&form.lie_derive(&x).lie_derive(&y));
                let rhs = form.lie_derive(&x.lie_bracket(&y));
                assert_eq!(lhs, rhs, "lie derivative bracket fails on {name}, sample {i}");
            }

            for i in 0..SAMPLES {
                let x = fs.derivation();
                let elem = fs.sampler.element(&algebra);
                let lhs = DerForm::scalar(&fs.derb, &elem).lie_derive(&x);
                let rhs = DerForm::scalar(&fs.derb, &x.apply(&elem));
                assert_eq!(lhs, rhs, "degree-0 restriction fails on {name}, sample {i}");
            }
        }
    });
}

// -------------------------------------------------------------------------
// 3. involution laws, same sampling

#[test]
fn criterion_3_involution_laws() {
    criterion("3 (involution laws)", || {
        for algebra in [matrix_algebra(2), matrix_algebra(3)] {
            let name = algebra.name().to_owned();
            let mut fs = FormSampler::new(&algebra);

            for i in 0..SAMPLES {
                let form = fs.form(i % 4);
                assert_eq!(
                    form.differential().star(),
                    form.star().differential(),
                    "(d omega)* != d(omega*) on {name}, sample {i}"
                );
                assert_eq!(form.star().star(), form, "omega** != omega on {name}, sample {i}");
            }

            let pairs = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3)];
            for i in 0..SAMPLES {
                let (da, db) = pairs[i % pairs.len()];
                let alpha = fs.form(da);
                let beta = fs.form(db);
                let lhs = alpha.wedge(&beta).expect("same basis").star();
                let mut rhs = beta.star().wedge(&alpha.star()).expect("same basis");
                if (da * db) % 2 == 1 {
                    rhs = rhs.neg();
                }
                assert_eq!(lhs, rhs, "graded product involution fails on {name}, sample {i}");
            }

            for i in 0..SAMPLES {
                let x = fs.derivation();
                assert_eq!(
                    x.star().star().matrix(),
                    x.matrix(),
                    "X** != X on {name}, sample {i}"
                );
            }

            let d = algebra.dim();
            for i in 0..SAMPLES {
                let degree = i % 3;
                let flat = fs.sampler.vector(d.pow(degree as u32 + 1));
                let once = universal_involution(&algebra, degree, &flat).expect("degree <= 2");
                let twice = universal_involution(&algebra, degree, &once).expect("degree <= 2");
                assert_eq!(twice, flat, "universal involution not involutive on {name}, sample {i}");
            }
        }
    });
}

// -------------------------------------------------------------------------
// 4. symplectic theorem checks, positive and negative paths

#[test]
fn criterion_4_symplectic_checks() {
    criterion("4 (symplectic structure)", || {
        for n in [2usize, 3] {
            let algebra = matrix_algebra(n);
            let name = algebra.name().to_owned();
            let derb = DerivationBasis::compute(&algebra);
            let omega = canonical_symplectic(&derb).expect("m_n carries the canonical form");

            assert!(omega.differential().is_zero(), "omega not closed on {name}");
            assert!(is_nondegenerate(&omega).expect("2-form"), "omega degenerate on {name}");
            assert_eq!(omega.star(), omega, "omega not real on {name}");

            let dim = algebra.dim();
            for k in 0..dim {
                let e = algebra.basis_element(k);
                let solved = hamiltonian(&omega, &e).expect("nondegenerate");
                let expected = Derivation::inner(&e.scale(&Scalar::i()));
                assert_eq!(
                    solved.matrix(),
                    expected.matrix(),
                    "Ham(e_{k}) != ad(i e_{k}) on {name}"
                );
            }

            let table = PoissonBracketTable::new(&omega).expect("symplectic");
            for i in 0..dim {
                for j in 0..dim {
                    let expected = algebra
                        .basis_element(i)
                        .commutator(&algebra.basis_element(j))
                        .scale(&Scalar::i());
                    assert_eq!(
                        table.basis_bracket(i, j),
                        expected,
                        "{{e_{i}, e_{j}}} != i[e_{i}, e_{j}] on {name}"
                    );
                }
            }

            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        let x = algebra.basis_element(i);
                        let y = algebra.basis_element(j);
                        let z = algebra.basis_element(k);
                        let lhs = table.bracket(&x, &(&y * &z));
                        let rhs = &(&table.bracket(&x, &y) * &z) + &(&y * &table.bracket(&x, &z));
                        assert_eq!(lhs, rhs, "poisson Leibniz fails at ({i},{j},{k}) on {name}");
                    }
                }
            }
            assert_eq!(table.find_jacobi_violation(), None, "jacobi fails on {name}");

            for i in 0..dim {
                for j in 0..dim {
                    let lhs = table.ham(i).lie_bracket(table.ham(j));
                    let rhs = table.ham_of(&table.basis_bracket(i, j));
                    assert_eq!(
                        lhs.matrix(),
                        rhs.matrix(),
                        "[Ham e_{i}, Ham e_{j}] != Ham{{e_{i}, e_{j}}} on {name}"
                    );
                }
            }

            let theta = canonical_theta(&derb, &normalized_trace(&algebra))
                .expect("the normalized trace is a central normalized form");
            assert_eq!(theta.differential(), omega, "d(theta) != omega on {name}");
        }

        // Negative path: a nondegenerate, non-closed form must break Jacobi.
        let quiver = kronecker_quiver();
        let derb = DerivationBasis::compute(&quiver);
        let witness = nonclosed_nondegenerate_witness(&derb, SEED, 64)
            .expect("trivial center")
            .expect("the quiver admits a nondegenerate non-closed 2-form");
        assert!(!witness.differential().is_zero(), "witness must not be closed");
        assert!(is_nondegenerate(&witness).expect("2-form"), "witness must be nondegenerate");
        let table = PoissonBracketTable::new_nondegenerate(&witness).expect("nondegenerate");
        assert!(
            table.find_jacobi_violation().is_some(),
            "a non-closed bracket must exhibit a jacobi violation"
        );
    });
}

// -------------------------------------------------------------------------
// 5. universal calculus facts

fn kron_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() * b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i * b.len() + j] = x * y;
            }
        }
    }
    out
}

fn one_hot(len: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    v[k] = Scalar::one();
    v
}

#[test]
fn criterion_5_universal_calculus() {
    criterion("5 (universal calculus)", || {
        for algebra in bundled() {
            let name = algebra.name().to_owned();
            let d = algebra.dim();
            assert_eq!(
                universal_one_space(&algebra).dim(),
                d * d - d,
                "dim of universal 1-forms on {name}"
            );

            let derb = DerivationBasis::compute(&algebra);
            for a in 0..derb.dim() {
                let x = derb.derivation(a);
                for j in 0..d {
                    let y = algebra.basis_element(j);
                    assert_eq!(
                        universal_factor_in_algebra(x, &UniversalOneForm::d_u(&y)),
                        x.apply(&y),
                        "evaluation fails to factor d_u at (X_{a}, e_{j}) on {name}"
                    );
                }
            }

            for j in 0..d {
                let y = algebra.basis_element(j);
                assert_eq!(
                    UniversalOneForm::d_u(&y).project_to_der(&derb),
                    DerForm::d_of(&derb, &y),
                    "projection fails to intertwine the differentials at e_{j} on {name}"
                );
            }
        }

        // Flip-involution signs on elementary tensors: degree n carries
        // (-1)^(n(n+1)/2).
        for algebra in [matrix_algebra(2), matrix_algebra(3)] {
            let name = algebra.name().to_owned();
            let d = algebra.dim();
            let star_of =
                |i: usize| algebra.star_coeffs(algebra.basis_element(i).coeffs());
            let apply_sign = |v: Vec<Scalar>, degree: usize| -> Vec<Scalar> {
                if (degree * (degree + 1) / 2) % 2 == 1 {
                    v.iter().map(|c| -c).collect()
                } else {
                    v
                }
            };

            for i in 0..d {
                for j in 0..d {
                    let got = universal_involution(&algebra, 1, &one_hot(d * d, i * d + j))
                        .expect("degree 1");
                    let expected = apply_sign(kron_vec(&star_of(j), &star_of(i)), 1);
                    assert_eq!(got, expected, "degree-1 sign fails at ({i}, {j}) on {name}");
                }
            }

            let mut sampler = Sampler::new(SEED);
            let triples: Vec<(usize, usize, usize)> = if d <= 4 {
                (0..d * d * d).map(|t| (t / (d * d), t / d % d, t % d)).collect()
            } else {
                (0..SAMPLES)
                    .map(|_| {
                        let pick = |s: &mut Sampler| {
                            let v = s.vector(d);
                            v.iter().position(|c| !c.is_zero()).unwrap_or(0)
                        };
                        (pick(&mut sampler), pick(&mut sampler), pick(&mut sampler))
                    })
                    .collect()
            };
            for (i, j, k) in triples {
                let got = universal_involution(
                    &algebra,
                    2,
                    &one_hot(d * d * d, (i * d + j) * d + k),
                )
                .expect("degree 2");
                let expected = apply_sign(
                    kron_vec(&kron_vec(&star_of(k), &star_of(j)), &star_of(i)),
                    2,
                );
                assert_eq!(got, expected, "degree-2 sign fails at ({i}, {j}, {k}) on {name}");
            }
        }
    });
}

// -------------------------------------------------------------------------
// 6. connection laws over a generated fleet

fn commutes_with_actions(module: &Module, g: &Matrix) -> bool {
    (0..module.left_count()).all(|t| {
        let act = module.left_action(t);
        g.matmul(act) == act.matmul(g)
    }) && (0..module.right_count()).all(|t| {
        let act = module.right_action(t);
        g.matmul(act) == act.matmul(g)
    })
}

#[test]
fn criterion_6_connection_laws() {
    criterion("6 (connection laws)", || {
        let algebra = matrix_algebra(2);
        let derb = DerivationBasis::compute(&algebra);
        let mut sampler = Sampler::new(SEED);
        let kinds = [
            ModuleKind::CENTRAL_BIMODULE,
            ModuleKind::LEFT,
            ModuleKind::RIGHT,
            ModuleKind::CENTER,
        ];
        let mut fleets: Vec<(Module, Vec<Connection>)> = Vec::new();

        for kind in kinds {
            let module = Module::regular(&algebra, kind, &format!("regular {kind}"));
            let base = Connection::regular(&module, &derb).expect("the regular rule qualifies");
            let space = perturbation_space(&module, &derb);
            let mut fleet = vec![base.clone()];
            for _ in 0..20 {
                fleet.push(sampler.connection(&base, &space));
            }
            assert!(fleet.len() >= 20, "fleet size");

            for (i, conn) in fleet.iter().enumerate() {
                assert!(
                    validation_report(&module, &derb, conn.matrices()).is_empty(),
                    "axioms fail on {kind} member {i}"
                );
            }

            for (i, conn) in fleet.iter().enumerate() {
                for a in 0..derb.dim() {
                    for b in a + 1..derb.dim() {
                        assert!(
                            commutes_with_actions(&module, &conn.curvature_basis(a, b)),
                            "curvature not a morphism on {kind} member {i}, pair ({a}, {b})"
                        );
                    }
                }
                for t in 0..algebra.center().dim() {
                    let z = algebra.center_element(t);
                    let zm = module.left_action_of(&z).expect("central elements act");
                    for a in 0..derb.dim() {
                        for b in 0..derb.dim() {
                            let zx = derb.derivation(a).central_multiple(&z);
                            let lhs = conn.curvature(&zx, derb.derivation(b));
                            let rhs =
                                zm.matmul(&conn.curvature(derb.derivation(a), derb.derivation(b)));
                            assert_eq!(
                                lhs, rhs,
                                "curvature not center-bilinear on {kind} member {i}"
                            );
                        }
                    }
                }
            }

            let dual = dual_module(&module);
            for (i, conn) in fleet.iter().enumerate() {
                let dconn = dual_connection(conn, &dual).expect("dual rule exists");
                for a in 0..derb.dim() {
                    for m in 0..module.dim() {
                        for f in 0..dual.dim() {
                            let mc = one_hot(module.dim(), m);
                            let fc = one_hot(dual.dim(), f);
                            let lhs = derb.derivation(a).apply(&dual.pairing(&mc, &fc));
                            let rhs = &dual.pairing(&conn.matrix(a).mul_vec(&mc), &fc)
                                + &dual.pairing(&mc, &dconn.matrix(a).mul_vec(&fc));
                            assert_eq!(
                                lhs, rhs,
                                "dual pairing identity fails on {kind} member {i} at ({a}, {m}, {f})"
                            );
                        }
                    }
                }
            }

            // All four regular modules over a matrix algebra are diagonal, so
            // the canonical bidual map is injective and the double dual must
            // extend the original rule along it.
            let ddual = dual_module(dual.module());
            let canon = bidual_map(&dual, &ddual);
            assert_eq!(canon.rank(), module.dim(), "regular {kind} module is diagonal");
            for (i, conn) in fleet.iter().enumerate() {
                let dd = dual_connection(&dual_connection(conn, &dual).expect("dual"), &ddual)
                    .expect("double dual");
                for a in 0..derb.dim() {
                    assert_eq!(
                        dd.matrix(a).matmul(&canon),
                        canon.matmul(conn.matrix(a)),
                        "double dual fails to extend on {kind} member {i}, derivation {a}"
                    );
                }
            }

            if module.has_involution() && dual.module().has_involution() {
                for (i, conn) in fleet.iter().enumerate() {
                    let lhs = dual_connection(&conn.conjugate().expect("involution"), &dual)
                        .expect("dual of conjugate");
                    let rhs = dual_connection(conn, &dual)
                        .expect("dual")
                        .conjugate()
                        .expect("conjugate of dual");
                    assert_eq!(lhs, rhs, "dual and conjugate differ on {kind} member {i}");
                }
            }

            fleets.push((module, fleet));
        }

        // Tensor rules descend to the balanced product: the induced map must
        // intertwine the projection with the plain Leibniz endomorphism.
        let check_tensor = |c1: &Connection, c2: &Connection, label: &str| {
            let (tensor, dconn) =
                tensor_connection("tensor", c1, c2).expect("matching middle kinds");
            assert!(
                validation_report(tensor.module(), &derb, dconn.matrices()).is_empty(),
                "tensor rule fails the axioms for {label}"
            );
            let (d1, d2) = (c1.module().dim(), c2.module().dim());
            let ambient = d1 * d2;
            let proj = Matrix::from_fn(tensor.module().dim(), ambient, |r, t| {
                tensor.project(&one_hot(ambient, t))[r].clone()
            });
            for a in 0..derb.dim() {
                let plain = c1
                    .matrix(a)
                    .kron(&Matrix::identity(d2))
                    .add(&Matrix::identity(d1).kron(c2.matrix(a)));
                assert_eq!(
                    dconn.matrix(a).matmul(&proj),
                    proj.matmul(&plain),
                    "tensor rule not well-defined for {label}, derivation {a}"
                );
            }
        };
        let bimodule_fleet = &fleets[0].1;
        for pair in bimodule_fleet.windows(2).take(10) {
            check_tensor(&pair[0], &pair[1], "(1,1) x (1,1)");
        }
        let left_fleet = &fleets[1].1;
        let right_fleet = &fleets[2].1;
        for (c1, c2) in left_fleet.iter().zip(right_fleet).take(10) {
            check_tensor(c1, c2, "(1,0) x (0,1)");
        }
        assert!(
            tensor_connection("mismatch", &left_fleet[0], &left_fleet[1]).is_err(),
            "mismatched middle kinds must be rejected"
        );

        // Torsion duality on the derivation module: the two presentations of
        // torsion agree through the pairing.
        let bracket = Connection::bracket(&derb).expect("trivial center");
        let d = derb.dim();
        let mut torsion_table: Vec<Vec<Vec<Scalar>>> = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let t = torsion_der(&bracket, derb.derivation(i), derb.derivation(j))
                    .expect("bracket rule lives on the derivation module");
                torsion_table[i][j] = derb.coordinates(&t).expect("torsion is a derivation");
                // For the bracket rule T(X, Y) = [X, Y].
                let expected = derb
                    .coordinates(&derb.derivation(i).lie_bracket(derb.derivation(j)))
                    .expect("brackets close");
                assert_eq!(torsion_table[i][j], expected, "bracket-rule torsion at ({i}, {j})");
            }
        }
        let der_mod = der_module(&derb);
        let dual = dual_module(&der_mod);
        let dconn = dual_connection(&bracket, &dual).expect("dual rule");
        for p in 0..dual.dim() {
            let omega = one_hot(dual.dim(), p);
            let t_form = torsion_form(&dconn, &dual, &omega).expect("dual-side connection");
            let form = one_form_of(&derb, &dual, &omega);
            for i in 0..d {
                for j in i + 1..d {
                    assert_eq!(
                        t_form.value_on(&[i, j]),
                        form.value_at_coords(&[torsion_table[i][j].clone()]),
                        "torsion duality fails at form {p}, pair ({i}, {j})"
                    );
                }
            }
        }
        let _ = coords_of_one_form; // silence unused import on cfgs without the law below
    });
}

// -------------------------------------------------------------------------
// 7. deformation algebra facts

fn weyl_monomials(max_degree: usize) -> Vec<WeylElement> {
    let mut out = Vec::new();
    for total in 0..=max_degree {
        for m in 0..=total {
            for n in 0..=(total - m) {
                out.push(WeylElement::monomial(m, n, total - m - n, Scalar::one()));
            }
        }
    }
    out
}

#[test]
fn criterion_7_weyl_facts() {
    criterion("7 (deformation algebra)", || {
        let monomials = weyl_monomials(5);
        assert_eq!(monomials.len(), 56);
        for x in &monomials {
            for y in &monomials {
                let series = omega_ccr_eval(x, y, 5).expect("degree within bound");
                let bracket = quantum_poisson(x, y).expect("commutators divide by hbar");
                assert_eq!(series, bracket, "series != scaled commutator at ({x}, {y})");
                assert_eq!(
                    bracket.classical_limit(),
                    classical_poisson(&x.classical_limit(), &y.classical_limit()),
                    "classical limit fails to intertwine at ({x}, {y})"
                );
            }
        }
        assert_eq!(
            quantum_poisson(&WeylElement::q(), &WeylElement::p()).expect("divides"),
            WeylElement::constant(Scalar::from_int(-1)),
            "{{q, p}} != -1"
        );
    });
}

// -------------------------------------------------------------------------
// 8. deterministic reports

#[test]
fn criterion_8_deterministic_reports() {
    criterion("8 (deterministic reports)", || {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_ncdg"))
                .args(["run", "--suite", "all", "--seed", "7"])
                .output()
                .expect("binary runs")
        };
        let first = run();
        let second = run();
        assert!(first.status.success(), "the bundled fleet must pass every suite");
        assert_eq!(first.stdout, second.stdout, "reports must be byte-identical");
        assert_eq!(first.stderr, second.stderr, "summaries must be byte-identical");
    });
}
