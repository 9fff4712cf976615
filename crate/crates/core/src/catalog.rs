//! Constructors for the bundled algebra fleet.
//!
//! These produce exactly the specs shipped under `specs/`; tests and the CLI
//! treat file and constructor as interchangeable, and the JSON files are
//! regenerated from here (`cargo run -p ncdg-cli -- emit-specs`).

use crate::algebra::{Algebra, AlgebraSpec};
use crate::scalar::Scalar;

fn zeros3(dim: usize) -> Vec<Vec<Vec<Scalar>>> {
    vec![vec![vec![Scalar::zero(); dim]; dim]; dim]
}

fn identity_rows(dim: usize) -> Vec<Vec<Scalar>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
        .collect()
}

/// Full matrix algebra on `n×n` matrix units `e_{rc}`, with the conjugate
/// transpose as involution.
pub fn matrix_algebra(n: usize) -> Algebra {
    assert!(n >= 1);
    let dim = n * n;
    let idx = |r: usize, c: usize| r * n + c;
    let mut constants = zeros3(dim);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if b == c {
                        constants[idx(a, b)][idx(c, d)][idx(a, d)] = Scalar::one();
                    }
                }
            }
        }
    }
    let mut unit = vec![Scalar::zero(); dim];
    for r in 0..n {
        unit[idx(r, r)] = Scalar::one();
    }
    let mut involution = vec![vec![Scalar::zero(); dim]; dim];
    for r in 0..n {
        for c in 0..n {
            involution[idx(r, c)][idx(c, r)] = Scalar::one();
        }
    }
    let basis = (0..n)
        .flat_map(|r| (0..n).map(move |c| format!("e{}{}", r + 1, c + 1)))
        .collect();
    Algebra::from_spec(AlgebraSpec {
        name: format!("m{n}"),
        dim,
        basis,
        structure_constants: constants,
        unit,
        involution,
    })
    .expect("matrix algebra spec is valid")
}

/// ℂ ⊕ ℂ on the two minimal idempotents, involution by coefficient
/// conjugation.
pub fn complex_pair() -> Algebra {
    let mut constants = zeros3(2);
    constants[0][0][0] = Scalar::one();
    constants[1][1][1] = Scalar::one();
    Algebra::from_spec(AlgebraSpec {
        name: "c_plus_c".into(),
        dim: 2,
        basis: vec!["p".into(), "q".into()],
        structure_constants: constants,
        unit: vec![Scalar::one(), Scalar::one()],
        involution: identity_rows(2),
    })
    .expect("c_plus_c spec is valid")
}

/// Unipotent upper-triangular 2×2 matrices `[[a, b], [0, a]]` on the basis
/// `u = 1`, `n` (strictly upper, `n² = 0`). Commutative with a one-dimensional
/// derivation space and no nonzero inner derivations.
pub fn triangular2() -> Algebra {
    let mut constants = zeros3(2);
    constants[0][0][0] = Scalar::one(); // u·u = u
    constants[0][1][1] = Scalar::one(); // u·n = n
    constants[1][0][1] = Scalar::one(); // n·u = n
    Algebra::from_spec(AlgebraSpec {
        name: "triangular2".into(),
        dim: 2,
        basis: vec!["u".into(), "n".into()],
        structure_constants: constants,
        unit: vec![Scalar::one(), Scalar::zero()],
        involution: identity_rows(2),
    })
    .expect("triangular2 spec is valid")
}

/// Direct sum, with labels taken from the summands (prefixed `p.`/`q.` only
/// when they would collide).
pub fn direct_sum(name: &str, a: &Algebra, b: &Algebra) -> Algebra {
    let (da, db) = (a.dim(), b.dim());
    let dim = da + db;
    let mut constants = zeros3(dim);
    for i in 0..da {
        for j in 0..da {
            for k in 0..da {
                constants[i][j][k] = a.structure_constant(i, j, k).clone();
            }
        }
    }
    for i in 0..db {
        for j in 0..db {
            for k in 0..db {
                constants[da + i][da + j][da + k] = b.structure_constant(i, j, k).clone();
            }
        }
    }
    let mut unit: Vec<Scalar> = a.unit().coeffs().to_vec();
    unit.extend(b.unit().coeffs().iter().cloned());
    let mut involution = vec![vec![Scalar::zero(); dim]; dim];
    for i in 0..da {
        let row = a.basis_element(i).star().into_coeffs();
        involution[i][..da].clone_from_slice(&row);
    }
    for i in 0..db {
        let row = b.basis_element(i).star().into_coeffs();
        involution[da + i][da..].clone_from_slice(&row);
    }
    let mut basis: Vec<String> = (0..da).map(|i| a.label(i).to_owned()).collect();
    basis.extend((0..db).map(|i| b.label(i).to_owned()));
    let collides = (1..basis.len()).any(|i| basis[i..].contains(&basis[i - 1]));
    if collides {
        basis = (0..da)
            .map(|i| format!("p.{}", a.label(i)))
            .chain((0..db).map(|i| format!("q.{}", b.label(i))))
            .collect();
    }
    Algebra::from_spec(AlgebraSpec {
        name: name.into(),
        dim,
        basis,
        structure_constants: constants,
        unit,
        involution,
    })
    .expect("direct sum of valid algebras is valid")
}

/// One-dimensional algebra ℂ.
pub fn complex_line() -> Algebra {
    let mut constants = zeros3(1);
    constants[0][0][0] = Scalar::one();
    Algebra::from_spec(AlgebraSpec {
        name: "c".into(),
        dim: 1,
        basis: vec!["f".into()],
        structure_constants: constants,
        unit: vec![Scalar::one()],
        involution: identity_rows(1),
    })
    .expect("complex line spec is valid")
}

/// M_2 ⊕ ℂ: simple block with trivial center next to a central line.
pub fn m2_plus_c() -> Algebra {
    direct_sum("m2_plus_c", &matrix_algebra(2), &complex_line())
}

/// Path algebra of the two-vertex, two-arrow quiver: basis `v1, v2` (vertex
/// idempotents) and arrows `a, b` from vertex 1 to vertex 2. Trivial center
/// but a six-dimensional derivation space against three inner directions, so
/// outer derivations exist. The involution swaps the vertices and fixes the
/// arrows.
pub fn kronecker_quiver() -> Algebra {
    let dim = 4;
    let (v1, v2, a, b) = (0usize, 1usize, 2usize, 3usize);
    let mut constants = zeros3(dim);
    constants[v1][v1][v1] = Scalar::one();
    constants[v2][v2][v2] = Scalar::one();
    constants[v2][a][a] = Scalar::one(); // v2·a = a
    constants[v2][b][b] = Scalar::one();
    constants[a][v1][a] = Scalar::one(); // a·v1 = a
    constants[b][v1][b] = Scalar::one();
    let mut involution = vec![vec![Scalar::zero(); dim]; dim];
    involution[v1][v2] = Scalar::one();
    involution[v2][v1] = Scalar::one();
    involution[a][a] = Scalar::one();
    involution[b][b] = Scalar::one();
    Algebra::from_spec(AlgebraSpec {
        name: "kronecker".into(),
        dim,
        basis: vec!["v1".into(), "v2".into(), "a".into(), "b".into()],
        structure_constants: constants,
        unit: vec![Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::zero()],
        involution,
    })
    .expect("kronecker quiver spec is valid")
}

/// The five bundled fleet algebras, in the order used by the CLI.
pub fn bundled() -> Vec<Algebra> {
    vec![
        matrix_algebra(2),
        matrix_algebra(3),
        complex_pair(),
        m2_plus_c(),
        triangular2(),
    ]
}
