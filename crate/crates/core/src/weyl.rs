//! The canonical commutation relation algebra with a formal Planck constant.
//!
//! Elements are noncommutative polynomials in two hermitian generators `q`, `p`
//! subject to `[q, p] = iℏ·1`, with coefficients that are themselves polynomials
//! in the central formal parameter ℏ over the Gaussian rationals. Every element
//! has a unique normal form with all `q` factors to the left of all `p` factors,
//! so equality of elements is polynomial identity in ℏ, never a numeric limit.
//!
//! The bracket convention throughout is `{x, y} = (i/ℏ)[x, y]`, which makes
//! `{q, p} = -1`. The classical bracket on the ℏ = 0 slice is oriented to
//! agree: `{f, g} = ∂f/∂p·∂g/∂q - ∂f/∂q·∂g/∂p`. The opposite sign is the more
//! common physics convention; we keep one convention consistently and document
//! it rather than mixing the two.
//!
//! [`omega_ccr_eval`] evaluates the symplectic form given by the series
//!
//! ```text
//! ω = Σ_{n≥0} (1/iℏ)^n · 1/(n+1)! · [..[dp, p], .., p]ₙ [..[dq, q], .., q]ₙ
//! ```
//!
//! on the inner derivations `ad((i/ℏ)x)`, `ad((i/ℏ)y)`. Iterated commutators
//! with `p` lower the `q`-degree, so only finitely many terms contribute and
//! the value is again an exact element. The series reproduces the quantum
//! Poisson bracket; the ℏ = 0 shadow of the degree-0 term is the classical
//! pairing against `dp dq`.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// Failures of the CCR operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    /// A quotient by ℏ hit a term with too low an ℏ-degree. Commutators are
    /// always divisible, so this marks a bug in the caller, not bad data.
    #[error("term {term} is not divisible by ℏ^{power}")]
    HbarDivisionFailure { term: String, power: usize },
    /// An argument exceeded the requested total-degree bound.
    #[error("total degree {got} exceeds the bound {bound}")]
    DegreeExceeded { got: usize, bound: usize },
}

/// A normal-ordered element `Σ c_{mnk} q^m p^n ℏ^k`.
///
/// The map never stores zero coefficients; the zero element is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct WeylElement {
    terms: BTreeMap<(usize, usize, usize), Scalar>,
}

fn insert_term(terms: &mut BTreeMap<(usize, usize, usize), Scalar>, key: (usize, usize, usize), value: Scalar) {
    if value.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = &*slot.get() + &value;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

fn binom(n: usize, j: usize) -> Scalar {
    let mut acc = Scalar::one();
    for t in 0..j {
        acc = &acc * &Scalar::from_int((n - t) as i64);
        acc = &acc * &Scalar::rational(1, (t + 1) as i64);
    }
    acc
}

fn factorial(n: usize) -> Scalar {
    let mut acc = Scalar::one();
    for t in 1..=n {
        acc = &acc * &Scalar::from_int(t as i64);
    }
    acc
}

/// Terms of `p^n q^m` in normal order:
/// `Σ_j C(n,j) C(m,j) j! (-iℏ)^j q^(m-j) p^(n-j)`.
fn reorder_pq(n: usize, m: usize) -> Vec<((usize, usize, usize), Scalar)> {
    let minus_i = -&Scalar::i();
    let mut out = Vec::with_capacity(n.min(m) + 1);
    for j in 0..=n.min(m) {
        let c = &(&binom(n, j) * &binom(m, j)) * &(&factorial(j) * &minus_i.pow(j as u32));
        out.push(((m - j, n - j, j), c));
    }
    out
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        WeylElement::monomial(0, 0, 0, Scalar::one())
    }

    pub fn q() -> Self {
        WeylElement::monomial(1, 0, 0, Scalar::one())
    }

    pub fn p() -> Self {
        WeylElement::monomial(0, 1, 0, Scalar::one())
    }

    pub fn hbar() -> Self {
        WeylElement::monomial(0, 0, 1, Scalar::one())
    }

    /// The single term `c·q^m p^n ℏ^k`.
    pub fn monomial(m: usize, n: usize, k: usize, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        insert_term(&mut terms, (m, n, k), c);
        WeylElement { terms }
    }

    pub fn constant(c: Scalar) -> Self {
        WeylElement::monomial(0, 0, 0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Normal-form terms in lexicographic `(m, n, k)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: usize, n: usize, k: usize) -> Scalar {
        self.terms.get(&(m, n, k)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest `m + n` over the support; 0 for the zero element.
    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|&(m, n, _)| m + n).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        for (&key, coeff) in &self.terms {
            insert_term(&mut terms, key, coeff * c);
        }
        WeylElement { terms }
    }

    /// The involution: antilinear, reverses products, fixes `q`, `p`, ℏ.
    pub fn star(&self) -> Self {
        let mut terms = BTreeMap::new();
        for (&(m, n, k), coeff) in &self.terms {
            // (c q^m p^n h^k)* = conj(c) h^k p^n q^m, then reorder.
            for ((rm, rn, rk), rc) in reorder_pq(n, m) {
                insert_term(&mut terms, (rm, rn, rk + k), &coeff.conj() * &rc);
            }
        }
        WeylElement { terms }
    }

    pub fn is_hermitian(&self) -> bool {
        self.star() == *self
    }

    pub fn commutator(&self, rhs: &WeylElement) -> WeylElement {
        &(self * rhs) - &(rhs * self)
    }

    pub fn pow(&self, k: usize) -> WeylElement {
        let mut acc = WeylElement::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by ℏ^power, shifting every ℏ-exponent down.
    pub fn div_hbar(&self, power: usize) -> Result<WeylElement, WeylError> {
        let mut terms = BTreeMap::new();
        for (&(m, n, k), coeff) in &self.terms {
            if k < power {
                return Err(WeylError::HbarDivisionFailure {
                    term: format_term(m, n, k, coeff),
                    power,
                });
            }
            insert_term(&mut terms, (m, n, k - power), coeff.clone());
        }
        Ok(WeylElement { terms })
    }

    /// The ℏ = 0 slice as a commutative polynomial in `q`, `p`.
    pub fn classical_limit(&self) -> ClassicalPoly {
        let mut terms = BTreeMap::new();
        for (&(m, n, k), coeff) in &self.terms {
            if k == 0 {
                insert_term_cl(&mut terms, (m, n), coeff.clone());
            }
        }
        ClassicalPoly { terms }
    }
}

impl std::ops::Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        let mut terms = self.terms.clone();
        for (&key, coeff) in &rhs.terms {
            insert_term(&mut terms, key, coeff.clone());
        }
        WeylElement { terms }
    }
}

impl std::ops::Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self + &-rhs
    }
}

impl std::ops::Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        let terms = self.terms.iter().map(|(&key, coeff)| (key, -coeff)).collect();
        WeylElement { terms }
    }
}

impl std::ops::Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        let mut terms = BTreeMap::new();
        for (&(m1, n1, k1), c1) in &self.terms {
            for (&(m2, n2, k2), c2) in &rhs.terms {
                // q^m1 p^n1 q^m2 p^n2: reorder the inner p^n1 q^m2.
                let c = c1 * c2;
                for ((rm, rn, rk), rc) in reorder_pq(n1, m2) {
                    insert_term(&mut terms, (m1 + rm, rn + n2, k1 + k2 + rk), &c * &rc);
                }
            }
        }
        WeylElement { terms }
    }
}

fn format_term(m: usize, n: usize, k: usize, coeff: &Scalar) -> String {
    let mut factors = Vec::new();
    for (sym, exp) in [("q", m), ("p", n), ("ℏ", k)] {
        match exp {
            0 => {}
            1 => factors.push(sym.to_owned()),
            _ => factors.push(format!("{sym}^{exp}")),
        }
    }
    let label = if factors.is_empty() { "1".to_owned() } else { factors.join("·") };
    if coeff.is_one() && !factors.is_empty() {
        label
    } else {
        format!("({coeff})·{label}")
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(&(m, n, k), c)| format_term(m, n, k, c)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A commutative polynomial in `q`, `p`: the ℏ = 0 shadow of the algebra.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ClassicalPoly {
    terms: BTreeMap<(usize, usize), Scalar>,
}

fn insert_term_cl(terms: &mut BTreeMap<(usize, usize), Scalar>, key: (usize, usize), value: Scalar) {
    if value.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = &*slot.get() + &value;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

impl ClassicalPoly {
    pub fn zero() -> Self {
        ClassicalPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(m: usize, n: usize, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        insert_term_cl(&mut terms, (m, n), c);
        ClassicalPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: usize, n: usize) -> Scalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.terms.iter()
    }

    pub fn partial_q(&self) -> ClassicalPoly {
        let mut terms = BTreeMap::new();
        for (&(m, n), coeff) in &self.terms {
            if m > 0 {
                insert_term_cl(&mut terms, (m - 1, n), coeff * &Scalar::from_int(m as i64));
            }
        }
        ClassicalPoly { terms }
    }

    pub fn partial_p(&self) -> ClassicalPoly {
        let mut terms = BTreeMap::new();
        for (&(m, n), coeff) in &self.terms {
            if n > 0 {
                insert_term_cl(&mut terms, (m, n - 1), coeff * &Scalar::from_int(n as i64));
            }
        }
        ClassicalPoly { terms }
    }
}

impl std::ops::Add for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn add(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        let mut terms = self.terms.clone();
        for (&key, coeff) in &rhs.terms {
            insert_term_cl(&mut terms, key, coeff.clone());
        }
        ClassicalPoly { terms }
    }
}

impl std::ops::Sub for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn sub(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        let neg = ClassicalPoly {
            terms: rhs.terms.iter().map(|(&key, coeff)| (key, -coeff)).collect(),
        };
        self + &neg
    }
}

impl std::ops::Mul for &ClassicalPoly {
    type Output = ClassicalPoly;
    fn mul(self, rhs: &ClassicalPoly) -> ClassicalPoly {
        let mut terms = BTreeMap::new();
        for (&(m1, n1), c1) in &self.terms {
            for (&(m2, n2), c2) in &rhs.terms {
                insert_term_cl(&mut terms, (m1 + m2, n1 + n2), c1 * c2);
            }
        }
        ClassicalPoly { terms }
    }
}

impl fmt::Display for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(&(m, n), c)| format_term(m, n, 0, c)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ClassicalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{f, g} = ∂f/∂p·∂g/∂q - ∂f/∂q·∂g/∂p`, the sign that matches `{q, p} = -1`.
pub fn classical_poisson(f: &ClassicalPoly, g: &ClassicalPoly) -> ClassicalPoly {
    &(&f.partial_p() * &g.partial_q()) - &(&f.partial_q() * &g.partial_p())
}

/// `{x, y} = (i/ℏ)[x, y]`, exact: the commutator is divisible by ℏ.
pub fn quantum_poisson(x: &WeylElement, y: &WeylElement) -> Result<WeylElement, WeylError> {
    Ok(x.commutator(y).div_hbar(1)?.scale(&Scalar::i()))
}

/// Evaluates the symplectic series on `ad((i/ℏ)x)`, `ad((i/ℏ)y)`.
///
/// Term `n` pairs the `n`-fold commutator chains of `dp` against `p` and `dq`
/// against `q` through the degree-1 shuffle product, so its value is
/// `(1/iℏ)^n/(n+1)!·(adₚⁿ(Xx p)·ad_qⁿ(Xy q) - adₚⁿ(Xy p)·ad_qⁿ(Xx q))` with
/// `Xx u = {x, u}`. Chains vanish once `n` passes the relevant degree, so the
/// loop terminates on its own; `max_degree` only bounds the admissible inputs.
pub fn omega_ccr_eval(
    x: &WeylElement,
    y: &WeylElement,
    max_degree: usize,
) -> Result<WeylElement, WeylError> {
    for arg in [x, y] {
        if arg.total_degree() > max_degree {
            return Err(WeylError::DegreeExceeded { got: arg.total_degree(), bound: max_degree });
        }
    }
    let q = WeylElement::q();
    let p = WeylElement::p();
    let mut ax = quantum_poisson(x, &p)?;
    let mut ay = quantum_poisson(y, &p)?;
    let mut bx = quantum_poisson(x, &q)?;
    let mut by = quantum_poisson(y, &q)?;
    let minus_i = -&Scalar::i();
    let mut acc = WeylElement::zero();
    let mut n = 0usize;
    while !((ax.is_zero() && ay.is_zero()) || (bx.is_zero() && by.is_zero())) {
        let numerator = &(&ax * &by) - &(&ay * &bx);
        if !numerator.is_zero() {
            // (1/iℏ)^n = (-i)^n ℏ^(-n); each commutator chain carries ℏ^n,
            // so the quotient is exact.
            let scale = &minus_i.pow(n as u32)
                * &factorial(n + 1).inv().expect("factorials are nonzero");
            acc = &acc + &numerator.div_hbar(n)?.scale(&scale);
        }
        ax = ax.commutator(&p);
        ay = ay.commutator(&p);
        bx = bx.commutator(&q);
        by = by.commutator(&q);
        n += 1;
    }
    Ok(acc)
}
