//! Dense univariate polynomials over exact rationals, together with the
//! change-of-basis routines the rest of the crate is built on: expansion in
//! powers of an affine form `m*x + r` and expansion in the product basis
//! attached to a parameter vector.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::numeric::{int, Rational};
use crate::params::AlphaSpec;

/// A polynomial stored as coefficients in ascending degree order. The
/// representation is canonical: the highest stored coefficient is nonzero
/// and the zero polynomial stores no coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros so equality is representation-independent.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Polynomial { coeffs }
    }

    pub fn x() -> Self {
        Polynomial::monomial(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The coefficient of `x^k`, zero beyond the stored degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Exact division by the monic linear factor `x - c`. Returns the
    /// quotient and the remainder, which equals `self(c)`.
    pub fn div_linear(&self, c: &Rational) -> (Polynomial, Rational) {
        if self.is_zero() {
            return (Polynomial::zero(), Rational::zero());
        }
        let d = self.coeffs.len() - 1;
        if d == 0 {
            return (Polynomial::zero(), self.coeffs[0].clone());
        }
        let mut q = vec![Rational::zero(); d];
        q[d - 1] = self.coeffs[d].clone();
        for i in (1..d).rev() {
            q[i - 1] = &self.coeffs[i] + &(c * &q[i]);
        }
        let rem = &self.coeffs[0] + &(c * &q[0]);
        (Polynomial::new(q), rem)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

/// `(m*x + r)^n`, expanded.
pub fn affine_power(m: &Rational, r: &Rational, n: usize) -> Polynomial {
    let lin = Polynomial::new(vec![r.clone(), m.clone()]);
    let mut acc = Polynomial::one();
    for _ in 0..n {
        acc = &acc * &lin;
    }
    acc
}

/// An ordered vector of rational parameters `alpha_0, alpha_1, ...`,
/// optionally remembering the [`AlphaSpec`] it was materialized from so
/// tables built over it stay self-describing.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterVector {
    values: Vec<Rational>,
    origin: Option<AlphaSpec>,
}

impl ParameterVector {
    pub fn new(values: Vec<Rational>) -> Self {
        ParameterVector { values, origin: None }
    }

    pub fn with_origin(values: Vec<Rational>, origin: AlphaSpec) -> Self {
        ParameterVector { values, origin: Some(origin) }
    }

    /// Integer-valued convenience constructor.
    pub fn from_ints(values: &[i64]) -> Self {
        ParameterVector::new(values.iter().map(|&v| int(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Panics when `i` is out of range; call [`require`](Self::require)
    /// first for a graceful error.
    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn origin(&self) -> Option<&AlphaSpec> {
        self.origin.as_ref()
    }

    /// Errors unless at least `n` entries are present.
    pub fn require(&self, n: usize) -> Result<(), Error> {
        if self.values.len() < n {
            return Err(Error::InsufficientAlpha { needed: n, got: self.values.len() });
        }
        Ok(())
    }

    /// A spec string that re-materializes this vector: the recorded origin
    /// when there is one, otherwise an explicit list.
    pub fn spec_text(&self) -> String {
        if let Some(origin) = &self.origin {
            return origin.render();
        }
        if self.values.is_empty() {
            // Any spec materializes to an empty vector at length 0.
            return AlphaSpec::Zero.render();
        }
        AlphaSpec::List(self.values.clone()).render()
    }

    /// Errors when `alpha_i == alpha_j` for some `i < j <= upper`.
    pub fn require_distinct(&self, upper: usize) -> Result<(), Error> {
        self.require(upper + 1)?;
        for j in 1..=upper {
            for i in 0..j {
                if self.values[i] == self.values[j] {
                    return Err(Error::RepeatedNodes { i, j });
                }
            }
        }
        Ok(())
    }
}

impl From<Vec<Rational>> for ParameterVector {
    fn from(values: Vec<Rational>) -> Self {
        ParameterVector::new(values)
    }
}

/// The product-basis polynomial `(x; alpha)_n = prod_{i<n} (x - alpha_i)`,
/// with `(x; alpha)_0 = 1`.
pub fn product_basis_poly(alpha: &ParameterVector, n: usize) -> Result<Polynomial, Error> {
    alpha.require(n)?;
    let mut acc = Polynomial::one();
    for i in 0..n {
        let lin = Polynomial::new(vec![-alpha.get(i), Rational::one()]);
        acc = &acc * &lin;
    }
    Ok(acc)
}

/// The falling factorial `(x)_n = x (x-1) ... (x-n+1)`, i.e. the product
/// basis over `alpha_i = i`.
pub fn falling_factorial_poly(n: usize) -> Polynomial {
    let alpha = ParameterVector::new((0..n as i64).map(int).collect());
    product_basis_poly(&alpha, n).expect("alpha has exactly n entries")
}

/// Expands `p` in powers of `m*x + r`: returns `c` with
/// `p = sum_k c[k] (m*x + r)^k`. The vector has length `deg(p) + 1` (empty
/// for the zero polynomial). Fails when `m == 0`.
pub fn to_affine_power_basis(
    p: &Polynomial,
    m: &Rational,
    r: &Rational,
) -> Result<Vec<Rational>, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    // Repeatedly divide by (m*x + r):  p = (x - root) q + rem  with
    // root = -r/m, so p = (m*x + r) (q/m) + rem.
    let root = -(r / m);
    let m_inv = m.recip();
    let mut out = Vec::new();
    let mut cur = p.clone();
    while !cur.is_zero() {
        let (q, rem) = cur.div_linear(&root);
        out.push(rem);
        cur = q.scale(&m_inv);
    }
    Ok(out)
}

/// Expands `p` in the product basis of `alpha`: returns `c` with
/// `p = sum_k c[k] (x; alpha)_k`. Needs `deg(p)` parameters; repeated
/// values are fine. The vector has length `deg(p) + 1` (empty for the zero
/// polynomial).
pub fn to_product_basis(p: &Polynomial, alpha: &ParameterVector) -> Result<Vec<Rational>, Error> {
    let d = match p.degree() {
        None => return Ok(Vec::new()),
        Some(d) => d,
    };
    alpha.require(d)?;
    // Newton-style peeling: c_k = q_k(alpha_k), q_{k+1} = (q_k - c_k)/(x - alpha_k),
    // where the remainder of division by (x - alpha_k) is exactly q_k(alpha_k).
    let mut out = Vec::with_capacity(d + 1);
    let mut cur = p.clone();
    for k in 0..d {
        let (q, rem) = cur.div_linear(alpha.get(k));
        out.push(rem);
        cur = q;
    }
    out.push(cur.coeff(0));
    Ok(out)
}

/// The nodal product `prod_{j <= upper, j != i} (alpha_i - alpha_j)`.
/// A zero result signals repeated values among the first `upper + 1`
/// parameters; callers decide whether that is an error.
///
/// Panics when `i > upper` or fewer than `upper + 1` parameters exist.
pub fn nodal_product(alpha: &ParameterVector, i: usize, upper: usize) -> Rational {
    assert!(i <= upper, "nodal_product: i = {i} exceeds upper = {upper}");
    assert!(
        alpha.len() > upper,
        "nodal_product: need {} parameters, have {}",
        upper + 1,
        alpha.len()
    );
    let ai = alpha.get(i);
    let mut acc = Rational::one();
    for j in 0..=upper {
        if j != i {
            acc *= ai - alpha.get(j);
        }
    }
    acc
}

/// Reassembles a polynomial from affine-power coefficients, the inverse of
/// [`to_affine_power_basis`].
pub fn from_affine_power_basis(coeffs: &[Rational], m: &Rational, r: &Rational) -> Polynomial {
    let mut acc = Polynomial::zero();
    for (k, c) in coeffs.iter().enumerate() {
        acc = &acc + &affine_power(m, r, k).scale(c);
    }
    acc
}

/// Reassembles a polynomial from product-basis coefficients, the inverse of
/// [`to_product_basis`].
pub fn from_product_basis(
    coeffs: &[Rational],
    alpha: &ParameterVector,
) -> Result<Polynomial, Error> {
    let mut acc = Polynomial::zero();
    for (k, c) in coeffs.iter().enumerate() {
        acc = &acc + &product_basis_poly(alpha, k)?.scale(c);
    }
    Ok(acc)
}
