//! Triangles of generalized r-Whitney numbers of both kinds.
//!
//! For a modulus `m`, shift `r`, and parameter vector `alpha`, the numbers
//! of the first kind `w(n, k)` and second kind `W(n, k)` are defined by the
//! two expansions
//!
//! ```text
//! m^n (x; alpha)_n = sum_k w(n, k) (m x + r)^k
//! (m x + r)^n      = sum_k W(n, k) m^k (x; alpha)_k
//! ```
//!
//! where `(x; alpha)_n = prod_{i<n} (x - alpha_i)`. Every family here is
//! computable along two independent routes: a two-term recurrence and a
//! literal polynomial expansion. Keeping both routes alive is what lets the
//! verification engine in [`crate::identities`] mean something.

use serde_json::json;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::numeric::{pow, Rational};
use crate::params::AlphaSpec;
use crate::polynomial::{
    affine_power, nodal_product, to_affine_power_basis, to_product_basis, ParameterVector,
    Polynomial,
};

/// Which family a [`Triangle`] holds. The tag strings double as the CLI
/// `--kind` names and the `kind` field of the JSON form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    WhitneyFirst,
    WhitneySecond,
    ComtetFirst,
    ComtetSecond,
    MultiFirst,
    MultiSecond,
}

impl TriangleKind {
    pub fn tag(self) -> &'static str {
        match self {
            TriangleKind::WhitneyFirst => "w1",
            TriangleKind::WhitneySecond => "w2",
            TriangleKind::ComtetFirst => "comtet_s1",
            TriangleKind::ComtetSecond => "comtet_s2",
            TriangleKind::MultiFirst => "multi_s1",
            TriangleKind::MultiSecond => "multi_s2",
        }
    }
}

/// A lower-triangular table of exact values together with the parameters
/// that produced it, so it can be serialized and rebuilt bit for bit.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    kind: TriangleKind,
    m: Rational,
    r: Rational,
    alpha: ParameterVector,
    nmax: usize,
    rows: Vec<Vec<Rational>>,
}

impl Triangle {
    pub(crate) fn raw(
        kind: TriangleKind,
        m: &Rational,
        r: &Rational,
        alpha: &ParameterVector,
        rows: Vec<Vec<Rational>>,
    ) -> Triangle {
        let nmax = rows.len() - 1;
        debug_assert!(rows.iter().enumerate().all(|(n, row)| row.len() == n + 1));
        Triangle { kind, m: m.clone(), r: r.clone(), alpha: alpha.clone(), nmax, rows }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn alpha(&self) -> &ParameterVector {
        &self.alpha
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Row `n`, entries `k = 0..=n`. Panics when `n > nmax`.
    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    /// The entry at `(n, k)`; zero above the diagonal. Panics when
    /// `n > nmax`.
    pub fn entry(&self, n: usize, k: usize) -> Rational {
        assert!(n <= self.nmax, "row {n} out of range (nmax = {})", self.nmax);
        if k > n {
            Rational::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// Ragged CSV: one line per row, values in canonical rational form,
    /// trailing newline.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Rational::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON form carrying everything needed to rebuild the table.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(Rational::to_string).collect())
            .collect();
        json!({
            "kind": self.kind.tag(),
            "m": self.m.to_string(),
            "r": self.r.to_string(),
            "alpha_spec": self.alpha.spec_text(),
            "nmax": self.nmax,
            "rows": rows,
        })
    }
}

/// First kind by the recurrence
/// `w(n, k) = w(n-1, k-1) - (r + m alpha_{n-1}) w(n-1, k)`, `w(0, 0) = 1`.
pub fn w1_triangle(
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    nmax: usize,
) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    let mut rows = vec![vec![Rational::one()]];
    for n in 1..=nmax {
        let f = r + &(m * alpha.get(n - 1));
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = Rational::zero();
            if k > 0 {
                v += &prev[k - 1];
            }
            if k < n {
                v -= &f * &prev[k];
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(Triangle::raw(TriangleKind::WhitneyFirst, m, r, alpha, rows))
}

/// Second kind by the recurrence
/// `W(n, k) = W(n-1, k-1) + (r + m alpha_k) W(n-1, k)`, `W(0, 0) = 1`.
pub fn w2_triangle(
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    nmax: usize,
) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    let f: Vec<Rational> = (0..nmax).map(|k| r + &(m * alpha.get(k))).collect();
    let mut rows = vec![vec![Rational::one()]];
    for n in 1..=nmax {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut v = Rational::zero();
            if k > 0 {
                v += &prev[k - 1];
            }
            if k < n {
                v += &f[k] * &prev[k];
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(Triangle::raw(TriangleKind::WhitneySecond, m, r, alpha, rows))
}

/// First kind by literally expanding `m^n (x; alpha)_n` in powers of
/// `m x + r`. Needs `m != 0`; the recurrence route is total.
pub fn w1_triangle_via_expansion(
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    nmax: usize,
) -> Result<Triangle, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    alpha.require(nmax)?;
    let mut rows = Vec::with_capacity(nmax + 1);
    let mut poly = Polynomial::one();
    let mut scale = Rational::one();
    for n in 0..=nmax {
        if n > 0 {
            let lin = Polynomial::new(vec![-alpha.get(n - 1), Rational::one()]);
            poly = &poly * &lin;
            scale *= m;
        }
        // The scaled polynomial is degree n with leading coefficient m^n,
        // so the coordinate vector always has length n + 1.
        rows.push(to_affine_power_basis(&poly.scale(&scale), m, r)?);
    }
    Ok(Triangle::raw(TriangleKind::WhitneyFirst, m, r, alpha, rows))
}

/// Second kind by expanding `(m x + r)^n` in the product basis of `alpha`
/// and dividing out `m^k`. Needs `m != 0`; the recurrence route is total.
pub fn w2_triangle_via_expansion(
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    nmax: usize,
) -> Result<Triangle, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    alpha.require(nmax)?;
    let mut rows = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let coords = to_product_basis(&affine_power(m, r, n), alpha)?;
        let mut mk = Rational::one();
        let mut row = Vec::with_capacity(n + 1);
        for c in coords {
            row.push(c / &mk);
            mk *= m;
        }
        rows.push(row);
    }
    Ok(Triangle::raw(TriangleKind::WhitneySecond, m, r, alpha, rows))
}

/// Second kind by the closed form
/// `W(n, k) = sum_{i<=k} (r + m alpha_i)^n / (m^k prod_{j<=k, j!=i} (alpha_i - alpha_j))`,
/// valid when the first `k + 1` parameters are pairwise distinct.
pub fn w2_explicit(
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    n: usize,
    k: usize,
) -> Result<Rational, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    alpha.require_distinct(k)?;
    let mk = pow(m, k as u32);
    let mut sum = Rational::zero();
    for i in 0..=k {
        let base = r + &(m * alpha.get(i));
        sum += pow(&base, n as u32) / (&mk * nodal_product(alpha, i, k));
    }
    Ok(sum)
}

/// Taylor coefficients `n! [t^n]` of the exponential generating function of
/// column `k` of the second kind, computed through the partial-fraction
/// form `sum_{i<=k} (r + m alpha_i)^n / prod_{j<=k, j!=i} (m alpha_i - m alpha_j)`.
/// Entries below `n = k` vanish identically.
pub fn egf_coefficients(
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    k: usize,
    nmax: usize,
) -> Result<Vec<Rational>, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    alpha.require_distinct(k)?;
    let scaled: Vec<Rational> = (0..=k).map(|i| m * alpha.get(i)).collect();
    let mut denoms = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mut d = Rational::one();
        for j in 0..=k {
            if j != i {
                d *= &scaled[i] - &scaled[j];
            }
        }
        denoms.push(d);
    }
    let bases: Vec<Rational> = scaled.iter().map(|s| r + s).collect();
    let mut out = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let mut sum = Rational::zero();
        for i in 0..=k {
            sum += pow(&bases[i], n as u32) / &denoms[i];
        }
        out.push(sum);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhitneyKind {
    First,
    Second,
}

/// The classical r-Whitney triangle, i.e. the special case
/// `alpha = (0, 1, 2, ...)`.
pub fn classical_triangle(
    kind: WhitneyKind,
    m: &Rational,
    r: &Rational,
    nmax: usize,
) -> Triangle {
    let alpha = AlphaSpec::Arange
        .materialize(nmax)
        .expect("arange materializes at any length");
    match kind {
        WhitneyKind::First => w1_triangle(m, r, &alpha, nmax),
        WhitneyKind::Second => w2_triangle(m, r, &alpha, nmax),
    }
    .expect("arange provides nmax parameters")
}
