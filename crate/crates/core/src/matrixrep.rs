//! Finite lower-triangular matrix sections of the triangles and the
//! factorization identities connecting them.
//!
//! Writing `What` for the second-kind matrix scaled by `m^k` columnwise and
//! `Shat` for the multiparameter second kind scaled by `m^n` rowwise, the
//! three identities checked here are
//!
//! ```text
//! eq24:  What_{m,r} * s(alpha)        = What_{m,r;alpha}
//! eq25:  w_{m,r;alpha} * What_{m,r}   = Shat(alpha)
//! eq26:  What_{m,r;alpha} * S(alpha)  = What_{m,r}
//! ```
//!
//! Each side is assembled from independently built triangles, so a passing
//! check says the recurrences, the scalings, and the matrix algebra agree.

use serde_json::json;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::numeric::{int, pow, Rational};
use crate::polynomial::ParameterVector;
use crate::stirling::{multiparam_s1, multiparam_s2};
use crate::whitney::{classical_triangle, w1_triangle, w2_triangle, Triangle, WhitneyKind};

/// A square lower-triangular matrix; row `n` stores entries `k = 0..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LowerTriangularMatrix {
    rows: Vec<Vec<Rational>>,
}

impl LowerTriangularMatrix {
    /// Builds from an entry function, evaluated only at `k <= n`.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(size > 0, "matrix size must be positive");
        let rows = (0..size).map(|n| (0..=n).map(|k| f(n, k)).collect()).collect();
        LowerTriangularMatrix { rows }
    }

    pub fn identity(size: usize) -> Self {
        LowerTriangularMatrix::from_fn(size, |n, k| {
            if n == k {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// The leading `size x size` section of a triangle. Errors when the
    /// triangle is too small.
    pub fn from_triangle(t: &Triangle, size: usize) -> Result<Self, Error> {
        if size == 0 || t.nmax() + 1 < size {
            return Err(Error::Validation(format!(
                "triangle with nmax = {} cannot fill a {size} x {size} matrix",
                t.nmax()
            )));
        }
        Ok(LowerTriangularMatrix::from_fn(size, |n, k| t.entry(n, k)))
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(n, k)`; zero above the diagonal. Panics when `n >= size`.
    pub fn entry(&self, n: usize, k: usize) -> Rational {
        if k > n {
            Rational::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Matrix product; both operands must have the same size.
    pub fn mul(&self, other: &LowerTriangularMatrix) -> Result<LowerTriangularMatrix, Error> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch { a: self.size(), b: other.size() });
        }
        Ok(LowerTriangularMatrix::from_fn(self.size(), |n, j| {
            let mut sum = Rational::zero();
            for k in j..=n {
                sum += &self.rows[n][k] * &other.rows[k][j];
            }
            sum
        }))
    }

    /// JSON form: the full square in row-major order, zeros included.
    pub fn to_json(&self) -> serde_json::Value {
        let size = self.size();
        let mut entries = Vec::with_capacity(size * size);
        for n in 0..size {
            for k in 0..size {
                entries.push(self.entry(n, k).to_string());
            }
        }
        json!({ "size": size, "entries": entries })
    }
}

/// The six matrix shapes appearing in the identities. Tags are the names
/// used in CLI output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFamily {
    /// `m^k W_{m,r}(n, k)`, the classical second kind with columns scaled.
    WhatClassical,
    /// `m^k W_{m,r;alpha}(n, k)`.
    WhatGeneralized,
    /// `s(n, k; alpha)`, falling factorials in the product basis.
    MultiS1,
    /// `S(n, k; alpha)`, the product basis in falling factorials.
    MultiS2,
    /// `w_{m,r;alpha}(n, k)`, the generalized first kind, unscaled.
    W1Generalized,
    /// `m^n S(n, k; alpha)`, rows scaled.
    ShatMultiS2,
}

impl MatrixFamily {
    pub const ALL: [MatrixFamily; 6] = [
        MatrixFamily::WhatClassical,
        MatrixFamily::WhatGeneralized,
        MatrixFamily::MultiS1,
        MatrixFamily::MultiS2,
        MatrixFamily::W1Generalized,
        MatrixFamily::ShatMultiS2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MatrixFamily::WhatClassical => "what_classical",
            MatrixFamily::WhatGeneralized => "what_generalized",
            MatrixFamily::MultiS1 => "multi_s1",
            MatrixFamily::MultiS2 => "multi_s2",
            MatrixFamily::W1Generalized => "w1_generalized",
            MatrixFamily::ShatMultiS2 => "shat_multi_s2",
        }
    }
}

/// Builds the `size x size` section of a family from its recurrence
/// triangle, applying the family's scaling. Needs `size >= 1` and, for the
/// alpha-dependent families, at least `size - 1` parameters.
pub fn build_matrix(
    family: MatrixFamily,
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    size: usize,
) -> Result<LowerTriangularMatrix, Error> {
    if size == 0 {
        return Err(Error::Validation("matrix size must be positive".to_string()));
    }
    let nmax = size - 1;
    let t = match family {
        MatrixFamily::WhatClassical => classical_triangle(WhitneyKind::Second, m, r, nmax),
        MatrixFamily::WhatGeneralized => w2_triangle(m, r, alpha, nmax)?,
        MatrixFamily::MultiS1 => multiparam_s1(alpha, nmax)?,
        MatrixFamily::MultiS2 => multiparam_s2(alpha, nmax)?,
        MatrixFamily::W1Generalized => w1_triangle(m, r, alpha, nmax)?,
        MatrixFamily::ShatMultiS2 => multiparam_s2(alpha, nmax)?,
    };
    let scaled = match family {
        MatrixFamily::WhatClassical | MatrixFamily::WhatGeneralized => {
            LowerTriangularMatrix::from_fn(size, |n, k| t.entry(n, k) * pow(m, k as u32))
        }
        MatrixFamily::ShatMultiS2 => {
            LowerTriangularMatrix::from_fn(size, |n, k| t.entry(n, k) * pow(m, n as u32))
        }
        _ => LowerTriangularMatrix::from_fn(size, |n, k| t.entry(n, k)),
    };
    Ok(scaled)
}

/// The three factorization identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixIdentity {
    Eq24,
    Eq25,
    Eq26,
}

impl MatrixIdentity {
    pub const ALL: [MatrixIdentity; 3] =
        [MatrixIdentity::Eq24, MatrixIdentity::Eq25, MatrixIdentity::Eq26];

    pub fn tag(self) -> &'static str {
        match self {
            MatrixIdentity::Eq24 => "eq24",
            MatrixIdentity::Eq25 => "eq25",
            MatrixIdentity::Eq26 => "eq26",
        }
    }

    /// The factor families `(left, right, product)` with
    /// `left * right = product`.
    pub fn factors(self) -> (MatrixFamily, MatrixFamily, MatrixFamily) {
        match self {
            MatrixIdentity::Eq24 => (
                MatrixFamily::WhatClassical,
                MatrixFamily::MultiS1,
                MatrixFamily::WhatGeneralized,
            ),
            MatrixIdentity::Eq25 => (
                MatrixFamily::W1Generalized,
                MatrixFamily::WhatClassical,
                MatrixFamily::ShatMultiS2,
            ),
            MatrixIdentity::Eq26 => (
                MatrixFamily::WhatGeneralized,
                MatrixFamily::MultiS2,
                MatrixFamily::WhatClassical,
            ),
        }
    }
}

/// One mismatched entry of a matrix comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub n: usize,
    pub k: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

fn compare(
    lhs: &LowerTriangularMatrix,
    rhs: &LowerTriangularMatrix,
) -> Result<Vec<Discrepancy>, Error> {
    if lhs.size() != rhs.size() {
        return Err(Error::SizeMismatch { a: lhs.size(), b: rhs.size() });
    }
    let mut out = Vec::new();
    for n in 0..lhs.size() {
        for k in 0..=n {
            let (a, b) = (lhs.entry(n, k), rhs.entry(n, k));
            if a != b {
                out.push(Discrepancy { n, k, lhs: a, rhs: b });
            }
        }
    }
    Ok(out)
}

/// Checks one identity at the given parameters: multiplies the two factor
/// matrices and compares against the directly built product family. An
/// empty result means the identity held exactly. Needs `m != 0`.
pub fn check_matrix_identity(
    identity: MatrixIdentity,
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
    size: usize,
) -> Result<Vec<Discrepancy>, Error> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    let (left, right, product) = identity.factors();
    let lhs = build_matrix(left, m, r, alpha, size)?.mul(&build_matrix(right, m, r, alpha, size)?)?;
    let rhs = build_matrix(product, m, r, alpha, size)?;
    compare(&lhs, &rhs)
}

/// The six families at size 4, written out as closed-form expressions in
/// `m`, `r`, `alpha_0..alpha_2` rather than computed by recurrence. These
/// pin the conventions: comparing them against [`build_matrix`] catches
/// sign or scaling slips in either place.
pub struct FixtureMatrices {
    pub what_classical: LowerTriangularMatrix,
    pub what_generalized: LowerTriangularMatrix,
    pub multi_s1: LowerTriangularMatrix,
    pub multi_s2: LowerTriangularMatrix,
    pub w1_generalized: LowerTriangularMatrix,
    pub shat_multi_s2: LowerTriangularMatrix,
}

impl FixtureMatrices {
    pub fn get(&self, family: MatrixFamily) -> &LowerTriangularMatrix {
        match family {
            MatrixFamily::WhatClassical => &self.what_classical,
            MatrixFamily::WhatGeneralized => &self.what_generalized,
            MatrixFamily::MultiS1 => &self.multi_s1,
            MatrixFamily::MultiS2 => &self.multi_s2,
            MatrixFamily::W1Generalized => &self.w1_generalized,
            MatrixFamily::ShatMultiS2 => &self.shat_multi_s2,
        }
    }
}

/// Builds all six 4 x 4 fixtures. Needs at least three parameters.
pub fn fixture_matrices(
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
) -> Result<FixtureMatrices, Error> {
    alpha.require(3)?;
    let one = Rational::one();
    let a0 = alpha.get(0).clone();
    let a1 = alpha.get(1).clone();
    let a2 = alpha.get(2).clone();
    let m2 = m * m;
    let m3 = &m2 * m;
    let r2 = r * r;
    let r3 = &r2 * r;

    let rows = |rows: Vec<Vec<Rational>>| LowerTriangularMatrix { rows };

    let what_classical = rows(vec![
        vec![one.clone()],
        vec![r.clone(), m.clone()],
        vec![r2.clone(), m * &(int(2) * r + m), m2.clone()],
        vec![
            r3.clone(),
            m * &(int(3) * &r2 + int(3) * &(m * r) + &m2),
            &m2 * &(int(3) * r + int(3) * m),
            m3.clone(),
        ],
    ]);

    let fall2 = &a0 * &(&a0 - &one);
    let multi_s1 = rows(vec![
        vec![one.clone()],
        vec![a0.clone(), one.clone()],
        vec![fall2.clone(), &a0 + &a1 - &one, one.clone()],
        vec![
            &fall2 * &(&a0 - &int(2)),
            &fall2 + &((&a1 - &int(2)) * (&a0 + &a1 - &one)),
            &a0 + &a1 + &a2 - &int(3),
            one.clone(),
        ],
    ]);

    // b_i = r + m alpha_i
    let b0 = r + &(m * &a0);
    let b1 = r + &(m * &a1);
    let b2 = r + &(m * &a2);
    let what_generalized = rows(vec![
        vec![one.clone()],
        vec![b0.clone(), m.clone()],
        vec![&b0 * &b0, m * &(&b0 + &b1), m2.clone()],
        vec![
            pow(&b0, 3),
            m * &(&b0 * &b0 + &b1 * &(&b0 + &b1)),
            &m2 * &(&b0 + &b1 + &b2),
            m3.clone(),
        ],
    ]);

    let w1_generalized = rows(vec![
        vec![one.clone()],
        vec![-&b0, one.clone()],
        vec![&b0 * &b1, -(&b0 + &b1), one.clone()],
        vec![
            -(&b0 * &b1 * &b2),
            &b0 * &b1 + (&b0 + &b1) * &b2,
            -(&b0 + &b1 + &b2),
            one.clone(),
        ],
    ]);

    // Elementary symmetric polynomials in alpha_0..alpha_2.
    let e1 = &a0 + &a1 + &a2;
    let e2 = &a0 * &a1 + &a0 * &a2 + &a1 * &a2;
    let e3 = &a0 * &a1 * &a2;
    let multi_s2 = rows(vec![
        vec![one.clone()],
        vec![-&a0, one.clone()],
        vec![&a0 * &a1, &one - &(&a0 + &a1), one.clone()],
        vec![-&e3, &e2 - &e1 + &one, int(3) - &e1, one.clone()],
    ]);

    let shat_multi_s2 =
        LowerTriangularMatrix::from_fn(4, |n, k| multi_s2.entry(n, k) * pow(m, n as u32));

    Ok(FixtureMatrices {
        what_classical,
        what_generalized,
        multi_s1,
        multi_s2,
        w1_generalized,
        shat_multi_s2,
    })
}

/// Compares every fixture matrix against the recurrence-built one at the
/// same parameters, tagging each mismatch with its family. Needs at least
/// three parameters; `m` may be anything, zero included.
pub fn check_fixture_matrices(
    m: &Rational,
    r: &Rational,
    alpha: &ParameterVector,
) -> Result<Vec<(MatrixFamily, Discrepancy)>, Error> {
    let fixtures = fixture_matrices(m, r, alpha)?;
    let mut out = Vec::new();
    for family in MatrixFamily::ALL {
        let built = build_matrix(family, m, r, alpha, 4)?;
        for d in compare(fixtures.get(family), &built)? {
            out.push((family, d));
        }
    }
    Ok(out)
}
