//! Stirling-type triangles attached to a parameter vector: the connection
//! coefficients between the power, falling-factorial, and product bases.
//!
//! With `(x; alpha)_n = prod_{i<n} (x - alpha_i)` and `(x)_n` the falling
//! factorial, the four families are
//!
//! ```text
//! comtet_s1:  (x; alpha)_n = sum_k s(n, k) x^k
//! comtet_s2:  x^n          = sum_k S(n, k) (x; alpha)_k
//! multi_s1:   (x)_n        = sum_k s(n, k) (x; alpha)_k
//! multi_s2:   (x; alpha)_n = sum_k S(n, k) (x)_k
//! ```
//!
//! Specializing the parameter vector recovers classical triangles: `arange`
//! gives the ordinary Stirling numbers, `pow:p` and `binom:p` the p-Stirling
//! variants, and `qbracket:q:...` the q-analogues. As in [`crate::whitney`],
//! every family has a recurrence route and an independent expansion route.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::numeric::{int, Rational};
use crate::params::AlphaSpec;
use crate::polynomial::{
    falling_factorial_poly, product_basis_poly, to_product_basis, ParameterVector, Polynomial,
};
use crate::whitney::{Triangle, TriangleKind};

fn unit_m_r() -> (Rational, Rational) {
    (Rational::one(), Rational::zero())
}

/// Shared shape of all four recurrences: entry `(n, k)` is
/// `prev(n-1, k-1) + factor(n, k) * prev(n-1, k)`.
fn recurrence_triangle(
    kind: TriangleKind,
    alpha: &ParameterVector,
    nmax: usize,
    factor: impl Fn(usize, usize) -> Rational,
) -> Triangle {
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
                v += factor(n, k) * &prev[k];
            }
            row.push(v);
        }
        rows.push(row);
    }
    let (m, r) = unit_m_r();
    Triangle::raw(kind, &m, &r, alpha, rows)
}

fn expansion_triangle(
    kind: TriangleKind,
    alpha: &ParameterVector,
    nmax: usize,
    row_fn: impl Fn(usize) -> Result<Vec<Rational>, Error>,
) -> Result<Triangle, Error> {
    let mut rows = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        rows.push(row_fn(n)?);
    }
    let (m, r) = unit_m_r();
    Ok(Triangle::raw(kind, &m, &r, alpha, rows))
}

/// First-kind connection to powers, by the recurrence
/// `s(n, k) = s(n-1, k-1) - alpha_{n-1} s(n-1, k)`.
pub fn comtet_s1(alpha: &ParameterVector, nmax: usize) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    Ok(recurrence_triangle(TriangleKind::ComtetFirst, alpha, nmax, |n, _| {
        -alpha.get(n - 1)
    }))
}

/// Same family, read off the coefficients of `(x; alpha)_n` directly.
pub fn comtet_s1_via_expansion(alpha: &ParameterVector, nmax: usize) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    let mut poly = Polynomial::one();
    let mut rows = vec![poly.coeffs().to_vec()];
    for n in 1..=nmax {
        let lin = Polynomial::new(vec![-alpha.get(n - 1), Rational::one()]);
        poly = &poly * &lin;
        rows.push(poly.coeffs().to_vec());
    }
    let (m, r) = unit_m_r();
    Ok(Triangle::raw(TriangleKind::ComtetFirst, &m, &r, alpha, rows))
}

/// Second-kind connection from powers, by the recurrence
/// `S(n, k) = S(n-1, k-1) + alpha_k S(n-1, k)`.
pub fn comtet_s2(alpha: &ParameterVector, nmax: usize) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    Ok(recurrence_triangle(TriangleKind::ComtetSecond, alpha, nmax, |_, k| {
        alpha.get(k).clone()
    }))
}

/// Same family, by expanding `x^n` in the product basis.
pub fn comtet_s2_via_expansion(alpha: &ParameterVector, nmax: usize) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    expansion_triangle(TriangleKind::ComtetSecond, alpha, nmax, |n| {
        to_product_basis(&Polynomial::monomial(n), alpha)
    })
}

/// Falling factorials in the product basis, by the recurrence
/// `s(n, k) = s(n-1, k-1) + (alpha_k - (n - 1)) s(n-1, k)`.
pub fn multiparam_s1(alpha: &ParameterVector, nmax: usize) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    Ok(recurrence_triangle(TriangleKind::MultiFirst, alpha, nmax, |n, k| {
        alpha.get(k) - int(n as i64 - 1)
    }))
}

/// Same family, by expanding `(x)_n` in the product basis.
pub fn multiparam_s1_via_expansion(
    alpha: &ParameterVector,
    nmax: usize,
) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    expansion_triangle(TriangleKind::MultiFirst, alpha, nmax, |n| {
        to_product_basis(&falling_factorial_poly(n), alpha)
    })
}

/// Product basis in falling factorials, by the recurrence
/// `S(n, k) = S(n-1, k-1) + (k - alpha_{n-1}) S(n-1, k)`.
pub fn multiparam_s2(alpha: &ParameterVector, nmax: usize) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    Ok(recurrence_triangle(TriangleKind::MultiSecond, alpha, nmax, |n, k| {
        int(k as i64) - alpha.get(n - 1)
    }))
}

/// Same family, by expanding `(x; alpha)_n` over the nodes `0, 1, 2, ...`.
pub fn multiparam_s2_via_expansion(
    alpha: &ParameterVector,
    nmax: usize,
) -> Result<Triangle, Error> {
    alpha.require(nmax)?;
    let nodes = AlphaSpec::Arange.materialize(nmax)?;
    let mut rows = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        rows.push(to_product_basis(&product_basis_poly(alpha, n)?, &nodes)?);
    }
    let (m, r) = unit_m_r();
    Ok(Triangle::raw(TriangleKind::MultiSecond, &m, &r, alpha, rows))
}

/// p-Stirling numbers of the first kind: the first-kind connection over the
/// nodes `0^p, 1^p, 2^p, ...`. Needs `p >= 1`.
pub fn p_stirling1(nmax: usize, p: u32) -> Result<Triangle, Error> {
    if p == 0 {
        return Err(Error::Validation("p must be at least 1".to_string()));
    }
    let alpha = AlphaSpec::Power(p).materialize(nmax)?;
    comtet_s1(&alpha, nmax)
}

/// q-Stirling numbers of the first kind over the bracketed nodes
/// `[a_0]_q, [a_1]_q, ...` for an integer spec `inner`.
pub fn q_stirling1_spec(inner: &AlphaSpec, q: &Rational, nmax: usize) -> Result<Triangle, Error> {
    let spec = AlphaSpec::QBracket { q: q.clone(), inner: Box::new(inner.clone()) };
    comtet_s1(&spec.materialize(nmax)?, nmax)
}

/// q-Stirling numbers of the second kind over the same bracketed nodes.
pub fn q_stirling2_spec(inner: &AlphaSpec, q: &Rational, nmax: usize) -> Result<Triangle, Error> {
    let spec = AlphaSpec::QBracket { q: q.clone(), inner: Box::new(inner.clone()) };
    comtet_s2(&spec.materialize(nmax)?, nmax)
}

/// [`q_stirling1_spec`] over an explicit list of integers.
pub fn q_stirling1(alpha: &[i64], q: &Rational, nmax: usize) -> Result<Triangle, Error> {
    q_stirling1_spec(&AlphaSpec::List(alpha.iter().map(|&a| int(a)).collect()), q, nmax)
}

/// [`q_stirling2_spec`] over an explicit list of integers.
pub fn q_stirling2(alpha: &[i64], q: &Rational, nmax: usize) -> Result<Triangle, Error> {
    q_stirling2_spec(&AlphaSpec::List(alpha.iter().map(|&a| int(a)).collect()), q, nmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;
    use proptest::prelude::*;

    fn ints(vs: &[i64]) -> ParameterVector {
        ParameterVector::from_ints(vs)
    }

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn first_kind_rows_are_product_coefficients() {
        // x(x-1)(x-4) = 4x - 5x^2 + x^3
        let alpha = ints(&[0, 1, 4]);
        let t = comtet_s1(&alpha, 3).unwrap();
        assert_eq!(t.row(3), &[int(0), int(4), int(-5), int(1)]);
    }

    #[test]
    fn second_kind_row_example() {
        let alpha = ints(&[0, 1]);
        let t = comtet_s2(&alpha, 2).unwrap();
        assert_eq!(t.row(2), &[int(0), int(1), int(1)]);
    }

    #[test]
    fn arange_recovers_classical_stirling_numbers() {
        let alpha = AlphaSpec::Arange.materialize(5).unwrap();
        let s1 = comtet_s1(&alpha, 5).unwrap();
        assert_eq!(s1.row(5), &[int(0), int(24), int(-50), int(35), int(-10), int(1)]);
        let s2 = comtet_s2(&alpha, 5).unwrap();
        assert_eq!(s2.row(5), &[int(0), int(1), int(15), int(25), int(10), int(1)]);
    }

    #[test]
    fn multiparam_fixture_row() {
        // s(3, .; alpha) = ((a0)_3, (a0)_2 + (a1 - 2)(a0 + a1 - 1), a0 + a1 + a2 - 3, 1)
        let a = [ratio(5, 2), int(-1), ratio(1, 3)];
        let alpha = ParameterVector::new(a.to_vec());
        let t = multiparam_s1(&alpha, 3).unwrap();
        let falling2 = &a[0] * &(&a[0] - &int(1));
        assert_eq!(t.entry(3, 0), &falling2 * &(&a[0] - &int(2)));
        assert_eq!(
            t.entry(3, 1),
            &falling2 + &(&(&a[1] - &int(2)) * &(&(&a[0] + &a[1]) - &int(1)))
        );
        assert_eq!(t.entry(3, 2), &(&a[0] + &a[1]) + &(&a[2] - &int(3)));
        assert_eq!(t.entry(3, 3), int(1));
    }

    #[test]
    fn multiparam_zero_columns() {
        let alpha = ints(&[3, -2, 7, 5]);
        let s = multiparam_s1(&alpha, 4).unwrap();
        let t = multiparam_s2(&alpha, 4).unwrap();
        let mut fall = Rational::one();
        let mut prod = Rational::one();
        for n in 1..=4usize {
            // s(n, 0) = alpha_0 (alpha_0 - 1) ... (alpha_0 - n + 1)
            fall *= alpha.get(0) - int(n as i64 - 1);
            assert_eq!(s.entry(n, 0), fall);
            // S(n, 0) = (-1)^n alpha_0 ... alpha_{n-1}
            prod *= -alpha.get(n - 1);
            assert_eq!(t.entry(n, 0), prod);
        }
    }

    #[test]
    fn multiparam_over_arange_is_the_identity() {
        let alpha = AlphaSpec::Arange.materialize(6).unwrap();
        for t in [multiparam_s1(&alpha, 6).unwrap(), multiparam_s2(&alpha, 6).unwrap()] {
            for n in 0..=6usize {
                for k in 0..=n {
                    let expect = if n == k { int(1) } else { int(0) };
                    assert_eq!(t.entry(n, k), expect, "({n}, {k})");
                }
            }
        }
    }

    #[test]
    fn p_stirling_first_kind() {
        // p = 1 is the classical first kind; p = 2 runs over square nodes.
        let p1 = p_stirling1(4, 1).unwrap();
        assert_eq!(
            p1.rows().to_vec(),
            int_rows(&[&[1], &[0, 1], &[0, -1, 1], &[0, 2, -3, 1], &[0, -6, 11, -6, 1]])
        );
        let p2 = p_stirling1(3, 2).unwrap();
        // x(x-1)(x-4) again: nodes 0, 1, 4.
        assert_eq!(p2.row(3), &[int(0), int(4), int(-5), int(1)]);
        assert!(p_stirling1(3, 0).is_err());
    }

    #[test]
    fn q_stirling_limits() {
        // q = 1 brackets are the integers themselves.
        let q1 = q_stirling1(&[0, 1, 2, 3, 4], &int(1), 4).unwrap();
        let classical = comtet_s1(&AlphaSpec::Arange.materialize(4).unwrap(), 4).unwrap();
        assert_eq!(q1.rows(), classical.rows());
        // q = 0 brackets collapse to 0, 1, 1, 1, ... over arange.
        let q0 = q_stirling2(&[0, 1, 2, 3], &int(0), 3).unwrap();
        let collapsed = comtet_s2(&ints(&[0, 1, 1, 1]), 3).unwrap();
        assert_eq!(q0.rows(), collapsed.rows());
        // Negative entries need q != 0.
        assert!(q_stirling1(&[-1, 0, 1], &int(0), 3).unwrap_err().is_domain());
    }

    #[test]
    fn q_stirling_sample_values() {
        let q = ratio(1, 2);
        // Nodes [0]_q = 0, [1]_q = 1, [2]_q = 3/2, [3]_q = 7/4.
        let t = q_stirling2(&[0, 1, 2, 3], &q, 3).unwrap();
        // x^2 = 0 + x + x(x - 1) over those nodes, x^3 needs the 3/2 node.
        assert_eq!(t.row(2), &[int(0), int(1), int(1)]);
        assert_eq!(t.entry(3, 2), &ratio(3, 2) + &int(1));
        let s = q_stirling1(&[0, 1, 2, 3], &q, 3).unwrap();
        // Coefficients of x(x-1)(x-3/2) = x^3 - (5/2)x^2 + (3/2)x.
        assert_eq!(s.row(3), &[int(0), ratio(3, 2), ratio(-5, 2), int(1)]);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
    }

    fn alpha_vec(len: usize) -> impl Strategy<Value = ParameterVector> {
        prop::collection::vec(small_rational(), len).prop_map(ParameterVector::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn recurrences_match_expansions(alpha in alpha_vec(6)) {
            prop_assert_eq!(
                comtet_s1(&alpha, 6).unwrap(),
                comtet_s1_via_expansion(&alpha, 6).unwrap()
            );
            prop_assert_eq!(
                comtet_s2(&alpha, 6).unwrap(),
                comtet_s2_via_expansion(&alpha, 6).unwrap()
            );
            prop_assert_eq!(
                multiparam_s1(&alpha, 6).unwrap(),
                multiparam_s1_via_expansion(&alpha, 6).unwrap()
            );
            prop_assert_eq!(
                multiparam_s2(&alpha, 6).unwrap(),
                multiparam_s2_via_expansion(&alpha, 6).unwrap()
            );
        }

        #[test]
        fn kind_pairs_are_mutually_inverse(alpha in alpha_vec(6)) {
            let pairs = [
                (comtet_s1(&alpha, 6).unwrap(), comtet_s2(&alpha, 6).unwrap()),
                (multiparam_s1(&alpha, 6).unwrap(), multiparam_s2(&alpha, 6).unwrap()),
            ];
            for (a, b) in &pairs {
                for n in 0..=6usize {
                    for j in 0..=n {
                        let mut ab = Rational::zero();
                        let mut ba = Rational::zero();
                        for k in j..=n {
                            ab += a.entry(n, k) * b.entry(k, j);
                            ba += b.entry(n, k) * a.entry(k, j);
                        }
                        let expect = if n == j { int(1) } else { int(0) };
                        prop_assert_eq!(ab, expect.clone());
                        prop_assert_eq!(ba, expect);
                    }
                }
            }
        }
    }
}
