//! The verification engine: a catalog of cross-family identities, each
//! checked exactly on randomly sampled parameters with the two sides
//! computed along deliberately different routes.
//!
//! A relation's left side might come from a recurrence triangle while its
//! right side comes from polynomial expansion, a closed form, a harmonic
//! sum, or a matrix product. The routes never share intermediate results,
//! so agreement on random rational parameters is strong evidence that both
//! implementations and the identity itself are right.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::Error;
use crate::matrixrep::{check_matrix_identity, MatrixIdentity};
use crate::numeric::{
    binomial, compositions, factorial, int, pow, pow_signed, qbracket, ratio, Rational,
};
use crate::params::AlphaSpec;
use crate::polynomial::ParameterVector;
use crate::stirling::{
    comtet_s1_via_expansion, comtet_s2_via_expansion, multiparam_s1, multiparam_s2_via_expansion,
};
use crate::whitney::{
    classical_triangle, w1_triangle, w2_triangle, w2_triangle_via_expansion, WhitneyKind,
};

/// The generalized harmonic number `H_n(k; alpha) = sum_{i<n} alpha_i^{-k}`.
/// Needs `k >= 1` and nonzero parameters.
pub fn harmonic(alpha: &ParameterVector, n: usize, k: u32) -> Result<Rational, Error> {
    assert!(k >= 1, "harmonic order must be positive");
    alpha.require(n)?;
    let mut sum = Rational::zero();
    for i in 0..n {
        if alpha.get(i).is_zero() {
            return Err(Error::ZeroAlpha { index: i });
        }
        sum += pow_signed(alpha.get(i), -i64::from(k))?;
    }
    Ok(sum)
}

/// The first-kind connection coefficient `s(n, j)` of
/// `(x; alpha)_n = sum_j s(n, j) x^j`, rebuilt purely from generalized
/// harmonic numbers:
///
/// ```text
/// s(n, j) = prod_{i<n} (-alpha_i)
///           * sum_{l<=j} ((-1)^l / l!)
///             sum_{k_1+...+k_l = j} prod_t H_n(k_t; alpha) / k_t
/// ```
///
/// This is an entirely different route than expanding the product, which
/// is exactly why it is worth checking against.
pub fn s1_from_harmonic(alpha: &ParameterVector, n: usize, j: usize) -> Result<Rational, Error> {
    alpha.require(n)?;
    let mut prefactor = Rational::one();
    for i in 0..n {
        if alpha.get(i).is_zero() {
            return Err(Error::ZeroAlpha { index: i });
        }
        prefactor *= -alpha.get(i);
    }
    let mut h = vec![Rational::zero()]; // slot k = 0 is never used
    for k in 1..=j {
        h.push(harmonic(alpha, n, k as u32)?);
    }
    let mut total = Rational::zero();
    for ell in 0..=j {
        let mut inner = Rational::zero();
        for comp in compositions(j as u64, ell) {
            let mut term = Rational::one();
            for &part in &comp {
                term *= &h[part as usize] / int(part as i64);
            }
            inner += term;
        }
        if ell % 2 == 1 {
            inner = -inner;
        }
        total += inner / factorial(ell as u64);
    }
    Ok(prefactor * total)
}

/// Names of the verifiable relations. The wire names (`Eq11`,
/// `S2C1_delta`, ...) are stable catalog labels used by the CLI and the
/// report format; the formula each one checks is documented on the
/// catalog entry below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationId {
    S2C1Delta,
    S2C2Const,
    S2C5PStirling,
    S2C6QStirling,
    S3C1Pascal,
    S3C2Const,
    S3C5PStirling2,
    S3C6QStirling2,
    Eq11,
    Eq12,
    Eq13,
    Eq14,
    Eq15,
    Eq16,
    Eq17,
    Eq17R1,
    Eq21Harmonic,
    S1FromHarmonic,
    Eq24,
    Eq25,
    Eq26,
}

impl RelationId {
    pub const ALL: [RelationId; 21] = [
        RelationId::S2C1Delta,
        RelationId::S2C2Const,
        RelationId::S2C5PStirling,
        RelationId::S2C6QStirling,
        RelationId::S3C1Pascal,
        RelationId::S3C2Const,
        RelationId::S3C5PStirling2,
        RelationId::S3C6QStirling2,
        RelationId::Eq11,
        RelationId::Eq12,
        RelationId::Eq13,
        RelationId::Eq14,
        RelationId::Eq15,
        RelationId::Eq16,
        RelationId::Eq17,
        RelationId::Eq17R1,
        RelationId::Eq21Harmonic,
        RelationId::S1FromHarmonic,
        RelationId::Eq24,
        RelationId::Eq25,
        RelationId::Eq26,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::S2C1Delta => "S2C1_delta",
            RelationId::S2C2Const => "S2C2_const",
            RelationId::S2C5PStirling => "S2C5_pstirling",
            RelationId::S2C6QStirling => "S2C6_qstirling",
            RelationId::S3C1Pascal => "S3C1_pascal",
            RelationId::S3C2Const => "S3C2_const",
            RelationId::S3C5PStirling2 => "S3C5_pstirling2",
            RelationId::S3C6QStirling2 => "S3C6_qstirling2",
            RelationId::Eq11 => "Eq11",
            RelationId::Eq12 => "Eq12",
            RelationId::Eq13 => "Eq13",
            RelationId::Eq14 => "Eq14",
            RelationId::Eq15 => "Eq15",
            RelationId::Eq16 => "Eq16",
            RelationId::Eq17 => "Eq17",
            RelationId::Eq17R1 => "Eq17_r1",
            RelationId::Eq21Harmonic => "Eq21_harmonic",
            RelationId::S1FromHarmonic => "S1_from_harmonic",
            RelationId::Eq24 => "Eq24",
            RelationId::Eq25 => "Eq25",
            RelationId::Eq26 => "Eq26",
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        RelationId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownRelation(s.to_string()))
    }
}

/// One sampled parameter set. For the q-relations `alpha` holds the raw
/// integer arguments and `q` the base; everywhere else `alpha` holds the
/// node values themselves.
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterSample {
    pub m: Rational,
    pub r: Rational,
    pub alpha: Vec<Rational>,
    pub p: Option<u32>,
    pub q: Option<Rational>,
}

impl ParameterSample {
    pub fn alpha_vector(&self) -> ParameterVector {
        ParameterVector::new(self.alpha.clone())
    }

    fn json(&self) -> serde_json::Value {
        json!({
            "m": self.m.to_string(),
            "r": self.r.to_string(),
            "alpha": self.alpha.iter().map(Rational::to_string).collect::<Vec<_>>(),
            "p": self.p,
            "q": self.q.as_ref().map(Rational::to_string),
        })
    }
}

/// One index pair where the two sides disagreed.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub sample: ParameterSample,
    pub n: usize,
    pub k: usize,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Failure {
    fn json(&self) -> serde_json::Value {
        json!({
            "params": self.sample.json(),
            "n": self.n,
            "k": self.k,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
        })
    }
}

/// The outcome of checking one relation over many samples.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub relation: RelationId,
    pub nmax: usize,
    pub trials: u32,
    pub seed: u64,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "relation": self.relation.name(),
            "nmax": self.nmax,
            "trials": self.trials,
            "seed": self.seed,
            "verified": self.verified(),
            "failures": self.failures.iter().map(Failure::json).collect::<Vec<_>>(),
        })
    }
}

/// Deterministic parameter source. Rationals are drawn with numerators in
/// `-20..=20` and denominators in `1..=20`; the same seed always yields
/// the same stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.random_range(-20i64..=20);
        let d = self.rng.random_range(1i64..=20);
        ratio(n, d)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let v = self.rational();
            if !v.is_zero() {
                return v;
            }
        }
    }

    /// A rational avoiding every listed value.
    pub fn rational_outside(&mut self, avoid: &[Rational]) -> Rational {
        loop {
            let v = self.rational();
            if !avoid.contains(&v) {
                return v;
            }
        }
    }

    pub fn distinct_nonzero_rationals(&mut self, len: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        while out.len() < len {
            let v = self.nonzero_rational();
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn distinct_integers(&mut self, len: usize, lo: i64, hi: i64) -> Vec<i64> {
        assert!(hi - lo + 1 >= len as i64, "range too small for {len} distinct integers");
        let mut out: Vec<i64> = Vec::with_capacity(len);
        while out.len() < len {
            let v = self.rng.random_range(lo..=hi);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// A small order for the p-Stirling families.
    pub fn order(&mut self) -> u32 {
        self.rng.random_range(1..=3)
    }
}

/// One verifiable identity: draws parameter samples subject to its own
/// constraints and evaluates both sides independently on each index pair.
pub trait Relation: Sync {
    fn id(&self) -> RelationId;
    fn sample(&self, sampler: &mut Sampler, nmax: usize) -> ParameterSample;
    fn check(&self, sample: &ParameterSample, nmax: usize) -> Vec<Failure>;
}

/// Checks `relation` on `trials` freshly sampled parameter sets, each over
/// the full triangle `0 <= k <= n <= nmax`. Deterministic in `seed`.
pub fn verify_relation(
    relation: RelationId,
    nmax: usize,
    trials: u32,
    seed: u64,
) -> VerificationReport {
    let rel = catalog_entry(relation);
    let mut sampler = Sampler::new(seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let sample = rel.sample(&mut sampler, nmax);
        failures.extend(rel.check(&sample, nmax));
    }
    VerificationReport { relation, nmax, trials, seed, failures }
}

fn catalog_entry(id: RelationId) -> &'static dyn Relation {
    CATALOG
        .iter()
        .copied()
        .find(|r| r.id() == id)
        .expect("every relation id is registered")
}

// --- samplers ---------------------------------------------------------

const EXPECT_SAMPLE: &str = "sample satisfies the relation's preconditions";

fn sample_default(s: &mut Sampler, nmax: usize) -> ParameterSample {
    ParameterSample {
        m: s.nonzero_rational(),
        r: s.rational(),
        alpha: s.distinct_nonzero_rationals(nmax),
        p: None,
        q: None,
    }
}

fn sample_r1(s: &mut Sampler, nmax: usize) -> ParameterSample {
    ParameterSample { r: Rational::one(), ..sample_default(s, nmax) }
}

fn sample_alpha_only(s: &mut Sampler, nmax: usize) -> ParameterSample {
    ParameterSample {
        m: Rational::one(),
        r: Rational::zero(),
        alpha: s.distinct_nonzero_rationals(nmax),
        p: None,
        q: None,
    }
}

fn sample_zero_alpha(s: &mut Sampler, nmax: usize) -> ParameterSample {
    ParameterSample {
        m: s.nonzero_rational(),
        r: s.rational(),
        alpha: vec![Rational::zero(); nmax],
        p: None,
        q: None,
    }
}

fn sample_const_alpha(s: &mut Sampler, nmax: usize) -> ParameterSample {
    let a = s.nonzero_rational();
    ParameterSample {
        m: s.nonzero_rational(),
        r: s.rational(),
        alpha: vec![a; nmax],
        p: None,
        q: None,
    }
}

fn sample_pow_nodes(s: &mut Sampler, nmax: usize) -> ParameterSample {
    let p = s.order();
    let nodes = AlphaSpec::Power(p).materialize(nmax).expect(EXPECT_SAMPLE);
    ParameterSample {
        m: s.nonzero_rational(),
        r: s.rational(),
        alpha: nodes.values().to_vec(),
        p: Some(p),
        q: None,
    }
}

fn sample_binom_nodes(s: &mut Sampler, nmax: usize) -> ParameterSample {
    let p = s.order();
    let nodes = AlphaSpec::Binom(p).materialize(nmax).expect(EXPECT_SAMPLE);
    ParameterSample {
        m: s.nonzero_rational(),
        r: s.rational(),
        alpha: nodes.values().to_vec(),
        p: Some(p),
        q: None,
    }
}

fn sample_q_nodes(s: &mut Sampler, nmax: usize) -> ParameterSample {
    let ints = s.distinct_integers(nmax, -6, 6);
    let q = s.rational_outside(&[Rational::zero(), Rational::one()]);
    ParameterSample {
        m: s.nonzero_rational(),
        r: s.rational(),
        alpha: ints.into_iter().map(int).collect(),
        p: None,
        q: Some(q),
    }
}

// --- checks -----------------------------------------------------------

fn collect_failures(
    sample: &ParameterSample,
    nmax: usize,
    mut sides: impl FnMut(usize, usize) -> (Rational, Rational),
) -> Vec<Failure> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for k in 0..=n {
            let (lhs, rhs) = sides(n, k);
            if lhs != rhs {
                out.push(Failure { sample: sample.clone(), n, k, lhs, rhs });
            }
        }
    }
    out
}

/// The bracketed nodes `[a_i]_q` for a q-relation sample.
fn q_nodes(sample: &ParameterSample) -> ParameterVector {
    let q = sample.q.as_ref().expect(EXPECT_SAMPLE);
    let values = sample
        .alpha
        .iter()
        .map(|a| {
            let a = i64::try_from(a.to_integer()).expect(EXPECT_SAMPLE);
            qbracket(a, q).expect(EXPECT_SAMPLE)
        })
        .collect();
    ParameterVector::new(values)
}

/// `m^(n-i) s(n, i) = sum_k C(k, i) r^(k-i) w(n, k)` with the first-kind
/// connection `s` expanded from the product polynomial and `w` built by
/// recurrence. Shared by Eq11, Eq12 (r = 1), and the power/bracket node
/// special cases.
fn check_first_kind_vertical(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    check_first_kind_vertical_over(sample, &sample.alpha_vector(), nmax)
}

fn check_first_kind_vertical_q(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    check_first_kind_vertical_over(sample, &q_nodes(sample), nmax)
}

fn check_first_kind_vertical_over(
    sample: &ParameterSample,
    nodes: &ParameterVector,
    nmax: usize,
) -> Vec<Failure> {
    let s1 = comtet_s1_via_expansion(nodes, nmax).expect(EXPECT_SAMPLE);
    let w1 = w1_triangle(&sample.m, &sample.r, nodes, nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, i| {
        let lhs = pow(&sample.m, (n - i) as u32) * s1.entry(n, i);
        let mut rhs = Rational::zero();
        for k in i..=n {
            rhs += binomial(k as u64, i as u64)
                * pow(&sample.r, (k - i) as u32)
                * w1.entry(n, k);
        }
        (lhs, rhs)
    })
}

/// `sum_k C(k, i) r^(k-i) w(n, k) = delta_{n,i}` over all-zero parameters.
fn check_s2c1(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let w1 = w1_triangle(&sample.m, &sample.r, &sample.alpha_vector(), nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, i| {
        let mut lhs = Rational::zero();
        for k in i..=n {
            lhs += binomial(k as u64, i as u64)
                * pow(&sample.r, (k - i) as u32)
                * w1.entry(n, k);
        }
        let rhs = if n == i { Rational::one() } else { Rational::zero() };
        (lhs, rhs)
    })
}

/// `m^(n-i) C(n, i) (-a)^(n-i) = sum_k C(k, i) r^(k-i) w(n, k)` over the
/// constant vector `alpha_i = a`.
fn check_s2c2(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let a = sample.alpha.first().cloned().unwrap_or_else(Rational::zero);
    let w1 = w1_triangle(&sample.m, &sample.r, &sample.alpha_vector(), nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, i| {
        let lhs = pow(&sample.m, (n - i) as u32)
            * binomial(n as u64, i as u64)
            * pow(&-&a, (n - i) as u32);
        let mut rhs = Rational::zero();
        for k in i..=n {
            rhs += binomial(k as u64, i as u64)
                * pow(&sample.r, (k - i) as u32)
                * w1.entry(n, k);
        }
        (lhs, rhs)
    })
}

/// `W(n, i) m^i = sum_k C(n, k) m^k r^(n-k) S(k, i)` with `W` built by
/// recurrence and the second-kind connection `S` by expansion. Shared by
/// Eq13 and Eq14 (r = 1).
fn check_second_kind_vertical(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let nodes = sample.alpha_vector();
    let w2 = w2_triangle(&sample.m, &sample.r, &nodes, nmax).expect(EXPECT_SAMPLE);
    let s2 = comtet_s2_via_expansion(&nodes, nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, i| {
        let lhs = w2.entry(n, i) * pow(&sample.m, i as u32);
        let mut rhs = Rational::zero();
        for k in i..=n {
            rhs += binomial(n as u64, k as u64)
                * pow(&sample.m, k as u32)
                * pow(&sample.r, (n - k) as u32)
                * s2.entry(k, i);
        }
        (lhs, rhs)
    })
}

/// `W(n, k) = C(n, k) r^(n-k)` over all-zero parameters; at `m = r = 1`
/// this is Pascal's triangle.
fn check_s3c1(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let w2 = w2_triangle(&sample.m, &sample.r, &sample.alpha_vector(), nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, k| {
        let lhs = w2.entry(n, k);
        let rhs = binomial(n as u64, k as u64) * pow(&sample.r, (n - k) as u32);
        (lhs, rhs)
    })
}

/// `C(n, i) r^(n-i) m^i = sum_k C(k, i) W(n, k) (-a)^(k-i) m^k` over the
/// constant vector `alpha_i = a`.
fn check_s3c2(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let a = sample.alpha.first().cloned().unwrap_or_else(Rational::zero);
    let w2 = w2_triangle(&sample.m, &sample.r, &sample.alpha_vector(), nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, i| {
        let lhs = binomial(n as u64, i as u64)
            * pow(&sample.r, (n - i) as u32)
            * pow(&sample.m, i as u32);
        let mut rhs = Rational::zero();
        for k in i..=n {
            rhs += binomial(k as u64, i as u64)
                * w2.entry(n, k)
                * pow(&-&a, (k - i) as u32)
                * pow(&sample.m, k as u32);
        }
        (lhs, rhs)
    })
}

/// `C(n, i) r^(n-i) m^i = sum_k W(n, k) m^k s(k, i)` over binomial nodes,
/// with `W` by recurrence and the first-kind connection `s` by expansion.
fn check_s3c5(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let nodes = sample.alpha_vector();
    let w2 = w2_triangle(&sample.m, &sample.r, &nodes, nmax).expect(EXPECT_SAMPLE);
    let s1 = comtet_s1_via_expansion(&nodes, nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, i| {
        let lhs = binomial(n as u64, i as u64)
            * pow(&sample.r, (n - i) as u32)
            * pow(&sample.m, i as u32);
        let mut rhs = Rational::zero();
        for k in i..=n {
            rhs += w2.entry(n, k) * pow(&sample.m, k as u32) * s1.entry(k, i);
        }
        (lhs, rhs)
    })
}

/// `W(n, k) m^k = sum_i C(n, i) r^(n-i) m^i S(i, k)` over bracketed nodes,
/// with `W` by recurrence and the second-kind connection `S` by expansion.
fn check_s3c6(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let nodes = q_nodes(sample);
    let w2 = w2_triangle(&sample.m, &sample.r, &nodes, nmax).expect(EXPECT_SAMPLE);
    let s2 = comtet_s2_via_expansion(&nodes, nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, k| {
        let lhs = w2.entry(n, k) * pow(&sample.m, k as u32);
        let mut rhs = Rational::zero();
        for i in k..=n {
            rhs += binomial(n as u64, i as u64)
                * pow(&sample.r, (n - i) as u32)
                * pow(&sample.m, i as u32)
                * s2.entry(i, k);
        }
        (lhs, rhs)
    })
}

/// `sum_k m^(k-i) W_{m,r}(n, k) s(k, i; alpha) = W_{m,r;alpha}(n, i)` with
/// both left factors by recurrence and the right side by expansion.
fn check_eq15(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let nodes = sample.alpha_vector();
    let classical = classical_triangle(WhitneyKind::Second, &sample.m, &sample.r, nmax);
    let s_multi = multiparam_s1(&nodes, nmax).expect(EXPECT_SAMPLE);
    let w2 = w2_triangle_via_expansion(&sample.m, &sample.r, &nodes, nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, i| {
        let mut lhs = Rational::zero();
        for k in i..=n {
            lhs += pow(&sample.m, (k - i) as u32) * classical.entry(n, k) * s_multi.entry(k, i);
        }
        (lhs, w2.entry(n, i))
    })
}

/// `m^(n-i) S(n, i; alpha) = sum_k w_{m,r;alpha}(n, k) W_{m,r}(k, i)` with
/// the left side by expansion and both right factors by recurrence.
fn check_eq16(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let nodes = sample.alpha_vector();
    let s_multi = multiparam_s2_via_expansion(&nodes, nmax).expect(EXPECT_SAMPLE);
    let w1 = w1_triangle(&sample.m, &sample.r, &nodes, nmax).expect(EXPECT_SAMPLE);
    let classical = classical_triangle(WhitneyKind::Second, &sample.m, &sample.r, nmax);
    collect_failures(sample, nmax, |n, i| {
        let lhs = pow(&sample.m, (n - i) as u32) * s_multi.entry(n, i);
        let mut rhs = Rational::zero();
        for k in i..=n {
            rhs += w1.entry(n, k) * classical.entry(k, i);
        }
        (lhs, rhs)
    })
}

/// `W_{m,r}(n, k) = sum_i m^(i-k) W_{m,r;alpha}(n, i) S(i, k; alpha)` with
/// the left side by recurrence and both right factors by expansion. Shared
/// by Eq17 and Eq17_r1 (r = 1).
fn check_eq17(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let nodes = sample.alpha_vector();
    let classical = classical_triangle(WhitneyKind::Second, &sample.m, &sample.r, nmax);
    let w2 = w2_triangle_via_expansion(&sample.m, &sample.r, &nodes, nmax).expect(EXPECT_SAMPLE);
    let s_multi = multiparam_s2_via_expansion(&nodes, nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, k| {
        let lhs = classical.entry(n, k);
        let mut rhs = Rational::zero();
        for i in k..=n {
            rhs += pow(&sample.m, (i - k) as u32) * w2.entry(n, i) * s_multi.entry(i, k);
        }
        (lhs, rhs)
    })
}

/// `sum_k C(k, j) r^(k-j) w(n, k) = m^(n-j) s(n, j)` with the right-hand
/// connection coefficient rebuilt from harmonic numbers.
fn check_eq21(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let nodes = sample.alpha_vector();
    let w1 = w1_triangle(&sample.m, &sample.r, &nodes, nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, j| {
        let mut lhs = Rational::zero();
        for k in j..=n {
            lhs += binomial(k as u64, j as u64)
                * pow(&sample.r, (k - j) as u32)
                * w1.entry(n, k);
        }
        let rhs = pow(&sample.m, (n - j) as u32)
            * s1_from_harmonic(&nodes, n, j).expect(EXPECT_SAMPLE);
        (lhs, rhs)
    })
}

/// The harmonic route equals the polynomial-expansion route for the
/// first-kind connection coefficients themselves.
fn check_s1_from_harmonic(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    let nodes = sample.alpha_vector();
    let s1 = comtet_s1_via_expansion(&nodes, nmax).expect(EXPECT_SAMPLE);
    collect_failures(sample, nmax, |n, j| {
        let lhs = s1_from_harmonic(&nodes, n, j).expect(EXPECT_SAMPLE);
        (lhs, s1.entry(n, j))
    })
}

fn check_matrix(sample: &ParameterSample, nmax: usize, identity: MatrixIdentity) -> Vec<Failure> {
    let nodes = sample.alpha_vector();
    let diffs = check_matrix_identity(identity, &sample.m, &sample.r, &nodes, nmax + 1)
        .expect(EXPECT_SAMPLE);
    diffs
        .into_iter()
        .map(|d| Failure { sample: sample.clone(), n: d.n, k: d.k, lhs: d.lhs, rhs: d.rhs })
        .collect()
}

fn check_eq24(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    check_matrix(sample, nmax, MatrixIdentity::Eq24)
}

fn check_eq25(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    check_matrix(sample, nmax, MatrixIdentity::Eq25)
}

fn check_eq26(sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
    check_matrix(sample, nmax, MatrixIdentity::Eq26)
}

// --- catalog ----------------------------------------------------------

macro_rules! catalog {
    ($($ty:ident: $id:ident, $sample:path, $check:path;)*) => {
        $(
            struct $ty;
            impl Relation for $ty {
                fn id(&self) -> RelationId { RelationId::$id }
                fn sample(&self, sampler: &mut Sampler, nmax: usize) -> ParameterSample {
                    $sample(sampler, nmax)
                }
                fn check(&self, sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
                    $check(sample, nmax)
                }
            }
        )*
        static CATALOG: &[&dyn Relation] = &[$(&$ty,)*];
    };
}

catalog! {
    S2C1DeltaRel: S2C1Delta, sample_zero_alpha, check_s2c1;
    S2C2ConstRel: S2C2Const, sample_const_alpha, check_s2c2;
    S2C5PStirlingRel: S2C5PStirling, sample_pow_nodes, check_first_kind_vertical;
    S2C6QStirlingRel: S2C6QStirling, sample_q_nodes, check_first_kind_vertical_q;
    S3C1PascalRel: S3C1Pascal, sample_zero_alpha, check_s3c1;
    S3C2ConstRel: S3C2Const, sample_const_alpha, check_s3c2;
    S3C5PStirling2Rel: S3C5PStirling2, sample_binom_nodes, check_s3c5;
    S3C6QStirling2Rel: S3C6QStirling2, sample_q_nodes, check_s3c6;
    Eq11Rel: Eq11, sample_default, check_first_kind_vertical;
    Eq12Rel: Eq12, sample_r1, check_first_kind_vertical;
    Eq13Rel: Eq13, sample_default, check_second_kind_vertical;
    Eq14Rel: Eq14, sample_r1, check_second_kind_vertical;
    Eq15Rel: Eq15, sample_default, check_eq15;
    Eq16Rel: Eq16, sample_default, check_eq16;
    Eq17Rel: Eq17, sample_default, check_eq17;
    Eq17R1Rel: Eq17R1, sample_r1, check_eq17;
    Eq21HarmonicRel: Eq21Harmonic, sample_default, check_eq21;
    S1FromHarmonicRel: S1FromHarmonic, sample_alpha_only, check_s1_from_harmonic;
    Eq24Rel: Eq24, sample_default, check_eq24;
    Eq25Rel: Eq25, sample_default, check_eq25;
    Eq26Rel: Eq26, sample_default, check_eq26;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stirling::comtet_s1;

    #[test]
    fn harmonic_examples() {
        let alpha = ParameterVector::from_ints(&[1, 2, 4]);
        assert_eq!(harmonic(&alpha, 3, 2).unwrap(), ratio(21, 16));
        assert_eq!(harmonic(&alpha, 0, 5).unwrap(), int(0));
        assert_eq!(harmonic(&alpha, 2, 1).unwrap(), ratio(3, 2));
        let bad = ParameterVector::from_ints(&[1, 0]);
        assert!(matches!(harmonic(&bad, 2, 1), Err(Error::ZeroAlpha { index: 1 })));
    }

    #[test]
    fn s1_from_harmonic_examples() {
        let alpha = ParameterVector::from_ints(&[1, 2]);
        // (x - 1)(x - 2) = 2 - 3x + x^2
        assert_eq!(s1_from_harmonic(&alpha, 2, 0).unwrap(), int(2));
        assert_eq!(s1_from_harmonic(&alpha, 2, 1).unwrap(), int(-3));
        assert_eq!(s1_from_harmonic(&alpha, 2, 2).unwrap(), int(1));
        assert_eq!(s1_from_harmonic(&alpha, 0, 0).unwrap(), int(1));
    }

    #[test]
    fn harmonic_route_matches_expansion_route() {
        let alpha = ParameterVector::new(vec![
            ratio(1, 2),
            int(-3),
            ratio(7, 4),
            int(2),
            ratio(-2, 5),
            int(5),
        ]);
        let t = comtet_s1(&alpha, 6).unwrap();
        for n in 0..=6usize {
            for j in 0..=n {
                assert_eq!(
                    s1_from_harmonic(&alpha, n, j).unwrap(),
                    t.entry(n, j),
                    "({n}, {j})"
                );
            }
        }
    }

    #[test]
    fn relation_names_round_trip() {
        for id in RelationId::ALL {
            assert_eq!(id.name().parse::<RelationId>().unwrap(), id);
        }
        assert!(matches!(
            "NoSuchId".parse::<RelationId>(),
            Err(Error::UnknownRelation(_))
        ));
    }

    #[test]
    fn every_relation_verifies_on_small_samples() {
        for id in RelationId::ALL {
            let report = verify_relation(id, 4, 2, 7);
            assert!(
                report.verified(),
                "{} failed: {:?}",
                id.name(),
                report.failures.first()
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = verify_relation(RelationId::Eq11, 5, 4, 42).to_json().to_string();
        let b = verify_relation(RelationId::Eq11, 5, 4, 42).to_json().to_string();
        assert_eq!(a, b);
    }

    #[test]
    fn broken_relations_produce_failures() {
        // A deliberately wrong variant: same plumbing, shifted right side.
        struct Broken;
        impl Relation for Broken {
            fn id(&self) -> RelationId {
                RelationId::Eq11
            }
            fn sample(&self, sampler: &mut Sampler, nmax: usize) -> ParameterSample {
                sample_default(sampler, nmax)
            }
            fn check(&self, sample: &ParameterSample, nmax: usize) -> Vec<Failure> {
                let nodes = sample.alpha_vector();
                let w1 = w1_triangle(&sample.m, &sample.r, &nodes, nmax).unwrap();
                collect_failures(sample, nmax, |n, k| {
                    (w1.entry(n, k), w1.entry(n, k) + int(1))
                })
            }
        }
        let mut sampler = Sampler::new(3);
        let rel = Broken;
        let sample = rel.sample(&mut sampler, 3);
        let failures = rel.check(&sample, 3);
        assert_eq!(failures.len(), 10);
        let report = VerificationReport {
            relation: rel.id(),
            nmax: 3,
            trials: 1,
            seed: 3,
            failures,
        };
        assert!(!report.verified());
        let text = report.to_json().to_string();
        assert!(text.contains("\"verified\":false"));
        assert!(text.contains("\"lhs\""));
    }

    #[test]
    fn sampler_is_deterministic_and_in_range() {
        let mut a = Sampler::new(9);
        let mut b = Sampler::new(9);
        for _ in 0..50 {
            let (x, y) = (a.rational(), b.rational());
            assert_eq!(x, y);
            assert!(x.numer().magnitude() <= &20u32.into());
        }
        let distinct = a.distinct_nonzero_rationals(10);
        for (i, v) in distinct.iter().enumerate() {
            assert!(!v.is_zero());
            assert!(!distinct[..i].contains(v));
        }
    }
}
