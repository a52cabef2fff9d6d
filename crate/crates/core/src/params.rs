//! The little language for describing parameter vectors on the command
//! line and in serialized tables.
//!
//! Grammar (no whitespace anywhere):
//!
//! ```text
//! spec := "zero"                    all parameters 0
//!       | "const:" <rat>            all parameters equal
//!       | "arange"                  0, 1, 2, ...
//!       | "pow:" <int>=1            0^p, 1^p, 2^p, ...
//!       | "binom:" <int>=1          C(p-1, p), C(p, p), C(p+1, p), ...
//!       | "list:" <rat>{,<rat>}     explicit values
//!       | "qbracket:" <rat> ":" spec   q-bracket applied to an integer spec
//! ```
//!
//! A spec is materialized to a prefix of any requested length, so the same
//! description works for every table size (lists permitting).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::numeric::{binomial, int, parse_rational, qbracket, Rational};
use crate::polynomial::ParameterVector;

#[derive(Clone, Debug, PartialEq)]
pub enum AlphaSpec {
    Zero,
    Const(Rational),
    Arange,
    Power(u32),
    Binom(u32),
    List(Vec<Rational>),
    QBracket { q: Rational, inner: Box<AlphaSpec> },
}

impl AlphaSpec {
    pub fn parse(text: &str) -> Result<AlphaSpec, Error> {
        parse_at(text, 0)
    }

    /// The canonical text form; parsing it back yields an equal spec.
    pub fn render(&self) -> String {
        match self {
            AlphaSpec::Zero => "zero".to_string(),
            AlphaSpec::Const(c) => format!("const:{c}"),
            AlphaSpec::Arange => "arange".to_string(),
            AlphaSpec::Power(p) => format!("pow:{p}"),
            AlphaSpec::Binom(p) => format!("binom:{p}"),
            AlphaSpec::List(vs) => {
                let body: Vec<String> = vs.iter().map(Rational::to_string).collect();
                format!("list:{}", body.join(","))
            }
            AlphaSpec::QBracket { q, inner } => format!("qbracket:{q}:{}", inner.render()),
        }
    }

    /// Produces the first `n` parameters described by this spec.
    pub fn materialize(&self, n: usize) -> Result<ParameterVector, Error> {
        let values = match self {
            AlphaSpec::Zero => vec![Rational::zero(); n],
            AlphaSpec::Const(c) => vec![c.clone(); n],
            AlphaSpec::Arange => (0..n as i64).map(int).collect(),
            AlphaSpec::Power(p) => (0..n as u64)
                .map(|i| Rational::from_integer(BigInt::from(i).pow(*p)))
                .collect(),
            AlphaSpec::Binom(p) => (0..n as u64)
                .map(|i| binomial(u64::from(*p) - 1 + i, u64::from(*p)))
                .collect(),
            AlphaSpec::List(vs) => {
                if vs.len() < n {
                    return Err(Error::InsufficientAlpha { needed: n, got: vs.len() });
                }
                vs[..n].to_vec()
            }
            AlphaSpec::QBracket { q, inner } => {
                let base = inner.materialize(n)?;
                let mut out = Vec::with_capacity(n);
                for (index, v) in base.values().iter().enumerate() {
                    if !v.is_integer() {
                        return Err(Error::NonIntegerAlpha { index, value: v.to_string() });
                    }
                    let a = i64::try_from(v.to_integer()).map_err(|_| Error::Validation(
                        format!("alpha[{index}] is too large for a q-bracket"),
                    ))?;
                    out.push(qbracket(a, q)?);
                }
                out
            }
        };
        Ok(ParameterVector::with_origin(values, self.clone()))
    }
}

impl fmt::Display for AlphaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for AlphaSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        AlphaSpec::parse(s)
    }
}

fn parse_at(text: &str, base: usize) -> Result<AlphaSpec, Error> {
    if text == "zero" {
        return Ok(AlphaSpec::Zero);
    }
    if text == "arange" {
        return Ok(AlphaSpec::Arange);
    }
    if let Some(rest) = text.strip_prefix("const:") {
        return Ok(AlphaSpec::Const(rational_at(rest, base + 6)?));
    }
    if let Some(rest) = text.strip_prefix("pow:") {
        return Ok(AlphaSpec::Power(order_at(rest, base + 4)?));
    }
    if let Some(rest) = text.strip_prefix("binom:") {
        return Ok(AlphaSpec::Binom(order_at(rest, base + 6)?));
    }
    if let Some(rest) = text.strip_prefix("list:") {
        if rest.is_empty() {
            return Err(Error::Parse {
                pos: base + 5,
                msg: "list needs at least one value".to_string(),
            });
        }
        let mut pos = base + 5;
        let mut values = Vec::new();
        for piece in rest.split(',') {
            values.push(rational_at(piece, pos)?);
            pos += piece.len() + 1;
        }
        return Ok(AlphaSpec::List(values));
    }
    if let Some(rest) = text.strip_prefix("qbracket:") {
        let sep = rest.find(':').ok_or(Error::Parse {
            pos: base + 9 + rest.len(),
            msg: "qbracket needs `:<spec>` after the q value".to_string(),
        })?;
        let q = rational_at(&rest[..sep], base + 9)?;
        let inner = parse_at(&rest[sep + 1..], base + 9 + sep + 1)?;
        return Ok(AlphaSpec::QBracket { q, inner: Box::new(inner) });
    }
    Err(Error::Parse {
        pos: base,
        msg: "expected one of zero, const:<r>, arange, pow:<p>, binom:<p>, \
              list:<r,...>, qbracket:<q>:<spec>"
            .to_string(),
    })
}

fn rational_at(text: &str, pos: usize) -> Result<Rational, Error> {
    parse_rational(text).map_err(|e| match e {
        Error::Parse { msg, .. } => Error::Parse { pos, msg },
        other => other,
    })
}

fn order_at(text: &str, pos: usize) -> Result<u32, Error> {
    let v: u32 = text.parse().map_err(|_| Error::Parse {
        pos,
        msg: format!("invalid order `{text}`"),
    })?;
    if v == 0 {
        return Err(Error::Parse { pos, msg: "order must be at least 1".to_string() });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn vals(spec: &str, n: usize) -> Vec<Rational> {
        AlphaSpec::parse(spec).unwrap().materialize(n).unwrap().values().to_vec()
    }

    #[test]
    fn fixed_specs_materialize() {
        assert_eq!(vals("zero", 3), vec![int(0), int(0), int(0)]);
        assert_eq!(vals("const:1/2", 2), vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(vals("arange", 4), vec![int(0), int(1), int(2), int(3)]);
        assert_eq!(vals("pow:2", 4), vec![int(0), int(1), int(4), int(9)]);
        assert_eq!(vals("binom:2", 4), vec![int(0), int(1), int(3), int(6)]);
        assert_eq!(vals("list:1,-2,4/3", 3), vec![int(1), int(-2), ratio(4, 3)]);
        assert_eq!(vals("arange", 0), Vec::<Rational>::new());
    }

    #[test]
    fn qbracket_specs_materialize() {
        assert_eq!(vals("qbracket:1/2:arange", 3), vec![int(0), int(1), ratio(3, 2)]);
        assert_eq!(vals("qbracket:2:list:-1,3", 2), vec![ratio(-1, 2), int(7)]);
        assert_eq!(vals("qbracket:1:pow:2", 3), vec![int(0), int(1), int(4)]);
    }

    #[test]
    fn list_too_short_is_an_argument_error() {
        let err = AlphaSpec::parse("list:1,2").unwrap().materialize(3).unwrap_err();
        assert!(matches!(err, Error::InsufficientAlpha { needed: 3, got: 2 }));
        assert!(!err.is_domain());
    }

    #[test]
    fn qbracket_domain_and_argument_errors() {
        let err = AlphaSpec::parse("qbracket:0:list:-1").unwrap().materialize(1).unwrap_err();
        assert!(err.is_domain());
        let err = AlphaSpec::parse("qbracket:1/2:const:1/2").unwrap().materialize(1).unwrap_err();
        assert!(matches!(err, Error::NonIntegerAlpha { index: 0, .. }));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match AlphaSpec::parse("nонsense") {
            Err(Error::Parse { pos: 0, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match AlphaSpec::parse("const:x") {
            Err(Error::Parse { pos: 6, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match AlphaSpec::parse("list:1,y") {
            Err(Error::Parse { pos: 7, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match AlphaSpec::parse("pow:0") {
            Err(Error::Parse { pos: 4, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match AlphaSpec::parse("qbracket:1/2") {
            Err(Error::Parse { .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match AlphaSpec::parse("list:") {
            Err(Error::Parse { pos: 5, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        match AlphaSpec::parse("qbracket:1/2:list:1,zz") {
            Err(Error::Parse { pos: 20, .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn render_round_trips() {
        for text in [
            "zero",
            "const:-7/3",
            "arange",
            "pow:3",
            "binom:2",
            "list:1,-2,4/3",
            "qbracket:1/2:arange",
            "qbracket:-2:list:0,5,-5",
            "qbracket:1/2:qbracket:3:arange",
        ] {
            let spec = AlphaSpec::parse(text).unwrap();
            assert_eq!(spec.render(), text);
            assert_eq!(AlphaSpec::parse(&spec.render()).unwrap(), spec);
        }
        // Values canonicalize even when the input text was not canonical.
        assert_eq!(AlphaSpec::parse("const:2/6").unwrap().render(), "const:1/3");
    }

    #[test]
    fn materialized_vectors_remember_their_origin() {
        let spec = AlphaSpec::parse("qbracket:1/2:arange").unwrap();
        let pv = spec.materialize(4).unwrap();
        assert_eq!(pv.origin(), Some(&spec));
        assert_eq!(pv.spec_text(), "qbracket:1/2:arange");
    }
}
