//! Runtime-selectable triangle families. Each family is registered under
//! a stable name so callers (notably the CLI) can pick one by string and
//! build it from a single bag of parameters.

use crate::error::Error;
use crate::numeric::Rational;
use crate::params::AlphaSpec;
use crate::stirling::{
    comtet_s1, comtet_s2, multiparam_s1, multiparam_s2, p_stirling1, q_stirling1_spec,
    q_stirling2_spec,
};
use crate::whitney::{classical_triangle, w1_triangle, w2_triangle, Triangle, WhitneyKind};

/// Everything a family might need. Families ignore the fields that do not
/// apply to them: the Stirling-type triangles ignore `m` and `r`, the
/// classical Whitney triangles and `p1` ignore `alpha`.
#[derive(Clone, Debug)]
pub struct TableParams {
    pub m: Rational,
    pub r: Rational,
    pub alpha: AlphaSpec,
    pub nmax: usize,
    pub p: Option<u32>,
    pub q: Option<Rational>,
}

/// A named triangle builder.
pub trait TriangleFamily: Sync {
    fn name(&self) -> &'static str;
    fn build(&self, params: &TableParams) -> Result<Triangle, Error>;
}

macro_rules! families {
    ($($ty:ident: $name:literal, $build:expr;)*) => {
        $(
            struct $ty;
            impl TriangleFamily for $ty {
                fn name(&self) -> &'static str { $name }
                fn build(&self, params: &TableParams) -> Result<Triangle, Error> {
                    let build: fn(&TableParams) -> Result<Triangle, Error> = $build;
                    build(params)
                }
            }
        )*
        static FAMILIES: &[&dyn TriangleFamily] = &[$(&$ty,)*];
    };
}

fn require_order(params: &TableParams, family: &str) -> Result<u32, Error> {
    params
        .p
        .ok_or_else(|| Error::Validation(format!("family {family} needs an order p")))
}

fn require_base(params: &TableParams, family: &str) -> Result<Rational, Error> {
    params
        .q
        .clone()
        .ok_or_else(|| Error::Validation(format!("family {family} needs a base q")))
}

families! {
    W1Family: "w1", |p| {
        let alpha = p.alpha.materialize(p.nmax)?;
        w1_triangle(&p.m, &p.r, &alpha, p.nmax)
    };
    W2Family: "w2", |p| {
        let alpha = p.alpha.materialize(p.nmax)?;
        w2_triangle(&p.m, &p.r, &alpha, p.nmax)
    };
    ComtetS1Family: "comtet_s1", |p| {
        let alpha = p.alpha.materialize(p.nmax)?;
        comtet_s1(&alpha, p.nmax)
    };
    ComtetS2Family: "comtet_s2", |p| {
        let alpha = p.alpha.materialize(p.nmax)?;
        comtet_s2(&alpha, p.nmax)
    };
    MultiS1Family: "multi_s1", |p| {
        let alpha = p.alpha.materialize(p.nmax)?;
        multiparam_s1(&alpha, p.nmax)
    };
    MultiS2Family: "multi_s2", |p| {
        let alpha = p.alpha.materialize(p.nmax)?;
        multiparam_s2(&alpha, p.nmax)
    };
    PStirling1Family: "p1", |p| {
        let order = require_order(p, "p1")?;
        p_stirling1(p.nmax, order)
    };
    QStirling1Family: "q1", |p| {
        let base = require_base(p, "q1")?;
        q_stirling1_spec(&p.alpha, &base, p.nmax)
    };
    QStirling2Family: "q2", |p| {
        let base = require_base(p, "q2")?;
        q_stirling2_spec(&p.alpha, &base, p.nmax)
    };
    ClassicalW1Family: "classical_w1", |p| {
        Ok(classical_triangle(WhitneyKind::First, &p.m, &p.r, p.nmax))
    };
    ClassicalW2Family: "classical_w2", |p| {
        Ok(classical_triangle(WhitneyKind::Second, &p.m, &p.r, p.nmax))
    };
}

/// Looks a family up by its registered name.
pub fn lookup_family(name: &str) -> Result<&'static dyn TriangleFamily, Error> {
    FAMILIES
        .iter()
        .copied()
        .find(|f| f.name() == name)
        .ok_or_else(|| Error::UnknownKind(name.to_string()))
}

/// All registered family names, in registration order.
pub fn family_names() -> Vec<&'static str> {
    FAMILIES.iter().map(|f| f.name()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    fn base_params(nmax: usize) -> TableParams {
        TableParams {
            m: int(1),
            r: int(0),
            alpha: AlphaSpec::Arange,
            nmax,
            p: None,
            q: None,
        }
    }

    #[test]
    fn every_name_resolves() {
        for name in family_names() {
            assert_eq!(lookup_family(name).unwrap().name(), name);
        }
        assert!(matches!(lookup_family("w3"), Err(Error::UnknownKind(_))));
    }

    #[test]
    fn registry_agrees_with_direct_construction() {
        let params = TableParams {
            m: ratio(2, 3),
            r: int(-1),
            ..base_params(5)
        };
        let via_registry = lookup_family("w1").unwrap().build(&params).unwrap();
        let alpha = AlphaSpec::Arange.materialize(5).unwrap();
        let direct = w1_triangle(&params.m, &params.r, &alpha, 5).unwrap();
        assert_eq!(via_registry.rows(), direct.rows());
    }

    #[test]
    fn missing_order_or_base_is_rejected() {
        let params = base_params(4);
        assert!(matches!(
            lookup_family("p1").unwrap().build(&params),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            lookup_family("q1").unwrap().build(&params),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            lookup_family("q2").unwrap().build(&params),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn q_family_at_base_one_is_the_plain_family() {
        let mut params = base_params(5);
        params.q = Some(int(1));
        let bracketed = lookup_family("q1").unwrap().build(&params).unwrap();
        let plain = lookup_family("comtet_s1").unwrap().build(&params).unwrap();
        assert_eq!(bracketed.rows(), plain.rows());
    }

    #[test]
    fn classical_families_ignore_alpha() {
        let mut params = base_params(4);
        params.alpha = AlphaSpec::List(vec![int(9)]); // too short for nmax = 4
        let t = lookup_family("classical_w2").unwrap().build(&params).unwrap();
        assert_eq!(t.entry(4, 2), int(7));
    }

    #[test]
    fn p_family_matches_power_nodes() {
        let mut params = base_params(4);
        params.p = Some(2);
        let t = lookup_family("p1").unwrap().build(&params).unwrap();
        let alpha = AlphaSpec::Power(2).materialize(4).unwrap();
        let direct = comtet_s1(&alpha, 4).unwrap();
        assert_eq!(t.rows(), direct.rows());
    }
}
