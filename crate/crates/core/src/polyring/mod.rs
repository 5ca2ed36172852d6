//! Exact sparse multivariate polynomials over ℚ.
//!
//! Coefficients are [`Scalar`]s (big rationals in lowest terms), monomials are
//! ordered graded-lexicographically with `x` variables before `y` variables,
//! and a [`Polynomial`] is a canonical term map. The size measure used
//! throughout the crate is [`Polynomial::size_paper`].

mod monomial;
mod polynomial;
mod reduce;
mod scalar;

use std::fmt;

pub use monomial::{Monomial, Namespace, VarId};
pub use polynomial::Polynomial;
pub use reduce::{boolean_axiom, multilinear_reduce, ReductionStep};
pub use scalar::{ceil_log2, Scalar};

pub(crate) use scalar::parse_canonical_int;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable {0} is not bound")]
    UnboundVariable(VarId),
}

/// Rejection of a non-canonical textual value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(String);

impl ParseError {
    pub(crate) fn new(msg: impl Into<String>) -> Self {
        ParseError(msg.into())
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;

    fn x(i: u32) -> Polynomial {
        Polynomial::var(VarId::x(i))
    }

    fn y(i: u32) -> Polynomial {
        Polynomial::var(VarId::y(i))
    }

    fn c(n: i64) -> Polynomial {
        Polynomial::constant(n)
    }

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&(&x(1) + &c(1)) + &(&c(1) - &x(1)), c(2));
        let p = &x(1) + &c(3);
        assert_eq!(&p + &Polynomial::zero(), p);
        let sq = &x(1) * &x(1);
        assert_eq!(&(&sq - &x(1)) + &x(1), sq);
    }

    #[test]
    fn scale_examples() {
        let p = &x(1).scale(&q("2")) + &c(4);
        assert_eq!(p.scale(&q("1/2")), &x(1) + &c(2));
        assert_eq!(p.scale(&Scalar::one()), p);
        assert_eq!(p.scale(&Scalar::zero()), Polynomial::zero());
        let half = &x(1) - &Polynomial::constant(q("1/2"));
        assert_eq!(half.scale(&q("2")), &x(1).scale(&q("2")) - &c(1));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&(&x(1) + &c(1)) * &(&x(1) - &c(1)), &(&x(1) * &x(1)) - &c(1));
        assert_eq!(&x(1) * &Polynomial::zero(), Polynomial::zero());
        let s = &x(1) + &x(2);
        let expect = &(&(&x(1) * &x(1)) + &(&x(1) * &x(2)).scale(&q("2"))) + &(&x(2) * &x(2));
        assert_eq!(&s * &s, expect);
    }

    #[test]
    fn mul_var_examples() {
        let v = VarId::x(1);
        assert_eq!((&x(1) + &c(1)).mul_var(v), &(&x(1) * &x(1)) + &x(1));
        assert_eq!(Polynomial::zero().mul_var(v), Polynomial::zero());
        assert_eq!(y(1).scale(&q("2")).mul_var(v), (&x(1) * &y(1)).scale(&q("2")));
    }

    #[test]
    fn substitute_examples() {
        let sq = &y(1) * &y(1);
        let b = BTreeMap::from([(VarId::y(1), x(1).scale(&q("3")))]);
        assert_eq!(sq.substitute(&b), (&x(1) * &x(1)).scale(&q("9")));
        assert_eq!(sq.substitute(&BTreeMap::new()), sq);
        let p = &y(1) - &x(1);
        let b = BTreeMap::from([(VarId::y(1), y(1).scale(&q("2")))]);
        assert_eq!(p.substitute(&b), &y(1).scale(&q("2")) - &x(1));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let p = &x(1) - &x(2);
        let b = BTreeMap::from([(VarId::x(1), x(2)), (VarId::x(2), x(1))]);
        assert_eq!(p.substitute(&b), &x(2) - &x(1));
    }

    #[test]
    fn evaluate_examples() {
        let g = &(&c(1) + &x(1)) + &x(2).scale(&q("2"));
        let pt = BTreeMap::from([(VarId::x(1), q("0")), (VarId::x(2), q("1"))]);
        assert_eq!(g.evaluate(&pt).unwrap(), q("3"));
        let f = &(&x(1) * &x(1)) - &x(1);
        assert_eq!(f.evaluate(&BTreeMap::from([(VarId::x(1), q("1"))])).unwrap(), q("0"));
        assert_eq!(f.evaluate(&BTreeMap::from([(VarId::x(1), q("1/2"))])).unwrap(), q("-1/4"));
        assert_eq!(
            f.evaluate(&BTreeMap::new()),
            Err(PolyError::UnboundVariable(VarId::x(1)))
        );
    }

    #[test]
    fn size_examples() {
        assert_eq!((&x(1).scale(&q("3")) + &c(5)).size_paper(), 5);
        assert_eq!(c(1).size_paper(), 0);
        assert_eq!((&x(1).scale(&q("1/2")) + &c(3)).size_paper(), 3);
        assert_eq!(Polynomial::zero().size_paper(), 0);
    }

    #[test]
    fn denominator_product_examples() {
        let p = &x(1).scale(&q("1/2")) + &x(2).scale(&q("1/3"));
        assert_eq!(p.denominator_product(), 6.into());
        assert_eq!((&(&x(1) * &x(1)) - &x(1)).denominator_product(), 1.into());
        let p = &x(1).scale(&q("1/2")) + &x(2).scale(&q("1/2"));
        assert_eq!(p.denominator_product(), 4.into());
        assert_eq!(p.denominator_lcm(), 2.into());
    }

    #[test]
    fn degree_and_constants() {
        assert_eq!(Polynomial::zero().degree(), -1);
        assert_eq!(c(7).degree(), 0);
        assert_eq!((&(&x(1) * &y(2)) + &x(3)).degree(), 2);
        assert_eq!(c(7).as_constant(), Some(q("7")));
        assert_eq!(Polynomial::zero().as_constant(), Some(Scalar::zero()));
        assert_eq!(x(1).as_constant(), None);
    }

    #[test]
    fn json_encoding() {
        let p = &(&(&x(1) * &x(1)).scale(&q("2")) - &y(3).scale(&q("1/2"))) + &c(1);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"coef":"2","mono":{"x1":2}},{"coef":"-1/2","mono":{"y3":1}},{"coef":"1","mono":{}}]}"#
        );
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn json_rejects_non_canonical() {
        for bad in [
            r#"{"terms":[{"coef":"0","mono":{}}]}"#,
            r#"{"terms":[{"coef":"1","mono":{"x1":0}}]}"#,
            r#"{"terms":[{"coef":"2/4","mono":{}}]}"#,
            r#"{"terms":[{"coef":"1","mono":{"x1":1}},{"coef":"2","mono":{"x1":1}}]}"#,
            r#"{"terms":[{"coef":"1","mono":{"x1":1,"x1":2}}]}"#,
            r#"{"terms":[{"coef":"1","mono":{"z1":1}}]}"#,
            r#"{"terms":[{"coef":1,"mono":{}}]}"#,
        ] {
            assert!(serde_json::from_str::<Polynomial>(bad).is_err(), "{bad}");
        }
    }
}
