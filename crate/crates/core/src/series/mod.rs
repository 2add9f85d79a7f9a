//! Exact truncated power series in `t` over `Z[u, v, z, x]`.

mod parse;
mod poly;
mod tseries;

pub use parse::{parse_poly, parse_series};
pub use poly::{Exponents, MultiPoly, Var};
pub use tseries::{Discrepancy, SeriesJson, TSeries, TermJson};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series is not invertible: constant term is not 1 or -1")]
    NotInvertible,
    #[error("inner series of a composition must have zero constant term")]
    InvalidComposition,
    #[error("coefficient t^{requested} requested from a series truncated at t^{order}")]
    OutOfTruncation { requested: usize, order: usize },
    #[error("exact division failed at t^{t_order}")]
    DivisionImpossible { t_order: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    const ORDER: usize = 5;

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3, 0u32..2), -4i64..5), 0..4).prop_map(|terms| {
            let mut p = MultiPoly::zero();
            for ((a, b, c, d), k) in terms {
                p += &MultiPoly::term([a, b, c, d], k);
            }
            p
        })
    }

    fn small_series() -> impl Strategy<Value = TSeries> {
        prop::collection::vec(small_poly(), ORDER + 1).prop_map(|cs| TSeries::from_coeffs(ORDER, cs))
    }

    fn unit_series() -> impl Strategy<Value = TSeries> {
        (small_series(), prop::bool::ANY).prop_map(|(s, neg)| {
            let mut cs = s.coeffs().to_vec();
            cs[0] = MultiPoly::constant(if neg { -1 } else { 1 });
            TSeries::from_coeffs(ORDER, cs)
        })
    }

    fn valuation_one() -> impl Strategy<Value = TSeries> {
        small_series().prop_map(|s| {
            let mut cs = s.coeffs().to_vec();
            cs[0] = MultiPoly::zero();
            TSeries::from_coeffs(ORDER, cs)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn mul_associative(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn mul_distributes(a in small_series(), b in small_series(), c in small_series()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn inverse_is_two_sided(a in unit_series()) {
            let inv = a.invert().unwrap();
            prop_assert_eq!(&a * &inv, TSeries::one(ORDER));
            prop_assert_eq!(&inv * &a, TSeries::one(ORDER));
        }

        #[test]
        fn valuation_one_substitutions_invert(a in small_series()) {
            let t = TSeries::t(ORDER);
            let fwd = &t * &parse_series("1 - t", ORDER).unwrap().invert().unwrap();
            let back = &t * &parse_series("1 + t", ORDER).unwrap().invert().unwrap();
            let there = a.compose_t(&fwd).unwrap();
            prop_assert_eq!(there.compose_t(&back).unwrap(), a);
        }

        #[test]
        fn compose_is_ring_map(a in small_series(), b in small_series(), s in valuation_one()) {
            let lhs = (&a * &b).compose_t(&s).unwrap();
            let rhs = &a.compose_t(&s).unwrap() * &b.compose_t(&s).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn uv_then_v1_is_identity(a in small_series()) {
            let back = a.subst_u_to_uv().specialize_i64(&[(Var::V, 1)]);
            prop_assert_eq!(back, a.specialize_i64(&[(Var::V, 1)]));
        }

        #[test]
        fn json_roundtrip(a in small_series()) {
            prop_assert_eq!(TSeries::from_json(&a.to_json()).unwrap(), a);
        }
    }
}
