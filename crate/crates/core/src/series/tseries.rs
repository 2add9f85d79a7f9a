use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Exponents, MultiPoly, Var};
use super::SeriesError;

/// A power series in `t`, truncated after `t^order`, whose coefficients are
/// [`MultiPoly`] values. Dense in `t`, sparse in `(u, v, z, x)`.
///
/// Binary operations on series of different orders truncate to the smaller
/// order; the result's [`order`](TSeries::order) records that.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

/// `(t-order, monomial, left coefficient, right coefficient)` of the first
/// place two series disagree.
pub type Discrepancy = (usize, Exponents, BigInt, BigInt);

impl TSeries {
    pub fn zero(order: usize) -> Self {
        TSeries {
            order,
            coeffs: vec![MultiPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(MultiPoly::one(), order)
    }

    /// The series whose only coefficient is `p` at `t^0`.
    pub fn constant(p: MultiPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// `p * t^k`, or the zero series if `k > order`.
    pub fn monomial(p: MultiPoly, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = p;
        }
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::monomial(MultiPoly::one(), 1, order)
    }

    /// Builds a series from explicit coefficients; missing high orders are
    /// zero and coefficients beyond `order` are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = MultiPoly>) -> Self {
        let mut s = Self::zero(order);
        for (n, c) in coeffs.into_iter().enumerate().take(order + 1) {
            s.coeffs[n] = c;
        }
        s
    }

    /// A polynomial in `t` given by `(power, coefficient)` pairs.
    pub fn from_terms<I>(order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, MultiPoly)>,
    {
        let mut s = Self::zero(order);
        for (n, c) in terms {
            if n <= order {
                s.coeffs[n] += &c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MultiPoly::is_zero)
    }

    pub fn coefficient(&self, n: usize) -> Result<&MultiPoly, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::OutOfTruncation {
            requested: n,
            order: self.order,
        })
    }

    /// Coefficient of `t^n u^eu v^ev z^ez x^ex`, given as `[n, eu, ev, ez, ex]`.
    pub fn monomial_coefficient(&self, exp: [u32; 5]) -> Result<BigInt, SeriesError> {
        let p = self.coefficient(exp[0] as usize)?;
        Ok(p.coeff(&[exp[1], exp[2], exp[3], exp[4]]))
    }

    /// Lowest `n` with a nonzero `t^n` coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate_order(&self, order: usize) -> TSeries {
        let order = order.min(self.order);
        TSeries {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Apply `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> TSeries {
        TSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Drop every monomial whose `v`-exponent exceeds `max`.
    pub fn truncate_var(&self, v: Var, max: u32) -> TSeries {
        self.map_coeffs(|c| c.truncate_degree(v, max))
    }

    pub fn scale(&self, c: &BigInt) -> TSeries {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> TSeries {
        self.map_coeffs(|c| c * p)
    }

    /// Multiply by `t^k`.
    pub fn mul_t(&self, k: usize) -> TSeries {
        let mut out = TSeries::zero(self.order);
        for n in k..=self.order {
            out.coeffs[n] = self.coeffs[n - k].clone();
        }
        out
    }

    pub fn pow(&self, n: u32) -> TSeries {
        let mut acc = TSeries::one(self.order);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`.
    ///
    /// The constant term of `divisor` need not be a unit: each coefficient of
    /// the quotient is obtained by exact polynomial division, and any nonzero
    /// remainder is reported as [`SeriesError::DivisionImpossible`].
    pub fn div(&self, divisor: &TSeries) -> Result<TSeries, SeriesError> {
        let order = self.order.min(divisor.order);
        let lead = &divisor.coeffs[0];
        if lead.is_zero() {
            return Err(SeriesError::DivisionImpossible { t_order: 0 });
        }
        let unit = lead.as_constant().filter(|c| c.is_one() || (-c).is_one());
        let support: Vec<usize> = (1..=order).filter(|&i| !divisor.coeffs[i].is_zero()).collect();
        let mut out = TSeries::zero(order);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for &i in support.iter().take_while(|&&i| i <= n) {
                let q = &out.coeffs[n - i];
                if !q.is_zero() {
                    acc -= &(&divisor.coeffs[i] * q);
                }
            }
            out.coeffs[n] = match &unit {
                Some(c) if c.is_one() => acc,
                Some(_) => -acc,
                None => acc
                    .div_exact(lead)
                    .ok_or(SeriesError::DivisionImpossible { t_order: n })?,
            };
        }
        Ok(out)
    }

    /// Multiplicative inverse; requires the `t^0` coefficient to be `1` or `-1`.
    pub fn invert(&self) -> Result<TSeries, SeriesError> {
        match self.coeffs[0].as_constant() {
            Some(c) if c.is_one() || (-&c).is_one() => TSeries::one(self.order).div(self),
            _ => Err(SeriesError::NotInvertible),
        }
    }

    /// `self(s(t))`, truncated. `s` must have zero constant term.
    pub fn compose_t(&self, s: &TSeries) -> Result<TSeries, SeriesError> {
        if !s.coeffs[0].is_zero() {
            return Err(SeriesError::InvalidComposition);
        }
        let order = self.order.min(s.order);
        let s = s.truncate_order(order);
        let mut acc = TSeries::constant(self.coeffs[order].clone(), order);
        for n in (0..order).rev() {
            acc = &acc * &s;
            acc.coeffs[0] += &self.coeffs[n];
        }
        Ok(acc)
    }

    /// Each monomial `u^a v^b` becomes `u^a v^{a+b}`.
    pub fn subst_u_to_uv(&self) -> TSeries {
        self.map_coeffs(MultiPoly::subst_u_to_uv)
    }

    /// Substitute integer values for some of the variables.
    pub fn specialize(&self, assignments: &[(Var, BigInt)]) -> TSeries {
        self.map_coeffs(|c| {
            assignments
                .iter()
                .fold(c.clone(), |acc, (v, val)| acc.specialize(*v, val))
        })
    }

    /// Convenience for specializing with small integers.
    pub fn specialize_i64(&self, assignments: &[(Var, i64)]) -> TSeries {
        let a: Vec<(Var, BigInt)> = assignments.iter().map(|(v, k)| (*v, BigInt::from(*k))).collect();
        self.specialize(&a)
    }

    /// Substitute the series `s` for the variable `v`.
    pub fn substitute_var(&self, v: Var, s: &TSeries) -> TSeries {
        let order = self.order.min(s.order);
        let max_deg = self
            .coeffs
            .iter()
            .filter_map(|c| c.degree(v))
            .max()
            .unwrap_or(0);
        let mut powers = vec![TSeries::one(order)];
        for k in 1..=max_deg as usize {
            let next = &powers[k - 1] * s;
            powers.push(next);
        }
        let mut out = TSeries::zero(order);
        for n in 0..=order {
            for (e, c) in self.coeffs[n].terms() {
                let mut rest = *e;
                let k = rest[v.index()] as usize;
                rest[v.index()] = 0;
                let mono = MultiPoly::term(rest, c.clone());
                for m in 0..=(order - n) {
                    let pc = &powers[k].coeffs[m];
                    if !pc.is_zero() {
                        out.coeffs[n + m] += &(pc * &mono);
                    }
                }
            }
        }
        out
    }

    /// The coefficient of `v^k`, as a series in the remaining variables.
    pub fn coefficient_of(&self, v: Var, k: u32) -> TSeries {
        self.map_coeffs(|c| c.coefficient_of(v, k))
    }

    /// Whether every coefficient is a constant (no `u, v, z, x`).
    pub fn is_scalar(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_constant().is_some())
    }

    /// Constant coefficients, or `None` if any variable remains.
    pub fn scalar_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(MultiPoly::as_constant).collect()
    }

    /// First disagreement with `other` over the common truncation order,
    /// scanning `t`-orders upward and monomials in lexicographic order.
    pub fn first_difference(&self, other: &TSeries) -> Option<Discrepancy> {
        let order = self.order.min(other.order);
        for n in 0..=order {
            let a = &self.coeffs[n];
            let b = &other.coeffs[n];
            if a == b {
                continue;
            }
            let diff = a - b;
            let (e, _) = diff.terms().next().expect("unequal polynomials differ somewhere");
            return Some((n, *e, a.coeff(e), b.coeff(e)));
        }
        None
    }

    pub fn to_json_value(&self) -> SeriesJson {
        let mut terms = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            for (e, k) in c.terms() {
                terms.push(TermJson {
                    exp: [n as u32, e[0], e[1], e[2], e[3]],
                    coeff: k.to_string(),
                });
            }
        }
        SeriesJson {
            order: self.order,
            vars: ["t", "u", "v", "z", "x"].iter().map(|s| s.to_string()).collect(),
            terms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("series JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<TSeries, SeriesError> {
        let raw: SeriesJson = serde_json::from_str(text).map_err(|e| SeriesError::Parse(e.to_string()))?;
        if raw.vars != ["t", "u", "v", "z", "x"] {
            return Err(SeriesError::Parse(format!("unexpected variable list {:?}", raw.vars)));
        }
        let mut s = TSeries::zero(raw.order);
        for term in raw.terms {
            let n = term.exp[0] as usize;
            if n > raw.order {
                return Err(SeriesError::Parse(format!("term t^{n} beyond order {}", raw.order)));
            }
            let c: BigInt = term
                .coeff
                .parse()
                .map_err(|_| SeriesError::Parse(format!("bad coefficient {:?}", term.coeff)))?;
            s.coeffs[n].add_term([term.exp[1], term.exp[2], term.exp[3], term.exp[4]], &c);
        }
        Ok(s)
    }
}

/// Wire form of a [`TSeries`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: [u32; 5],
    pub coeff: String,
}

impl Add for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        TSeries {
            order,
            coeffs: (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect(),
        }
    }
}

impl Sub for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        TSeries {
            order,
            coeffs: (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect(),
        }
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &TSeries) -> TSeries {
        let order = self.order.min(rhs.order);
        let mut out = TSeries::zero(order);
        let lhs_support: Vec<usize> = (0..=order).filter(|&i| !self.coeffs[i].is_zero()).collect();
        for n in 0..=order {
            let mut acc = MultiPoly::zero();
            for &i in lhs_support.iter().take_while(|&&i| i <= n) {
                let b = &rhs.coeffs[n - i];
                if !b.is_zero() {
                    acc += &(&self.coeffs[i] * b);
                }
            }
            out.coeffs[n] = acc;
        }
        out
    }
}

macro_rules! forward_owned {
    ($Op:ident, $op:ident) => {
        impl $Op for TSeries {
            type Output = TSeries;
            fn $op(self, rhs: TSeries) -> TSeries {
                (&self).$op(&rhs)
            }
        }
        impl $Op<&TSeries> for TSeries {
            type Output = TSeries;
            fn $op(self, rhs: &TSeries) -> TSeries {
                (&self).$op(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{n}")?,
            }
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order + 1)
    }
}

impl Zero for TSeries {
    /// Order-0 zero; prefer [`TSeries::zero`] with an explicit order.
    fn zero() -> Self {
        TSeries::zero(0)
    }
    fn is_zero(&self) -> bool {
        TSeries::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse_series;

    fn s(text: &str, order: usize) -> TSeries {
        parse_series(text, order).unwrap()
    }

    #[test]
    fn geometric_identity() {
        let n = 10;
        let geo = TSeries::from_coeffs(n, (0..=n).map(|_| MultiPoly::one()));
        let prod = &s("1 - t", n) * &geo;
        assert_eq!(prod, TSeries::one(n));
    }

    #[test]
    fn multiply_by_zero() {
        let a = s("1 + u t + z t^3", 6);
        assert!((&a * &TSeries::zero(6)).is_zero());
    }

    #[test]
    fn kernel_factor_product_t1() {
        let a = s("1 + t(u-1)", 5);
        let b = s("1 + z t (u-1)", 5);
        let c = &a * &b;
        let expected = crate::series::parse_poly("(u-1)(1+z)").unwrap();
        assert_eq!(c.coefficient(1).unwrap(), &expected);
    }

    #[test]
    fn inverses() {
        let n = 8;
        let inv = s("1 - z t", n).invert().unwrap();
        for k in 0..=n {
            assert_eq!(
                inv.coefficient(k).unwrap(),
                &MultiPoly::term([0, 0, k as u32, 0], 1)
            );
        }
        let g1 = s("1 + z t (u - 1)", n).invert().unwrap();
        assert_eq!(g1.coefficient(1).unwrap(), &crate::series::parse_poly("-z(u-1)").unwrap());
        let alt = s("1 + t", n).invert().unwrap();
        for k in 0..=n {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(alt.coefficient(k).unwrap(), &MultiPoly::constant(sign));
        }
        assert_eq!(s("2 + t", n).invert(), Err(SeriesError::NotInvertible));
        assert_eq!(s("u + t", n).invert(), Err(SeriesError::NotInvertible));
    }

    #[test]
    fn division_by_non_unit_lead() {
        let n = 6;
        let d = s("v - 1 + t v (u - 1)", n);
        let q = s("1 + u t + v z t^2 + 3 t^5", n);
        let prod = &q * &d;
        assert_eq!(prod.div(&d).unwrap(), q);
        let bad = &prod + &s("t^3", n);
        assert_eq!(bad.div(&d), Err(SeriesError::DivisionImpossible { t_order: 3 }));
    }

    #[test]
    fn composition() {
        let n = 9;
        let geo = s("1 - t", n).invert().unwrap();
        let sub = &TSeries::t(n) * &s("1 + t", n).invert().unwrap();
        assert_eq!(geo.compose_t(&sub).unwrap(), s("1 + t", n));
        let a = s("1 + 2u t + z t^4", n);
        assert_eq!(a.compose_t(&TSeries::t(n)).unwrap(), a);
        assert_eq!(a.compose_t(&s("1 + t", n)), Err(SeriesError::InvalidComposition));
    }

    #[test]
    fn u_to_uv() {
        assert_eq!(s("u t", 3).subst_u_to_uv(), s("u v t", 3));
        assert_eq!(s("7 + z", 3).subst_u_to_uv(), s("7 + z", 3));
        assert_eq!(s("(u^2 + u v) t^3", 3).subst_u_to_uv(), s("(u^2 v^2 + u v^2) t^3", 3));
    }

    #[test]
    fn specialization() {
        let a = s("(6z + 4z^2 + z^3) t^3", 4);
        let at1 = a.specialize_i64(&[(Var::Z, 1)]);
        assert_eq!(at1.monomial_coefficient([3, 0, 0, 0, 0]).unwrap(), BigInt::from(11));
        assert_eq!(a.specialize(&[]), a);
    }

    #[test]
    fn coefficient_bounds() {
        let a = s("1 + t", 3);
        assert_eq!(a.coefficient(0).unwrap(), &MultiPoly::one());
        assert_eq!(
            a.coefficient(4),
            Err(SeriesError::OutOfTruncation { requested: 4, order: 3 })
        );
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = s("1 + t + t^5", 5);
        let b = s("1 + t", 2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!((&a * &b).order(), 2);
    }

    #[test]
    fn json_roundtrip_and_layout() {
        let a = s("1 - 3 u v t + 12345678901234567890123 z^2 x t^2", 2);
        let text = a.to_json();
        assert!(text.starts_with(r#"{"order":2,"vars":["t","u","v","z","x"],"terms":[{"exp":[0,0,0,0,0],"coeff":"1"}"#));
        assert!(text.contains(r#""coeff":"12345678901234567890123""#));
        assert_eq!(TSeries::from_json(&text).unwrap(), a);
    }

    #[test]
    fn substitute_series_for_variable() {
        // u -> u / (1 + t(u-1)) then times (1 + t(u-1)) maps u to u.
        let n = 6;
        let d1 = s("1 + t(u - 1)", n);
        let image = &TSeries::constant(MultiPoly::var(Var::U), n) * &d1.invert().unwrap();
        let back = &s("u", n).substitute_var(Var::U, &image) * &d1;
        assert_eq!(back, s("u", n));
    }

    #[test]
    fn first_difference_localizes() {
        let a = s("1 + (u + z) t + t^2", 3);
        let b = s("1 + (u + 2z) t + t^2", 3);
        let d = a.first_difference(&b).unwrap();
        assert_eq!(d, (1, [0, 0, 1, 0], BigInt::from(1), BigInt::from(2)));
        assert_eq!(a.first_difference(&a), None);
    }
}
