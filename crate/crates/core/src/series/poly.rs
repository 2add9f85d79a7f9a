//! Sparse multivariate polynomials in `(u, v, z, x)` over the integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The four coefficient variables. `t` is the series variable and lives in
/// [`TSeries`](super::TSeries).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    V,
    Z,
    X,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::U, Var::V, Var::Z, Var::X];

    pub fn index(self) -> usize {
        match self {
            Var::U => 0,
            Var::V => 1,
            Var::Z => 2,
            Var::X => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::Z => "z",
            Var::X => "x",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "u" => Some(Var::U),
            "v" => Some(Var::V),
            "z" => Some(Var::Z),
            "x" => Some(Var::X),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector `(e_u, e_v, e_z, e_x)`.
pub type Exponents = [u32; 4];

/// An exact polynomial in `u, v, z, x` with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored, so structural equality
/// is mathematical equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term([0; 4], c)
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Self::term(e, 1)
    }

    pub fn term(exp: Exponents, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial; `None` if any variable occurs.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vector.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponents) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    /// Smallest exponent of `v` among the terms.
    pub fn valuation(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).min()
    }

    pub(crate) fn add_term(&mut self, exp: Exponents, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by the monomial with exponent vector `exp`.
    pub fn shift(&self, exp: &Exponents) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (add_exp(e, exp), k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
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

    /// Drop every term whose `v`-exponent exceeds `max`. This is the quotient
    /// map onto `Z[u,v,z,x] / (v^{max+1})`, hence a ring homomorphism.
    pub fn truncate_degree(&self, v: Var, max: u32) -> MultiPoly {
        let i = v.index();
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] <= max)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Each monomial `u^a v^b` becomes `u^a v^{a+b}`.
    pub fn subst_u_to_uv(&self) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| ([e[0], e[0] + e[1], e[2], e[3]], c.clone()))
                .collect(),
        }
    }

    /// Substitute the integer `value` for the variable `v`.
    pub fn specialize(&self, v: Var, value: &BigInt) -> MultiPoly {
        let i = v.index();
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] = 0;
            let k = c * num_traits::pow(value.clone(), e[i] as usize);
            out.add_term(e2, &k);
        }
        out
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, k: u32) -> MultiPoly {
        let i = v.index();
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] == k)
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[i] = 0;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact division. Returns `None` unless `divisor` divides `self` in
    /// `Z[u,v,z,x]`.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lead_exp, lead_coeff) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            let mut out = MultiPoly::zero();
            for (e, k) in &self.terms {
                if !(k % &c).is_zero() {
                    return None;
                }
                out.terms.insert(*e, k / &c);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((re, rc)) = rem.leading() {
            let mut qe = [0u32; 4];
            for i in 0..4 {
                qe[i] = re[i].checked_sub(lead_exp[i])?;
            }
            if !(rc % lead_coeff).is_zero() {
                return None;
            }
            let qc = rc / lead_coeff;
            let step = divisor.shift(&qe).scale(&qc);
            rem -= &step;
            quot.add_term(qe, &qc);
        }
        Some(quot)
    }

    /// Evaluate at integer points for every variable.
    pub fn eval(&self, point: &[BigInt; 4]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..4 {
                if e[i] > 0 {
                    term *= num_traits::pow(point[i].clone(), e[i] as usize);
                }
            }
            acc += term;
        }
        acc
    }
}

pub(crate) fn add_exp(a: &Exponents, b: &Exponents) -> Exponents {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, rhs: MultiPoly) -> MultiPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exp(ea, eb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl fmt::Display for MultiPoly {
    /// Human-readable form, highest exponent vector first, e.g.
    /// `3*u^2*z + 2*u*z^2 + 3*u*z`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            let is_unit = mag.is_one();
            if !is_unit || e.iter().all(|&x| x == 0) {
                factors.push(mag.to_string());
            }
            for v in Var::ALL {
                match e[v.index()] {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    k => factors.push(format!("{}^{}", v.name(), k)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> MultiPoly {
        MultiPoly::var(Var::U)
    }
    fn v() -> MultiPoly {
        MultiPoly::var(Var::V)
    }
    fn z() -> MultiPoly {
        MultiPoly::var(Var::Z)
    }

    #[test]
    fn no_zero_coefficients_are_stored() {
        let p = &u() - &u();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
        assert_eq!(MultiPoly::constant(0), MultiPoly::zero());
    }

    #[test]
    fn product_expands() {
        // (u - 1)(1 + z) = u + uz - 1 - z
        let a = &u() - &MultiPoly::one();
        let b = &MultiPoly::one() + &z();
        let p = &a * &b;
        assert_eq!(p.len(), 4);
        assert_eq!(p.coeff(&[1, 0, 1, 0]), BigInt::from(1));
        assert_eq!(p.coeff(&[0, 0, 1, 0]), BigInt::from(-1));
        assert_eq!(p.coeff(&[0, 0, 0, 0]), BigInt::from(-1));
    }

    #[test]
    fn exact_division_and_failure() {
        let a = &v() - &MultiPoly::one();
        let b = &(&u() * &v()) + &z();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &MultiPoly::one()).div_exact(&a), None);
        assert_eq!(MultiPoly::constant(6).div_exact(&MultiPoly::constant(4)), None);
        assert_eq!(
            MultiPoly::constant(6).div_exact(&MultiPoly::constant(-3)),
            Some(MultiPoly::constant(-2))
        );
    }

    #[test]
    fn u_to_uv_shifts_v_exponent() {
        let p = &u().pow(2) + &(&u() * &v());
        let q = p.subst_u_to_uv();
        assert_eq!(q, &(&u().pow(2) * &v().pow(2)) + &(&u() * &v().pow(2)));
    }

    #[test]
    fn specialize_and_display() {
        let p = &(&z().scale(&BigInt::from(6)) + &z().pow(2).scale(&BigInt::from(4))) + &z().pow(3);
        assert_eq!(p.specialize(Var::Z, &BigInt::from(1)), MultiPoly::constant(11));
        assert_eq!(p.to_string(), "z^3 + 4*z^2 + 6*z");
        assert_eq!((-&u()).to_string(), "-u");
    }
}
