//! Closed-form generating functions for p-ascent sequences, evaluated as
//! truncated series.
//!
//! Sums over `k` whose `k`-th summand carries a factor `u^k` are cut at a
//! `u`-degree bound `D` and every intermediate is reduced modulo `u^{D+1}`;
//! monomials with `u`-exponent at most `D` are then exact. Sums whose `n`-th
//! summand has `t`-valuation at least `n` are cut at the truncation order.
//!
//! Notation for the kernel families (`k >= 1`, with `δ_0 = γ_0 = 1`):
//!
//! ```text
//! δ_k = u - (1-t)^k (u-1)
//! γ_k = u - (1-zt)(1-t)^{k-1} (u-1)
//! ```
//!
//! and the barred versions substitute `u -> uv`.

use num_bigint::BigInt;
use num_traits::One;

use crate::series::{MultiPoly, SeriesError, TSeries, Var};

/// `C(n, k)` by the multiplicative recurrence.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Delta,
    Gamma,
    DeltaBar,
    GammaBar,
}

/// One member of the δ / γ families, realized as a series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelFamily {
    pub kind: KernelKind,
    pub index: u32,
    pub realized: TSeries,
}

impl KernelFamily {
    pub fn new(kind: KernelKind, index: u32, order: usize) -> Self {
        let realized = match kind {
            KernelKind::Delta => delta(index, order),
            KernelKind::Gamma => gamma(index, order),
            KernelKind::DeltaBar => delta_bar(index, order),
            KernelKind::GammaBar => gamma_bar(index, order),
        };
        KernelFamily { kind, index, realized }
    }
}

fn u_poly() -> MultiPoly {
    MultiPoly::var(Var::U)
}

fn z_poly() -> MultiPoly {
    MultiPoly::var(Var::Z)
}

/// `(1 - t)^k` as a series.
pub fn one_minus_t_pow(k: u32, order: usize) -> TSeries {
    TSeries::from_terms(
        order,
        (0..=k).map(|i| {
            let c = binomial(k as u64, i as u64);
            let c = if i % 2 == 0 { c } else { -c };
            (i as usize, MultiPoly::constant(c))
        }),
    )
}

/// `1 - zt`.
fn one_minus_zt(order: usize) -> TSeries {
    TSeries::from_terms(order, [(0, MultiPoly::one()), (1, -z_poly())])
}

pub fn delta(k: u32, order: usize) -> TSeries {
    if k == 0 {
        return TSeries::one(order);
    }
    let um1 = &u_poly() - &MultiPoly::one();
    let tail = one_minus_t_pow(k, order).mul_poly(&um1);
    &TSeries::constant(u_poly(), order) - &tail
}

pub fn gamma(k: u32, order: usize) -> TSeries {
    if k == 0 {
        return TSeries::one(order);
    }
    let um1 = &u_poly() - &MultiPoly::one();
    let tail = (&one_minus_zt(order) * &one_minus_t_pow(k - 1, order)).mul_poly(&um1);
    &TSeries::constant(u_poly(), order) - &tail
}

pub fn delta_bar(k: u32, order: usize) -> TSeries {
    delta(k, order).subst_u_to_uv()
}

pub fn gamma_bar(k: u32, order: usize) -> TSeries {
    gamma(k, order).subst_u_to_uv()
}

fn cap(s: TSeries, udeg: u32) -> TSeries {
    s.truncate_var(Var::U, udeg)
}

fn must(r: Result<TSeries, SeriesError>) -> TSeries {
    r.expect("divisor has unit constant term")
}

/// `Σ_{k=1}^{D} u^k (δ_{k-1}^p - δ_k^p) / (γ_1⋯γ_k δ_{k-1}^p δ_k^p)`,
/// reduced modulo `u^{D+1}`.
///
/// Written as `u^k/(γ_1⋯γ_k) · (1/δ_k^p - 1/δ_{k-1}^p)` so every division is
/// by a polynomial in `t` with constant term 1.
pub fn kernel_sum(p: u32, order: usize, udeg: u32) -> TSeries {
    let u = TSeries::constant(u_poly(), order);
    let mut total = TSeries::zero(order);
    let mut q = TSeries::one(order);
    let mut prev_pow = TSeries::one(order);
    for k in 1..=udeg {
        q = cap(must((&q * &u).div(&gamma(k, order))), udeg);
        let cur_pow = delta(k, order).pow(p);
        let a = must(q.div(&cur_pow));
        let b = must(q.div(&prev_pow));
        total = cap(&total + &(&a - &b), udeg);
        prev_pow = cur_pow;
    }
    total
}

/// `G_1^{(p)}(t, u, 1, z)`: sequences `0 a_2 …` with `a_2 ≠ 0`, by length,
/// ascents, and zeros. Exact for `u`-exponents up to `udeg`.
pub fn eval_g1_u(p: u32, order: usize, udeg: u32) -> TSeries {
    let tz = TSeries::monomial(z_poly(), 1, order);
    cap(&tz * &kernel_sum(p, order, udeg), udeg)
}

/// `vδ_1 - 1 = (v - 1) + t v (u - 1)`.
pub fn kernel_denominator(order: usize) -> TSeries {
    let v = MultiPoly::var(Var::V);
    let um1 = &u_poly() - &MultiPoly::one();
    TSeries::from_terms(order, [(0, &v - &MultiPoly::one()), (1, &v * &um1)])
}

/// `G_1^{(p)}(t, u, v, z)`, additionally tracking the last letter.
///
/// The three-term numerator is assembled first and then divided by
/// `vδ_1 - 1`, whose constant term `v - 1` is not a unit; each coefficient is
/// recovered by exact division, which fails loudly if the numerator is not
/// divisible.
pub fn eval_g1_full(p: u32, order: usize) -> Result<TSeries, SeriesError> {
    let udeg = order as u32;
    let v = MultiPoly::var(Var::V);
    let z = z_poly();
    let u = u_poly();
    let s = kernel_sum(p, order, udeg);
    let s_bar = s.subst_u_to_uv();

    // t u v (v^p - 1)
    let first = TSeries::monomial(&(&u * &v) * &(&v.pow(p) - &MultiPoly::one()), 1, order);
    // t (z(v-1) - v) S
    let second_factor = &(&z * &(&v - &MultiPoly::one())) - &v;
    let second = s.mul_t(1).mul_poly(&second_factor);
    // t u v^{p+1} S̄
    let third = s_bar.mul_t(1).mul_poly(&(&u * &v.pow(p + 1)));

    let numerator = cap(&(&first + &second) + &third, udeg);
    let quotient = numerator.div(&kernel_denominator(order))?;
    let tz = TSeries::monomial(z, 1, order);
    Ok(cap(&tz * &quotient, udeg))
}

/// `G_r^{(p)} = (tz)^{r-1} G_1^{(p)}`.
pub fn eval_gr(p: u32, r: u32, order: usize) -> Result<TSeries, SeriesError> {
    assert!(r >= 1, "run length r must be at least 1");
    let g1 = eval_g1_full(p, order)?;
    let shift = TSeries::monomial(z_poly().pow(r - 1), (r - 1) as usize, order);
    Ok(&shift * &g1)
}

/// The five-variable `G^{(p)}(t,u,v,z,x) = 1/(1-tz) + x/(1-tzx) · G_1^{(p)}`.
pub fn eval_g(p: u32, order: usize) -> Result<TSeries, SeriesError> {
    let g1 = eval_g1_full(p, order)?;
    let x = MultiPoly::var(Var::X);
    let zeros_only = must(one_minus_zt(order).invert());
    let tzx = TSeries::from_terms(order, [(0, MultiPoly::one()), (1, -(&z_poly() * &x))]);
    let with_run = must(g1.mul_poly(&x).div(&tzx));
    Ok(&zeros_only + &with_run)
}

/// `H^{(p)}(t, u, 1, z)`: nonempty sequences by length, ascents, and zeros.
/// Exact for `u`-exponents up to `udeg`.
pub fn eval_h(p: u32, order: usize, udeg: u32) -> TSeries {
    let one_minus_u = &MultiPoly::one() - &u_poly();
    let ztu = TSeries::monomial(&z_poly() * &one_minus_u, 1, order);
    let step = one_minus_t_pow(1, order).mul_poly(&u_poly());
    // w = u^n (1-t)^n / (γ_1 ⋯ γ_{n+1})
    let mut w = must(TSeries::one(order).div(&gamma(1, order)));
    let mut total = TSeries::zero(order);
    for n in 0..=udeg {
        if n > 0 {
            w = cap(must((&w * &step).div(&gamma(n + 1, order))), udeg);
        }
        let term = if n == 0 {
            w.clone()
        } else {
            must(w.div(&delta(n, order).pow(p)))
        };
        total = cap(&total + &(&ztu * &term), udeg);
    }
    total
}

/// `Π_{i=1}^{n} (1 - (1-t)^i)` for `n = 0..=order`, as a list.
fn fishburn_products(order: usize) -> Vec<TSeries> {
    let mut out = vec![TSeries::one(order)];
    for i in 1..=order {
        let factor = &TSeries::one(order) - &one_minus_t_pow(i as u32, order);
        let next = &out[i - 1] * &factor;
        out.push(next);
    }
    out
}

/// `A^{(p)}(t, z)`: all p-ascent sequences by length and number of zeros.
pub fn eval_a(p: u32, order: usize) -> TSeries {
    let zt = TSeries::monomial(z_poly(), 1, order);
    let base = one_minus_zt(order);
    let products = fishburn_products(order);
    let mut total = TSeries::one(order);
    let mut scaled = zt.clone();
    for (n, prod) in products.iter().enumerate() {
        // scaled = zt / (1 - zt)^{n+1}
        scaled = must(scaled.div(&base));
        let c = binomial(p as u64 - 1 + n as u64, n as u64);
        total = &total + &(&scaled * prod).scale(&c);
    }
    total
}

/// The Fishburn generating function `Σ_n Π_{i=1}^n (1 - (1-t)^i)`.
pub fn eval_p(order: usize) -> TSeries {
    fishburn_products(order)
        .iter()
        .fold(TSeries::zero(order), |acc, s| &acc + s)
}

/// `R^{(p)}(t)`: primitive p-ascent sequences (no two equal adjacent letters).
pub fn eval_r(p: u32, order: usize) -> TSeries {
    let inv = must(TSeries::from_terms(order, [(0, MultiPoly::one()), (1, MultiPoly::one())]).invert());
    let one_plus_t = TSeries::from_terms(order, [(0, MultiPoly::one()), (1, MultiPoly::one())]);
    let mut total = TSeries::zero(order);
    let mut prod = TSeries::one(order);
    let mut inv_pow = TSeries::one(order);
    for n in 0..=order {
        if n > 0 {
            inv_pow = &inv_pow * &inv;
            let factor = &one_plus_t * &(&TSeries::one(order) - &inv_pow);
            prod = &prod * &factor;
        }
        let c = binomial(p as u64 - 1 + n as u64, n as u64);
        total = &total + &prod.scale(&c);
    }
    &TSeries::one(order) + &total.mul_t(1)
}

/// p-ascent sequences in which no letter repeats more than `k` times in a row.
pub fn eval_maxk(p: u32, k: u32, order: usize) -> TSeries {
    assert!(k >= 1, "repetition bound k must be at least 1");
    let inner = TSeries::from_terms(order, (1..=k as usize).map(|i| (i, MultiPoly::one())));
    eval_r(p, order)
        .compose_t(&inner)
        .expect("inner series has zero constant term")
}

/// Both sides of the ψ identity for a given `m`:
///
/// ```text
/// Σ_{k≥0} (u-1)^{m+1}(1-zt)^{m+1} u^k (1-t)^{k(m+1)} / Π_{i=1}^{k+1} γ_i
///   = -Σ_{j=0}^{m} (u-1)^j (1-zt)^j u^{m-j} Π_{i=j+1}^{m} (1 - (1-t)^i)
/// ```
///
/// The left side is cut at `k = udeg` and reduced modulo `u^{udeg+1}`.
pub fn psi(m: u32, order: usize, udeg: u32) -> (TSeries, TSeries) {
    let um1 = &u_poly() - &MultiPoly::one();
    let base = one_minus_zt(order);
    let prefactor = base.pow(m + 1).mul_poly(&um1.pow(m + 1));
    let step = one_minus_t_pow(m + 1, order).mul_poly(&u_poly());
    let mut w = must(TSeries::one(order).div(&gamma(1, order)));
    let mut lhs = TSeries::zero(order);
    for k in 0..=udeg {
        if k > 0 {
            w = cap(must((&w * &step).div(&gamma(k + 1, order))), udeg);
        }
        lhs = cap(&lhs + &w, udeg);
    }
    let lhs = cap(&lhs * &prefactor, udeg);

    let mut rhs = TSeries::zero(order);
    for j in 0..=m {
        // Π_{i=j+1}^{m} (1 - (1-t)^i)
        let mut tail = TSeries::one(order);
        for i in j + 1..=m {
            tail = &tail * &(&TSeries::one(order) - &one_minus_t_pow(i, order));
        }
        let coeff = &um1.pow(j) * &u_poly().pow(m - j);
        rhs = &rhs + &(&base.pow(j) * &tail).mul_poly(&coeff);
    }
    (lhs, cap(-&rhs, udeg))
}

/// Right-hand side of the zeros identity for ordinary ascent sequences:
/// `1 + Σ_{m≥1} Π_{i=1}^m (1 - (1-t)^{i-1}(1-zt))`.
pub fn eval_a1_product_form(order: usize) -> TSeries {
    let base = one_minus_zt(order);
    let mut total = TSeries::one(order);
    let mut prod = TSeries::one(order);
    for m in 1..=order as u32 {
        let factor = &TSeries::one(order) - &(&one_minus_t_pow(m - 1, order) * &base);
        prod = &prod * &factor;
        total = &total + &prod;
    }
    total
}
