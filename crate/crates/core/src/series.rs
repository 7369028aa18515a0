//! Truncated bivariate power series over the integers, fixed-point solving of
//! tree equations `w_i = t_i f_i(w_1, w_2)`, and the bivariate Lagrange
//! inversion formula
//!
//! ```text
//! [t1^p t2^q] g(w1, w2) = [x1^p x2^q] g f1^p f2^q det(δ_rc - x_c ∂_c f_r / f_r).
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by a series with zero constant term")]
    NotUnit,
    #[error("{0} is not a monomial times a series with nonzero constant term")]
    NotMonomialTimesUnit(&'static str),
    #[error("quotient has a non-integral coefficient at x1^{0} x2^{1}")]
    NonIntegral(usize, usize),
    #[error("series is not divisible by x1^{0} x2^{1}")]
    NotDivisible(usize, usize),
    #[error("substituted series must have zero constant term")]
    NonzeroConstant,
    #[error("truncation ({have1}, {have2}) too small, need ({need1}, {need2})")]
    InsufficientCaps { have1: usize, have2: usize, need1: usize, need2: usize },
    #[error("fixed-point iteration did not settle after {0} rounds")]
    NoConvergence(usize),
}

/// A power series in `x1, x2` known exactly up to degree `cap1` in `x1` and
/// `cap2` in `x2`. Binary operations on series with different caps truncate
/// to the smaller caps.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    cap1: usize,
    cap2: usize,
    coeffs: Vec<BigInt>,
}

impl BivariateSeries {
    pub fn zero(cap1: usize, cap2: usize) -> Self {
        BivariateSeries { cap1, cap2, coeffs: vec![BigInt::zero(); (cap1 + 1) * (cap2 + 1)] }
    }

    pub fn monomial(cap1: usize, cap2: usize, i: usize, j: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(cap1, cap2);
        if i <= cap1 && j <= cap2 {
            *s.at_mut(i, j) = c.into();
        }
        s
    }

    pub fn constant(cap1: usize, cap2: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(cap1, cap2, 0, 0, c)
    }

    pub fn one(cap1: usize, cap2: usize) -> Self {
        Self::constant(cap1, cap2, 1)
    }

    pub fn x1(cap1: usize, cap2: usize) -> Self {
        Self::monomial(cap1, cap2, 1, 0, 1)
    }

    pub fn x2(cap1: usize, cap2: usize) -> Self {
        Self::monomial(cap1, cap2, 0, 1, 1)
    }

    /// Builds a series from a coefficient function.
    pub fn from_fn(cap1: usize, cap2: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut s = Self::zero(cap1, cap2);
        for i in 0..=cap1 {
            for j in 0..=cap2 {
                *s.at_mut(i, j) = f(i, j);
            }
        }
        s
    }

    pub fn caps(&self) -> (usize, usize) {
        (self.cap1, self.cap2)
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.cap2 + 1) + j
    }

    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[self.idx(i, j)]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        let idx = self.idx(i, j);
        &mut self.coeffs[idx]
    }

    /// Coefficient of `x1^i x2^j`, or `None` beyond the truncation.
    pub fn coeff(&self, i: usize, j: usize) -> Option<&BigInt> {
        (i <= self.cap1 && j <= self.cap2).then(|| self.at(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        (0..=self.cap1)
            .flat_map(move |i| (0..=self.cap2).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, self.at(i, j)))
            .filter(|(_, _, c)| !c.is_zero())
    }

    pub fn truncate(&self, cap1: usize, cap2: usize) -> Self {
        let (cap1, cap2) = (cap1.min(self.cap1), cap2.min(self.cap2));
        Self::from_fn(cap1, cap2, |i, j| self.at(i, j).clone())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        BivariateSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect(), ..*self }
    }

    /// Multiplies by `x1^a x2^b`, keeping the caps.
    pub fn shift(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(self.cap1, self.cap2);
        for (i, j, c) in self.nonzero_terms() {
            if i + a <= self.cap1 && j + b <= self.cap2 {
                *out.at_mut(i + a, j + b) = c.clone();
            }
        }
        out
    }

    /// Divides by `x1^a x2^b`; the caps drop by `(a, b)`.
    pub fn divide_monomial(&self, a: usize, b: usize) -> Result<Self, SeriesError> {
        if a > self.cap1 || b > self.cap2 {
            return Err(self.too_small(a, b));
        }
        if self.nonzero_terms().any(|(i, j, _)| i < a || j < b) {
            return Err(SeriesError::NotDivisible(a, b));
        }
        Ok(Self::from_fn(self.cap1 - a, self.cap2 - b, |i, j| self.at(i + a, j + b).clone()))
    }

    fn too_small(&self, need1: usize, need2: usize) -> SeriesError {
        SeriesError::InsufficientCaps { have1: self.cap1, have2: self.cap2, need1, need2 }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.cap1, self.cap2);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// The coefficient of `x1^i x2^j` in `self * other`, without forming the
    /// whole product.
    pub fn product_coeff(&self, other: &Self, i: usize, j: usize) -> Result<BigInt, SeriesError> {
        let (cap1, cap2) = (self.cap1.min(other.cap1), self.cap2.min(other.cap2));
        if i > cap1 || j > cap2 {
            return Err(SeriesError::InsufficientCaps { have1: cap1, have2: cap2, need1: i, need2: j });
        }
        let mut sum = BigInt::zero();
        for a in 0..=i {
            for b in 0..=j {
                let c = self.at(a, b);
                if !c.is_zero() {
                    sum += c * other.at(i - a, j - b);
                }
            }
        }
        Ok(sum)
    }

    /// Exact quotient `self / other`; `other` needs a nonzero constant term
    /// and the quotient must have integer coefficients.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        let c0 = other.at(0, 0).clone();
        if c0.is_zero() {
            return Err(SeriesError::NotUnit);
        }
        let (cap1, cap2) = (self.cap1.min(other.cap1), self.cap2.min(other.cap2));
        let divisor_terms: Vec<(usize, usize, &BigInt)> =
            other.nonzero_terms().filter(|&(a, b, _)| (a, b) != (0, 0)).collect();
        let mut q = Self::zero(cap1, cap2);
        for i in 0..=cap1 {
            for j in 0..=cap2 {
                let mut r = self.at(i, j).clone();
                for &(a, b, c) in &divisor_terms {
                    if a <= i && b <= j {
                        r -= c * q.at(i - a, j - b);
                    }
                }
                let (quot, rem) = r.div_rem(&c0);
                if !rem.is_zero() {
                    return Err(SeriesError::NonIntegral(i, j));
                }
                *q.at_mut(i, j) = quot;
            }
        }
        Ok(q)
    }

    /// `x1 ∂/∂x1`; keeps the caps.
    pub fn euler_x1(&self) -> Self {
        Self::from_fn(self.cap1, self.cap2, |i, j| self.at(i, j) * i)
    }

    /// `x2 ∂/∂x2`; keeps the caps.
    pub fn euler_x2(&self) -> Self {
        Self::from_fn(self.cap1, self.cap2, |i, j| self.at(i, j) * j)
    }

    /// `∂/∂x1`; the `x1` cap drops by one.
    pub fn partial_x1(&self) -> Result<Self, SeriesError> {
        self.euler_x1().divide_monomial(1, 0)
    }

    /// `∂/∂x2`; the `x2` cap drops by one.
    pub fn partial_x2(&self) -> Result<Self, SeriesError> {
        self.euler_x2().divide_monomial(0, 1)
    }

    /// Substitutes `x1 := w1, x2 := w2`. Both must have zero constant term.
    /// The result has the caps of `w1, w2`; it is exact provided `self` is
    /// known to every degree that still contributes there.
    pub fn compose(&self, w1: &Self, w2: &Self) -> Result<Self, SeriesError> {
        if !w1.at(0, 0).is_zero() || !w2.at(0, 0).is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let (cap1, cap2) = (w1.cap1.min(w2.cap1), w1.cap2.min(w2.cap2));
        let w1 = w1.truncate(cap1, cap2);
        let w2 = w2.truncate(cap1, cap2);
        let mut w2_powers = vec![Self::one(cap1, cap2)];
        for _ in 1..=self.cap2 {
            let next = w2_powers.last().unwrap() * &w2;
            if next.is_zero() {
                break;
            }
            w2_powers.push(next);
        }
        let mut out = Self::zero(cap1, cap2);
        let mut w1_power = Self::one(cap1, cap2);
        for i in 0..=self.cap1 {
            let mut inner = Self::zero(cap1, cap2);
            for (j, power) in w2_powers.iter().enumerate() {
                let c = self.at(i, j);
                if !c.is_zero() {
                    inner = &inner + &power.scale(c);
                }
            }
            out = &out + &(&inner * &w1_power);
            w1_power = &w1_power * &w1;
            if w1_power.is_zero() {
                break;
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.nonzero_terms().map(|(i, j, c)| format!("{c}*x1^{i}*x2^{j}")).collect();
        write!(f, "BivariateSeries[{}x{}]({})", self.cap1, self.cap2, terms.join(" + "))
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;

    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        let (cap1, cap2) = (self.cap1.min(rhs.cap1), self.cap2.min(rhs.cap2));
        BivariateSeries::from_fn(cap1, cap2, |i, j| self.at(i, j) + rhs.at(i, j))
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;

    fn sub(self, rhs: &BivariateSeries) -> BivariateSeries {
        let (cap1, cap2) = (self.cap1.min(rhs.cap1), self.cap2.min(rhs.cap2));
        BivariateSeries::from_fn(cap1, cap2, |i, j| self.at(i, j) - rhs.at(i, j))
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;

    fn neg(self) -> BivariateSeries {
        BivariateSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..*self }
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;

    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        let (cap1, cap2) = (self.cap1.min(rhs.cap1), self.cap2.min(rhs.cap2));
        let mut out = BivariateSeries::zero(cap1, cap2);
        let right: Vec<(usize, usize, &BigInt)> = rhs.nonzero_terms().collect();
        for (a, b, c) in self.nonzero_terms() {
            if a > cap1 || b > cap2 {
                continue;
            }
            for &(i, j, d) in &right {
                if a + i <= cap1 && b + j <= cap2 {
                    *out.at_mut(a + i, b + j) += c * d;
                }
            }
        }
        out
    }
}

/// Solves `w1 = t1 F1(w1, w2)`, `w2 = t2 F2(w1, w2)` by iteration from zero,
/// truncated to `(cap1, cap2)` in `(t1, t2)`.
///
/// Each round fixes at least one more total degree, so the iteration settles
/// within `cap1 + cap2 + 1` rounds whenever the system is well founded. A
/// nonzero constant term in `F_i` is not required.
pub fn solve_fixed_point<F1, F2>(
    f1: F1,
    f2: F2,
    cap1: usize,
    cap2: usize,
) -> Result<(BivariateSeries, BivariateSeries), SeriesError>
where
    F1: Fn(&BivariateSeries, &BivariateSeries) -> Result<BivariateSeries, SeriesError>,
    F2: Fn(&BivariateSeries, &BivariateSeries) -> Result<BivariateSeries, SeriesError>,
{
    let rounds = cap1 + cap2 + 2;
    let mut w1 = BivariateSeries::zero(cap1, cap2);
    let mut w2 = BivariateSeries::zero(cap1, cap2);
    for _ in 0..rounds {
        let n1 = f1(&w1, &w2)?.truncate(cap1, cap2).shift(1, 0);
        let n2 = f2(&w1, &w2)?.truncate(cap1, cap2).shift(0, 1);
        if n1 == w1 && n2 == w2 {
            return Ok((w1, w2));
        }
        w1 = n1;
        w2 = n2;
    }
    Err(SeriesError::NoConvergence(rounds))
}

/// Splits `f` as `x1^a x2^b · u` with `u(0,0) != 0`.
fn monomial_unit(f: &BivariateSeries, name: &'static str) -> Result<(usize, usize, BivariateSeries), SeriesError> {
    let a = f.nonzero_terms().map(|(i, _, _)| i).min();
    let b = f.nonzero_terms().map(|(_, j, _)| j).min();
    match (a, b) {
        (Some(a), Some(b)) if !f.at(a, b).is_zero() => Ok((a, b, f.divide_monomial(a, b)?)),
        _ => Err(SeriesError::NotMonomialTimesUnit(name)),
    }
}

/// Evaluates the right-hand side of the bivariate Lagrange formula for
/// `[t1^p t2^q] g(w1, w2)`, where `w_i = t_i f_i(w1, w2)`.
///
/// Each `f_i` may be a monomial times a unit, `f_i = x1^a_i x2^b_i u_i`; then
/// the diagonal of `x_c ∂_c f_r / f_r` picks up the exponents and the rest is
/// `x_c ∂_c u_r / u_r`.
pub fn lagrange_coeff(
    g: &BivariateSeries,
    f1: &BivariateSeries,
    f2: &BivariateSeries,
    p: usize,
    q: usize,
) -> Result<BigInt, SeriesError> {
    let (a1, b1, u1) = monomial_unit(f1, "f1")?;
    let (a2, b2, u2) = monomial_unit(f2, "f2")?;
    let (shift1, shift2) = (p * a1 + q * a2, p * b1 + q * b2);
    if shift1 > p || shift2 > q {
        return Ok(BigInt::zero());
    }
    let (c1, c2) = (p - shift1, q - shift2);
    for s in [g, &u1, &u2] {
        if s.cap1 < c1 || s.cap2 < c2 {
            return Err(s.too_small(c1, c2));
        }
    }
    let g = g.truncate(c1, c2);
    let u1 = u1.truncate(c1, c2);
    let u2 = u2.truncate(c1, c2);
    let ident = |d: bool| BivariateSeries::constant(c1, c2, d as i32);
    let log_deriv = |exp: usize, u: &BivariateSeries, euler: BivariateSeries| -> Result<BivariateSeries, SeriesError> {
        Ok(&BivariateSeries::constant(c1, c2, exp as i64) + &euler.div(u)?)
    };
    // m[r][c] = δ_rc - x_c ∂_c f_r / f_r
    let m11 = &ident(true) - &log_deriv(a1, &u1, u1.euler_x1())?;
    let m12 = &ident(false) - &log_deriv(b1, &u1, u1.euler_x2())?;
    let m21 = &ident(false) - &log_deriv(a2, &u2, u2.euler_x1())?;
    let m22 = &ident(true) - &log_deriv(b2, &u2, u2.euler_x2())?;
    let det = &(&m11 * &m22) - &(&m12 * &m21);
    let body = &(&g * &u1.pow(p as u32)) * &u2.pow(q as u32);
    body.product_coeff(&det, c1, c2)
}

/// The tree systems whose first component counts trees with given numbers of
/// even-level (`t1`) and odd-level (`t2`) vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeSystem {
    /// Every even-level vertex is internal: `f1 = x2/(1-x2)`, `f2 = 1/(1-x1)`.
    EvenInternal,
    /// Even-level outdegree at most `h`.
    MaxStack(usize),
    /// Odd-level outdegree at most `l - 1`.
    MaxLoop(usize),
    /// Both restrictions.
    Both { h: usize, l: usize },
}

/// `1 + x + ... + x^(d-1)` in one variable, or `1/(1-x)` when unbounded.
fn geometric(cap1: usize, cap2: usize, var: usize, terms: Option<usize>) -> BivariateSeries {
    BivariateSeries::from_fn(cap1, cap2, |i, j| {
        let (deg, other) = if var == 1 { (i, j) } else { (j, i) };
        let inside = terms.is_none_or(|t| deg < t);
        BigInt::from((other == 0 && inside) as u8)
    })
}

impl TreeSystem {
    pub fn f1(&self, cap1: usize, cap2: usize) -> BivariateSeries {
        match *self {
            TreeSystem::EvenInternal => geometric(cap1, cap2, 2, None).shift(0, 1),
            TreeSystem::MaxLoop(_) => geometric(cap1, cap2, 2, None),
            TreeSystem::MaxStack(h) | TreeSystem::Both { h, .. } => geometric(cap1, cap2, 2, Some(h + 1)),
        }
    }

    pub fn f2(&self, cap1: usize, cap2: usize) -> BivariateSeries {
        match *self {
            TreeSystem::EvenInternal | TreeSystem::MaxStack(_) => geometric(cap1, cap2, 1, None),
            TreeSystem::MaxLoop(l) | TreeSystem::Both { l, .. } => geometric(cap1, cap2, 1, Some(l)),
        }
    }

    /// Solves the system up to `(cap1, cap2)` in `(t1, t2)`. Since
    /// `w_i = t_i (...)`, `w1^i w2^j` vanishes beyond the caps once `i > cap1`
    /// or `j > cap2`, so `f_i` truncated at the same caps is enough.
    pub fn solve(&self, cap1: usize, cap2: usize) -> Result<(BivariateSeries, BivariateSeries), SeriesError> {
        let (f1, f2) = (self.f1(cap1, cap2), self.f2(cap1, cap2));
        solve_fixed_point(|a, b| f1.compose(a, b), |a, b| f2.compose(a, b), cap1, cap2)
    }

    /// `[t1^p t2^q] w1` by fixed-point iteration.
    pub fn fixed_point_coeff(&self, p: usize, q: usize) -> Result<BigInt, SeriesError> {
        let (w1, _) = self.solve(p, q)?;
        Ok(w1.at(p, q).clone())
    }

    /// `[t1^p t2^q] w1` by the Lagrange formula with `g = x1`.
    pub fn lagrange_coeff(&self, p: usize, q: usize) -> Result<BigInt, SeriesError> {
        lagrange_coeff(&BivariateSeries::x1(p, q), &self.f1(p, q), &self.f2(p, q), p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn square_of_sum() {
        let s = &BivariateSeries::x1(3, 3) + &BivariateSeries::x2(3, 3);
        let sq = s.pow(2);
        assert_eq!(sq.coeff(1, 1), Some(&big(2)));
        assert_eq!(sq.coeff(2, 0), Some(&big(1)));
        assert_eq!(sq.coeff(0, 0), Some(&big(0)));
    }

    #[test]
    fn geometric_series_by_division() {
        let one = BivariateSeries::one(6, 2);
        let g = one.div(&(&one - &BivariateSeries::x1(6, 2))).unwrap();
        for i in 0..=6 {
            assert_eq!(g.coeff(i, 0), Some(&big(1)));
            assert_eq!(g.coeff(i, 1), Some(&big(0)));
        }
    }

    #[test]
    fn derivative_of_shifted_geometric() {
        let one = BivariateSeries::one(1, 5);
        let x2 = BivariateSeries::x2(1, 5);
        let s = x2.div(&(&one - &x2)).unwrap();
        let d = s.partial_x2().unwrap();
        assert_eq!(d.caps(), (1, 4));
        assert_eq!(d.coeff(0, 2), Some(&big(3)));
    }

    #[test]
    fn division_errors() {
        let x1 = BivariateSeries::x1(3, 3);
        assert_eq!(x1.div(&x1), Err(SeriesError::NotUnit));
        let two = BivariateSeries::constant(3, 3, 2);
        assert_eq!(x1.div(&two), Err(SeriesError::NonIntegral(1, 0)));
        assert_eq!(BivariateSeries::one(3, 3).divide_monomial(1, 0), Err(SeriesError::NotDivisible(1, 0)));
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = BivariateSeries::from_fn(4, 4, |i, j| big((i * 3 + j) as i64 - 2));
        let b = BivariateSeries::from_fn(4, 4, |i, j| big(if i + j == 0 { 1 } else { (i + 2 * j) as i64 }));
        assert_eq!((&a * &b).div(&b).unwrap(), a);
    }

    #[test]
    fn catalan_by_fixed_point() {
        // w = t / (1 - w), in the first variable only.
        let f = geometric(8, 0, 1, None);
        let zero = |_: &BivariateSeries, _: &BivariateSeries| Ok(BivariateSeries::zero(7, 0));
        let (w, _) = solve_fixed_point(|a, b| f.compose(a, b), zero, 7, 0).unwrap();
        let coeffs: Vec<BigInt> = (1..=7).map(|i| w.coeff(i, 0).unwrap().clone()).collect();
        assert_eq!(coeffs, [1, 1, 2, 5, 14, 42, 132].map(big));
    }

    #[test]
    fn even_internal_system() {
        assert_eq!(TreeSystem::EvenInternal.fixed_point_coeff(2, 3).unwrap(), big(3));
        assert_eq!(TreeSystem::EvenInternal.lagrange_coeff(2, 3).unwrap(), big(3));
        assert_eq!(TreeSystem::EvenInternal.lagrange_coeff(3, 3).unwrap(), big(2));
        for q in 1..=6 {
            assert_eq!(TreeSystem::EvenInternal.lagrange_coeff(1, q).unwrap(), big(1));
        }
    }

    #[test]
    fn max_stack_system() {
        assert_eq!(TreeSystem::MaxStack(1).fixed_point_coeff(2, 2).unwrap(), big(1));
        assert_eq!(TreeSystem::MaxStack(1).lagrange_coeff(2, 2).unwrap(), big(1));
    }

    #[test]
    fn lagrange_agrees_with_fixed_point() {
        let systems = [
            TreeSystem::EvenInternal,
            TreeSystem::MaxStack(2),
            TreeSystem::MaxLoop(2),
            TreeSystem::Both { h: 2, l: 3 },
        ];
        for sys in systems {
            for p in 1..=5 {
                for q in 1..=5 {
                    assert_eq!(sys.fixed_point_coeff(p, q), sys.lagrange_coeff(p, q), "{sys:?} {p} {q}");
                }
            }
        }
    }

    #[test]
    fn lagrange_rejects_non_monomial_unit() {
        let f = &BivariateSeries::x1(4, 4) + &BivariateSeries::x2(4, 4);
        let g = BivariateSeries::x1(4, 4);
        assert_eq!(lagrange_coeff(&g, &f, &f, 2, 2), Err(SeriesError::NotMonomialTimesUnit("f1")));
    }

    #[test]
    fn lagrange_caps_are_checked() {
        let g = BivariateSeries::x1(1, 1);
        let f = BivariateSeries::one(1, 1);
        assert!(matches!(lagrange_coeff(&g, &f, &f, 3, 3), Err(SeriesError::InsufficientCaps { .. })));
    }

    #[test]
    fn composition() {
        // (1 + x1 + x2) at x1 = t1, x2 = t1 t2
        let f = &(&BivariateSeries::one(3, 3) + &BivariateSeries::x1(3, 3)) + &BivariateSeries::x2(3, 3);
        let w1 = BivariateSeries::x1(3, 3);
        let w2 = BivariateSeries::monomial(3, 3, 1, 1, 1);
        let c = f.compose(&w1, &w2).unwrap();
        assert_eq!(c.coeff(1, 0), Some(&big(1)));
        assert_eq!(c.coeff(1, 1), Some(&big(1)));
        assert_eq!(c.coeff(0, 1), Some(&big(0)));
        assert_eq!(f.compose(&f, &w2), Err(SeriesError::NonzeroConstant));
    }
}
