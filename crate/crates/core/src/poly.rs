//! Closed forms: star polynomials, semiregular quotients and Laurent
//! windows at real centers.
//!
//! A star polynomial carries right coefficients, `p(x) = sum x^n a_n`, and
//! multiplies by coefficient convolution. A semiregular form is a quotient
//! `q(x)^{-1} p(x)` with a real-coefficient denominator, the closed shape of
//! reciprocals and negative star powers.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Absolute tolerance on imaginary parts when deciding a coefficient is real.
pub const REAL_COEFF_TOL: f64 = 1e-10;

/// Spherical value / spherical derivative pair on one sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct Stem<T: Scalar> {
    pub value: Element<T>,
    pub derivative: Element<T>,
}

/// Real power stems `(v_n, d_n)` with `x^n = v_n + im(x) d_n` on the sphere
/// `alpha + beta S`, generated by `v_{n+1} = a v_n - b^2 d_n`,
/// `d_{n+1} = v_n + a d_n`.
pub(crate) fn power_stems_up<T: Scalar>(alpha: &T, beta_sq: &T, max_n: usize) -> Vec<(T, T)> {
    let mut out = Vec::with_capacity(max_n + 1);
    out.push((T::one(), T::zero()));
    for n in 0..max_n {
        let (v, d) = &out[n];
        let v_next = alpha.clone() * v.clone() - beta_sq.clone() * d.clone();
        let d_next = v.clone() + alpha.clone() * d.clone();
        out.push((v_next, d_next));
    }
    out
}

/// Stems of negative powers `x^{-1} .. x^{-max_n}`; requires
/// `alpha^2 + beta^2 != 0`.
pub(crate) fn power_stems_down<T: Scalar>(
    alpha: &T,
    beta_sq: &T,
    max_n: usize,
) -> Result<Vec<(T, T)>> {
    let e = alpha.clone() * alpha.clone() + beta_sq.clone();
    let e_inv = e.recip().ok_or(Error::PoleProximity)?;
    if !T::EXACT && e.to_f64().abs() < 1e-300 {
        return Err(Error::PoleProximity);
    }
    let first = (alpha.clone() * e_inv.clone(), -e_inv.clone());
    let mut out = Vec::with_capacity(max_n);
    out.push(first);
    for n in 1..max_n {
        let (p, q) = &out[n - 1];
        let (pi, qi) = &out[0];
        // Stem product rule: value parts combine as v1 v2 - b^2 d1 d2.
        let v = p.clone() * pi.clone() - beta_sq.clone() * q.clone() * qi.clone();
        let d = p.clone() * qi.clone() + q.clone() * pi.clone();
        out.push((v, d));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Star polynomials
// ---------------------------------------------------------------------------

/// Polynomial with right coefficients in `A`; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct StarPolynomial<T: Scalar> {
    algebra: Algebra,
    coeffs: Vec<Element<T>>,
}

impl<T: Scalar> StarPolynomial<T> {
    pub fn new(algebra: Algebra, mut coeffs: Vec<Element<T>>) -> Self {
        for c in &coeffs {
            assert_eq!(c.algebra(), algebra, "coefficient algebra mismatch");
        }
        while coeffs.last().is_some_and(Element::is_exactly_zero) {
            coeffs.pop();
        }
        StarPolynomial { algebra, coeffs }
    }

    pub fn zero(algebra: Algebra) -> Self {
        StarPolynomial { algebra, coeffs: Vec::new() }
    }

    pub fn constant(value: Element<T>) -> Self {
        StarPolynomial::new(value.algebra(), vec![value])
    }

    pub fn one(algebra: Algebra) -> Self {
        StarPolynomial::constant(Element::one(algebra))
    }

    /// The identity polynomial `x`.
    pub fn variable(algebra: Algebra) -> Self {
        StarPolynomial::new(algebra, vec![Element::zero(algebra), Element::one(algebra)])
    }

    pub fn from_real_coeffs(algebra: Algebra, coeffs: Vec<T>) -> Self {
        StarPolynomial::new(
            algebra,
            coeffs.into_iter().map(|c| Element::scalar(algebra, c)).collect(),
        )
    }

    /// The binomial `x - y`.
    pub fn linear(y: &Element<T>) -> Self {
        StarPolynomial::new(y.algebra(), vec![y.neg(), Element::one(y.algebra())])
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn coeffs(&self) -> &[Element<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Element<T> {
        self.coeffs.get(k).cloned().unwrap_or_else(|| Element::zero(self.algebra))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.algebra, other.algebra);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        StarPolynomial::new(self.algebra, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        StarPolynomial { algebra: self.algebra, coeffs: self.coeffs.iter().map(Element::neg).collect() }
    }

    pub fn scale(&self, factor: &T) -> Self {
        StarPolynomial::new(self.algebra, self.coeffs.iter().map(|c| c.scale(factor)).collect())
    }

    /// Star product by coefficient convolution.
    pub fn star_mul(&self, other: &Self) -> Self {
        assert_eq!(self.algebra, other.algebra);
        if self.is_zero() || other.is_zero() {
            return StarPolynomial::zero(self.algebra);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Element::zero(self.algebra); n];
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_exactly_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                coeffs[a + b] = coeffs[a + b].add(&ca.mul(cb));
            }
        }
        StarPolynomial::new(self.algebra, coeffs)
    }

    /// Coefficientwise conjugation.
    pub fn star_conj(&self) -> Self {
        StarPolynomial {
            algebra: self.algebra,
            coeffs: self.coeffs.iter().map(Element::conj).collect(),
        }
    }

    /// Normal function `N(p) = p * p^c`, coerced to its real form.
    pub fn normal(&self) -> Self {
        let raw = self.star_mul(&self.star_conj());
        raw.into_real_checked().expect("normal function must have real coefficients")
    }

    /// True when every coefficient is real (exactly, or within 1e-10).
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| {
            if T::EXACT {
                c.im().coords().iter().all(Scalar::is_zero)
            } else {
                c.im().abs_f64() <= REAL_COEFF_TOL * (1.0 + c.abs_f64())
            }
        })
    }

    /// Drops imaginary dust, failing if any coefficient is meaningfully
    /// non-real.
    pub fn into_real_checked(self) -> Result<Self> {
        if !self.is_real() {
            return Err(Error::Unsupported("polynomial is not real-coefficient".into()));
        }
        let algebra = self.algebra;
        Ok(StarPolynomial::new(
            algebra,
            self.coeffs.into_iter().map(|c| Element::scalar(algebra, c.re())).collect(),
        ))
    }

    pub fn real_coeffs(&self) -> Option<Vec<T>> {
        if self.is_real() {
            Some(self.coeffs.iter().map(Element::re).collect())
        } else {
            None
        }
    }

    /// Pointwise evaluation `sum x^n a_n`.
    pub fn eval(&self, x: &Element<T>) -> Element<T> {
        let mut acc = Element::zero(self.algebra);
        let mut pow = Element::one(self.algebra);
        for (n, a) in self.coeffs.iter().enumerate() {
            if n > 0 {
                pow = pow.mul(x);
            }
            if !a.is_exactly_zero() {
                acc = acc.add(&pow.mul(a));
            }
        }
        acc
    }

    /// Spherical value and derivative on the sphere `alpha + beta S`,
    /// exact in `(alpha, beta^2)`.
    pub fn stem(&self, alpha: &T, beta_sq: &T) -> Stem<T> {
        let deg = self.coeffs.len().saturating_sub(1);
        let stems = power_stems_up(alpha, beta_sq, deg);
        let mut value = Element::zero(self.algebra);
        let mut derivative = Element::zero(self.algebra);
        for (n, a) in self.coeffs.iter().enumerate() {
            let (v, d) = &stems[n];
            value = value.add(&a.scale(v));
            derivative = derivative.add(&a.scale(d));
        }
        Stem { value, derivative }
    }

    /// Real polynomial power (used for denominators).
    pub fn pow(&self, n: u32) -> Self {
        let mut acc = StarPolynomial::one(self.algebra);
        for _ in 0..n {
            acc = acc.star_mul(self);
        }
        acc
    }
}

/// The slice preserving quadratic `x^2 - x t(y) + n(y)` whose zero set is the
/// sphere through `y`.
pub fn delta_poly<T: Scalar>(y: &Element<T>) -> StarPolynomial<T> {
    let algebra = y.algebra();
    StarPolynomial::from_real_coeffs(algebra, vec![y.norm(), -y.trace(), T::one()])
}

/// Binomial star power `(x - y)^{*n}` for `n >= 0`.
pub fn binomial_star_power<T: Scalar>(y: &Element<T>, n: u32) -> StarPolynomial<T> {
    let mut acc = StarPolynomial::one(y.algebra());
    let lin = StarPolynomial::linear(y);
    for _ in 0..n {
        acc = acc.star_mul(&lin);
    }
    acc
}

/// Star power of `x - y` for any integer exponent. Negative exponents yield
/// the quotient with denominator `Delta_y^{|n|}` and numerator
/// `(x - y^c)^{*|n|}`.
pub fn star_power<T: Scalar>(y: &Element<T>, n: i64) -> SemiregularForm<T> {
    if n >= 0 {
        SemiregularForm::from_poly(binomial_star_power(y, n as u32))
    } else {
        let m = (-n) as u32;
        let num = binomial_star_power(&y.conj(), m);
        let den = delta_poly(y).pow(m);
        SemiregularForm::new(num, den).expect("delta power is a valid denominator")
    }
}

// ---------------------------------------------------------------------------
// Semiregular quotient forms
// ---------------------------------------------------------------------------

/// Quotient `q(x)^{-1} p(x)` of a star polynomial by a real-coefficient
/// (slice preserving) polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SemiregularForm<T: Scalar> {
    num: StarPolynomial<T>,
    den: StarPolynomial<T>,
}

impl<T: Scalar> SemiregularForm<T> {
    pub fn new(num: StarPolynomial<T>, den: StarPolynomial<T>) -> Result<Self> {
        if num.algebra() != den.algebra() {
            return Err(Error::AlgebraMismatch { left: num.algebra(), right: den.algebra() });
        }
        if den.is_zero() {
            return Err(Error::InvalidInput("denominator is identically zero".into()));
        }
        if !den.is_real() {
            return Err(Error::InvalidInput("denominator must have real coefficients".into()));
        }
        let den = den.into_real_checked()?;
        // Constant denominators fold into the numerator.
        if den.degree() == Some(0) {
            let c = den.coeff(0).re();
            let inv = c.recip().ok_or(Error::InvalidInput("zero denominator".into()))?;
            return Ok(SemiregularForm { num: num.scale(&inv), den: StarPolynomial::one(num.algebra()) });
        }
        Ok(SemiregularForm { num, den })
    }

    pub fn from_poly(num: StarPolynomial<T>) -> Self {
        let algebra = num.algebra();
        SemiregularForm { num, den: StarPolynomial::one(algebra) }
    }

    pub fn algebra(&self) -> Algebra {
        self.num.algebra()
    }

    pub fn numerator(&self) -> &StarPolynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &StarPolynomial<T> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.num.is_real()
    }

    /// Pole guard threshold at `x`: scale-aware, per denominator degree.
    fn pole_threshold(&self, x: &Element<T>) -> f64 {
        let deg = self.den.degree().unwrap_or(0) as i32;
        1e-12 * (1.0 + x.abs_f64()).powi(deg)
    }

    pub fn eval(&self, x: &Element<T>) -> Result<Element<T>> {
        let d = self.den.eval(x);
        if T::EXACT {
            if d.is_zero() {
                return Err(Error::PoleProximity);
            }
        } else if d.abs_f64() < self.pole_threshold(x) {
            return Err(Error::PoleProximity);
        }
        Ok(d.inverse()?.mul(&self.num.eval(x)))
    }

    /// Stem on the sphere `alpha + beta S`. The denominator is slice
    /// preserving, so its stem is a real scalar pair `(vq, dq)` and the
    /// quotient stem is rational in `(alpha, beta^2)`.
    pub fn stem(&self, alpha: &T, beta_sq: &T) -> Result<Stem<T>> {
        let ns = self.num.stem(alpha, beta_sq);
        let ds = self.den.stem(alpha, beta_sq);
        let vq = ds.value.re();
        let dq = ds.derivative.re();
        let d = vq.clone() * vq.clone() + beta_sq.clone() * dq.clone() * dq.clone();
        if T::EXACT {
            if d.is_zero() {
                return Err(Error::PoleProximity);
            }
        } else if d.to_f64().abs() < 1e-300 {
            return Err(Error::PoleProximity);
        }
        let d_inv = d.recip().ok_or(Error::PoleProximity)?;
        let value = ns
            .value
            .scale(&(vq.clone() * d_inv.clone()))
            .add(&ns.derivative.scale(&(beta_sq.clone() * dq.clone() * d_inv.clone())));
        let derivative = ns
            .derivative
            .scale(&(vq.clone() * d_inv.clone()))
            .sub(&ns.value.scale(&(dq.clone() * d_inv.clone())));
        Ok(Stem { value, derivative })
    }

    pub fn star_mul(&self, other: &Self) -> Self {
        SemiregularForm::new(self.num.star_mul(&other.num), self.den.star_mul(&other.den))
            .expect("product of real denominators is real")
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self
            .num
            .star_mul(&other.den)
            .add(&other.num.star_mul(&self.den));
        SemiregularForm::new(num, self.den.star_mul(&other.den)).expect("sum keeps denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SemiregularForm { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn star_conj(&self) -> Self {
        SemiregularForm { num: self.num.star_conj(), den: self.den.clone() }
    }

    /// `N(f) = (N(p), q^2)`, a real quotient.
    pub fn normal(&self) -> Self {
        SemiregularForm::new(self.num.normal(), self.den.star_mul(&self.den))
            .expect("normal keeps denominator real")
    }

    /// Multiplicative inverse `(q p^c, N(p))`.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::NormalIdenticallyZero);
        }
        let num = self.den.star_mul(&self.num.star_conj());
        let den = self.num.normal();
        SemiregularForm::new(num, den)
    }
}

// ---------------------------------------------------------------------------
// Laurent windows at real centers
// ---------------------------------------------------------------------------

/// Finite window of a star-Laurent series at a real center: for real `y`,
/// `(x - y)^{*n}` is the ordinary power, so evaluation is pointwise.
#[derive(Clone, Debug, PartialEq)]
pub struct StarLaurent<T: Scalar> {
    algebra: Algebra,
    center: T,
    coeffs: BTreeMap<i64, Element<T>>,
    inner_radius: f64,
    outer_radius: f64,
}

impl<T: Scalar> StarLaurent<T> {
    pub fn new(
        algebra: Algebra,
        center: T,
        coeffs: BTreeMap<i64, Element<T>>,
        inner_radius: f64,
        outer_radius: f64,
    ) -> Result<Self> {
        if !(inner_radius >= 0.0 && inner_radius < outer_radius) {
            return Err(Error::InvalidInput("need 0 <= inner < outer radius".into()));
        }
        let coeffs: BTreeMap<i64, Element<T>> =
            coeffs.into_iter().filter(|(_, c)| !c.is_exactly_zero()).collect();
        for c in coeffs.values() {
            if c.algebra() != algebra {
                return Err(Error::AlgebraMismatch { left: algebra, right: c.algebra() });
            }
        }
        Ok(StarLaurent { algebra, center, coeffs, inner_radius, outer_radius })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn center(&self) -> &T {
        &self.center
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Element<T>> {
        &self.coeffs
    }

    pub fn radii(&self) -> (f64, f64) {
        (self.inner_radius, self.outer_radius)
    }

    pub fn min_key(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    fn center_element(&self) -> Element<T> {
        Element::scalar(self.algebra, self.center.clone())
    }

    pub fn contains(&self, x: &Element<T>) -> bool {
        let r = x.sub(&self.center_element()).abs_f64();
        r > self.inner_radius && r < self.outer_radius
    }

    /// Finite sum of ordinary powers of `x - y`.
    pub fn eval(&self, x: &Element<T>) -> Result<Element<T>> {
        if !self.contains(x) {
            return Err(Error::OutOfAnnulus);
        }
        let w = x.sub(&self.center_element());
        let max_pos = self.coeffs.keys().next_back().copied().unwrap_or(0).max(0) as usize;
        let max_neg = (-self.coeffs.keys().next().copied().unwrap_or(0).min(0)) as usize;
        let mut pows: BTreeMap<i64, Element<T>> = BTreeMap::new();
        pows.insert(0, Element::one(self.algebra));
        let mut p = Element::one(self.algebra);
        for n in 1..=max_pos {
            p = p.mul(&w);
            pows.insert(n as i64, p.clone());
        }
        if max_neg > 0 {
            let wi = w.inverse()?;
            let mut p = Element::one(self.algebra);
            for n in 1..=max_neg {
                p = p.mul(&wi);
                pows.insert(-(n as i64), p.clone());
            }
        }
        let mut acc = Element::zero(self.algebra);
        for (n, a) in &self.coeffs {
            acc = acc.add(&pows[n].mul(a));
        }
        Ok(acc)
    }

    /// Stem via scalar power stems of `x - y` in both directions.
    pub fn stem(&self, alpha: &T, beta_sq: &T) -> Result<Stem<T>> {
        let shifted = alpha.clone() - self.center.clone();
        let max_pos = self.coeffs.keys().next_back().copied().unwrap_or(0).max(0) as usize;
        let max_neg = (-self.coeffs.keys().next().copied().unwrap_or(0).min(0)) as usize;
        let up = power_stems_up(&shifted, beta_sq, max_pos);
        let down = if max_neg > 0 {
            power_stems_down(&shifted, beta_sq, max_neg)?
        } else {
            Vec::new()
        };
        let mut value = Element::zero(self.algebra);
        let mut derivative = Element::zero(self.algebra);
        for (n, a) in &self.coeffs {
            let (v, d) = if *n >= 0 { &up[*n as usize] } else { &down[(-*n - 1) as usize] };
            value = value.add(&a.scale(v));
            derivative = derivative.add(&a.scale(d));
        }
        Ok(Stem { value, derivative })
    }

    pub fn star_conj(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(n, c)| (*n, c.conj())).collect();
        StarLaurent { coeffs, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(n, c)| (*n, c.neg())).collect();
        StarLaurent { coeffs, ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut coeffs = self.coeffs.clone();
        for (n, c) in &other.coeffs {
            let entry = coeffs.entry(*n).or_insert_with(|| Element::zero(self.algebra));
            *entry = entry.add(c);
        }
        StarLaurent::new(
            self.algebra,
            self.center.clone(),
            coeffs,
            self.inner_radius.max(other.inner_radius),
            self.outer_radius.min(other.outer_radius),
        )
    }

    /// Window convolution; the result lives on the intersected annulus.
    pub fn star_mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut coeffs: BTreeMap<i64, Element<T>> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let entry = coeffs.entry(a + b).or_insert_with(|| Element::zero(self.algebra));
                *entry = entry.add(&ca.mul(cb));
            }
        }
        StarLaurent::new(
            self.algebra,
            self.center.clone(),
            coeffs,
            self.inner_radius.max(other.inner_radius),
            self.outer_radius.min(other.outer_radius),
        )
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch { left: self.algebra, right: other.algebra });
        }
        if self.center != other.center {
            return Err(Error::Unsupported("laurent centers differ".into()));
        }
        if self.inner_radius.max(other.inner_radius) >= self.outer_radius.min(other.outer_radius) {
            return Err(Error::EmptyDomainIntersection);
        }
        Ok(())
    }

    /// Re-centers a polynomial at a real center (exact Taylor shift).
    pub fn from_poly(p: &StarPolynomial<T>, center: T, inner: f64, outer: f64) -> Result<Self> {
        let algebra = p.algebra();
        let n = p.coeffs().len();
        let mut coeffs: BTreeMap<i64, Element<T>> = BTreeMap::new();
        // b_n = sum_{m>=n} C(m,n) y^{m-n} a_m
        for target in 0..n {
            let mut acc = Element::zero(algebra);
            for m in target..n {
                let mut binom = T::one();
                for t in 0..target {
                    binom = binom * T::from_int((m - t) as i64) / T::from_int((t + 1) as i64);
                }
                let mut ypow = T::one();
                for _ in 0..(m - target) {
                    ypow = ypow * center.clone();
                }
                acc = acc.add(&p.coeff(m).scale(&(binom * ypow)));
            }
            coeffs.insert(target as i64, acc);
        }
        StarLaurent::new(algebra, center, coeffs, inner, outer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    type Q = BigRational;

    fn unit(idx: usize) -> Element<Q> {
        Element::basis(Algebra::Octonion, idx)
    }

    fn x_minus(y: &Element<Q>) -> StarPolynomial<Q> {
        StarPolynomial::linear(y)
    }

    #[test]
    fn convolution_of_two_binomials() {
        let p = x_minus(&unit(1)).star_mul(&x_minus(&unit(2)));
        // (x - i)(x - j) = x^2 - x(i + j) + k
        assert_eq!(p.coeff(0), unit(3));
        assert_eq!(p.coeff(1), unit(1).add(&unit(2)).neg());
        assert_eq!(p.coeff(2), Element::one(Algebra::Octonion));
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn one_is_the_unit_and_zero_annihilates() {
        let p = x_minus(&unit(1));
        assert_eq!(p.star_mul(&StarPolynomial::one(Algebra::Octonion)), p);
        assert!(p.star_mul(&StarPolynomial::zero(Algebra::Octonion)).is_zero());
        assert!(StarPolynomial::<Q>::zero(Algebra::Octonion).star_conj().is_zero());
    }

    #[test]
    fn normal_of_ell_plus_2xi() {
        // h = l + 2 x i, h^c = -l - 2 x i, h * h^c = 1 + 4 x^2.
        let h = StarPolynomial::new(
            Algebra::Octonion,
            vec![unit(4), unit(1).scale(&Q::from_int(2))],
        );
        let hc = h.star_conj();
        assert_eq!(hc.coeff(0), unit(4).neg());
        assert_eq!(hc.coeff(1), unit(1).scale(&Q::from_int(-2)));
        let n = h.star_mul(&hc);
        assert_eq!(n, StarPolynomial::from_real_coeffs(Algebra::Octonion, vec![
            Q::from_int(1),
            Q::from_int(0),
            Q::from_int(4),
        ]));
        assert_eq!(h.normal(), n);
        // Real polynomials are fixed by conjugation.
        assert_eq!(n.star_conj(), n);
    }

    #[test]
    fn delta_polynomials_depend_only_on_the_sphere() {
        let d_i = delta_poly(&unit(1));
        assert_eq!(d_i.real_coeffs().unwrap(), vec![Q::from_int(1), Q::from_int(0), Q::from_int(1)]);
        let y = Element::<Q>::from_ints(Algebra::Octonion, &[1, 2, 0, 0, 0, 0, 0, 0]);
        let y2 = Element::from_ints(Algebra::Octonion, &[1, 0, 2, 0, 0, 0, 0, 0]);
        let d1 = delta_poly(&y);
        assert_eq!(d1.real_coeffs().unwrap(), vec![Q::from_int(5), Q::from_int(-2), Q::from_int(1)]);
        assert_eq!(d1, delta_poly(&y2));
    }

    #[test]
    fn star_powers() {
        let sq = binomial_star_power(&unit(1), 2);
        assert_eq!(sq.coeff(0), Element::scalar(Algebra::Octonion, Q::from_int(-1)));
        assert_eq!(sq.coeff(1), unit(1).scale(&Q::from_int(-2)));
        assert_eq!(sq.coeff(2), Element::one(Algebra::Octonion));
        assert_eq!(
            binomial_star_power(&unit(1), 0),
            StarPolynomial::one(Algebra::Octonion)
        );

        let inv = star_power(&unit(1), -1);
        assert_eq!(inv.numerator().coeff(0), unit(1));
        assert_eq!(inv.numerator().coeff(1), Element::one(Algebra::Octonion));
        assert_eq!(
            inv.denominator().real_coeffs().unwrap(),
            vec![Q::from_int(1), Q::from_int(0), Q::from_int(1)]
        );
        // (x - i) * (x - i)^{-*1} has equal numerator and denominator.
        let recombined = SemiregularForm::from_poly(x_minus(&unit(1))).star_mul(&inv);
        assert_eq!(recombined.numerator(), recombined.denominator());
    }

    #[test]
    fn semiregular_evaluation_and_pole_guard() {
        let f = star_power(&unit(1), -1);
        // f(2) = (2 - i)^{-1} = (2 + i) / 5
        let two = Element::scalar(Algebra::Octonion, Q::from_int(2));
        let got = f.eval(&two).unwrap();
        assert_eq!(got, Element::from_ratios(Algebra::Octonion, &[
            (2, 5), (1, 5), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1),
        ]));
        // On the singular sphere the guard fires.
        assert_eq!(f.eval(&unit(2)).unwrap_err(), Error::PoleProximity);
    }

    #[test]
    fn power_stem_recurrence_matches_direct_evaluation() {
        let alpha = Q::from_ratio(1, 2);
        let beta = Q::from_ratio(3, 4);
        let beta_sq = beta.clone() * beta.clone();
        let x = Element::from_slice_point(&unit(2), alpha.clone(), beta.clone());
        let p = StarPolynomial::new(
            Algebra::Octonion,
            vec![unit(4), unit(1), unit(2).scale(&Q::from_int(3)), unit(7)],
        );
        let stem = p.stem(&alpha, &beta_sq);
        let reconstructed = stem.value.add(&x.im().mul(&stem.derivative));
        assert_eq!(reconstructed, p.eval(&x));
    }

    #[test]
    fn laurent_window_evaluation() {
        let alg = Algebra::Octonion;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(1, Element::<Q>::one(alg));
        let s = StarLaurent::new(alg, Q::from_int(0), coeffs, 0.0, f64::INFINITY).unwrap();
        let x = Element::from_ints(alg, &[1, 2, 3, 0, 0, 0, 0, 0]);
        assert_eq!(s.eval(&x).unwrap(), x);

        let mut coeffs = BTreeMap::new();
        coeffs.insert(-1, Element::<Q>::one(alg));
        let s = StarLaurent::new(alg, Q::from_int(0), coeffs, 0.0, f64::INFINITY).unwrap();
        let j = Element::basis(alg, 2);
        assert_eq!(s.eval(&j).unwrap(), j.neg());
        let outside = Element::zero(alg);
        assert_eq!(s.eval(&outside).unwrap_err(), Error::OutOfAnnulus);
    }

    #[test]
    fn truncated_reciprocal_exponential_on_a_slice() {
        // sum_{n=0..20} x^{-n} / n! at x = 2 matches exp(1/2) on the slice.
        let alg = Algebra::Complex;
        let mut coeffs: BTreeMap<i64, Element<f64>> = BTreeMap::new();
        let mut fact = 1.0;
        for n in 0..=20 {
            if n > 0 {
                fact *= n as f64;
            }
            coeffs.insert(-(n as i64), Element::scalar(alg, 1.0 / fact));
        }
        let s = StarLaurent::new(alg, 0.0, coeffs, 0.0, f64::INFINITY).unwrap();
        let x = Element::scalar(alg, 2.0);
        let got = s.eval(&x).unwrap();
        assert!((got.re() - 0.5f64.exp()).abs() < 1e-12);
        assert!(got.im().abs_f64() < 1e-15);
    }

    #[test]
    fn laurent_stem_matches_direct_values() {
        let alg = Algebra::Octonion;
        let mut coeffs: BTreeMap<i64, Element<f64>> = BTreeMap::new();
        coeffs.insert(-2, Element::basis(alg, 4));
        coeffs.insert(-1, Element::basis(alg, 1).scale(&2.0));
        coeffs.insert(0, Element::one(alg));
        coeffs.insert(3, Element::basis(alg, 6));
        let s = StarLaurent::new(alg, 0.5, coeffs, 0.0, f64::INFINITY).unwrap();
        let (alpha, beta) = (1.25f64, 0.75f64);
        let unit_j = Element::basis(alg, 2);
        let x = Element::from_slice_point(&unit_j, alpha, beta);
        let stem = s.stem(&alpha, &(beta * beta)).unwrap();
        let rebuilt = stem.value.add(&x.im().mul(&stem.derivative));
        assert!(rebuilt.approx_eq(&s.eval(&x).unwrap(), 1e-12));
    }

    #[test]
    fn polynomial_recenters_exactly() {
        let alg = Algebra::Octonion;
        let p = StarPolynomial::new(
            alg,
            vec![unit(1), unit(4), unit(2).scale(&Q::from_int(-3)), Element::one(alg)],
        );
        let s = StarLaurent::from_poly(&p, Q::from_int(2), 0.0, f64::INFINITY).unwrap();
        let x = Element::from_ints(alg, &[1, 1, -2, 0, 3, 0, 0, 1]);
        assert_eq!(s.eval(&x).unwrap(), p.eval(&x));
    }
}
