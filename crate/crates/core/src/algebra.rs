//! Cayley-Dickson arithmetic in the division algebras R, C, H and O.
//!
//! Elements are coordinate vectors in the canonical basis `e0..e7`, where
//! `e0 = 1` and `e{4+t} = l*e{t}` for `t = 0..3` under the doubling rule
//! `(a + l b)(c + l d) = ac - d b^c + l (a^c d + c b)`. The 8x8 basis product
//! table is generated from that recursion once and memoized; nothing about
//! the multiplication is hand-transcribed.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Absolute tolerance on the *norm* (squared modulus) for double-mode zero
/// tests. Exact mode compares exactly.
pub const NORM_ZERO_TOL: f64 = 1e-12;

/// Acceptance tolerance on `|t(J)|` and `|n(J)-1|` for imaginary-unit checks.
pub const UNIT_TOL: f64 = 1e-9;

/// One of the four normed division algebras, indexed by Cayley-Dickson level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl Algebra {
    pub fn level(self) -> u8 {
        match self {
            Algebra::Real => 0,
            Algebra::Complex => 1,
            Algebra::Quaternion => 2,
            Algebra::Octonion => 3,
        }
    }

    pub fn dim(self) -> usize {
        1 << self.level()
    }

    pub fn from_level(level: u8) -> Option<Self> {
        match level {
            0 => Some(Algebra::Real),
            1 => Some(Algebra::Complex),
            2 => Some(Algebra::Quaternion),
            3 => Some(Algebra::Octonion),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Algebra::Real => "R",
            Algebra::Complex => "C",
            Algebra::Quaternion => "H",
            Algebra::Octonion => "O",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        match s {
            "R" | "r" => Some(Algebra::Real),
            "C" | "c" => Some(Algebra::Complex),
            "H" | "h" => Some(Algebra::Quaternion),
            "O" | "o" => Some(Algebra::Octonion),
            _ => None,
        }
    }

    /// Canonical basis unit names, used by the CLI grammar and display.
    pub fn unit_names() -> [&'static str; 8] {
        ["1", "i", "j", "k", "l", "li", "lj", "lk"]
    }
}

// ---------------------------------------------------------------------------
// Basis multiplication table, generated from the doubling recursion.
// ---------------------------------------------------------------------------

fn conj_int(a: &[i64]) -> Vec<i64> {
    let mut out = a.to_vec();
    for c in out.iter_mut().skip(1) {
        *c = -*c;
    }
    out
}

fn add_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Direct recursive Cayley-Dickson product on integer coordinate vectors.
///
/// The doubling step `H -> O` pairs as `x = p + l q`, so that the upper
/// basis slots satisfy `e{4+t} = l * e{t}`:
/// `(p + l q)(r + l s) = pr - s q^c + l (p^c s + r q)`.
/// The lower steps pair as `x = p + q u` with `e3 = i * j` (the classical
/// quaternion labels, `ij = k`):
/// `(p + q u)(r + s u) = pr - s^c q + (s p + q r^c) u`.
fn cd_mul_int(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);
    let (re, im) = if n == 8 {
        (
            sub_int(&cd_mul_int(p, r), &cd_mul_int(s, &conj_int(q))),
            add_int(&cd_mul_int(&conj_int(p), s), &cd_mul_int(r, q)),
        )
    } else {
        (
            sub_int(&cd_mul_int(p, r), &cd_mul_int(&conj_int(s), q)),
            add_int(&cd_mul_int(s, p), &cd_mul_int(q, &conj_int(r))),
        )
    };
    let mut out = re;
    out.extend(im);
    out
}

type BasisTable = [[(i8, u8); 8]; 8];

fn basis_table() -> &'static BasisTable {
    static TABLE: OnceLock<BasisTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [[(0i8, 0u8); 8]; 8];
        for s in 0..8 {
            for t in 0..8 {
                let mut a = [0i64; 8];
                let mut b = [0i64; 8];
                a[s] = 1;
                b[t] = 1;
                let p = cd_mul_int(&a, &b);
                let mut hit = None;
                for (u, &c) in p.iter().enumerate() {
                    if c != 0 {
                        assert!(hit.is_none() && (c == 1 || c == -1), "basis product not monomial");
                        hit = Some((c as i8, u as u8));
                    }
                }
                table[s][t] = hit.expect("basis product vanished");
            }
        }
        table
    })
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// A value of R, C, H or O as a coordinate vector in the canonical basis.
#[derive(Clone, PartialEq)]
pub struct Element<T: Scalar> {
    algebra: Algebra,
    coords: Vec<T>,
}

impl<T: Scalar> Element<T> {
    /// Builds an element from coordinates. Panics if the length does not
    /// match the algebra dimension; user-facing input is validated upstream.
    pub fn new(algebra: Algebra, coords: Vec<T>) -> Self {
        assert_eq!(coords.len(), algebra.dim(), "coordinate length mismatch");
        Element { algebra, coords }
    }

    pub fn zero(algebra: Algebra) -> Self {
        Element::new(algebra, vec![T::zero(); algebra.dim()])
    }

    pub fn one(algebra: Algebra) -> Self {
        Element::scalar(algebra, T::one())
    }

    pub fn scalar(algebra: Algebra, value: T) -> Self {
        let mut coords = vec![T::zero(); algebra.dim()];
        coords[0] = value;
        Element { algebra, coords }
    }

    /// Canonical basis element `e{index}`.
    pub fn basis(algebra: Algebra, index: usize) -> Self {
        assert!(index < algebra.dim(), "basis index out of range");
        let mut coords = vec![T::zero(); algebra.dim()];
        coords[index] = T::one();
        Element { algebra, coords }
    }

    pub fn from_ints(algebra: Algebra, coords: &[i64]) -> Self {
        Element::new(algebra, coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn from_ratios(algebra: Algebra, coords: &[(i64, i64)]) -> Self {
        Element::new(algebra, coords.iter().map(|&(p, q)| T::from_ratio(p, q)).collect())
    }

    /// `a + b J` for an imaginary unit `J`.
    pub fn from_slice_point(unit: &Element<T>, a: T, b: T) -> Self {
        Element::scalar(unit.algebra, a).add(&unit.scale(&b))
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &T {
        &self.coords[k]
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.algebra, other.algebra,
            "algebra mismatch: {:?} vs {:?}",
            self.algebra, other.algebra
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Element { algebra: self.algebra, coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Element { algebra: self.algebra, coords }
    }

    pub fn neg(&self) -> Self {
        let coords = self.coords.iter().map(|a| -a.clone()).collect();
        Element { algebra: self.algebra, coords }
    }

    pub fn scale(&self, factor: &T) -> Self {
        let coords = self.coords.iter().map(|a| a.clone() * factor.clone()).collect();
        Element { algebra: self.algebra, coords }
    }

    /// Product under the Cayley-Dickson rule, via the memoized basis table.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let dim = self.algebra.dim();
        let table = basis_table();
        let mut out = vec![T::zero(); dim];
        for s in 0..dim {
            if self.coords[s].is_zero() {
                continue;
            }
            for t in 0..dim {
                if other.coords[t].is_zero() {
                    continue;
                }
                let (sign, u) = table[s][t];
                let term = self.coords[s].clone() * other.coords[t].clone();
                let slot = &mut out[u as usize];
                *slot = if sign > 0 { slot.clone() + term } else { slot.clone() - term };
            }
        }
        Element { algebra: self.algebra, coords: out }
    }

    /// Conjugate: negates every coordinate except the real one.
    pub fn conj(&self) -> Self {
        let mut coords = self.coords.clone();
        for c in coords.iter_mut().skip(1) {
            *c = -c.clone();
        }
        Element { algebra: self.algebra, coords }
    }

    /// Trace `t(x) = x + x^c = 2 re(x)`.
    pub fn trace(&self) -> T {
        self.coords[0].clone() + self.coords[0].clone()
    }

    /// Norm `n(x) = x x^c`, the squared Euclidean modulus.
    pub fn norm(&self) -> T {
        self.coords
            .iter()
            .fold(T::zero(), |acc, c| acc + c.clone() * c.clone())
    }

    /// Real part as a scalar.
    pub fn re(&self) -> T {
        self.coords[0].clone()
    }

    /// Imaginary part as an element (real coordinate zeroed).
    pub fn im(&self) -> Self {
        let mut coords = self.coords.clone();
        coords[0] = T::zero();
        Element { algebra: self.algebra, coords }
    }

    /// Euclidean scalar product, equal to `t(x y^c) / 2`.
    pub fn dot(&self, other: &Self) -> T {
        self.check_same(other);
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Modulus as a double.
    pub fn abs_f64(&self) -> f64 {
        self.norm().to_f64().sqrt()
    }

    /// Zero test: exact in rational mode, `n(x) < 1e-12` in double mode.
    pub fn is_zero(&self) -> bool {
        if T::EXACT {
            self.coords.iter().all(|c| c.is_zero())
        } else {
            self.norm().to_f64() < NORM_ZERO_TOL
        }
    }

    /// Structural zero test: every coordinate is exactly zero. Used when
    /// trimming stored data, where a tolerance would discard small but
    /// meaningful coefficients.
    pub fn is_exactly_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).abs_f64() <= tol
    }

    /// `x^{-1} = n(x)^{-1} x^c`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroNotInvertible);
        }
        let n = self.norm();
        let inv = n.recip().ok_or(Error::ZeroNotInvertible)?;
        Ok(self.conj().scale(&inv))
    }

    /// True iff `t(x) = 0` and `n(x) = 1` (within `UNIT_TOL` in double mode).
    pub fn is_imaginary_unit(&self) -> bool {
        self.is_imaginary_unit_tol(UNIT_TOL)
    }

    pub fn is_imaginary_unit_tol(&self, tol: f64) -> bool {
        if T::EXACT {
            self.coords[0].is_zero() && self.norm() == T::one()
        } else {
            self.trace().to_f64().abs() <= tol && (self.norm().to_f64() - 1.0).abs() <= tol
        }
    }

    /// Canonical sphere coordinates `x = alpha + beta J` with `beta >= 0`.
    ///
    /// Real inputs return the degenerate decomposition with `unit = e1`
    /// (`e0` over R, which has no imaginary units).
    pub fn sphere_decompose(&self) -> Result<SphereDecomposition<T>> {
        let alpha = self.re();
        let im = self.im();
        let beta_sq = im.norm();
        if beta_sq.is_zero() || (!T::EXACT && beta_sq.to_f64() < NORM_ZERO_TOL) {
            let unit_index = if self.algebra.dim() > 1 { 1 } else { 0 };
            return Ok(SphereDecomposition {
                alpha,
                beta: T::zero(),
                unit: Element::basis(self.algebra, unit_index),
                degenerate: true,
            });
        }
        let beta = Scalar::sqrt(&beta_sq).ok_or(Error::IrrationalValue("sphere radius"))?;
        let inv = beta.recip().ok_or(Error::ZeroNotInvertible)?;
        Ok(SphereDecomposition { alpha, beta, unit: im.scale(&inv), degenerate: false })
    }

    /// Distance from `self` to the plane spanned by `1` and `J`.
    pub fn distance_to_slice(&self, unit: &Element<T>) -> f64 {
        let n = self.norm().to_f64();
        let a = self.re().to_f64();
        let b = self.dot(unit).to_f64();
        (n - a * a - b * b).max(0.0).sqrt()
    }
}

/// Commutator `[a, b] = ab - ba`.
pub fn commutator<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Element<T> {
    a.mul(b).sub(&b.mul(a))
}

/// Associator `(a, b, c) = (ab)c - a(bc)`.
pub fn associator<T: Scalar>(a: &Element<T>, b: &Element<T>, c: &Element<T>) -> Element<T> {
    a.mul(b).mul(c).sub(&a.mul(&b.mul(c)))
}

/// Conjugation `x -> g^{-1} x g`, well defined by Artin's theorem.
pub fn conjugate_by<T: Scalar>(x: &Element<T>, g: &Element<T>) -> Result<Element<T>> {
    let ginv = g.inverse()?;
    Ok(ginv.mul(x).mul(g))
}

/// Canonical `x = alpha + beta J` data with `beta >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereDecomposition<T: Scalar> {
    pub alpha: T,
    pub beta: T,
    pub unit: Element<T>,
    pub degenerate: bool,
}

impl<T: Scalar> SphereDecomposition<T> {
    /// Reassembles `alpha + beta * unit`.
    pub fn point(&self) -> Element<T> {
        Element::from_slice_point(&self.unit, self.alpha.clone(), self.beta.clone())
    }
}

/// Orthonormal splitting basis `{1, J, J1, J J1, ...}` associated to `J`.
///
/// Built by Gram-Schmidt over the canonical basis seeds, then closed under
/// left multiplication by `J`. Fails in exact mode when a normalization is
/// irrational.
pub fn splitting_basis<T: Scalar>(unit: &Element<T>) -> Result<Vec<Element<T>>> {
    if !unit.is_imaginary_unit() {
        return Err(Error::NotImaginaryUnit);
    }
    let algebra = unit.algebra();
    let dim = algebra.dim();
    let mut basis: Vec<Element<T>> = vec![Element::one(algebra), unit.clone()];
    let orthogonalize = |v: &Element<T>, basis: &[Element<T>]| -> Element<T> {
        let mut out = v.clone();
        for b in basis {
            let p = out.dot(b);
            out = out.sub(&b.scale(&p));
        }
        out
    };
    for seed in 1..dim {
        if basis.len() == dim {
            break;
        }
        let v = orthogonalize(&Element::basis(algebra, seed), &basis);
        let nv = v.norm();
        if nv.to_f64() < 1e-9 {
            continue;
        }
        let len = Scalar::sqrt(&nv).ok_or(Error::IrrationalValue("splitting basis norm"))?;
        let jm = v.scale(&len.recip().ok_or(Error::ZeroNotInvertible)?);
        let jjm = orthogonalize(&unit.mul(&jm), &basis);
        let njj = jjm.norm();
        if njj.to_f64() < 1e-9 {
            return Err(Error::Unsupported("splitting closure degenerated".into()));
        }
        let len2 = Scalar::sqrt(&njj).ok_or(Error::IrrationalValue("splitting basis norm"))?;
        let jjm = jjm.scale(&len2.recip().ok_or(Error::ZeroNotInvertible)?);
        basis.push(jm);
        basis.push(jjm);
    }
    assert_eq!(basis.len(), dim, "splitting basis incomplete");
    Ok(basis)
}

// Operator sugar on references; methods remain the primary interface.
impl<'b, T: Scalar> Add<&'b Element<T>> for &Element<T> {
    type Output = Element<T>;
    fn add(self, rhs: &'b Element<T>) -> Element<T> {
        Element::add(self, rhs)
    }
}

impl<'b, T: Scalar> Sub<&'b Element<T>> for &Element<T> {
    type Output = Element<T>;
    fn sub(self, rhs: &'b Element<T>) -> Element<T> {
        Element::sub(self, rhs)
    }
}

impl<'b, T: Scalar> Mul<&'b Element<T>> for &Element<T> {
    type Output = Element<T>;
    fn mul(self, rhs: &'b Element<T>) -> Element<T> {
        Element::mul(self, rhs)
    }
}

impl<T: Scalar> Neg for &Element<T> {
    type Output = Element<T>;
    fn neg(self) -> Element<T> {
        Element::neg(self)
    }
}

impl<T: Scalar> fmt::Debug for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<T: Scalar> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Algebra::unit_names();
        let mut wrote = false;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{}", names[k])?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    type Q = BigRational;

    fn oct(coords: &[i64]) -> Element<Q> {
        Element::from_ints(Algebra::Octonion, coords)
    }

    /// Independent oracle: the doubling recursion applied directly to the
    /// coordinate vectors, bypassing the memoized table.
    fn recursion_mul<T: Scalar>(a: &Element<T>, b: &Element<T>) -> Element<T> {
        fn go<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
            let n = a.len();
            if n == 1 {
                return vec![a[0].clone() * b[0].clone()];
            }
            let h = n / 2;
            let conj = |v: &[T]| -> Vec<T> {
                let mut out = v.to_vec();
                for c in out.iter_mut().skip(1) {
                    *c = -c.clone();
                }
                out
            };
            let (p, q) = a.split_at(h);
            let (r, s) = b.split_at(h);
            let (re, im): (Vec<T>, Vec<T>) = if n == 8 {
                (
                    go(p, r).into_iter().zip(go(s, &conj(q))).map(|(x, y)| x - y).collect(),
                    go(&conj(p), s).into_iter().zip(go(r, q)).map(|(x, y)| x + y).collect(),
                )
            } else {
                (
                    go(p, r).into_iter().zip(go(&conj(s), q)).map(|(x, y)| x - y).collect(),
                    go(s, p).into_iter().zip(go(q, &conj(r))).map(|(x, y)| x + y).collect(),
                )
            };
            let mut out = re;
            out.extend(im);
            out
        }
        Element::new(a.algebra(), go(a.coords(), b.coords()))
    }

    #[test]
    fn imaginary_units_square_to_minus_one() {
        for k in 1..8 {
            let e = Element::<Q>::basis(Algebra::Octonion, k);
            assert_eq!(e.mul(&e), Element::from_ints(Algebra::Octonion, &[-1, 0, 0, 0, 0, 0, 0, 0]));
        }
    }

    #[test]
    fn ell_times_i_is_e5() {
        let ell = Element::<Q>::basis(Algebra::Octonion, 4);
        let i = Element::<Q>::basis(Algebra::Octonion, 1);
        assert_eq!(ell.mul(&i), Element::basis(Algebra::Octonion, 5));
        // Full table agrees with the direct recursion.
        for s in 0..8 {
            for t in 0..8 {
                let a = Element::<Q>::basis(Algebra::Octonion, s);
                let b = Element::<Q>::basis(Algebra::Octonion, t);
                assert_eq!(a.mul(&b), recursion_mul(&a, &b));
            }
        }
    }

    #[test]
    fn table_mul_matches_recursion_on_dense_elements() {
        let a = oct(&[1, -2, 3, 0, 5, -1, 2, 7]);
        let b = oct(&[-3, 1, 4, 1, -5, 9, 2, -6]);
        assert_eq!(a.mul(&b), recursion_mul(&a, &b));
        assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn conjugation_by_2k_minus_ell_sends_j_to_minus_j() {
        let two_k_minus_ell = oct(&[0, 0, 0, 2, -1, 0, 0, 0]);
        let j = Element::<Q>::basis(Algebra::Octonion, 2);
        let got = conjugate_by(&j, &two_k_minus_ell).unwrap();
        assert_eq!(got, j.neg());
    }

    #[test]
    fn trace_and_norm_basics() {
        let one = Element::<Q>::one(Algebra::Octonion);
        assert_eq!(one.trace(), Q::from_int(2));
        assert_eq!(one.norm(), Q::from_int(1));
        let i = Element::<Q>::basis(Algebra::Octonion, 1);
        let j = Element::<Q>::basis(Algebra::Octonion, 2);
        assert_eq!(commutator(&i, &j).trace(), Q::from_int(0));
        let three_plus_4i = Element::<Q>::from_ints(Algebra::Complex, &[3, 4]);
        assert_eq!(three_plus_4i.norm(), Q::from_int(25));
    }

    #[test]
    fn inverse_of_ell_plus_2k() {
        let x = oct(&[0, 0, 0, 2, 1, 0, 0, 0]); // 2k + l
        let inv = x.inverse().unwrap();
        assert_eq!(inv, Element::from_ratios(Algebra::Octonion, &[(0, 1), (0, 1), (0, 1), (-2, 5), (-1, 5), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(x.mul(&inv), Element::one(Algebra::Octonion));
        assert_eq!(inv.mul(&x), Element::one(Algebra::Octonion));
        assert!(Element::<Q>::zero(Algebra::Octonion).inverse().is_err());
    }

    #[test]
    fn associator_alternating_and_nonzero_in_octonions() {
        let i = Element::<Q>::basis(Algebra::Octonion, 1);
        let j = Element::<Q>::basis(Algebra::Octonion, 2);
        let ell = Element::<Q>::basis(Algebra::Octonion, 4);
        assert!(associator(&i, &i, &ell).is_zero());
        assert!(!associator(&i, &j, &ell).is_zero());
        assert_eq!(commutator(&i, &j), Element::from_ints(Algebra::Octonion, &[0, 0, 0, 2, 0, 0, 0, 0]));
        assert!(associator(&i, &j, &ell).trace().is_zero());
    }

    #[test]
    fn sphere_decomposition_cases() {
        let x = Element::<Q>::from_ints(Algebra::Complex, &[1, 2]);
        let d = x.sphere_decompose().unwrap();
        assert_eq!(d.alpha, Q::from_int(1));
        assert_eq!(d.beta, Q::from_int(2));
        assert_eq!(d.unit, Element::basis(Algebra::Complex, 1));
        assert!(!d.degenerate);

        let j = Element::<Q>::basis(Algebra::Octonion, 2);
        let d = j.sphere_decompose().unwrap();
        assert_eq!((d.alpha, d.beta), (Q::from_int(0), Q::from_int(1)));
        assert_eq!(d.unit, j);

        let five = Element::<Q>::scalar(Algebra::Octonion, Q::from_int(5));
        let d = five.sphere_decompose().unwrap();
        assert!(d.degenerate);
        assert_eq!(d.beta, Q::from_int(0));
        assert_eq!(d.unit, Element::basis(Algebra::Octonion, 1));
        assert_eq!(d.point(), five);
    }

    #[test]
    fn imaginary_unit_predicate() {
        let i = Element::<f64>::basis(Algebra::Octonion, 1);
        let j = Element::<f64>::basis(Algebra::Octonion, 2);
        let mixed = i.add(&j).scale(&(1.0 / 2.0f64.sqrt()));
        assert!(i.is_imaginary_unit());
        assert!(mixed.is_imaginary_unit());
        assert!(!Element::<f64>::one(Algebra::Octonion).is_imaginary_unit());
    }

    #[test]
    fn splitting_basis_structure() {
        for (alg, unit_idx) in [(Algebra::Octonion, 1), (Algebra::Quaternion, 1)] {
            let unit = Element::<f64>::basis(alg, unit_idx);
            let basis = splitting_basis(&unit).unwrap();
            assert_eq!(basis.len(), alg.dim());
            assert_eq!(basis[0], Element::one(alg));
            assert_eq!(basis[1], unit);
            for (a, ea) in basis.iter().enumerate() {
                for (b, eb) in basis.iter().enumerate() {
                    let d = ea.dot(eb);
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((d - want).abs() < 1e-12, "gram defect at ({a},{b})");
                }
            }
            // Odd slots are J * (previous even slot) and all non-real slots
            // are imaginary units.
            for m in 1..alg.dim() / 2 {
                let jm = &basis[2 * m];
                let jjm = &basis[2 * m + 1];
                assert!(jm.is_imaginary_unit());
                assert!(unit.mul(jm).approx_eq(jjm, 1e-12));
            }
        }
        assert_eq!(
            splitting_basis(&Element::<f64>::one(Algebra::Octonion)).unwrap_err(),
            Error::NotImaginaryUnit
        );
    }

    #[test]
    fn splitting_basis_random_unit() {
        // A generic unit still yields an orthonormal splitting basis.
        let raw = Element::<f64>::new(
            Algebra::Octonion,
            vec![0.0, 0.3, -0.4, 0.1, 0.7, -0.2, 0.45, 0.11],
        );
        let unit = raw.scale(&(1.0 / raw.abs_f64()));
        let basis = splitting_basis(&unit).unwrap();
        assert_eq!(basis.len(), 8);
        for (a, ea) in basis.iter().enumerate() {
            for (b, eb) in basis.iter().enumerate() {
                let d = ea.dot(eb);
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn dot_matches_trace_formula() {
        let a = oct(&[1, 2, -3, 4, 0, 1, -1, 2]);
        let b = oct(&[2, -1, 0, 3, 1, 1, 5, -2]);
        let via_trace = a.mul(&b.conj()).trace();
        assert_eq!(via_trace, a.dot(&b) * Q::from_int(2));
    }
}
