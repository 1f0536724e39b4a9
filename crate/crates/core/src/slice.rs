//! Slice functions: evaluation from spherical value and derivative, the
//! stem-level operation formulas, and the splitting-lemma decomposition.
//!
//! A slice function is determined on each sphere `alpha + beta S` by its
//! spherical value `vs` and spherical derivative `ds` through
//! `f(x) = vs + im(x) ds`. Closed forms carry exact stems; sampled stems
//! interpolate bilinearly and refuse extrapolation.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{splitting_basis, Algebra, Element};
use crate::error::{Error, Result};
use crate::poly::{SemiregularForm, StarLaurent, StarPolynomial, Stem, REAL_COEFF_TOL};
use crate::scalar::Scalar;

// ---------------------------------------------------------------------------
// Domains in the closed upper half-plane
// ---------------------------------------------------------------------------

/// A region of the closed upper half-plane; its circularization is the
/// corresponding subset of the algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum PlanarRegion {
    Rect { alpha0: f64, alpha1: f64, beta0: f64, beta1: f64 },
    AnnularSector { center_alpha: f64, center_beta: f64, r0: f64, r1: f64, theta0: f64, theta1: f64 },
}

impl PlanarRegion {
    pub fn contains(&self, alpha: f64, beta: f64) -> bool {
        match *self {
            PlanarRegion::Rect { alpha0, alpha1, beta0, beta1 } => {
                alpha >= alpha0 && alpha <= alpha1 && beta >= beta0 && beta <= beta1
            }
            PlanarRegion::AnnularSector { center_alpha, center_beta, r0, r1, theta0, theta1 } => {
                let (dx, dy) = (alpha - center_alpha, beta - center_beta);
                let r = dx.hypot(dy);
                if r < r0 || r > r1 {
                    return false;
                }
                let mut th = dy.atan2(dx);
                while th < theta0 {
                    th += std::f64::consts::TAU;
                }
                th <= theta1
            }
        }
    }

    fn min_beta(&self) -> f64 {
        match *self {
            PlanarRegion::Rect { beta0, .. } => beta0,
            PlanarRegion::AnnularSector { center_beta, r0, r1, theta0, theta1, .. } => {
                let mut best = f64::INFINITY;
                let mut consider = |theta: f64| {
                    for r in [r0, r1] {
                        best = best.min(center_beta + r * theta.sin());
                    }
                };
                consider(theta0);
                consider(theta1);
                let mut k = (-std::f64::consts::FRAC_PI_2 - theta0) / std::f64::consts::TAU;
                k = k.ceil();
                let down = -std::f64::consts::FRAC_PI_2 + k * std::f64::consts::TAU;
                if down >= theta0 && down <= theta1 {
                    consider(down);
                }
                best.max(0.0)
            }
        }
    }

    fn meets_real_axis(&self) -> bool {
        self.min_beta() <= 1e-12
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    SliceDomain,
    ProductDomain,
    Union,
}

/// Conjunction of unions of half-plane regions; empty means the whole
/// algebra. Intersections simply stack another part.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DomainSpec {
    parts: Vec<Vec<PlanarRegion>>,
}

impl DomainSpec {
    pub fn whole() -> Self {
        DomainSpec { parts: Vec::new() }
    }

    pub fn from_regions(regions: Vec<PlanarRegion>) -> Self {
        DomainSpec { parts: vec![regions] }
    }

    pub fn rect(alpha0: f64, alpha1: f64, beta0: f64, beta1: f64) -> Self {
        DomainSpec::from_regions(vec![PlanarRegion::Rect { alpha0, alpha1, beta0, beta1 }])
    }

    /// The complement of the real axis, as a large product-domain rectangle.
    pub fn off_axis() -> Self {
        DomainSpec::rect(-1e12, 1e12, 1e-12, 1e12)
    }

    pub fn is_whole(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, alpha: f64, beta: f64) -> bool {
        self.parts.iter().all(|regions| regions.iter().any(|r| r.contains(alpha, beta)))
    }

    pub fn contains_element<T: Scalar>(&self, x: &Element<T>) -> bool {
        if self.is_whole() {
            return true;
        }
        let alpha = x.re().to_f64();
        let beta = x.im().norm().to_f64().max(0.0).sqrt();
        self.contains(alpha, beta)
    }

    pub fn intersect(&self, other: &DomainSpec) -> DomainSpec {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.clone());
        DomainSpec { parts }
    }

    /// Classification per the slice/product dichotomy. Whole-algebra and
    /// single regions are decided directly; stacked intersections are probed
    /// along the real axis.
    pub fn kind(&self) -> DomainKind {
        match self.parts.as_slice() {
            [] => DomainKind::SliceDomain,
            [regions] if regions.len() == 1 => {
                if regions[0].meets_real_axis() {
                    DomainKind::SliceDomain
                } else {
                    DomainKind::ProductDomain
                }
            }
            [_] => DomainKind::Union,
            _ => {
                let probe = (-1000..=1000).map(|k| k as f64 * 0.01);
                if probe.into_iter().any(|alpha| self.contains(alpha, 0.0)) {
                    DomainKind::SliceDomain
                } else {
                    DomainKind::ProductDomain
                }
            }
        }
    }

    /// Probes whether the domain is visibly empty on a coarse lattice.
    pub fn probe_empty(&self) -> bool {
        if self.is_whole() {
            return false;
        }
        let mut bbox = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for regions in &self.parts {
            for r in regions {
                let (a0, a1, b0, b1) = match *r {
                    PlanarRegion::Rect { alpha0, alpha1, beta0, beta1 } => (alpha0, alpha1, beta0, beta1),
                    PlanarRegion::AnnularSector { center_alpha, center_beta, r1, .. } => {
                        (center_alpha - r1, center_alpha + r1, (center_beta - r1).max(0.0), center_beta + r1)
                    }
                };
                bbox.0 = bbox.0.min(a0);
                bbox.1 = bbox.1.max(a1);
                bbox.2 = bbox.2.min(b0);
                bbox.3 = bbox.3.max(b1);
            }
        }
        let n = 128;
        for ia in 0..=n {
            for ib in 0..=n {
                let alpha = bbox.0 + (bbox.1 - bbox.0) * ia as f64 / n as f64;
                let beta = bbox.2 + (bbox.3 - bbox.2) * ib as f64 / n as f64;
                if self.contains(alpha, beta) {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Sampled stems
// ---------------------------------------------------------------------------

/// Spherical value / derivative samples on a rectangular half-plane lattice,
/// interpolated bilinearly. Real-axis derivative rows are only meaningful
/// when `ds_on_axis` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct StemGrid<T: Scalar> {
    algebra: Algebra,
    alpha0: T,
    alpha1: T,
    beta0: T,
    beta1: T,
    na: usize,
    nb: usize,
    vs: Vec<Element<T>>,
    ds: Vec<Element<T>>,
    ds_on_axis: bool,
}

impl<T: Scalar> StemGrid<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        algebra: Algebra,
        alpha0: T,
        alpha1: T,
        beta0: T,
        beta1: T,
        na: usize,
        nb: usize,
        vs: Vec<Element<T>>,
        ds: Vec<Element<T>>,
        ds_on_axis: bool,
    ) -> Result<Self> {
        if na < 2 || nb < 2 {
            return Err(Error::GridTooSmall);
        }
        if beta0.to_f64() < 0.0 || beta0 >= beta1 || alpha0 >= alpha1 {
            return Err(Error::InvalidInput("grid rectangle is degenerate".into()));
        }
        if vs.len() != na * nb || ds.len() != na * nb {
            return Err(Error::InvalidInput("sample arrays do not match the lattice".into()));
        }
        Ok(StemGrid { algebra, alpha0, alpha1, beta0, beta1, na, nb, vs, ds, ds_on_axis })
    }

    /// Samples closures for `vs` and `ds` on an `na x nb` lattice.
    pub fn sample(
        algebra: Algebra,
        rect: (T, T, T, T),
        na: usize,
        nb: usize,
        stem_fn: impl Fn(&T, &T) -> (Element<T>, Element<T>),
        ds_on_axis: bool,
    ) -> Result<Self> {
        let (alpha0, alpha1, beta0, beta1) = rect;
        let mut vs = Vec::with_capacity(na * nb);
        let mut ds = Vec::with_capacity(na * nb);
        for ib in 0..nb {
            let beta = lattice_point(&beta0, &beta1, ib, nb);
            for ia in 0..na {
                let alpha = lattice_point(&alpha0, &alpha1, ia, na);
                let (v, d) = stem_fn(&alpha, &beta);
                vs.push(v);
                ds.push(d);
            }
        }
        StemGrid::new(algebra, alpha0, alpha1, beta0, beta1, na, nb, vs, ds, ds_on_axis)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn counts(&self) -> (usize, usize) {
        (self.na, self.nb)
    }

    pub fn rect(&self) -> (T, T, T, T) {
        (self.alpha0.clone(), self.alpha1.clone(), self.beta0.clone(), self.beta1.clone())
    }

    pub fn rect_f64(&self) -> (f64, f64, f64, f64) {
        (self.alpha0.to_f64(), self.alpha1.to_f64(), self.beta0.to_f64(), self.beta1.to_f64())
    }

    pub fn ds_on_axis(&self) -> bool {
        self.ds_on_axis
    }

    pub fn node_alpha(&self, ia: usize) -> T {
        lattice_point(&self.alpha0, &self.alpha1, ia, self.na)
    }

    pub fn node_beta(&self, ib: usize) -> T {
        lattice_point(&self.beta0, &self.beta1, ib, self.nb)
    }

    pub fn samples(&self) -> (&[Element<T>], &[Element<T>]) {
        (&self.vs, &self.ds)
    }

    /// Pointwise transformation of the samples onto a new grid.
    pub fn map(&self, mut op: impl FnMut(&T, &T, &Element<T>, &Element<T>) -> (Element<T>, Element<T>)) -> Self {
        let mut vs = Vec::with_capacity(self.vs.len());
        let mut ds = Vec::with_capacity(self.ds.len());
        for ib in 0..self.nb {
            let beta = self.node_beta(ib);
            for ia in 0..self.na {
                let alpha = self.node_alpha(ia);
                let idx = ib * self.na + ia;
                let (v, d) = op(&alpha, &beta, &self.vs[idx], &self.ds[idx]);
                vs.push(v);
                ds.push(d);
            }
        }
        StemGrid { vs, ds, ..self.clone() }
    }

    fn locate(lo: &T, hi: &T, n: usize, value: &T) -> Result<(usize, T)> {
        if value < lo || value > hi {
            return Err(Error::OutOfDomain);
        }
        let span = hi.clone() - lo.clone();
        let t = (value.clone() - lo.clone()) * T::from_int((n - 1) as i64) / span;
        let cell = (t.to_f64().floor() as usize).min(n - 2);
        let frac = t - T::from_int(cell as i64);
        Ok((cell, frac))
    }

    /// Bilinear interpolation; exact at lattice nodes. Refuses extrapolation.
    pub fn stem_at(&self, alpha: &T, beta: &T) -> Result<Stem<T>> {
        let (ia, u) = Self::locate(&self.alpha0, &self.alpha1, self.na, alpha)?;
        let (ib, v) = Self::locate(&self.beta0, &self.beta1, self.nb, beta)?;
        let blend = |data: &[Element<T>]| {
            let idx = |a: usize, b: usize| b * self.na + a;
            let one = T::one();
            let w00 = (one.clone() - u.clone()) * (one.clone() - v.clone());
            let w10 = u.clone() * (one.clone() - v.clone());
            let w01 = (one.clone() - u.clone()) * v.clone();
            let w11 = u.clone() * v.clone();
            data[idx(ia, ib)]
                .scale(&w00)
                .add(&data[idx(ia + 1, ib)].scale(&w10))
                .add(&data[idx(ia, ib + 1)].scale(&w01))
                .add(&data[idx(ia + 1, ib + 1)].scale(&w11))
        };
        Ok(Stem { value: blend(&self.vs), derivative: blend(&self.ds) })
    }
}

fn lattice_point<T: Scalar>(lo: &T, hi: &T, index: usize, count: usize) -> T {
    lo.clone() + (hi.clone() - lo.clone()) * T::from_ratio(index as i64, (count - 1) as i64)
}

// ---------------------------------------------------------------------------
// Analytic stems (exact closures)
// ---------------------------------------------------------------------------

type StemFn<T> = dyn Fn(&T, &T) -> Result<Stem<T>> + Send + Sync;

/// Stem given in closed form by a closure `(alpha, beta) -> (vs, ds)`.
/// Used for slice functions that are not polynomial, e.g. half-slice
/// constructions involving `im/|im|`.
#[derive(Clone)]
pub struct AnalyticStem<T: Scalar> {
    algebra: Algebra,
    name: String,
    stem: Arc<StemFn<T>>,
}

impl<T: Scalar> AnalyticStem<T> {
    pub fn new(
        algebra: Algebra,
        name: impl Into<String>,
        stem: impl Fn(&T, &T) -> Result<Stem<T>> + Send + Sync + 'static,
    ) -> Self {
        AnalyticStem { algebra, name: name.into(), stem: Arc::new(stem) }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn stem_at(&self, alpha: &T, beta: &T) -> Result<Stem<T>> {
        (self.stem)(alpha, beta)
    }
}

impl<T: Scalar> fmt::Debug for AnalyticStem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnalyticStem({})", self.name)
    }
}

// ---------------------------------------------------------------------------
// Slice functions
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum Body<T: Scalar> {
    Poly(StarPolynomial<T>),
    Semiregular(SemiregularForm<T>),
    Laurent(StarLaurent<T>),
    Grid(StemGrid<T>),
    Analytic(AnalyticStem<T>),
}

/// A slice function with its half-plane domain.
#[derive(Clone, Debug)]
pub struct SliceFunction<T: Scalar> {
    body: Body<T>,
    domain: DomainSpec,
}

impl<T: Scalar> SliceFunction<T> {
    pub fn poly(p: StarPolynomial<T>) -> Self {
        SliceFunction { body: Body::Poly(p), domain: DomainSpec::whole() }
    }

    pub fn semiregular(s: SemiregularForm<T>) -> Self {
        if s.is_polynomial() {
            SliceFunction::poly(s.numerator().clone())
        } else {
            SliceFunction { body: Body::Semiregular(s), domain: DomainSpec::whole() }
        }
    }

    pub fn laurent(l: StarLaurent<T>) -> Self {
        SliceFunction { body: Body::Laurent(l), domain: DomainSpec::whole() }
    }

    pub fn grid(g: StemGrid<T>) -> Self {
        let (a0, a1, b0, b1) = g.rect_f64();
        let domain = DomainSpec::rect(a0, a1, b0, b1);
        SliceFunction { body: Body::Grid(g), domain }
    }

    pub fn analytic(a: AnalyticStem<T>, domain: DomainSpec) -> Self {
        SliceFunction { body: Body::Analytic(a), domain }
    }

    pub fn constant(value: Element<T>) -> Self {
        SliceFunction::poly(StarPolynomial::constant(value))
    }

    pub fn with_domain(mut self, domain: DomainSpec) -> Self {
        self.domain = domain;
        self
    }

    pub fn body(&self) -> &Body<T> {
        &self.body
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn algebra(&self) -> Algebra {
        match &self.body {
            Body::Poly(p) => p.algebra(),
            Body::Semiregular(s) => s.algebra(),
            Body::Laurent(l) => l.algebra(),
            Body::Grid(g) => g.algebra(),
            Body::Analytic(a) => a.algebra(),
        }
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self.body, Body::Poly(_) | Body::Semiregular(_) | Body::Laurent(_))
    }

    pub fn as_poly(&self) -> Option<&StarPolynomial<T>> {
        match &self.body {
            Body::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_semiregular(&self) -> Option<SemiregularForm<T>> {
        match &self.body {
            Body::Poly(p) => Some(SemiregularForm::from_poly(p.clone())),
            Body::Semiregular(s) => Some(s.clone()),
            _ => None,
        }
    }

    /// Stem on the sphere `alpha + beta S` (`beta >= 0`). Closed forms square
    /// `beta` and stay exact; sampled and analytic stems use `beta` directly.
    pub fn stem_on_sphere(&self, alpha: &T, beta: &T) -> Result<Stem<T>> {
        match &self.body {
            Body::Poly(p) => Ok(p.stem(alpha, &(beta.clone() * beta.clone()))),
            Body::Semiregular(s) => s.stem(alpha, &(beta.clone() * beta.clone())),
            Body::Laurent(l) => l.stem(alpha, &(beta.clone() * beta.clone())),
            Body::Grid(g) => g.stem_at(alpha, beta),
            Body::Analytic(a) => a.stem_at(alpha, beta),
        }
    }

    /// Stem from `(alpha, beta^2)`; exact for closed forms even when `beta`
    /// itself is irrational. Sampled bodies need the square root.
    pub fn stem_from_sq(&self, alpha: &T, beta_sq: &T) -> Result<Stem<T>> {
        match &self.body {
            Body::Poly(p) => Ok(p.stem(alpha, beta_sq)),
            Body::Semiregular(s) => s.stem(alpha, beta_sq),
            Body::Laurent(l) => l.stem(alpha, beta_sq),
            Body::Grid(_) | Body::Analytic(_) => {
                let beta = Scalar::sqrt(beta_sq).ok_or(Error::IrrationalValue("sphere radius"))?;
                self.stem_on_sphere(alpha, &beta)
            }
        }
    }

    fn domain_check(&self, x: &Element<T>) -> Result<()> {
        if self.domain.contains_element(x) {
            Ok(())
        } else {
            Err(Error::OutOfDomain)
        }
    }

    /// Evaluation: direct for closed forms, `vs + im(x) ds` for stems.
    pub fn evaluate(&self, x: &Element<T>) -> Result<Element<T>> {
        self.domain_check(x)?;
        match &self.body {
            Body::Poly(p) => Ok(p.eval(x)),
            Body::Semiregular(s) => s.eval(x),
            Body::Laurent(l) => l.eval(x),
            Body::Grid(_) | Body::Analytic(_) => {
                let alpha = x.re();
                let im = x.im();
                let beta_sq = im.norm();
                let beta =
                    Scalar::sqrt(&beta_sq).ok_or(Error::IrrationalValue("sphere radius"))?;
                let stem = self.stem_on_sphere(&alpha, &beta)?;
                Ok(stem.value.add(&im.mul(&stem.derivative)))
            }
        }
    }

    /// Spherical value `vs f` at the sphere through `q`.
    pub fn spherical_value(&self, q: &Element<T>) -> Result<Element<T>> {
        self.domain_check(q)?;
        Ok(self.stem_from_sq(&q.re(), &q.im().norm())?.value)
    }

    /// Spherical derivative at the sphere through `q`. For closed forms the
    /// real axis uses the symbolic extension; sampled grids require stored
    /// axis limits.
    pub fn spherical_derivative(&self, q: &Element<T>) -> Result<Element<T>> {
        self.domain_check(q)?;
        let beta_sq = q.im().norm();
        let on_axis = beta_sq.is_zero()
            || (!T::EXACT && beta_sq.to_f64() < crate::algebra::NORM_ZERO_TOL);
        if on_axis {
            if let Body::Grid(g) = &self.body {
                if !g.ds_on_axis() {
                    return Err(Error::RealPointDerivative);
                }
            }
        }
        Ok(self.stem_from_sq(&q.re(), &beta_sq)?.derivative)
    }

    /// Slice conjugate `f^c`: conjugates the stem componentwise.
    pub fn slice_conjugate(&self) -> Self {
        let body = match &self.body {
            Body::Poly(p) => Body::Poly(p.star_conj()),
            Body::Semiregular(s) => Body::Semiregular(s.star_conj()),
            Body::Laurent(l) => Body::Laurent(l.star_conj()),
            Body::Grid(g) => Body::Grid(g.map(|_, _, v, d| (v.conj(), d.conj()))),
            Body::Analytic(a) => {
                let inner = a.clone();
                Body::Analytic(AnalyticStem::new(
                    a.algebra(),
                    format!("conj({})", a.name),
                    move |alpha, beta| {
                        let s = inner.stem_at(alpha, beta)?;
                        Ok(Stem { value: s.value.conj(), derivative: s.derivative.conj() })
                    },
                ))
            }
        };
        SliceFunction { body, domain: self.domain.clone() }
    }

    /// Normal function `N(f) = f * f^c`, slice preserving by tameness.
    pub fn normal(&self) -> Self {
        let algebra = self.algebra();
        let body = match &self.body {
            Body::Poly(p) => Body::Poly(p.normal()),
            Body::Semiregular(s) => Body::Semiregular(s.normal()),
            Body::Laurent(l) => {
                Body::Laurent(l.star_mul(&l.star_conj()).expect("same annulus"))
            }
            Body::Grid(g) => Body::Grid(g.map(|_, beta, v, d| normal_stem(algebra, beta, v, d))),
            Body::Analytic(a) => {
                let inner = a.clone();
                Body::Analytic(AnalyticStem::new(
                    algebra,
                    format!("normal({})", a.name),
                    move |alpha, beta| {
                        let s = inner.stem_at(alpha, beta)?;
                        let (v, d) = normal_stem(inner.algebra(), beta, &s.value, &s.derivative);
                        Ok(Stem { value: v, derivative: d })
                    },
                ))
            }
        };
        SliceFunction { body, domain: self.domain.clone() }
    }

    /// Slice product via coefficient convolution for closed forms and the
    /// stem product formula pointwise otherwise.
    pub fn slice_product(&self, other: &Self) -> Result<Self> {
        if self.algebra() != other.algebra() {
            return Err(Error::AlgebraMismatch { left: self.algebra(), right: other.algebra() });
        }
        let domain = self.domain.intersect(&other.domain);
        if domain.probe_empty() {
            return Err(Error::EmptyDomainIntersection);
        }
        let body = match (&self.body, &other.body) {
            (Body::Poly(p), Body::Poly(q)) => Body::Poly(p.star_mul(q)),
            (Body::Poly(_) | Body::Semiregular(_), Body::Poly(_) | Body::Semiregular(_)) => {
                let lhs = self.as_semiregular().expect("closed form");
                let rhs = other.as_semiregular().expect("closed form");
                let prod = lhs.star_mul(&rhs);
                if prod.is_polynomial() {
                    Body::Poly(prod.numerator().clone())
                } else {
                    Body::Semiregular(prod)
                }
            }
            (Body::Laurent(a), Body::Laurent(b)) => Body::Laurent(a.star_mul(b)?),
            (Body::Laurent(a), Body::Poly(p)) => {
                let (inner, outer) = a.radii();
                let shifted = StarLaurent::from_poly(p, a.center().clone(), inner, outer)?;
                Body::Laurent(a.star_mul(&shifted)?)
            }
            (Body::Poly(p), Body::Laurent(b)) => {
                let (inner, outer) = b.radii();
                let shifted = StarLaurent::from_poly(p, b.center().clone(), inner, outer)?;
                Body::Laurent(shifted.star_mul(b)?)
            }
            (Body::Grid(g), _) => Body::Grid(product_on_grid(g, other)?),
            (_, Body::Grid(g)) => Body::Grid(product_grid_rhs(self, g)?),
            (Body::Analytic(_), _) | (_, Body::Analytic(_)) => {
                let lhs = self.clone();
                let rhs = other.clone();
                Body::Analytic(AnalyticStem::new(
                    self.algebra(),
                    "product",
                    move |alpha, beta| {
                        let sf = lhs.stem_on_sphere(alpha, beta)?;
                        let sg = rhs.stem_on_sphere(alpha, beta)?;
                        Ok(product_stem(beta, &sf, &sg))
                    },
                ))
            }
            _ => {
                return Err(Error::Unsupported(
                    "slice product of these closed forms is not representable".into(),
                ))
            }
        };
        Ok(SliceFunction { body, domain })
    }

    /// Slice preserving test: exact on closed forms, sampled otherwise.
    pub fn is_slice_preserving(&self, sample_count: usize) -> bool {
        let real_elem = |e: &Element<T>| {
            if T::EXACT {
                e.im().coords().iter().all(Scalar::is_zero)
            } else {
                e.im().abs_f64() <= REAL_COEFF_TOL * (1.0 + e.abs_f64())
            }
        };
        match &self.body {
            Body::Poly(p) => p.is_real(),
            Body::Semiregular(s) => s.is_real(),
            Body::Laurent(l) => l.coeffs().values().all(real_elem),
            Body::Grid(g) => {
                let (vs, ds) = g.samples();
                vs.iter().all(real_elem) && ds.iter().all(real_elem)
            }
            Body::Analytic(a) => {
                let n = sample_count.max(4);
                let side = (n as f64).sqrt().ceil() as usize;
                let bbox = self.domain_bbox();
                for ia in 0..side {
                    for ib in 0..side {
                        let alpha = bbox.0 + (bbox.1 - bbox.0) * (ia as f64 + 0.5) / side as f64;
                        let beta = bbox.2 + (bbox.3 - bbox.2) * (ib as f64 + 0.5) / side as f64;
                        if !self.domain.contains(alpha, beta) {
                            continue;
                        }
                        let (ta, tb) = (T::from_ratio((alpha * 1e9) as i64, 1_000_000_000), T::from_ratio((beta * 1e9) as i64, 1_000_000_000));
                        match a.stem_at(&ta, &tb) {
                            Ok(s) => {
                                if !real_elem(&s.value) || !real_elem(&s.derivative) {
                                    return false;
                                }
                            }
                            Err(_) => continue,
                        }
                    }
                }
                true
            }
        }
    }

    fn domain_bbox(&self) -> (f64, f64, f64, f64) {
        if self.domain.is_whole() {
            return (-2.0, 2.0, 0.0, 2.0);
        }
        let mut bbox = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for regions in &self.domain.parts {
            for r in regions {
                let (a0, a1, b0, b1) = match *r {
                    PlanarRegion::Rect { alpha0, alpha1, beta0, beta1 } => (alpha0, alpha1, beta0, beta1),
                    PlanarRegion::AnnularSector { center_alpha, center_beta, r1, .. } => {
                        (center_alpha - r1, center_alpha + r1, (center_beta - r1).max(0.0), center_beta + r1)
                    }
                };
                bbox.0 = bbox.0.min(a0);
                bbox.1 = bbox.1.max(a1);
                bbox.2 = bbox.2.min(b0);
                bbox.3 = bbox.3.max(b1);
            }
        }
        (bbox.0.max(-1e6), bbox.1.min(1e6), bbox.2.max(0.0), bbox.3.min(1e6))
    }
}

/// Stem product rule: `vs = vf vg - b^2 df dg`, `ds = vf dg + df vg`.
pub fn product_stem<T: Scalar>(beta: &T, f: &Stem<T>, g: &Stem<T>) -> Stem<T> {
    let beta_sq = beta.clone() * beta.clone();
    let value = f
        .value
        .mul(&g.value)
        .sub(&f.derivative.mul(&g.derivative).scale(&beta_sq));
    let derivative = f.value.mul(&g.derivative).add(&f.derivative.mul(&g.value));
    Stem { value, derivative }
}

/// Normal stem rule: `vs = n(vf) - b^2 n(df)` and `ds = t(vf df^c)`, both
/// real scalars.
fn normal_stem<T: Scalar>(
    algebra: Algebra,
    beta: &T,
    v: &Element<T>,
    d: &Element<T>,
) -> (Element<T>, Element<T>) {
    let beta_sq = beta.clone() * beta.clone();
    let vs = v.norm() - beta_sq * d.norm();
    let ds = v.mul(&d.conj()).trace();
    (Element::scalar(algebra, vs), Element::scalar(algebra, ds))
}

fn product_on_grid<T: Scalar>(g: &StemGrid<T>, other: &SliceFunction<T>) -> Result<StemGrid<T>> {
    let mut failure = None;
    let out = g.map(|alpha, beta, v, d| {
        match other.stem_on_sphere(alpha, beta) {
            Ok(sg) => {
                let s = product_stem(beta, &Stem { value: v.clone(), derivative: d.clone() }, &sg);
                (s.value, s.derivative)
            }
            Err(e) => {
                failure.get_or_insert(e);
                (v.clone(), d.clone())
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn product_grid_rhs<T: Scalar>(lhs: &SliceFunction<T>, g: &StemGrid<T>) -> Result<StemGrid<T>> {
    let mut failure = None;
    let out = g.map(|alpha, beta, v, d| {
        match lhs.stem_on_sphere(alpha, beta) {
            Ok(sf) => {
                let s = product_stem(beta, &sf, &Stem { value: v.clone(), derivative: d.clone() });
                (s.value, s.derivative)
            }
            Err(e) => {
                failure.get_or_insert(e);
                (v.clone(), d.clone())
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

// ---------------------------------------------------------------------------
// Splitting-lemma decomposition
// ---------------------------------------------------------------------------

/// Complex component grids of `f` restricted to the slice of `J`, with the
/// maximal discretized Cauchy-Riemann defect over interior nodes.
#[derive(Clone, Debug)]
pub struct SplitComponents {
    pub components: Vec<Vec<(f64, f64)>>,
    pub na: usize,
    pub nb: usize,
    pub rect: (f64, f64, f64, f64),
    pub cr_residual: f64,
}

/// Decomposes `f` on the slice of `J` in a splitting basis and measures
/// holomorphy of the components by central differences.
pub fn split_components<T: Scalar>(
    f: &SliceFunction<T>,
    unit: &Element<T>,
    rect: (f64, f64, f64, f64),
    na: usize,
    nb: usize,
) -> Result<SplitComponents> {
    if !unit.is_imaginary_unit() {
        return Err(Error::NotImaginaryUnit);
    }
    if na < 3 || nb < 3 {
        return Err(Error::GridTooSmall);
    }
    let basis = splitting_basis(unit)?;
    let ncomp = basis.len() / 2;
    let (a0, a1, b0, b1) = rect;
    let ha = (a1 - a0) / (na - 1) as f64;
    let hb = (b1 - b0) / (nb - 1) as f64;
    let mut components = vec![vec![(0.0, 0.0); na * nb]; ncomp];
    for ib in 0..nb {
        for ia in 0..na {
            let alpha = T::from_ratio(((a0 + ha * ia as f64) * 1e12) as i64, 1_000_000_000_000);
            let beta = T::from_ratio(((b0 + hb * ib as f64) * 1e12) as i64, 1_000_000_000_000);
            let x = Element::from_slice_point(unit, alpha, beta);
            let v = f.evaluate(&x)?;
            for (n, comp) in components.iter_mut().enumerate() {
                let re = v.dot(&basis[2 * n]).to_f64();
                let im = v.dot(&basis[2 * n + 1]).to_f64();
                comp[ib * na + ia] = (re, im);
            }
        }
    }
    let mut residual: f64 = 0.0;
    for comp in &components {
        for ib in 1..nb - 1 {
            for ia in 1..na - 1 {
                let at = |a: usize, b: usize| comp[b * na + a];
                let dda = (
                    (at(ia + 1, ib).0 - at(ia - 1, ib).0) / (2.0 * ha),
                    (at(ia + 1, ib).1 - at(ia - 1, ib).1) / (2.0 * ha),
                );
                let ddb = (
                    (at(ia, ib + 1).0 - at(ia, ib - 1).0) / (2.0 * hb),
                    (at(ia, ib + 1).1 - at(ia, ib - 1).1) / (2.0 * hb),
                );
                // Cauchy-Riemann: d/da + J d/db = 0, J acting as (a,b) -> (-b,a).
                let r = (dda.0 - ddb.1, dda.1 + ddb.0);
                residual = residual.max(r.0.hypot(r.1));
            }
        }
    }
    Ok(SplitComponents { components, na, nb, rect, cr_residual: residual })
}

// ---------------------------------------------------------------------------
// Ready-made half-slice examples used across tests and probes
// ---------------------------------------------------------------------------

/// The slice function `1 + (im(x)/|im(x)|) J0` on the complement of the real
/// axis: vanishes exactly on the positive half-slice of `J0` and has
/// identically zero normal function.
pub fn half_slice_vanishing_function(unit: Element<f64>) -> SliceFunction<f64> {
    let algebra = unit.algebra();
    let stem = AnalyticStem::new(algebra, "1 + (im/|im|) J0", move |_, beta: &f64| {
        if *beta <= 0.0 {
            return Err(Error::RealPointDerivative);
        }
        Ok(Stem {
            value: Element::one(algebra),
            derivative: unit.scale(&(1.0 / *beta)),
        })
    });
    SliceFunction::analytic(stem, DomainSpec::off_axis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::delta_poly;
    use num::BigRational;

    type Q = BigRational;

    fn unit(idx: usize) -> Element<Q> {
        Element::basis(Algebra::Octonion, idx)
    }

    fn h_poly() -> SliceFunction<Q> {
        // l + 2 x i
        SliceFunction::poly(StarPolynomial::new(
            Algebra::Octonion,
            vec![unit(4), unit(1).scale(&Q::from_int(2))],
        ))
    }

    #[test]
    fn evaluate_h_at_j() {
        let j = unit(2);
        let got = h_poly().evaluate(&j).unwrap();
        // l + 2 j i = l - 2k
        assert_eq!(got, Element::from_ints(Algebra::Octonion, &[0, 0, 0, -2, 1, 0, 0, 0]));
    }

    #[test]
    fn evaluation_at_real_points_is_the_spherical_value() {
        let f = h_poly();
        let x = Element::scalar(Algebra::Octonion, Q::from_ratio(7, 3));
        assert_eq!(f.evaluate(&x).unwrap(), f.spherical_value(&x).unwrap());
    }

    #[test]
    fn representation_formula_on_random_points() {
        let f = h_poly();
        let q = Element::from_ints(Algebra::Octonion, &[2, 1, -1, 3, 0, 2, 1, 1]);
        let vs = f.spherical_value(&q).unwrap();
        let ds = f.spherical_derivative(&q).unwrap();
        // vs = (f(q) + f(q^c)) / 2 and ds = im(q)^{-1} (f(q) - f(q^c)) / 2
        let fq = f.evaluate(&q).unwrap();
        let fqc = f.evaluate(&q.conj()).unwrap();
        let half = Q::from_ratio(1, 2);
        assert_eq!(vs, fq.add(&fqc).scale(&half));
        let im_inv = q.im().inverse().unwrap();
        assert_eq!(ds, im_inv.mul(&fq.sub(&fqc)).scale(&half));
        assert_eq!(fq, vs.add(&q.im().mul(&ds)));
    }

    #[test]
    fn spherical_derivative_of_x_squared_is_2_alpha() {
        let f = SliceFunction::poly(StarPolynomial::<Q>::variable(Algebra::Octonion).star_mul(
            &StarPolynomial::variable(Algebra::Octonion),
        ));
        let q = Element::from_slice_point(&unit(2), Q::from_ratio(3, 2), Q::from_int(2));
        assert_eq!(
            f.spherical_derivative(&q).unwrap(),
            Element::scalar(Algebra::Octonion, Q::from_int(3))
        );
        // vs(x^2 + 1) = alpha^2 - beta^2 + 1
        let dpoly = SliceFunction::poly(delta_poly(&unit(1)));
        assert_eq!(
            dpoly.spherical_value(&q).unwrap(),
            Element::scalar(Algebra::Octonion, Q::from_ratio(9, 4) - Q::from_int(4) + Q::from_int(1))
        );
    }

    #[test]
    fn spherical_derivative_with_cubic_coefficients() {
        // f = -i + (x^2 + 1)(j + x l): ds = 2 a j + (3 a^2 - b^2 + 1) l.
        let x = StarPolynomial::<Q>::variable(Algebra::Octonion);
        let x2p1 = delta_poly(&unit(1));
        let inner = StarPolynomial::new(Algebra::Octonion, vec![unit(2)])
            .add(&x.star_mul(&StarPolynomial::constant(unit(4))));
        let f = SliceFunction::poly(
            x2p1.star_mul(&inner).add(&StarPolynomial::constant(unit(1).neg())),
        );
        let (alpha, beta) = (Q::from_ratio(1, 2), Q::from_int(2));
        let q = Element::from_slice_point(&unit(1), alpha.clone(), beta.clone());
        let ds = f.spherical_derivative(&q).unwrap();
        let expect = unit(2)
            .scale(&(alpha.clone() * Q::from_int(2)))
            .add(&unit(4).scale(&(Q::from_int(3) * alpha.clone() * alpha.clone()
                - beta.clone() * beta.clone()
                + Q::from_int(1))));
        assert_eq!(ds, expect);
    }

    #[test]
    fn product_matches_convolution_and_pointwise_rule() {
        let f = SliceFunction::poly(StarPolynomial::linear(&unit(1)));
        let g = SliceFunction::poly(StarPolynomial::linear(&unit(2)));
        let fg = f.slice_product(&g).unwrap();
        let p = fg.as_poly().unwrap();
        assert_eq!(p.coeff(0), unit(3));
        assert_eq!(p.coeff(1), unit(1).add(&unit(2)).neg());
        // A slice preserving left factor multiplies pointwise.
        let d = SliceFunction::poly(delta_poly(&unit(1)));
        let dg = d.slice_product(&g).unwrap();
        let x = Element::from_ints(Algebra::Octonion, &[1, 0, 2, 0, 1, 0, 0, 0]);
        assert_eq!(
            dg.evaluate(&x).unwrap(),
            d.evaluate(&x).unwrap().mul(&g.evaluate(&x).unwrap())
        );
        // x * c has coefficients (0, c).
        let c = Element::<Q>::from_ints(Algebra::Octonion, &[1, 2, 3, 4, 5, 6, 7, 8]);
        let xc = SliceFunction::poly(StarPolynomial::variable(Algebra::Octonion))
            .slice_product(&SliceFunction::constant(c.clone()))
            .unwrap();
        assert_eq!(xc.as_poly().unwrap().coeff(0), Element::zero(Algebra::Octonion));
        assert_eq!(xc.as_poly().unwrap().coeff(1), c);
    }

    #[test]
    fn conjugate_and_normal_of_h() {
        let h = h_poly();
        let hc = h.slice_conjugate();
        let j = unit(2);
        // h^c(j) = 2k - l
        assert_eq!(
            hc.evaluate(&j).unwrap(),
            Element::from_ints(Algebra::Octonion, &[0, 0, 0, 2, -1, 0, 0, 0])
        );
        // (f^c)^c = f
        assert_eq!(
            hc.slice_conjugate().as_poly().unwrap(),
            h.as_poly().unwrap()
        );
        let n = h.normal();
        assert!(n.is_slice_preserving(16));
        assert_eq!(
            n.as_poly().unwrap().real_coeffs().unwrap(),
            vec![Q::from_int(1), Q::from_int(0), Q::from_int(4)]
        );
        // N(x - y) = Delta_y
        let y = Element::<Q>::from_ints(Algebra::Octonion, &[1, 2, 0, -1, 0, 0, 3, 0]);
        let ny = SliceFunction::poly(StarPolynomial::linear(&y)).normal();
        assert_eq!(ny.as_poly().unwrap(), &delta_poly(&y));
    }

    #[test]
    fn half_slice_function_vanishes_on_its_half_slice() {
        let f = half_slice_vanishing_function(Element::basis(Algebra::Octonion, 1));
        // At x = b*i with b > 0: f = 1 + i*i = 0.
        for b in [0.5f64, 1.0, 2.5] {
            let x = Element::basis(Algebra::Octonion, 1).scale(&b);
            assert!(f.evaluate(&x).unwrap().abs_f64() < 1e-14);
        }
        // Off the half slice the value is nonzero.
        let x = Element::basis(Algebra::Octonion, 2).scale(&1.5);
        assert!(f.evaluate(&x).unwrap().abs_f64() > 0.5);
        // N(f) vanishes identically.
        let n = f.normal();
        for (a, b) in [(0.3, 0.7), (-1.0, 0.2), (2.0, 2.0)] {
            let x = Element::from_slice_point(&Element::basis(Algebra::Octonion, 3), a, b);
            assert!(n.evaluate(&x).unwrap().abs_f64() < 1e-12);
        }
        // Real points are outside the punctured domain.
        assert_eq!(
            f.evaluate(&Element::scalar(Algebra::Octonion, 1.0)).unwrap_err(),
            Error::OutOfDomain
        );
    }

    #[test]
    fn grid_interpolation_is_exact_at_nodes_and_refuses_extrapolation() {
        let alg = Algebra::Quaternion;
        let grid = StemGrid::<f64>::sample(
            alg,
            (0.0, 1.0, 0.0, 1.0),
            5,
            5,
            |a, b| {
                (
                    Element::scalar(alg, a + 2.0 * b),
                    Element::basis(alg, 1).scale(&(a - b)),
                )
            },
            true,
        )
        .unwrap();
        let f = SliceFunction::grid(grid);
        let q = Element::from_slice_point(&Element::basis(alg, 1), 0.5, 0.75);
        let vs = f.spherical_value(&q).unwrap();
        assert!((vs.re() - 2.0) < 1e-14);
        let outside = Element::from_slice_point(&Element::basis(alg, 1), 1.5, 0.5);
        assert_eq!(f.evaluate(&outside).unwrap_err(), Error::OutOfDomain);
    }

    #[test]
    fn grid_without_axis_limits_rejects_real_derivatives() {
        let alg = Algebra::Complex;
        let grid = StemGrid::<f64>::sample(
            alg,
            (-1.0, 1.0, 0.0, 1.0),
            4,
            4,
            |a, _| (Element::scalar(alg, *a), Element::zero(alg)),
            false,
        )
        .unwrap();
        let f = SliceFunction::grid(grid);
        let x = Element::scalar(alg, 0.25);
        assert_eq!(f.spherical_derivative(&x).unwrap_err(), Error::RealPointDerivative);
        assert!(f.spherical_value(&x).is_ok());
    }

    #[test]
    fn split_components_of_x_squared_are_holomorphic() {
        let alg = Algebra::Octonion;
        let x2 = StarPolynomial::<f64>::variable(alg).star_mul(&StarPolynomial::variable(alg));
        let f = SliceFunction::poly(x2);
        let i = Element::basis(alg, 1);
        let rep = split_components(&f, &i, (-1.0, 1.0, -1.0, 1.0), 21, 21).unwrap();
        assert_eq!(rep.components.len(), 4);
        // z^2 lands entirely in the first component.
        for comp in &rep.components[1..] {
            for &(re, im) in comp {
                assert!(re.abs() < 1e-12 && im.abs() < 1e-12);
            }
        }
        assert!(rep.cr_residual < 1e-10, "residual {}", rep.cr_residual);

        let h = SliceFunction::poly(StarPolynomial::new(
            alg,
            vec![Element::basis(alg, 4), Element::basis(alg, 1).scale(&2.0)],
        ));
        let rep = split_components(&h, &i, (-1.0, 1.0, -1.0, 1.0), 15, 15).unwrap();
        assert!(rep.cr_residual < 1e-10);
    }

    #[test]
    fn split_components_detect_non_holomorphic_stems() {
        // vs = alpha, ds = -1 induces x -> x^c, which is nowhere regular.
        let alg = Algebra::Quaternion;
        let grid = StemGrid::<f64>::sample(
            alg,
            (-1.0, 1.0, 0.0, 1.0),
            9,
            9,
            |a, _| (Element::scalar(alg, *a), Element::one(alg).neg()),
            true,
        )
        .unwrap();
        let f = SliceFunction::grid(grid);
        let i = Element::basis(alg, 1);
        let rep = split_components(&f, &i, (-0.9, 0.9, 0.05, 0.95), 9, 9).unwrap();
        assert!(rep.cr_residual > 1.5, "residual {}", rep.cr_residual);
    }

    #[test]
    fn domain_kinds() {
        assert_eq!(DomainSpec::whole().kind(), DomainKind::SliceDomain);
        assert_eq!(DomainSpec::rect(-1.0, 1.0, 0.0, 1.0).kind(), DomainKind::SliceDomain);
        assert_eq!(DomainSpec::rect(-1.0, 1.0, 0.5, 1.0).kind(), DomainKind::ProductDomain);
        let union = DomainSpec::from_regions(vec![
            PlanarRegion::Rect { alpha0: -1.0, alpha1: 1.0, beta0: 0.0, beta1: 1.0 },
            PlanarRegion::Rect { alpha0: 2.0, alpha1: 3.0, beta0: 0.0, beta1: 1.0 },
        ]);
        assert_eq!(union.kind(), DomainKind::Union);
    }

    #[test]
    fn disjoint_domains_cannot_multiply() {
        let alg = Algebra::Quaternion;
        let f = SliceFunction::<f64>::poly(StarPolynomial::variable(alg))
            .with_domain(DomainSpec::rect(-1.0, 0.0, 0.0, 1.0));
        let g = SliceFunction::<f64>::poly(StarPolynomial::variable(alg))
            .with_domain(DomainSpec::rect(2.0, 3.0, 0.0, 1.0));
        assert_eq!(f.slice_product(&g).unwrap_err(), Error::EmptyDomainIntersection);
    }
}
