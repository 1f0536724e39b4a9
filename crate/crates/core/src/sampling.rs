//! Deterministic random sampling helpers shared by probes and test suites.
//!
//! All randomness flows through a caller-seeded ChaCha stream so that every
//! probe and report is reproducible from its seed.

use num::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::algebra::{Algebra, Element};
use crate::poly::StarPolynomial;
use crate::scalar::Scalar;

pub type Seed = u64;

pub fn rng_from_seed(seed: Seed) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Uniform point of the unit sphere of imaginary units.
pub fn random_imaginary_unit(algebra: Algebra, rng: &mut ChaCha12Rng) -> Element<f64> {
    let dim = algebra.dim();
    assert!(dim >= 2, "no imaginary units over R");
    loop {
        let mut coords = vec![0.0f64; dim];
        for c in coords.iter_mut().skip(1) {
            // Box-Muller standard normal.
            let u1: f64 = rng.random::<f64>().max(1e-12);
            let u2: f64 = rng.random();
            *c = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
        }
        let e = Element::new(algebra, coords);
        let n = e.abs_f64();
        if n > 1e-6 {
            return e.scale(&(1.0 / n));
        }
    }
}

/// Uniform element of the coordinate box `[-range, range]^dim`.
pub fn random_element(algebra: Algebra, range: f64, rng: &mut ChaCha12Rng) -> Element<f64> {
    let coords = (0..algebra.dim()).map(|_| rng.random_range(-range..=range)).collect();
    Element::new(algebra, coords)
}

/// Uniform point of the closed ball `|x - center| <= radius`.
pub fn random_ball_point(
    center: &Element<f64>,
    radius: f64,
    rng: &mut ChaCha12Rng,
) -> Element<f64> {
    let algebra = center.algebra();
    let dim = algebra.dim();
    let dir = random_direction(algebra, rng);
    let r = radius * rng.random::<f64>().powf(1.0 / dim as f64);
    center.add(&dir.scale(&r))
}

/// Uniform direction on the full unit sphere of the algebra.
pub fn random_direction(algebra: Algebra, rng: &mut ChaCha12Rng) -> Element<f64> {
    loop {
        let mut coords = vec![0.0f64; algebra.dim()];
        for c in coords.iter_mut() {
            let u1: f64 = rng.random::<f64>().max(1e-12);
            let u2: f64 = rng.random();
            *c = (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos();
        }
        let e = Element::new(algebra, coords);
        let n = e.abs_f64();
        if n > 1e-6 {
            return e.scale(&(1.0 / n));
        }
    }
}

/// Random star polynomial with coordinates uniform in `[-range, range]`.
pub fn random_poly(
    algebra: Algebra,
    degree: usize,
    range: f64,
    rng: &mut ChaCha12Rng,
) -> StarPolynomial<f64> {
    let coeffs = (0..=degree).map(|_| random_element(algebra, range, rng)).collect();
    StarPolynomial::new(algebra, coeffs)
}

/// Exact rational imaginary unit via stereographic projection of a rational
/// point: `J = ((s - 1) e1 + 2 u) / (s + 1)` with `s = |u|^2`, `u` spanning
/// the remaining imaginary axes.
pub fn random_rational_unit(algebra: Algebra, rng: &mut ChaCha12Rng) -> Element<BigRational> {
    let dim = algebra.dim();
    assert!(dim >= 2);
    let mut u: Vec<BigRational> = Vec::with_capacity(dim - 2);
    for _ in 0..dim.saturating_sub(2) {
        let p = rng.random_range(-6i64..=6);
        let q = rng.random_range(1i64..=6);
        u.push(BigRational::from_ratio(p, q));
    }
    let s: BigRational = u
        .iter()
        .fold(<BigRational as Scalar>::zero(), |acc, c| acc + c.clone() * c.clone());
    let denom = s.clone() + <BigRational as Scalar>::one();
    let inv = Scalar::recip(&denom).expect("s + 1 > 0");
    let mut coords = vec![<BigRational as Scalar>::zero(); dim];
    coords[1] = (s - <BigRational as Scalar>::one()) * inv.clone();
    for (t, c) in u.into_iter().enumerate() {
        coords[t + 2] = c * BigRational::from_int(2) * inv.clone();
    }
    Element::new(algebra, coords)
}

/// Rational element with small random coordinates.
pub fn random_rational_element(
    algebra: Algebra,
    max_num: i64,
    rng: &mut ChaCha12Rng,
) -> Element<BigRational> {
    let coords = (0..algebra.dim())
        .map(|_| {
            BigRational::from_ratio(rng.random_range(-max_num..=max_num), rng.random_range(1..=4))
        })
        .collect();
    Element::new(algebra, coords)
}
