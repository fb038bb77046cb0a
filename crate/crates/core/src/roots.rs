//! Complex roots of integer polynomials.
//!
//! The input is first split exactly into square-free factors, so the
//! numerical stage only ever sees simple roots. Each factor is solved by
//! Aberth–Ehrlich simultaneous iteration from a jittered circle, polished by
//! Newton steps, and then cleaned up using the exact Sturm count of its real
//! roots: that many roots are snapped onto the real axis and the rest are
//! paired into exact conjugates.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::AlphaPolynomial;

pub const DEFAULT_SEED: u64 = 0x6879_7065_7274_7265;
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootConfig {
    /// Relative residual bound every root must meet.
    pub root_tol: f64,
    pub max_iter: usize,
    pub seed: u64,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            root_tol: DEFAULT_ROOT_TOL,
            max_iter: 2000,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaRoot {
    pub value: Complex64,
    pub multiplicity: u32,
}

impl AlphaRoot {
    pub fn is_real(&self) -> bool {
        self.value.im == 0.0
    }
}

/// All `deg(p)` roots, grouped by multiplicity and sorted by `(re, im)`.
pub fn alpha_roots(p: &AlphaPolynomial, cfg: &RootConfig) -> Result<Vec<AlphaRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (factor, multiplicity) in p.squarefree_decomposition() {
        for value in squarefree_roots(&factor, cfg)? {
            out.push(AlphaRoot { value, multiplicity });
        }
    }
    let coeffs = p.to_f64_coeffs();
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let deg = coeffs.len() as i32 - 1;
    for r in &out {
        let bound = cfg.root_tol * scale * r.value.norm().max(1.0).powi(deg);
        let residual = horner(&coeffs, r.value).norm();
        if !(residual <= bound) {
            return Err(Error::DidNotConverge(format!(
                "|p({})| = {residual:e} exceeds {bound:e} for p = {p}",
                r.value
            )));
        }
    }
    out.sort_by(|a, b| {
        a.value
            .re
            .total_cmp(&b.value.re)
            .then(a.value.im.total_cmp(&b.value.im))
    });
    Ok(out)
}

/// Roots of a square-free integer polynomial of degree at least one.
fn squarefree_roots(q: &AlphaPolynomial, cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let deg = q.degree().unwrap_or(0);
    if deg == 1 {
        let c = q.coeffs();
        let value = num_rational::BigRational::new(-c[0].clone(), c[1].clone())
            .to_f64()
            .unwrap_or(f64::NAN);
        return Ok(vec![Complex64::new(value, 0.0)]);
    }
    let lead = q.leading().and_then(|c| c.to_f64()).unwrap_or(f64::NAN);
    let coeffs: Vec<f64> = q
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN) / lead)
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::DidNotConverge(format!("coefficients of {q} overflow f64")));
    }
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();

    let mut z = initial_guesses(&coeffs, cfg.seed);
    aberth(&coeffs, &deriv, &mut z, cfg.max_iter)?;
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let d = horner(&deriv, *zi);
            if d.is_zero() {
                break;
            }
            *zi -= horner(&coeffs, *zi) / d;
        }
    }

    let real_count = q.count_real_roots();
    let rel_im = |w: &Complex64| w.im.abs() / w.norm().max(1.0);
    z.sort_by(|a, b| rel_im(a).total_cmp(&rel_im(b)));
    let (reals, complex) = z.split_at(real_count);
    let mut out = Vec::with_capacity(deg);
    for w in reals {
        if rel_im(w) > 1e-6 {
            return Err(Error::DidNotConverge(format!(
                "{q}: expected {real_count} real roots, nearest candidate {w}"
            )));
        }
        let mut x = w.re;
        for _ in 0..3 {
            let d = horner_real(&deriv, x);
            if d == 0.0 {
                break;
            }
            x -= horner_real(&coeffs, x) / d;
        }
        out.push(Complex64::new(x, 0.0));
    }
    let mut upper: Vec<Complex64> = complex.iter().map(|w| Complex64::new(w.re, w.im.abs())).collect();
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for pair in upper.chunks(2) {
        let [a, b] = pair else {
            return Err(Error::DidNotConverge(format!("{q}: unpaired complex root")));
        };
        if (a - b).norm() > 1e-6 * a.norm().max(1.0) {
            return Err(Error::DidNotConverge(format!("{q}: conjugate mismatch {a} vs {b}")));
        }
        let mid = (a + b) / 2.0;
        out.push(mid);
        out.push(mid.conj());
    }
    Ok(out)
}

fn initial_guesses(coeffs: &[f64], seed: u64) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let radius = coeffs[0].abs().powf(1.0 / deg as f64).max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..deg)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / deg as f64 + 0.4 + rng.gen_range(-0.1..0.1);
            let r = radius * rng.gen_range(0.9..1.1);
            Complex64::from_polar(r, theta)
        })
        .collect()
}

fn aberth(coeffs: &[f64], deriv: &[f64], z: &mut [Complex64], max_iter: usize) -> Result<()> {
    for _ in 0..max_iter {
        let mut worst = 0.0f64;
        for i in 0..z.len() {
            let pz = horner(coeffs, z[i]);
            if pz.is_zero() {
                continue;
            }
            let ratio = pz / horner(deriv, z[i]);
            let repulsion: Complex64 = (0..z.len())
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(1e-300));
            }
        }
        if worst <= 4.0 * f64::EPSILON {
            return Ok(());
        }
    }
    // Slow tails are acceptable if the residual check downstream passes.
    if z.iter().all(|w| w.is_finite()) {
        Ok(())
    } else {
        Err(Error::DidNotConverge("Aberth iteration diverged".into()))
    }
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn horner_real(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}
