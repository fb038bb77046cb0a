//! Eigenvectors of the adjacency hypermatrix.
//!
//! Per vertex `j` the eigen-equation reads
//! `Σ_{e∋j} Π_{v∈e∖j} x_v = λ x_j^{k-1}`, one unit of weight per edge.
//!
//! Totally nonzero eigenvectors of a hypertree are built by elimination.
//! Root the tree, write `w_v = x_v^k` and `y_e = Π_{v∈e} x_v`, and multiply
//! each equation by `x_j` to get `Σ_{e∋j} y_e = λ w_j`. Going leaves-up, the
//! child-edge share of vertex `c` is `a_c λ w_c` with
//! `a_c = Σ_{child edges f} 1 / (λ^k Π_{u∈f∖c} (1 - a_u))`, and `λ` is an
//! eigenvalue with a totally nonzero vector iff `a_root = 1` for some
//! rooting. Going root-down recovers `y` and `w`, then `x` as `k`-th roots
//! with one child per edge fixed by the product constraint.
//! If every rooting hits a zero `1 - a_c`, a damped Newton solve on the full
//! system takes over.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{InducedSubgraph, UniformHypergraph, VertexSet};
use crate::poly::AlphaPolynomial;
use crate::roots::DEFAULT_SEED;
use crate::spectra::{SpectrumValue, DEFAULT_TOL};
use crate::subtrees::{EdgeSubset, SubtreeCatalog};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenConfig {
    /// Residual bound and support threshold.
    pub tol: f64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for EigenConfig {
    fn default() -> Self {
        EigenConfig {
            tol: DEFAULT_TOL,
            restarts: 32,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub lambda: Complex64,
    /// `x[v - 1]` is the entry for vertex `v`.
    pub x: Vec<Complex64>,
    pub residual: f64,
    /// Vertices with `|x_v| > tol`.
    pub support: VertexSet,
    pub totally_nonzero: bool,
}

impl Eigenpair {
    pub fn new(h: &UniformHypergraph, lambda: Complex64, x: Vec<Complex64>, tol: f64) -> Result<Self> {
        let residual = eigen_residual(h, lambda, &x)?;
        let support = VertexSet::new(h.vertices().filter(|&v| x[v - 1].norm() > tol));
        let totally_nonzero = support.len() == h.n() && lambda.norm() > tol;
        Ok(Eigenpair {
            lambda,
            x,
            residual,
            support,
            totally_nonzero,
        })
    }
}

/// `max_j |Σ_{e∋j} Π_{v∈e∖j} x_v - λ x_j^{k-1}|`.
pub fn eigen_residual(h: &UniformHypergraph, lambda: Complex64, x: &[Complex64]) -> Result<f64> {
    Ok(equations(h, lambda, x)?
        .iter()
        .map(|r| r.norm())
        .fold(0.0, f64::max))
}

fn equations(h: &UniformHypergraph, lambda: Complex64, x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: x.len(),
        });
    }
    let k = h.k() as u32;
    let mut lhs = vec![Complex64::new(0.0, 0.0); h.n()];
    for e in h.edges() {
        for &j in e {
            lhs[j - 1] += e
                .iter()
                .filter(|&&v| v != j)
                .map(|&v| x[v - 1])
                .product::<Complex64>();
        }
    }
    Ok(lhs
        .into_iter()
        .zip(x)
        .map(|(s, xj)| s - lambda * xj.powu(k - 1))
        .collect())
}

/// A totally nonzero eigenvector for `λ`, normalized to `x_1 = 1`.
pub fn find_totally_nonzero_eigenvector(
    h: &UniformHypergraph,
    lambda: Complex64,
    cfg: &EigenConfig,
) -> Result<Eigenpair> {
    if !h.is_hypertree() {
        return Err(Error::NotAHypertree);
    }
    let accept = |x: Vec<Complex64>| -> Option<Eigenpair> {
        let x0 = x[0];
        if !(x0.norm() > 0.0) {
            return None;
        }
        let x: Vec<_> = x.into_iter().map(|v| v / x0).collect();
        let pair = Eigenpair::new(h, lambda, x, cfg.tol).ok()?;
        (pair.totally_nonzero && pair.residual <= cfg.tol).then_some(pair)
    };
    if lambda.norm() > cfg.tol {
        let inc = h.incidence();
        for root in h.vertices() {
            if let Some(pair) = eliminate(h, &inc, lambda, root).and_then(accept) {
                return Ok(pair);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for _ in 0..cfg.restarts {
            let start: Vec<Complex64> = (0..h.n())
                .map(|_| Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            if let Some(pair) = newton(h, lambda, start, cfg.tol).and_then(accept) {
                return Ok(pair);
            }
        }
    }
    Err(Error::NoConvergence {
        re: lambda.re,
        im: lambda.im,
    })
}

fn eliminate(
    h: &UniformHypergraph,
    inc: &[Vec<usize>],
    lambda: Complex64,
    root: usize,
) -> Option<Vec<Complex64>> {
    let n = h.n();
    let k = h.k();
    let one = Complex64::new(1.0, 0.0);
    let alpha = lambda.powu(k as u32);

    let mut parent_edge = vec![usize::MAX; n + 1];
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &e in &inc[v] {
            if e == parent_edge[v] {
                continue;
            }
            for &c in &h.edges()[e] {
                if c != v {
                    parent_edge[c] = e;
                    order.push(c);
                }
            }
        }
    }
    let pe = &parent_edge;
    let child_edges = |v: usize| inc[v].iter().copied().filter(move |&e| e != pe[v]);
    let children = |e: usize, p: usize| h.edges()[e].iter().copied().filter(move |&c| c != p);

    let mut a = vec![Complex64::new(0.0, 0.0); n + 1];
    for &v in order.iter().rev() {
        for e in child_edges(v) {
            let mut prod = one;
            for c in children(e, v) {
                let gap = one - a[c];
                if gap.norm() < 1e-9 {
                    return None;
                }
                prod *= gap;
            }
            a[v] += (alpha * prod).inv();
        }
    }
    if (a[root] - one).norm() > 1e-6 {
        return None;
    }

    let mut w = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut x = vec![Complex64::new(0.0, 0.0); n + 1];
    w[root] = one;
    x[root] = one;
    let lambda_km1 = lambda.powu(k as u32 - 1);
    for &p in &order {
        for e in child_edges(p) {
            let kids: Vec<usize> = children(e, p).collect();
            let prod: Complex64 = kids.iter().map(|&c| one - a[c]).product();
            let y = w[p] / (lambda_km1 * prod);
            let mut partial = x[p];
            for (i, &c) in kids.iter().enumerate() {
                w[c] = y / (lambda * (one - a[c]));
                x[c] = if i + 1 < kids.len() {
                    w[c].powf(1.0 / k as f64)
                } else {
                    y / partial
                };
                partial *= x[c];
            }
        }
    }
    x.remove(0);
    Some(x)
}

/// Levenberg–Marquardt on the eigen-equations with `x_1` pinned to 1.
fn newton(h: &UniformHypergraph, lambda: Complex64, mut x: Vec<Complex64>, tol: f64) -> Option<Vec<Complex64>> {
    let n = h.n();
    let k = h.k();
    x[0] = Complex64::new(1.0, 0.0);
    if n == 1 {
        return Some(x);
    }
    let norm2 = |f: &[Complex64]| f.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut f = equations(h, lambda, &x).ok()?;
    let mut cost = norm2(&f);
    let mut mu = 1e-3;
    for _ in 0..200 {
        if cost.sqrt() <= tol * 1e-3 {
            break;
        }
        let jac = jacobian(h, lambda, &x, k);
        let jh = jac.adjoint();
        let normal = &jh * &jac;
        let grad = &jh * DVector::from_vec(f.clone());
        let mut improved = false;
        while mu < 1e12 {
            let mut damped = normal.clone();
            for i in 0..n - 1 {
                damped[(i, i)] += Complex64::new(mu, 0.0);
            }
            let Some(step) = damped.lu().solve(&grad) else {
                mu *= 4.0;
                continue;
            };
            let mut trial = x.clone();
            for i in 1..n {
                trial[i] -= step[i - 1];
            }
            let trial_f = equations(h, lambda, &trial).ok()?;
            let trial_cost = norm2(&trial_f);
            if trial_cost < cost {
                x = trial;
                f = trial_f;
                cost = trial_cost;
                mu = (mu / 3.0).max(1e-15);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if !improved {
            break;
        }
    }
    x.iter().all(|z| z.is_finite()).then_some(x)
}

/// Partial derivatives of every equation in `x_2..x_n`.
fn jacobian(h: &UniformHypergraph, lambda: Complex64, x: &[Complex64], k: usize) -> DMatrix<Complex64> {
    let n = h.n();
    let mut jac = DMatrix::from_element(n, n - 1, Complex64::new(0.0, 0.0));
    for j in 2..=n {
        jac[(j - 1, j - 2)] -= lambda * (k as f64 - 1.0) * x[j - 1].powu(k as u32 - 2);
    }
    for e in h.edges() {
        for &j in e {
            for &i in e {
                if i == j || i == 1 {
                    continue;
                }
                let d: Complex64 = e
                    .iter()
                    .filter(|&&v| v != i && v != j)
                    .map(|&v| x[v - 1])
                    .product();
                jac[(j - 1, i - 2)] += d;
            }
        }
    }
    jac
}

/// Pads a subgraph vector with zeros on the rest of the host.
pub fn extend_by_zeros(sub: &InducedSubgraph, host_n: usize, x: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); host_n];
    for (local, &host) in sub.host_vertex.iter().enumerate() {
        out[host - 1] = x[local];
    }
    out
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub subset: EdgeSubset,
    /// Totally nonzero on the subtree.
    pub local: Eigenpair,
    /// The zero extension, checked against the whole host.
    pub extended: Eigenpair,
}

/// A subtree carrying a totally nonzero eigenvector for `value`. Every
/// cataloged subtree whose polynomial vanishes at `λ^k` is a candidate;
/// smaller ones are tried first since a root shared with a pendant branch
/// can rule out a totally nonzero vector on the larger tree.
pub fn find_witness(catalog: &SubtreeCatalog, value: &SpectrumValue, cfg: &EigenConfig) -> Result<Witness> {
    let fail = || Error::NoConvergence {
        re: value.lambda.re,
        im: value.lambda.im,
    };
    if value.lambda.norm() <= cfg.tol {
        return Err(fail());
    }
    let alpha = value.lambda.powu(catalog.host.k() as u32);
    let hits: Vec<bool> = catalog.polys.iter().map(|p| vanishes_at(p, alpha)).collect();
    let mut candidates: Vec<usize> = (0..catalog.subsets.len())
        .filter(|&i| hits[catalog.poly_of[i]])
        .collect();
    candidates.sort_by_key(|&i| catalog.subsets[i].len());
    for idx in candidates {
        let subset = &catalog.subsets[idx];
        let sub = catalog.host.edge_subgraph(subset.indices());
        let Ok(local) = find_totally_nonzero_eigenvector(&sub.graph, value.lambda, cfg) else {
            continue;
        };
        let x = extend_by_zeros(&sub, catalog.host.n(), &local.x);
        let extended = Eigenpair::new(&catalog.host, value.lambda, x, cfg.tol)?;
        if extended.residual <= cfg.tol {
            return Ok(Witness {
                subset: subset.clone(),
                local,
                extended,
            });
        }
    }
    Err(fail())
}

/// `|p(α)|` small relative to the size of its terms.
fn vanishes_at(p: &AlphaPolynomial, alpha: Complex64) -> bool {
    let scale: f64 = p
        .to_f64_coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c.abs() * alpha.norm().powi(i as i32))
        .sum();
    p.eval_complex(alpha).norm() <= 1e-9 * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{comb, loose_path, star};
    use crate::matching::matching_polynomial;
    use crate::random::random_hypertree;
    use crate::roots::{alpha_roots, RootConfig};
    use crate::spectra::{lift_to_x, set_spectrum_with_catalog, SpectrumConfig};
    use crate::subtrees::distinct_matching_polynomials;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn residual_examples() {
        let edge = loose_path(1, 3);
        assert_eq!(eigen_residual(&edge, c(1.0), &[c(1.0); 3]).unwrap(), 0.0);

        let h = comb(3);
        let mut e1 = vec![c(0.0); h.n()];
        e1[0] = c(1.0);
        assert_eq!(eigen_residual(&h, c(0.0), &e1).unwrap(), 0.0);

        let l = 2f64.cbrt();
        let x = [c(1.0), c(1.0), c(l), c(1.0), c(1.0)];
        assert!(eigen_residual(&loose_path(2, 3), c(l), &x).unwrap() < 1e-12);

        assert!(matches!(
            eigen_residual(&edge, c(1.0), &[c(1.0); 2]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn closed_form_eigenvectors() {
        let cfg = EigenConfig::default();
        let p = find_totally_nonzero_eigenvector(&loose_path(1, 3), c(1.0), &cfg).unwrap();
        for v in &p.x {
            assert!((v - c(1.0)).norm() < 1e-12);
        }
        assert!(p.residual < 1e-14);

        let l = 3f64.cbrt();
        let s3 = star(3, 3);
        let p = find_totally_nonzero_eigenvector(&s3, c(l), &cfg).unwrap();
        // star center is vertex 1 and is pinned to 1, so leaves sit at 1/λ
        // up to a cube root of unity per edge
        for v in &p.x[1..] {
            assert!((v.norm() - 1.0 / l).abs() < 1e-12);
        }
        assert!(p.totally_nonzero);

        let l = 2f64.cbrt();
        let p = find_totally_nonzero_eigenvector(&loose_path(2, 3), c(l), &cfg).unwrap();
        let moduli: Vec<f64> = p.x.iter().map(|z| z.norm()).collect();
        for (got, want) in moduli.iter().zip([1.0, 1.0, l, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-12, "{moduli:?}");
        }
    }

    #[test]
    fn non_eigenvalues_fail() {
        let cfg = EigenConfig {
            restarts: 4,
            ..EigenConfig::default()
        };
        let err = find_totally_nonzero_eigenvector(&loose_path(2, 3), c(1.5), &cfg).unwrap_err();
        assert!(err.is_convergence());
        assert!(find_totally_nonzero_eigenvector(&loose_path(2, 3), c(0.0), &cfg).is_err());
    }

    /// Roots of `φ(H)` shared with no proper subtree.
    fn minimal_roots(h: &UniformHypergraph) -> Vec<Complex64> {
        let cat = distinct_matching_polynomials(h).unwrap();
        let cfg = RootConfig::default();
        let full = matching_polynomial(h).unwrap();
        let proper: Vec<Complex64> = cat
            .subsets
            .iter()
            .zip(&cat.poly_of)
            .filter(|(s, _)| s.len() < h.num_edges())
            .flat_map(|(_, &p)| alpha_roots(&cat.polys[p], &cfg).unwrap())
            .map(|r| r.value)
            .collect();
        alpha_roots(&full, &cfg)
            .unwrap()
            .into_iter()
            .map(|r| r.value)
            .filter(|a| proper.iter().all(|b| (a - b).norm() > 1e-6))
            .collect()
    }

    #[test]
    fn roots_new_to_the_whole_tree_have_totally_nonzero_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        for _ in 0..25 {
            let k = rng.gen_range(3..=4);
            let m = rng.gen_range(1..=6);
            let h = random_hypertree(&mut rng, k, m);
            for alpha in minimal_roots(&h) {
                for lambda in lift_to_x(alpha, k) {
                    let p = find_totally_nonzero_eigenvector(&h, lambda, &EigenConfig::default())
                        .unwrap_or_else(|e| panic!("{h:?} λ={lambda}: {e}"));
                    assert!(p.residual <= 1e-8 && p.totally_nonzero);
                    assert_eq!(p.x[0], c(1.0));
                    checked += 1;
                }
            }
        }
        assert!(checked > 50);
    }

    #[test]
    fn root_shared_with_a_pendant_branch() {
        // φ = (α - 1)(α² - 4α + 2). At vertex 5 the pendant edge {5,7,11}
        // forces y_{5,7,11} = w_5 / λ², so y_{3,5,10} = w_5 (λ³ - 1) / λ²,
        // which vanishes at λ = 1: no totally nonzero vector exists there.
        let h = UniformHypergraph::build(
            3,
            11,
            vec![vec![1, 2, 8], vec![2, 3, 4], vec![3, 5, 10], vec![4, 6, 9], vec![5, 7, 11]],
        )
        .unwrap();
        assert_eq!(matching_polynomial(&h).unwrap(), AlphaPolynomial::from_i64s(&[-2, 6, -5, 1]));
        let cfg = EigenConfig {
            restarts: 4,
            ..EigenConfig::default()
        };
        assert!(find_totally_nonzero_eigenvector(&h, c(1.0), &cfg).unwrap_err().is_convergence());

        // 1 is still an eigenvalue, witnessed by a single edge
        let (spec, cat) = set_spectrum_with_catalog(&h, &SpectrumConfig::default()).unwrap();
        let one = spec.values.iter().find(|v| (v.lambda - c(1.0)).norm() < 1e-12).unwrap();
        let w = find_witness(&cat, one, &EigenConfig::default()).unwrap();
        assert_eq!(w.subset.len(), 1);
    }

    #[test]
    fn every_nonzero_value_has_a_witness_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let k = rng.gen_range(3..=4);
            let m = rng.gen_range(1..=6);
            let h = random_hypertree(&mut rng, k, m);
            let (spec, cat) = set_spectrum_with_catalog(&h, &SpectrumConfig::default()).unwrap();
            for v in spec.nonzero() {
                let w = find_witness(&cat, v, &EigenConfig::default())
                    .unwrap_or_else(|e| panic!("{h:?} λ={}: {e}", v.lambda));
                assert!(w.extended.residual <= 1e-8);
            }
        }
    }

    #[test]
    fn newton_fallback_solves_small_cases() {
        let l = 2f64.cbrt();
        let h = loose_path(2, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let found = (0..32).find_map(|_| {
            let start = (0..h.n())
                .map(|_| Complex64::from_polar(rng.gen_range(0.5..1.5), rng.gen_range(0.0..6.28)))
                .collect();
            newton(&h, c(l), start, 1e-8).filter(|x| eigen_residual(&h, c(l), x).unwrap() < 1e-8)
        });
        assert!(found.is_some());
    }

    #[test]
    fn zero_extension_of_subtree_vectors() {
        let (spec, cat) = set_spectrum_with_catalog(&comb(3), &SpectrumConfig::default()).unwrap();
        for v in spec.nonzero() {
            let w = find_witness(&cat, v, &EigenConfig::default()).unwrap();
            assert!(w.local.totally_nonzero && w.local.residual <= 1e-8);
            assert!(w.extended.residual <= 1e-8);
            let sub_vertices = cat.host.edge_subgraph(w.subset.indices()).host_set();
            assert_eq!(w.extended.support, sub_vertices);
        }
    }
}
