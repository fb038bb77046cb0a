//! Set-spectra of hypertrees assembled from subtree matching polynomials.
//!
//! Every nonzero eigenvalue of a `k`-uniform hypertree (`k >= 3`) is a `k`-th
//! root of a root of `φ(S)` for some connected induced subtree `S`, and every
//! such value is an eigenvalue. Zero is always an eigenvalue for `k >= 3`
//! (any unit vector), so it is included unconditionally.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::matching::matching_polynomial;
use crate::poly::AlphaPolynomial;
use crate::roots::{alpha_roots, RootConfig};
use crate::subtrees::{distinct_matching_polynomials_capped, SubtreeCatalog, DEFAULT_MAX_SUBSETS};

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumConfig {
    /// Set membership and deduplication radius.
    pub tol: f64,
    pub roots: RootConfig,
    pub max_subsets: usize,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            tol: DEFAULT_TOL,
            roots: RootConfig::default(),
            max_subsets: DEFAULT_MAX_SUBSETS,
        }
    }
}

/// The `k` distinct `k`-th roots of `alpha`, principal root first.
///
/// Lifts of conjugate inputs are exact mirror images, and for real `alpha`
/// the lifts pair up as exact conjugates, with those on the axes exact.
pub fn lift_to_x(alpha: Complex64, k: usize) -> Vec<Complex64> {
    assert!(k >= 1, "k must be positive");
    if alpha == Complex64::new(0.0, 0.0) {
        return vec![Complex64::new(0.0, 0.0); k];
    }
    if alpha.im < 0.0 {
        return lift_to_x(alpha.conj(), k).into_iter().map(|z| z.conj()).collect();
    }
    let modulus = alpha.norm().powf(1.0 / k as f64);
    if alpha.im > 0.0 {
        let theta = alpha.arg();
        return (0..k)
            .map(|j| Complex64::from_polar(modulus, (theta + std::f64::consts::TAU * j as f64) / k as f64))
            .collect();
    }
    // Real alpha: the j-th lift sits at π·turns/k with turns = offset + 2j.
    let offset = usize::from(alpha.re < 0.0);
    let at = |turns: usize| -> Complex64 {
        let turns = turns % (2 * k);
        if (2 * turns) % k == 0 {
            let quarter = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)][2 * turns / k];
            return Complex64::new(modulus * quarter.0, modulus * quarter.1);
        }
        if turns > k {
            // mirror of the lift at 2π - angle
            return Complex64::from_polar(modulus, std::f64::consts::PI * (2 * k - turns) as f64 / k as f64).conj();
        }
        Complex64::from_polar(modulus, std::f64::consts::PI * turns as f64 / k as f64)
    };
    (0..k).map(|j| at(offset + 2 * j)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumValue {
    pub lambda: Complex64,
    /// `λ^k`, exactly the root it was lifted from.
    pub alpha: Complex64,
    /// Index into [`SpectrumSet::sources`]; `None` for the zero eigenvalue.
    pub source: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SpectrumSet {
    pub k: usize,
    pub tol: f64,
    /// Sorted by `(re, im)`, pairwise more than `tol` apart.
    pub values: Vec<SpectrumValue>,
    pub sources: Vec<AlphaPolynomial>,
}

impl SpectrumSet {
    /// `{0}` together with all lifted roots of `polys`.
    pub fn from_polys(k: usize, polys: Vec<AlphaPolynomial>, cfg: &SpectrumConfig) -> Result<Self> {
        let per_poly: Vec<_> = polys
            .par_iter()
            .map(|p| alpha_roots(p, &cfg.roots))
            .collect::<Result<_>>()?;
        let zero = Complex64::new(0.0, 0.0);
        let mut candidates = vec![SpectrumValue {
            lambda: zero,
            alpha: zero,
            source: None,
        }];
        for (i, roots) in per_poly.iter().enumerate() {
            for r in roots {
                candidates.extend(lift_to_x(r.value, k).into_iter().map(|lambda| SpectrumValue {
                    lambda: canonical(lambda),
                    alpha: r.value,
                    source: Some(i),
                }));
            }
        }
        candidates.sort_by(|a, b| cmp_complex(&a.lambda, &b.lambda).then(a.source.cmp(&b.source)));
        let mut set = SpectrumSet {
            k,
            tol: cfg.tol,
            values: Vec::with_capacity(candidates.len()),
            sources: polys,
        };
        for c in candidates {
            if !set.contains(c.lambda) {
                set.values.push(c);
            }
        }
        Ok(set)
    }

    pub fn from_catalog(catalog: &SubtreeCatalog, cfg: &SpectrumConfig) -> Result<Self> {
        Self::from_polys(catalog.host.k(), catalog.polys.clone(), cfg)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn lambdas(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.values.iter().map(|v| v.lambda)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &SpectrumValue> + '_ {
        self.values.iter().filter(|v| v.source.is_some())
    }

    /// Membership within `tol`. Relies on the values being sorted by real part.
    pub fn contains(&self, z: Complex64) -> bool {
        let start = self.values.partition_point(|v| v.lambda.re < z.re - self.tol);
        self.values[start..]
            .iter()
            .take_while(|v| v.lambda.re <= z.re + self.tol)
            .any(|v| (v.lambda - z).norm() <= self.tol)
    }

    /// Multiplying by `e^{2πi/k}` maps the set into itself.
    pub fn is_rotation_invariant(&self) -> bool {
        let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU / self.k as f64);
        self.lambdas().all(|l| self.contains(l * zeta))
    }

    /// Every nonzero `λ` has `λ^k` real within `tol` relative to `|λ|^k`.
    pub fn is_cyclotomic(&self) -> bool {
        self.nonzero().all(|v| {
            let power = v.lambda.powu(self.k as u32);
            power.im.abs() <= self.tol * power.norm()
        })
    }

    pub fn max_modulus(&self) -> f64 {
        self.lambdas().map(|l| l.norm()).fold(0.0, f64::max)
    }

    /// Plot data, one row per value: `re,im,source_poly,alpha_re,alpha_im`.
    /// The source column holds the x-form of the originating polynomial, or
    /// `x` for the zero eigenvalue.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,source_poly,alpha_re,alpha_im\n");
        for v in &self.values {
            let source = match v.source {
                Some(i) => self.sources[i].x_form(self.k),
                None => "x".to_string(),
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                tidy(v.lambda.re),
                tidy(v.lambda.im),
                source,
                tidy(v.alpha.re),
                tidy(v.alpha.im)
            );
        }
        out
    }

    pub fn to_json_value(&self, roots: &RootConfig) -> serde_json::Value {
        let values: Vec<_> = self
            .values
            .iter()
            .map(|v| {
                json!({
                    "re": tidy(v.lambda.re),
                    "im": tidy(v.lambda.im),
                    "alpha_re": tidy(v.alpha.re),
                    "alpha_im": tidy(v.alpha.im),
                    "source_poly": v.source,
                })
            })
            .collect();
        json!({
            "k": self.k,
            "tol": self.tol,
            "root_tol": roots.root_tol,
            "seed": roots.seed,
            "source_polys": self.sources,
            "values": values,
        })
    }
}

fn canonical(z: Complex64) -> Complex64 {
    Complex64::new(tidy(z.re), tidy(z.im))
}

/// Folds `-0.0` into `0.0` so output and ordering do not depend on it.
fn tidy(x: f64) -> f64 {
    x + 0.0
}

fn cmp_complex(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn require_spectral_input(h: &UniformHypergraph) -> Result<()> {
    if h.k() < 3 {
        return Err(Error::UniformityTwoUnsupported);
    }
    if !h.is_hypertree() {
        return Err(Error::NotAHypertree);
    }
    Ok(())
}

pub fn set_spectrum(h: &UniformHypergraph, cfg: &SpectrumConfig) -> Result<SpectrumSet> {
    set_spectrum_with_catalog(h, cfg).map(|(s, _)| s)
}

/// The spectrum along with the catalog it was built from, whose `polys`
/// are the spectrum's `sources`.
pub fn set_spectrum_with_catalog(
    h: &UniformHypergraph,
    cfg: &SpectrumConfig,
) -> Result<(SpectrumSet, SubtreeCatalog)> {
    require_spectral_input(h)?;
    let catalog = distinct_matching_polynomials_capped(h, cfg.max_subsets)?;
    let set = SpectrumSet::from_catalog(&catalog, cfg)?;
    Ok((set, catalog))
}

/// `k`-th root of the largest real root of `φ(H)`.
pub fn spectral_radius(h: &UniformHypergraph, roots: &RootConfig) -> Result<f64> {
    require_spectral_input(h)?;
    if h.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let phi = matching_polynomial(h)?;
    let largest = alpha_roots(&phi, roots)?
        .into_iter()
        .filter(|r| r.is_real())
        .map(|r| r.value.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if !(largest > 0.0) {
        return Err(Error::DidNotConverge(format!("{phi} has no positive real root")));
    }
    Ok(largest.powf(1.0 / h.k() as f64))
}

pub fn is_cyclotomic_spectrum(h: &UniformHypergraph, cfg: &SpectrumConfig) -> Result<bool> {
    Ok(set_spectrum(h, cfg)?.is_cyclotomic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{loose_path, star};
    use crate::paperdata::{fixture_graph, FixtureName};
    use crate::subtrees::distinct_matching_polynomials;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spectrum(h: &UniformHypergraph) -> SpectrumSet {
        set_spectrum(h, &SpectrumConfig::default()).unwrap()
    }

    #[test]
    fn lifts() {
        let zeta = c(-0.5, 3f64.sqrt() / 2.0);
        let got = lift_to_x(c(1.0, 0.0), 3);
        for (g, want) in got.iter().zip([c(1.0, 0.0), zeta, zeta * zeta]) {
            assert!((g - want).norm() < 1e-15);
        }
        for l in lift_to_x(c(2.0, 0.0), 3) {
            assert!((l.powu(3) - c(2.0, 0.0)).norm() < 1e-12);
            assert!((l.norm() - 2f64.cbrt()).abs() < 1e-15);
        }
        assert_eq!(lift_to_x(c(0.0, 0.0), 3), vec![c(0.0, 0.0); 3]);
        let a = c(-1.5, 0.7);
        let lifted = lift_to_x(a, 5);
        for (i, x) in lifted.iter().enumerate() {
            assert!((x.powu(5) - a).norm() < 1e-12);
            for y in &lifted[i + 1..] {
                assert!((x - y).norm() > 0.1);
            }
        }
    }

    #[test]
    fn lifts_are_exact_mirrors() {
        for k in 2..=8 {
            for a in [c(1.0, 0.0), c(2.5, 0.0), c(-3.0, 0.0), c(0.4, 1.7)] {
                let up = lift_to_x(a, k);
                let down = lift_to_x(a.conj(), k);
                for z in &up {
                    assert!(down.contains(&z.conj()), "k={k} a={a}");
                    assert!((z.powu(k as u32) - a).norm() < 1e-12 * a.norm().max(1.0));
                }
                if a.im == 0.0 {
                    for z in &up {
                        assert!(up.contains(&z.conj()), "k={k} a={a}");
                    }
                }
            }
        }
        assert_eq!(lift_to_x(c(16.0, 0.0), 4), vec![c(2.0, 0.0), c(0.0, 2.0), c(-2.0, 0.0), c(0.0, -2.0)]);
        assert_eq!(lift_to_x(c(-8.0, 0.0), 3)[1], c(-2.0, 0.0));
    }

    #[test]
    fn single_edge_spectrum() {
        let s = spectrum(&loose_path(1, 3));
        assert_eq!(s.len(), 4);
        assert!(s.contains(c(0.0, 0.0)));
        for l in lift_to_x(c(1.0, 0.0), 3) {
            assert!(s.contains(l));
        }
        assert!(s.is_rotation_invariant());
        assert!(s.is_cyclotomic());
    }

    #[test]
    fn graphs_are_rejected() {
        assert!(matches!(
            set_spectrum(&loose_path(2, 2), &SpectrumConfig::default()),
            Err(Error::UniformityTwoUnsupported)
        ));
        let two = UniformHypergraph::build(3, 6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert!(matches!(
            set_spectrum(&two, &SpectrumConfig::default()),
            Err(Error::NotAHypertree)
        ));
        let point = UniformHypergraph::build(3, 1, vec![]).unwrap();
        assert!(matches!(
            spectral_radius(&point, &RootConfig::default()),
            Err(Error::NoEdges)
        ));
        assert_eq!(spectrum(&point).len(), 1);
    }

    #[test]
    fn h1_spectrum_is_lifted_catalog_roots() {
        let h1 = fixture_graph(FixtureName::H1);
        let s = spectrum(&h1);
        // α-1, α-2, α²-3α+1, α³-4α²+3α-1 have 1+1+2+3 distinct roots,
        // each lifted three ways, plus zero
        assert_eq!(s.len(), 1 + 3 * 7);
        assert!(s.is_rotation_invariant());
        assert!(!s.is_cyclotomic());
        let s5 = 5f64.sqrt();
        for a in [1.0, 2.0, (3.0 - s5) / 2.0, (3.0 + s5) / 2.0] {
            for l in lift_to_x(c(a, 0.0), 3) {
                assert!(s.contains(l), "missing lift of {a}");
            }
        }
    }

    #[test]
    fn cyclotomic_examples() {
        let cfg = SpectrumConfig::default();
        assert!(is_cyclotomic_spectrum(&fixture_graph(FixtureName::H2), &cfg).unwrap());
        assert!(!is_cyclotomic_spectrum(&fixture_graph(FixtureName::H1), &cfg).unwrap());
        assert!(is_cyclotomic_spectrum(&loose_path(1, 3), &cfg).unwrap());
        assert!(!is_cyclotomic_spectrum(&fixture_graph(FixtureName::H3), &cfg).unwrap());
    }

    #[test]
    fn radius_examples() {
        let cfg = RootConfig::default();
        assert!((spectral_radius(&loose_path(1, 3), &cfg).unwrap() - 1.0).abs() < 1e-14);
        assert!((spectral_radius(&loose_path(2, 3), &cfg).unwrap() - 2f64.cbrt()).abs() < 1e-14);
        let r = spectral_radius(&fixture_graph(FixtureName::H1), &cfg).unwrap();
        assert!(r > 3f64.cbrt() && r < 3.2f64.cbrt());
        assert!((spectral_radius(&star(3, 4), &cfg).unwrap() - 3f64.powf(0.25)).abs() < 1e-14);
    }

    #[test]
    fn radius_is_max_modulus_and_monotone() {
        let h3 = fixture_graph(FixtureName::H3);
        let s = spectrum(&h3);
        let r = spectral_radius(&h3, &RootConfig::default()).unwrap();
        assert!((s.max_modulus() - r).abs() < 1e-10);
        let cat = distinct_matching_polynomials(&h3).unwrap();
        for sub in &cat.subsets {
            let g = h3.edge_subgraph(sub.indices()).graph;
            assert!(spectral_radius(&g, &RootConfig::default()).unwrap() <= r + 1e-12);
        }
    }

    #[test]
    fn deduplication_is_canonical() {
        let s = spectrum(&fixture_graph(FixtureName::H3));
        for w in s.values.windows(2) {
            assert!(cmp_complex(&w[0].lambda, &w[1].lambda).is_lt());
        }
        for (i, a) in s.values.iter().enumerate() {
            for b in &s.values[i + 1..] {
                assert!((a.lambda - b.lambda).norm() > s.tol);
            }
        }
        // the same polynomials in reverse order give the same value set
        let mut polys = s.sources.clone();
        polys.reverse();
        let r = SpectrumSet::from_polys(3, polys, &SpectrumConfig::default()).unwrap();
        assert_eq!(r.lambdas().collect::<Vec<_>>(), s.lambdas().collect::<Vec<_>>());
    }

    #[test]
    fn csv_shape() {
        let s = spectrum(&loose_path(2, 3));
        let csv = s.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("re,im,source_poly,alpha_re,alpha_im"));
        let rows: Vec<_> = lines.collect();
        assert_eq!(rows.len(), s.len());
        assert!(rows.iter().all(|r| r.split(',').count() == 5));
        assert!(rows.contains(&"0,0,x,0,0"));
        assert!(rows.iter().any(|r| r.contains(",x^3 - 2,2,0")));
        assert!(!csv.contains("-0,") && !csv.ends_with("-0\n"));
    }
}
