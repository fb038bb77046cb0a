//! Published reference data for three small 3-uniform hypertrees: their
//! factored characteristic polynomials and the subtree matching-polynomial
//! table, plus the cross-checks run against them.
//!
//! `H1` is comb₃. `H2` is the four-edge tree
//! `{1,2,3},{1,4,6},{3,5,7},{1,8,9}`. `H3` is the union of the two on
//! eleven vertices, sharing the spine `{1,2,3}` and the tooth at vertex 1.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::poly::{AlphaPolynomial, SparsePolynomial};
use crate::roots::alpha_roots;
use crate::spectra::{lift_to_x, set_spectrum_with_catalog, SpectrumConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FixtureName {
    H1,
    H2,
    H3,
}

impl FixtureName {
    pub const ALL: [FixtureName; 3] = [FixtureName::H1, FixtureName::H2, FixtureName::H3];
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            FixtureName::H1 => "H1",
            FixtureName::H2 => "H2",
            FixtureName::H3 => "H3",
        })
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "H1" => Ok(FixtureName::H1),
            "H2" => Ok(FixtureName::H2),
            "H3" => Ok(FixtureName::H3),
            _ => Err(Error::UnknownFixture(s.to_string())),
        }
    }
}

pub fn fixture_graph(name: FixtureName) -> UniformHypergraph {
    let edges: &[[usize; 3]] = match name {
        FixtureName::H1 => &[[1, 2, 3], [1, 4, 7], [2, 5, 8], [3, 6, 9]],
        FixtureName::H2 => &[[1, 2, 3], [1, 4, 6], [3, 5, 7], [1, 8, 9]],
        FixtureName::H3 => &[[1, 2, 3], [1, 4, 7], [2, 5, 8], [3, 6, 9], [1, 10, 11]],
    };
    let n = if name == FixtureName::H3 { 11 } else { 9 };
    UniformHypergraph::build(3, n, edges.iter().map(|e| e.to_vec()).collect())
        .expect("fixture graphs are valid")
}

/// `x^x_power · Π base^mult`, bases written in x with exponents divisible by `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPolyFactorization {
    pub name: FixtureName,
    pub k: usize,
    pub n: usize,
    pub x_power: u64,
    pub factors: Vec<(SparsePolynomial, u32)>,
}

impl CharPolyFactorization {
    pub fn total_degree(&self) -> u64 {
        self.x_power
            + self
                .factors
                .iter()
                .map(|(p, m)| p.degree().unwrap_or(0) * *m as u64)
                .sum::<u64>()
    }

    /// `n (k-1)^(n-1)`.
    pub fn expected_degree(&self) -> u64 {
        self.n as u64 * (self.k as u64 - 1).pow(self.n as u32 - 1)
    }

    pub fn alpha_bases(&self) -> Vec<AlphaPolynomial> {
        let mut out: Vec<_> = self
            .factors
            .iter()
            .map(|(p, _)| AlphaPolynomial::from_x(p, self.k).expect("bases are polynomials in x^k"))
            .collect();
        out.sort();
        out
    }

    /// The full product in x. The multiplication runs densely in `α`.
    pub fn expand(&self) -> SparsePolynomial {
        let product = self
            .factors
            .par_iter()
            .map(|(p, m)| {
                AlphaPolynomial::from_x(p, self.k)
                    .expect("bases are polynomials in x^k")
                    .pow(*m)
            })
            .reduce(AlphaPolynomial::one, |a, b| &a * &b);
        product.expand_to_x(self.k).shifted(self.x_power)
    }
}

pub fn degree_check(f: &CharPolyFactorization) -> bool {
    f.total_degree() == f.expected_degree()
}

pub fn fixture(name: FixtureName) -> CharPolyFactorization {
    let (n, x_power, factors): (usize, u64, &[(&str, u32)]) = match name {
        FixtureName::H1 => (
            9,
            567,
            &[
                ("x^9 - 4x^6 + 3x^3 - 1", 81),
                ("x^6 - 3x^3 + 1", 81),
                ("x^3 - 2", 27),
                ("x^3 - 1", 147),
            ],
        ),
        FixtureName::H2 => (
            9,
            999,
            &[
                ("x^6 - 4x^3 + 2", 81),
                ("x^6 - 3x^3 + 1", 54),
                ("x^3 - 3", 27),
                ("x^3 - 2", 63),
                ("x^3 - 1", 75),
            ],
        ),
        FixtureName::H3 => (
            11,
            3767,
            &[
                ("x^9 - 5x^6 + 5x^3 - 2", 243),
                ("x^9 - 4x^6 + 3x^3 - 1", 162),
                ("x^6 - 4x^3 + 2", 162),
                ("x^6 - 3x^3 + 1", 135),
                ("x^3 - 3", 27),
                ("x^3 - 2", 180),
                ("x^3 - 1", 483),
            ],
        ),
    };
    CharPolyFactorization {
        name,
        k: 3,
        n,
        x_power,
        factors: factors
            .iter()
            .map(|(s, m)| (s.parse().expect("fixture literal"), *m))
            .collect(),
    }
}

pub fn fixture_by_name(name: &str) -> Result<CharPolyFactorization> {
    Ok(fixture(name.parse()?))
}

/// Labeled rows of the subtree table for `H3`.
pub fn subtree_table() -> Vec<(&'static str, SparsePolynomial)> {
    [
        ("P1", "x^3 - 1"),
        ("P2", "x^3 - 2"),
        ("P3", "x^6 - 3x^3 + 1"),
        ("S3", "x^3 - 3"),
        ("H1", "x^9 - 4x^6 + 3x^3 - 1"),
        ("H2", "x^6 - 4x^3 + 2"),
        ("H3", "x^9 - 5x^6 + 5x^3 - 2"),
    ]
    .into_iter()
    .map(|(label, p)| (label, p.parse().expect("table literal")))
    .collect()
}

/// Both sides of each set comparison, whether or not they agree.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumMatchReport {
    pub name: FixtureName,
    pub tol: f64,
    pub fixture_bases: Vec<AlphaPolynomial>,
    pub catalog_polys: Vec<AlphaPolynomial>,
    pub bases_match: bool,
    pub fixture_roots: usize,
    pub spectrum_nonzero: usize,
    /// Fixture roots with no spectrum value within `tol`, as `[re, im]`.
    pub missing_from_spectrum: Vec<[f64; 2]>,
    /// Nonzero spectrum values with no fixture root within `tol`.
    pub extra_in_spectrum: Vec<[f64; 2]>,
}

impl SpectrumMatchReport {
    pub fn roots_match(&self) -> bool {
        self.missing_from_spectrum.is_empty() && self.extra_in_spectrum.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.bases_match && self.roots_match()
    }
}

/// Compares the fixture's bases with the subtree catalog exactly, and its
/// nonzero roots with the computed set-spectrum within `cfg.tol`.
pub fn verify_theorem2(name: FixtureName, cfg: &SpectrumConfig) -> Result<SpectrumMatchReport> {
    let fx = fixture(name);
    let (spectrum, catalog) = set_spectrum_with_catalog(&fixture_graph(name), cfg)?;
    let fixture_bases = fx.alpha_bases();

    let mut roots: Vec<Complex64> = Vec::new();
    for base in &fixture_bases {
        for r in alpha_roots(base, &cfg.roots)? {
            roots.extend(lift_to_x(r.value, fx.k));
        }
    }
    let missing_from_spectrum = roots
        .iter()
        .filter(|z| !spectrum.contains(**z))
        .map(|z| [z.re, z.im])
        .collect();
    let extra_in_spectrum = spectrum
        .nonzero()
        .filter(|v| !roots.iter().any(|w| (w - v.lambda).norm() <= cfg.tol))
        .map(|v| [v.lambda.re, v.lambda.im])
        .collect();

    Ok(SpectrumMatchReport {
        name,
        tol: cfg.tol,
        bases_match: fixture_bases == catalog.polys,
        fixture_bases,
        catalog_polys: catalog.polys,
        fixture_roots: roots.len(),
        spectrum_nonzero: spectrum.nonzero().count(),
        missing_from_spectrum,
        extra_in_spectrum,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Divisibility {
    pub poly: String,
    pub divides: bool,
    /// Largest `m` with `poly^m` dividing the expansion.
    pub observed_multiplicity: u32,
    pub listed_multiplicity: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibilityReport {
    pub name: FixtureName,
    pub degree: u64,
    pub expected_degree: u64,
    pub degree_ok: bool,
    pub entries: Vec<Divisibility>,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.entries.iter().all(|e| e.divides)
    }
}

/// Divides the expanded fixture by every subtree polynomial of its graph.
pub fn conjecture_probe(name: FixtureName) -> Result<DivisibilityReport> {
    let fx = fixture(name);
    let catalog = crate::subtrees::distinct_matching_polynomials(&fixture_graph(name))?;
    let expanded = fx.expand();
    let entries = catalog
        .polys
        .par_iter()
        .map(|p| {
            let divisor = p.expand_to_x(fx.k);
            let mut current = expanded.clone();
            let mut observed = 0;
            loop {
                let (q, r) = current.div_rem(&divisor).expect("nonzero divisor");
                if !r.is_zero() {
                    break;
                }
                observed += 1;
                current = q;
            }
            Divisibility {
                poly: divisor.to_string(),
                divides: observed > 0,
                observed_multiplicity: observed,
                listed_multiplicity: fx.factors.iter().find(|(b, _)| *b == divisor).map(|(_, m)| *m),
            }
        })
        .collect();
    Ok(DivisibilityReport {
        name,
        degree: expanded.degree().unwrap_or(0),
        expected_degree: fx.expected_degree(),
        degree_ok: degree_check(&fx) && expanded.degree() == Some(fx.expected_degree()),
        entries,
    })
}
