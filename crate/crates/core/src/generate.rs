//! Named hypertree families and a small textual generator language.
//!
//! ```text
//! spec := "comb" K | "path" T K | "star" T K | "power" K spec | "fixture" (H1|H2|H3)
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::paperdata::{fixture_graph, FixtureName};

/// Upper bound on vertices produced by [`GenSpec::generate`].
pub const MAX_GENERATED_VERTICES: usize = 1 << 20;

const MAX_NESTING: usize = 32;

/// `t` edges, consecutive ones sharing exactly one vertex.
pub fn loose_path(t: usize, k: usize) -> UniformHypergraph {
    let edges = (0..t)
        .map(|i| (i * (k - 1) + 1..=i * (k - 1) + k).collect())
        .collect();
    UniformHypergraph::build(k, t * (k - 1) + 1, edges).expect("loose path is valid")
}

/// `t` edges through vertex 1, otherwise disjoint.
pub fn star(t: usize, k: usize) -> UniformHypergraph {
    let edges = (0..t)
        .map(|i| {
            std::iter::once(1)
                .chain(2 + i * (k - 1)..2 + (i + 1) * (k - 1))
                .collect()
        })
        .collect();
    UniformHypergraph::build(k, t * (k - 1) + 1, edges).expect("star is valid")
}

/// Spine `{1..k}` plus teeth `{i, i+k, ..., i+(k-1)k}` for `i` in `1..=k`.
pub fn comb(k: usize) -> UniformHypergraph {
    let spine = (1..=k).collect();
    let teeth = (1..=k).map(|i| (0..k).map(|t| i + t * k).collect());
    let edges = std::iter::once(spine).chain(teeth).collect();
    UniformHypergraph::build(k, k * k, edges).expect("comb is valid")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Comb { k: usize },
    Path { t: usize, k: usize },
    Star { t: usize, k: usize },
    Power { k: usize, base: Box<GenSpec> },
    Fixture(FixtureName),
}

impl GenSpec {
    /// Vertex count of the generated hypergraph, saturating on overflow.
    pub fn vertex_count(&self) -> usize {
        match self {
            GenSpec::Comb { k } => k.saturating_mul(*k),
            GenSpec::Path { t, k } | GenSpec::Star { t, k } => {
                t.saturating_mul(k.saturating_sub(1)).saturating_add(1)
            }
            GenSpec::Power { k, base } => {
                let grow = k.saturating_sub(base.uniformity());
                base.vertex_count()
                    .saturating_add(base.edge_count().saturating_mul(grow))
            }
            GenSpec::Fixture(name) => fixture_graph(*name).n(),
        }
    }

    fn edge_count(&self) -> usize {
        match self {
            GenSpec::Comb { k } => k.saturating_add(1),
            GenSpec::Path { t, .. } | GenSpec::Star { t, .. } => *t,
            GenSpec::Power { base, .. } => base.edge_count(),
            GenSpec::Fixture(name) => fixture_graph(*name).num_edges(),
        }
    }

    fn uniformity(&self) -> usize {
        match self {
            GenSpec::Comb { k }
            | GenSpec::Path { k, .. }
            | GenSpec::Star { k, .. }
            | GenSpec::Power { k, .. } => *k,
            GenSpec::Fixture(_) => 3,
        }
    }

    pub fn generate(&self) -> Result<UniformHypergraph> {
        let k = self.uniformity();
        if k < 2 {
            return Err(Error::InvalidUniformity(k));
        }
        let size = self.vertex_count();
        if size > MAX_GENERATED_VERTICES {
            return Err(Error::GeneratorTooLarge(size));
        }
        match self {
            GenSpec::Comb { k } => Ok(comb(*k)),
            GenSpec::Path { t, k } => Ok(loose_path(*t, *k)),
            GenSpec::Star { t, k } => Ok(star(*t, *k)),
            GenSpec::Power { k, base } => base.generate()?.power(*k),
            GenSpec::Fixture(name) => Ok(fixture_graph(*name)),
        }
    }

    fn parse_tokens<'a>(tokens: &mut impl Iterator<Item = &'a str>, depth: usize) -> Result<Self> {
        if depth > MAX_NESTING {
            return Err(Error::Parse("generator nesting too deep".into()));
        }
        let head = tokens
            .next()
            .ok_or_else(|| Error::Parse("empty generator spec".into()))?;
        match head {
            "comb" => Ok(GenSpec::Comb { k: next_number(tokens, "k")? }),
            "path" => {
                let t = next_number(tokens, "t")?;
                Ok(GenSpec::Path { t, k: next_number(tokens, "k")? })
            }
            "star" => {
                let t = next_number(tokens, "t")?;
                Ok(GenSpec::Star { t, k: next_number(tokens, "k")? })
            }
            "power" => {
                let k = next_number(tokens, "k")?;
                let base = Box::new(GenSpec::parse_tokens(tokens, depth + 1)?);
                Ok(GenSpec::Power { k, base })
            }
            "fixture" => {
                let name = tokens
                    .next()
                    .ok_or_else(|| Error::Parse("missing fixture name".into()))?;
                Ok(GenSpec::Fixture(name.parse()?))
            }
            other => Err(Error::Parse(format!("unknown generator {other:?}"))),
        }
    }
}

fn next_number<'a>(tokens: &mut impl Iterator<Item = &'a str>, what: &str) -> Result<usize> {
    let tok = tokens
        .next()
        .ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::Parse(format!("bad {what} {tok:?}")))
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let spec = GenSpec::parse_tokens(&mut tokens, 0)?;
        match tokens.next() {
            None => Ok(spec),
            Some(extra) => Err(Error::Parse(format!("trailing token {extra:?}"))),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSpec::Comb { k } => write!(f, "comb {k}"),
            GenSpec::Path { t, k } => write!(f, "path {t} {k}"),
            GenSpec::Star { t, k } => write!(f, "star {t} {k}"),
            GenSpec::Power { k, base } => write!(f, "power {k} {base}"),
            GenSpec::Fixture(name) => write!(f, "fixture {name}"),
        }
    }
}
