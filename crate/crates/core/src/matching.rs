//! Matching counts `|M_i|` and the matching polynomial
//! `φ(H) = Σ (-1)^i |M_i| α^(m-i)` with `α = x^k`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;
use crate::poly::AlphaPolynomial;

/// Default edge cap for [`matching_counts_bruteforce`].
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 24;

/// `counts[i]` is the number of `i`-matchings; the last entry is nonzero, so
/// `counts.len() - 1` is the matching number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatchingCounts {
    counts: Vec<BigUint>,
}

impl MatchingCounts {
    pub fn new(counts: Vec<BigUint>) -> Result<Self> {
        if counts.first() != Some(&BigUint::one()) {
            return Err(Error::Parse("matching counts must start with 1".into()));
        }
        if counts.last().is_some_and(Zero::is_zero) {
            return Err(Error::Parse("matching counts must end nonzero".into()));
        }
        Ok(MatchingCounts { counts })
    }

    pub fn from_u64s(counts: &[u64]) -> Result<Self> {
        Self::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn matching_number(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn to_alpha_poly(&self) -> AlphaPolynomial {
        let m = self.matching_number();
        let mut coeffs = vec![BigInt::zero(); m + 1];
        for (i, c) in self.counts.iter().enumerate() {
            let c = BigInt::from(c.clone());
            coeffs[m - i] = if i % 2 == 0 { c } else { -c };
        }
        AlphaPolynomial::new(coeffs)
    }
}

pub fn to_alpha_poly(c: &MatchingCounts) -> AlphaPolynomial {
    c.to_alpha_poly()
}

/// Enumerates every set of pairwise disjoint edges by backtracking.
pub fn matching_counts_bruteforce(h: &UniformHypergraph) -> Result<MatchingCounts> {
    matching_counts_bruteforce_with_limit(h, BRUTE_FORCE_EDGE_LIMIT)
}

pub fn matching_counts_bruteforce_with_limit(
    h: &UniformHypergraph,
    limit: usize,
) -> Result<MatchingCounts> {
    if h.num_edges() > limit {
        return Err(Error::TooManyEdgesForOracle {
            edges: h.num_edges(),
            limit,
        });
    }
    fn visit(
        edges: &[Vec<usize>],
        start: usize,
        size: usize,
        used: &mut [bool],
        tally: &mut Vec<u64>,
    ) {
        if tally.len() <= size {
            tally.resize(size + 1, 0);
        }
        tally[size] += 1;
        for j in start..edges.len() {
            if edges[j].iter().all(|&v| !used[v]) {
                edges[j].iter().for_each(|&v| used[v] = true);
                visit(edges, j + 1, size + 1, used, tally);
                edges[j].iter().for_each(|&v| used[v] = false);
            }
        }
    }
    let mut used = vec![false; h.n() + 1];
    let mut tally = Vec::new();
    visit(h.edges(), 0, 0, &mut used, &mut tally);
    MatchingCounts::new(tally.into_iter().map(BigUint::from).collect())
}

/// Which pendant edge the elimination removes first when several qualify.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ScanOrder {
    #[default]
    Forward,
    Reverse,
}

/// Pendant-edge elimination for hyperforests.
pub fn matching_counts_tree(h: &UniformHypergraph) -> Result<MatchingCounts> {
    matching_counts_tree_with(h, ScanOrder::Forward)
}

/// Repeatedly removes a pendant edge `e` hanging off vertex `v`, folding the
/// branch into two generating polynomials carried by `v`: matchings of
/// everything already folded into `v` that leave `v` uncovered (`free`) and
/// all such matchings (`all`). This is the deletion recurrence
/// `M(H) = M(H - e) + z·M(H - N[e])` evaluated leaf-to-root, so the work is
/// polynomial in the edge count. A component reduced to a single edge (no
/// pendant edges left) is the base case.
pub fn matching_counts_tree_with(h: &UniformHypergraph, order: ScanOrder) -> Result<MatchingCounts> {
    if !h.is_hyperforest() {
        return Err(Error::NotAHyperforest);
    }
    let k = h.k();
    let m = h.num_edges();
    let edges = h.edges();
    let mut free = vec![vec![BigUint::one()]; h.n() + 1];
    let mut all = free.clone();
    let mut deg = h.degrees();
    let mut alive = vec![true; m];
    let mut total = vec![BigUint::one()];

    let scan: Vec<usize> = match order {
        ScanOrder::Forward => (0..m).collect(),
        ScanOrder::Reverse => (0..m).rev().collect(),
    };
    for _ in 0..m {
        let leaves_in = |i: usize| edges[i].iter().filter(|&&v| deg[v] == 1).count();
        let pick = scan
            .iter()
            .copied()
            .filter(|&i| alive[i])
            .find(|&i| leaves_in(i) == k - 1)
            .or_else(|| scan.iter().copied().find(|&i| alive[i] && leaves_in(i) == k))
            .ok_or(Error::NotAHyperforest)?;
        alive[pick] = false;

        let edge = &edges[pick];
        let leaves: Vec<usize> = edge.iter().copied().filter(|&v| deg[v] == 1).collect();
        let leaf_all = leaves
            .iter()
            .fold(vec![BigUint::one()], |acc, &u| poly_mul(&acc, &all[u]));
        let leaf_free = leaves
            .iter()
            .fold(vec![BigUint::one()], |acc, &u| poly_mul(&acc, &free[u]));
        for &u in &leaves {
            deg[u] = 0;
        }

        match edge.iter().copied().find(|&v| deg[v] >= 2) {
            Some(v) => {
                let with_edge = shift(&poly_mul(&free[v], &leaf_free));
                all[v] = poly_add(&poly_mul(&all[v], &leaf_all), &with_edge);
                free[v] = poly_mul(&free[v], &leaf_all);
                deg[v] -= 1;
            }
            None => {
                // isolated edge: closes out its component
                let component = poly_add(&leaf_all, &shift(&leaf_free));
                total = poly_mul(&total, &component);
            }
        }
    }
    MatchingCounts::new(total)
}

/// `φ(H)` via the elimination.
pub fn matching_polynomial(h: &UniformHypergraph) -> Result<AlphaPolynomial> {
    Ok(matching_counts_tree(h)?.to_alpha_poly())
}

/// Closed form for the k-comb: `(α - 1)^k - α^(k-1)`.
pub fn comb_formula(k: usize) -> AlphaPolynomial {
    let mut spine_power = vec![BigInt::zero(); k];
    spine_power[k - 1] = BigInt::one();
    let teeth = AlphaPolynomial::linear_root(1).pow(k as u32);
    &teeth - &AlphaPolynomial::new(spine_power)
}

/// Distinct real roots of [`comb_formula`], counted exactly.
pub fn count_real_comb_roots(k: usize) -> usize {
    comb_formula(k).count_real_roots()
}

fn poly_mul(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn shift(a: &[BigUint]) -> Vec<BigUint> {
    std::iter::once(BigUint::zero()).chain(a.iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{comb, loose_path, star};
    use crate::paperdata::{fixture_graph, FixtureName};
    use crate::random::{random_hyperforest, random_hypertree, random_tree};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn counts(c: &[u64]) -> MatchingCounts {
        MatchingCounts::from_u64s(c).unwrap()
    }

    fn ap(c: &[i64]) -> AlphaPolynomial {
        AlphaPolynomial::from_i64s(c)
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(matching_counts_bruteforce(&loose_path(1, 3)).unwrap(), counts(&[1, 1]));
        assert_eq!(
            matching_counts_bruteforce(&fixture_graph(FixtureName::H1)).unwrap(),
            counts(&[1, 4, 3, 1])
        );
        assert_eq!(
            matching_counts_bruteforce(&fixture_graph(FixtureName::H3)).unwrap(),
            counts(&[1, 5, 5, 2])
        );
        let big = loose_path(25, 3);
        assert!(matches!(
            matching_counts_bruteforce(&big),
            Err(Error::TooManyEdgesForOracle { edges: 25, limit: 24 })
        ));
    }

    #[test]
    fn tree_examples() {
        assert_eq!(
            matching_counts_tree(&fixture_graph(FixtureName::H2)).unwrap(),
            counts(&[1, 4, 2])
        );
        assert_eq!(matching_counts_tree(&loose_path(3, 3)).unwrap(), counts(&[1, 3, 1]));
        assert_eq!(matching_counts_tree(&star(3, 3)).unwrap(), counts(&[1, 3]));
        assert_eq!(matching_counts_tree(&loose_path(0, 3)).unwrap(), counts(&[1]));
        assert_eq!(matching_counts_tree(&loose_path(1, 4)).unwrap(), counts(&[1, 1]));
    }

    #[test]
    fn tree_rejects_cycles() {
        let cyc = UniformHypergraph::build(3, 6, vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1]])
            .unwrap();
        assert!(matches!(matching_counts_tree(&cyc), Err(Error::NotAHyperforest)));
        // bruteforce still works on cyclic input
        assert_eq!(matching_counts_bruteforce(&cyc).unwrap(), counts(&[1, 3]));
    }

    #[test]
    fn alpha_poly_examples() {
        assert_eq!(counts(&[1, 1]).to_alpha_poly(), ap(&[-1, 1]));
        assert_eq!(counts(&[1, 4, 3, 1]).to_alpha_poly(), ap(&[-1, 3, -4, 1]));
        assert_eq!(counts(&[1, 4, 2]).to_alpha_poly(), ap(&[2, -4, 1]));
        assert_eq!(counts(&[1]).to_alpha_poly(), AlphaPolynomial::one());
        assert!(MatchingCounts::from_u64s(&[2, 1]).is_err());
        assert!(MatchingCounts::from_u64s(&[1, 0]).is_err());
    }

    #[test]
    fn product_matches_disjoint_union() {
        let p1 = loose_path(1, 3);
        let p2 = loose_path(2, 3);
        let union = p1.disjoint_union(&p2).unwrap();
        let lhs = &matching_polynomial(&p1).unwrap() * &matching_polynomial(&p2).unwrap();
        assert_eq!(lhs, ap(&[2, -3, 1]));
        assert_eq!(lhs, matching_counts_bruteforce(&union).unwrap().to_alpha_poly());

        let h1 = fixture_graph(FixtureName::H1);
        let lhs = &matching_polynomial(&h1).unwrap() * &ap(&[-1, 1]);
        let oracle = matching_counts_bruteforce(&h1.disjoint_union(&p1).unwrap()).unwrap();
        assert_eq!(lhs, oracle.to_alpha_poly());
    }

    #[test]
    fn comb_formula_examples() {
        assert_eq!(comb_formula(3), ap(&[-1, 3, -4, 1]));
        assert_eq!(comb_formula(2), ap(&[1, -3, 1]));
        assert_eq!(
            matching_counts_bruteforce(&comb(2)).unwrap(),
            counts(&[1, 3, 1])
        );
        // (α-1)^4 - α^3 = α^4 - 5α^3 + 6α^2 - 4α + 1
        assert_eq!(comb_formula(4), ap(&[1, -4, 6, -5, 1]));
        assert_eq!(
            matching_counts_bruteforce(&comb(4)).unwrap().to_alpha_poly(),
            comb_formula(4)
        );
        for k in 2..=7 {
            assert_eq!(matching_polynomial(&comb(k)).unwrap(), comb_formula(k), "k = {k}");
        }
    }

    #[test]
    fn comb_real_root_counts() {
        assert_eq!(count_real_comb_roots(3), 1);
        assert_eq!(count_real_comb_roots(4), 2);
        assert_eq!(count_real_comb_roots(5), 1);
    }

    #[test]
    fn dp_matches_oracle_on_random_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..200 {
            let k = rng.gen_range(3..=5);
            let m = rng.gen_range(0..=10);
            let h = random_hypertree(&mut rng, k, m);
            let oracle = matching_counts_bruteforce(&h).unwrap();
            assert_eq!(matching_counts_tree(&h).unwrap(), oracle);
            assert_eq!(matching_counts_tree_with(&h, ScanOrder::Reverse).unwrap(), oracle);
        }
    }

    #[test]
    fn multiplicative_over_components() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let k = rng.gen_range(3..=5);
            let parts = rng.gen_range(2..=3);
            let (forest, pieces) = random_hyperforest(&mut rng, k, parts, 5);
            let product = pieces.iter().fold(AlphaPolynomial::one(), |acc, p| {
                &acc * &matching_polynomial(p).unwrap()
            });
            assert_eq!(matching_polynomial(&forest).unwrap(), product);
            assert_eq!(matching_counts_bruteforce(&forest).unwrap().to_alpha_poly(), product);
        }
    }

    #[test]
    fn powering_preserves_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = rng.gen_range(1..=9);
            let t = random_tree(&mut rng, m);
            let base = matching_counts_tree(&t).unwrap();
            for k in 3..=5 {
                assert_eq!(matching_counts_tree(&t.power(k).unwrap()).unwrap(), base);
            }
        }
    }

    proptest! {
        #[test]
        fn signs_alternate_from_plus_one(seed in any::<u64>(), k in 2usize..=5, m in 0usize..=9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = matching_polynomial(&random_hypertree(&mut rng, k, m)).unwrap();
            let lead = p.coeffs().len() - 1;
            for (d, c) in p.coeffs().iter().enumerate() {
                let expect_positive = (lead - d) % 2 == 0;
                prop_assert!(!c.is_zero());
                prop_assert_eq!(c.sign() == num_bigint::Sign::Plus, expect_positive);
            }
            prop_assert!(p.leading().unwrap().is_one());
        }
    }
}
