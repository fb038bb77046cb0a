//! Exact integer polynomials.
//!
//! [`AlphaPolynomial`] is dense in `α = x^k`; every matching polynomial of a
//! k-uniform hypergraph lives there. [`SparsePolynomial`] is the expanded
//! x-form, used for printing and for exact division against characteristic
//! polynomial fixtures.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest α-degree the text and JSON parsers will allocate for.
pub const MAX_PARSED_DEGREE: u64 = 1 << 16;

/// Integer polynomial in α, little-endian, with no trailing zero
/// coefficients. The zero polynomial has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaPolynomial {
    coeffs: Vec<BigInt>,
}

impl AlphaPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        AlphaPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        AlphaPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        AlphaPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `α - c`
    pub fn linear_root(c: i64) -> Self {
        Self::from_i64s(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        horner(&self.to_f64_coeffs(), z)
    }

    /// Substitutes `α = x^k`.
    pub fn expand_to_x(&self, k: usize) -> SparsePolynomial {
        let k = k as u64;
        SparsePolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| (d as u64 * k, c.clone())),
        )
    }

    /// Inverse of [`expand_to_x`](Self::expand_to_x); `None` when some
    /// exponent is not a multiple of `k`.
    pub fn from_x(p: &SparsePolynomial, k: usize) -> Option<Self> {
        let k = k as u64;
        if k == 0 || p.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        let degree = p.degree().map_or(0, |d| d / k + 1);
        let mut coeffs = vec![BigInt::zero(); degree as usize];
        for (e, c) in &p.terms {
            coeffs[(e / k) as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    /// `(f, m)` pairs with `self = c · Π f^m`, each `f` square-free, primitive,
    /// positive leading coefficient, and pairwise coprime (Yun's algorithm
    /// over the rationals).
    pub fn squarefree_decomposition(&self) -> Vec<(AlphaPolynomial, u32)> {
        let f = QPoly::from_int(self);
        if f.degree() < 1 {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = QPoly::gcd(&f, &df);
        let mut b = f.div_exact(&a0);
        let c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut mult = 1;
        while b.degree() >= 1 {
            let a = QPoly::gcd(&b, &d);
            let next_b = b.div_exact(&a);
            let next_c = d.div_exact(&a);
            if a.degree() >= 1 {
                out.push((a.to_primitive(), mult));
            }
            d = next_c.sub(&next_b.derivative());
            b = next_b;
            mult += 1;
        }
        out
    }

    /// Number of distinct real roots (Sturm's theorem, exact).
    pub fn count_real_roots(&self) -> usize {
        let seq = QPoly::from_int(self).sturm_sequence();
        if seq.is_empty() {
            return 0;
        }
        let at_pos: Vec<i8> = seq.iter().map(|p| p.sign_at_pos_infinity()).collect();
        let at_neg: Vec<i8> = seq.iter().map(|p| p.sign_at_neg_infinity()).collect();
        sign_changes(&at_neg) - sign_changes(&at_pos)
    }

    /// Distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_real_roots_between(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let seq = QPoly::from_int(self).sturm_sequence();
        let at = |x: &BigRational| -> Vec<i8> { seq.iter().map(|p| p.sign_at(x)).collect() };
        sign_changes(&at(lo)).saturating_sub(sign_changes(&at(hi)))
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(d, c)| (d as u64, c)),
            var,
        )
    }

    /// Little-endian decimal strings, the JSON coefficient form.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn from_decimal_strings(items: &[String]) -> Result<Self> {
        if items.len() as u64 > MAX_PARSED_DEGREE + 1 {
            return Err(Error::Parse("polynomial degree too large".into()));
        }
        items
            .iter()
            .map(|s| {
                parse_decimal(s).ok_or_else(|| Error::Parse(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// `{"alpha_coeffs": ["-1", "3", "-4", "1"]}`
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            alpha_coeffs: Vec<String>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        Self::from_decimal_strings(&raw.alpha_coeffs)
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "alpha_coeffs": self.to_decimal_strings() }).to_string()
    }

    /// The x-form text, `x^9 - 4x^6 + 3x^3 - 1` for `k = 3`.
    pub fn x_form(&self, k: usize) -> String {
        self.expand_to_x(k).to_string()
    }
}

/// Higher degree sorts later; equal degrees compare from the leading
/// coefficient down.
impl Ord for AlphaPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for AlphaPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &AlphaPolynomial {
    type Output = AlphaPolynomial;

    fn mul(self, rhs: &AlphaPolynomial) -> AlphaPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return AlphaPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        AlphaPolynomial::new(out)
    }
}

impl Sub for &AlphaPolynomial {
    type Output = AlphaPolynomial;

    fn sub(self, rhs: &AlphaPolynomial) -> AlphaPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        AlphaPolynomial::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl fmt::Display for AlphaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "α")
    }
}

/// Accepts `α` or `a` as the variable, e.g. `α^3 - 4α^2 + 3*a - 1`.
impl FromStr for AlphaPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_terms(s, &["α", "a"])?;
        let degree = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        if degree > MAX_PARSED_DEGREE {
            return Err(Error::Parse(format!("degree {degree} too large")));
        }
        let mut coeffs = vec![BigInt::zero(); degree as usize + 1];
        for (e, c) in terms {
            coeffs[e as usize] += c;
        }
        Ok(Self::new(coeffs))
    }
}

impl Serialize for AlphaPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlphaPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Self::from_decimal_strings(&items).map_err(serde::de::Error::custom)
    }
}

/// Sparse integer polynomial in x: exponent to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    terms: BTreeMap<u64, BigInt>,
}

impl SparsePolynomial {
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        SparsePolynomial { terms: map }
    }

    pub fn monomial(exponent: u64) -> Self {
        Self::from_terms([(exponent, BigInt::one())])
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exponent: u64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    /// Exponents all divisible by `k`.
    pub fn is_in_x_power(&self, k: u64) -> bool {
        k > 0 && self.terms.keys().all(|e| e % k == 0)
    }

    /// Multiplies by `x^shift`.
    pub fn shifted(&self, shift: u64) -> Self {
        SparsePolynomial {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Integer long division. Proceeds while the divisor's leading coefficient
    /// divides the running remainder's leading coefficient, so for a monic
    /// divisor this is ordinary Euclidean division. `None` for a zero divisor.
    pub fn div_rem(&self, divisor: &SparsePolynomial) -> Option<(SparsePolynomial, SparsePolynomial)> {
        let (&d_deg, d_lead) = divisor.terms.iter().next_back()?;
        let tail: Vec<(u64, &BigInt)> = divisor
            .terms
            .iter()
            .filter(|(&e, _)| e != d_deg)
            .map(|(&e, c)| (e, c))
            .collect();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((&r_deg, r_lead)) = rem.iter().next_back() {
            if r_deg < d_deg || !(r_lead % d_lead).is_zero() {
                break;
            }
            let q = r_lead / d_lead;
            let shift = r_deg - d_deg;
            rem.remove(&r_deg);
            for &(e, c) in &tail {
                let slot = rem.entry(e + shift).or_insert_with(BigInt::zero);
                *slot -= &q * c;
                if slot.is_zero() {
                    rem.remove(&(e + shift));
                }
            }
            quot.insert(shift, q);
        }
        Some((
            SparsePolynomial { terms: quot },
            SparsePolynomial { terms: rem },
        ))
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let mut out: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                *out.entry(ea + eb).or_insert_with(BigInt::zero) += a * b;
            }
        }
        out.retain(|_, c| !c.is_zero());
        SparsePolynomial { terms: out }
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter().rev().map(|(&e, c)| (e, c)), "x")
    }
}

/// Parses x-form text such as `x^9 - 4x^6 + 3x^3 - 1`.
impl FromStr for SparsePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::from_terms(parse_terms(s, &["x"])?))
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (u64, &'a BigInt)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let neg = c.sign() == Sign::Minus;
        let mag = c.abs();
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if e == 0 {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}")?;
        }
        write!(f, "{var}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn parse_decimal(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Sum of signed monomials `[±] [coeff] [*] [var [^exp]]`.
fn parse_terms(s: &str, vars: &[&str]) -> Result<Vec<(u64, BigInt)>> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut rest = text.as_str();
    let mut terms = Vec::new();
    let mut first = true;
    while !rest.is_empty() {
        let mut negative = false;
        if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if !first {
            return Err(Error::Parse(format!("expected '+' or '-' at {rest:?}")));
        }
        first = false;

        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        let coeff = if digits > 0 {
            let c: BigInt = rest[..digits].parse().expect("ascii digits");
            rest = &rest[digits..];
            Some(c)
        } else {
            None
        };
        let had_star = match rest.strip_prefix('*') {
            Some(r) if coeff.is_some() => {
                rest = r;
                true
            }
            _ => false,
        };
        let var = vars.iter().find(|v| rest.starts_with(**v));
        let exponent = match var {
            Some(v) => {
                rest = &rest[v.len()..];
                if let Some(r) = rest.strip_prefix('^') {
                    let n = r.bytes().take_while(u8::is_ascii_digit).count();
                    if n == 0 {
                        return Err(Error::Parse("missing exponent".into()));
                    }
                    let e = r[..n]
                        .parse::<u64>()
                        .map_err(|_| Error::Parse("exponent overflow".into()))?;
                    rest = &r[n..];
                    e
                } else {
                    1
                }
            }
            None if coeff.is_some() && !had_star => 0,
            None => return Err(Error::Parse(format!("expected a term at {rest:?}"))),
        };
        let mut c = coeff.unwrap_or_else(BigInt::one);
        if negative {
            c = -c;
        }
        terms.push((exponent, c));
    }
    Ok(terms)
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn sign_changes(signs: &[i8]) -> usize {
    let nonzero: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nonzero.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Dense polynomial over the rationals; internal to the exact algorithms.
#[derive(Clone, Debug, PartialEq)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn from_int(p: &AlphaPolynomial) -> Self {
        QPoly(p.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    fn trimmed(mut v: Vec<BigRational>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        QPoly(v)
    }

    /// -1 for the zero polynomial.
    fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    fn derivative(&self) -> Self {
        QPoly::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    fn sub(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        QPoly::trimmed(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree();
        assert!(dd >= 0, "division by zero polynomial");
        let lead = d.0.last().unwrap().clone();
        let mut rem = self.0.clone();
        let qlen = (self.degree() - dd + 1).max(0) as usize;
        let mut quot = vec![BigRational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd as usize] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd as usize);
        (QPoly::trimmed(quot), QPoly::trimmed(rem))
    }

    fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.0.is_empty(), "inexact division");
        q
    }

    fn monic(mut self) -> Self {
        if let Some(lead) = self.0.last().cloned() {
            for c in &mut self.0 {
                *c /= &lead;
            }
        }
        self
    }

    fn gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while b.degree() >= 0 {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn to_primitive(&self) -> AlphaPolynomial {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::gcd(acc, c.clone()));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        AlphaPolynomial::new(ints.into_iter().map(|c| c / &g * &sign).collect())
    }

    fn sturm_sequence(&self) -> Vec<QPoly> {
        if self.degree() < 0 {
            return Vec::new();
        }
        let mut seq = vec![self.clone(), self.derivative()];
        while seq.last().unwrap().degree() >= 0 {
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            seq.push(QPoly(r.0.into_iter().map(|c| -c).collect()));
        }
        seq.pop();
        seq
    }

    fn lead_sign(&self) -> i8 {
        match self.0.last() {
            Some(c) if c.is_positive() => 1,
            Some(c) if c.is_negative() => -1,
            _ => 0,
        }
    }

    fn sign_at_pos_infinity(&self) -> i8 {
        self.lead_sign()
    }

    fn sign_at_neg_infinity(&self) -> i8 {
        if self.degree() % 2 == 0 {
            self.lead_sign()
        } else {
            -self.lead_sign()
        }
    }

    fn sign_at(&self, x: &BigRational) -> i8 {
        let v = self
            .0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }
}
