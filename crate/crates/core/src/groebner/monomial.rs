use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x^α` stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The variable `x_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u64]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w).sum()
    }

    /// Bit `i` is set when `x_i` divides the monomial (first 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|&(i, &e)| e > 0 && i < 64)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a - b).collect())
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(&default_names(self.nvars())))
    }
}

/// `x1, ..., xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// `x1, ..., xp, y1, ..., yq`.
pub fn split_names(p: usize, q: usize) -> Vec<String> {
    let mut names = default_names(p);
    names.extend((1..=q).map(|i| format!("y{i}")));
    names
}

/// A pure-difference binomial `plus - minus` with `plus != minus`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Binomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    /// `None` when the two monomials coincide (the zero polynomial).
    pub fn new(plus: Monomial, minus: Monomial) -> Option<Self> {
        if plus == minus {
            None
        } else {
            Some(Binomial { plus, minus })
        }
    }

    /// `x^{v+} - x^{v-}` for an integer vector `v`; `None` for `v = 0`.
    pub fn from_exponent_vector(v: &[i64]) -> Result<Option<Self>> {
        let conv = |x: i64| {
            u32::try_from(x).map_err(|_| Error::Overflow(format!("exponent {x} out of range")))
        };
        let plus = v.iter().map(|&x| conv(x.max(0))).collect::<Result<Vec<_>>>()?;
        let minus = v.iter().map(|&x| conv((-x).max(0))).collect::<Result<Vec<_>>>()?;
        Ok(Binomial::new(Monomial(plus), Monomial(minus)))
    }

    /// Builds `x^a - x^b` from two exponent lists.
    pub fn from_exponents(plus: &[u32], minus: &[u32]) -> Option<Self> {
        Binomial::new(Monomial(plus.to_vec()), Monomial(minus.to_vec()))
    }

    pub fn nvars(&self) -> usize {
        self.plus.nvars()
    }

    /// The exponent vector `plus - minus`.
    pub fn exponent_vector(&self) -> Vec<i64> {
        self.plus
            .0
            .iter()
            .zip(&self.minus.0)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    /// Swaps the two terms if needed so that `plus` leads under `order`.
    pub fn oriented(self, order: &MonomialOrder) -> Self {
        if order.cmp(&self.plus, &self.minus) == Ordering::Less {
            Binomial { plus: self.minus, minus: self.plus }
        } else {
            self
        }
    }

    /// The binomial up to sign, with the larger monomial first in the
    /// lexicographic comparison of exponent vectors. Order independent.
    pub fn normalized_sign(&self) -> Self {
        if self.plus >= self.minus {
            self.clone()
        } else {
            Binomial { plus: self.minus.clone(), minus: self.plus.clone() }
        }
    }

    pub fn common_factor(&self) -> Monomial {
        self.plus.gcd(&self.minus)
    }

    /// Divides out the gcd of the two monomials.
    ///
    /// In a prime binomial ideal not containing variables this stays inside
    /// the ideal.
    pub fn cancel_common_factor(&self) -> Self {
        let g = self.common_factor();
        Binomial { plus: self.plus.div(&g), minus: self.minus.div(&g) }
    }

    pub fn is_homogeneous(&self, weights: &[u64]) -> bool {
        self.plus.weighted_degree(weights) == self.minus.weighted_degree(weights)
    }

    /// Whether only variables with `keep[i]` occur.
    pub fn uses_only(&self, keep: &[bool]) -> bool {
        self.plus
            .0
            .iter()
            .zip(&self.minus.0)
            .zip(keep)
            .all(|((&a, &b), &k)| k || (a == 0 && b == 0))
    }

    /// Moves the binomial into a ring with `total` variables, placing the
    /// current variables at `offset..offset + nvars`.
    pub fn embed(&self, offset: usize, total: usize) -> Self {
        let place = |m: &Monomial| {
            let mut v = vec![0; total];
            v[offset..offset + m.nvars()].copy_from_slice(&m.0);
            Monomial(v)
        };
        Binomial { plus: place(&self.plus), minus: place(&self.minus) }
    }

    /// Keeps the variables in `range`, dropping the others.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Self {
        Binomial {
            plus: Monomial(self.plus.0[range.clone()].to_vec()),
            minus: Monomial(self.minus.0[range].to_vec()),
        }
    }

    pub fn format(&self, names: &[String]) -> String {
        format!("{} - {}", self.plus.format(names), self.minus.format(names))
    }
}

impl fmt::Debug for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(&default_names(self.nvars())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grlex,
    Grevlex,
}

impl std::str::FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grlex" | "deglex" => Ok(OrderKind::Grlex),
            "grevlex" | "degrevlex" => Ok(OrderKind::Grevlex),
            other => Err(Error::InvalidGenerators(format!("unknown monomial order `{other}`"))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::Grlex => "grlex",
            OrderKind::Grevlex => "grevlex",
        })
    }
}

/// A monomial order on a fixed number of variables.
///
/// `perm` lists the variables from most to least significant. Optional
/// positive `weights` replace the standard degree in the graded orders, and
/// an optional `elimination` mask makes the order first compare the degree
/// in the marked variables, which turns it into an elimination order for
/// them.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Vec<usize>,
    pub weights: Option<Vec<u64>>,
    pub elimination: Option<Vec<bool>>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, perm: (0..nvars).collect(), weights: None, elimination: None }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, nvars)
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, nvars)
    }

    pub fn grlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grlex, nvars)
    }

    pub fn with_perm(mut self, perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; self.nvars()];
        if perm.len() != self.nvars() || perm.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidGenerators(format!("{perm:?} is not a permutation")));
        }
        self.perm = perm;
        Ok(self)
    }

    pub fn with_weights(mut self, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != self.nvars() || weights.contains(&0) {
            return Err(Error::InvalidGenerators(
                "order weights must be positive, one per variable".into(),
            ));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn with_elimination(mut self, eliminate: Vec<bool>) -> Result<Self> {
        if eliminate.len() != self.nvars() {
            return Err(Error::DimensionMismatch("elimination mask length".into()));
        }
        self.elimination = Some(eliminate);
        Ok(self)
    }

    /// Same order with variable `i` moved to the least significant position.
    pub fn with_last(&self, i: usize) -> Self {
        let mut perm: Vec<usize> = self.perm.iter().copied().filter(|&v| v != i).collect();
        perm.push(i);
        MonomialOrder { perm, ..self.clone() }
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    fn graded_degree(&self, m: &Monomial) -> u64 {
        match &self.weights {
            Some(w) => m.weighted_degree(w),
            None => m.degree(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if let Some(mask) = &self.elimination {
            let deg = |m: &Monomial| -> u64 {
                m.0.iter().zip(mask).filter(|(_, &e)| e).map(|(&x, _)| x as u64).sum()
            };
            match deg(a).cmp(&deg(b)) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        match self.kind {
            OrderKind::Lex => self.lex_cmp(a, b),
            OrderKind::Grlex => self
                .graded_degree(a)
                .cmp(&self.graded_degree(b))
                .then_with(|| self.lex_cmp(a, b)),
            OrderKind::Grevlex => self
                .graded_degree(a)
                .cmp(&self.graded_degree(b))
                .then_with(|| {
                    for &i in self.perm.iter().rev() {
                        match a.0[i].cmp(&b.0[i]) {
                            Ordering::Equal => continue,
                            other => return other.reverse(),
                        }
                    }
                    Ordering::Equal
                }),
        }
    }

    fn lex_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &i in &self.perm {
            match a.0[i].cmp(&b.0[i]) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// Short description such as `grevlex` or `grevlex(weighted)`.
    pub fn describe(&self) -> String {
        let mut s = self.kind.to_string();
        let identity = self.perm.iter().enumerate().all(|(i, &v)| i == v);
        if !identity {
            s.push_str(&format!(" perm={:?}", self.perm.iter().map(|v| v + 1).collect::<Vec<_>>()));
        }
        if let Some(w) = &self.weights {
            s.push_str(&format!(" weights={w:?}"));
        }
        if self.elimination.is_some() {
            s.push_str(" (elimination)");
        }
        s
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}
