//! Free Lie algebras in the Lyndon basis.
//!
//! Letters are `1..=d`. Words compare lexicographically with a proper prefix
//! smaller than its extensions, which is exactly `Vec<u32>`'s `Ord`. A Lyndon
//! word `w` stands for the bracketing given by its standard factorization
//! `w = u·v`, `v` the longest proper Lyndon suffix.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{IntegerRing, Ring};

pub type Letter = u32;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(Vec<Letter>);

/// Strictly smaller than every proper suffix (equivalently, every proper rotation).
pub fn is_lyndon(w: &[Letter]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

impl LyndonWord {
    pub fn new(letters: Vec<Letter>) -> Option<Self> {
        is_lyndon(&letters).then_some(Self(letters))
    }

    pub fn letter(a: Letter) -> Self {
        Self(vec![a])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn is_letter(&self) -> bool {
        self.0.len() == 1
    }

    /// `(u, v)` with `v` the longest proper Lyndon suffix. `None` for letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        if self.is_letter() {
            return None;
        }
        let split = (1..self.0.len()).find(|&i| is_lyndon(&self.0[i..]))?;
        Some((Self(self.0[..split].to_vec()), Self(self.0[split..].to_vec())))
    }

    fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.standard_factorization() {
            None => write!(f, "{}", self.0[0]),
            Some((u, v)) => write!(f, "[{u},{v}]"),
        }
    }
}

/// Lyndon words of length exactly `n` over `{1, …, d}`, sorted (Duval's algorithm).
pub fn lyndon_basis(d: usize, n: usize) -> Vec<LyndonWord> {
    let mut out = Vec::new();
    if d == 0 || n == 0 {
        return out;
    }
    let d = d as Letter;
    let mut w: Vec<Letter> = vec![0];
    while !w.is_empty() {
        if w.len() == n {
            out.push(LyndonWord(w.iter().map(|x| x + 1).collect()));
        }
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(d - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

/// Number-theoretic Möbius function.
pub fn number_mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Witt's formula `(1/n) Σ_{m | n} μ(m) d^{n/m}`: the rank of the weight-`n`
/// part of the free Lie algebra on `d` generators.
pub fn witt_dimension<T: IntegerRing>(d: usize, n: usize) -> T {
    if n == 0 {
        return T::zero();
    }
    let base = T::from(d as i64);
    let mut acc = T::zero();
    for m in 1..=n {
        if n % m != 0 {
            continue;
        }
        let mu = number_mobius(m as u64);
        if mu == 0 {
            continue;
        }
        let power = num_traits::pow(base.clone(), n / m);
        acc = if mu > 0 { acc + power } else { acc - power };
    }
    acc / T::from(n as i64)
}

/// Integer combination of Lyndon basis elements over a fixed alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLieElement<C> {
    alphabet: usize,
    terms: BTreeMap<LyndonWord, C>,
}

impl<C: Ring> FreeLieElement<C> {
    pub fn zero(alphabet: usize) -> Self {
        Self { alphabet, terms: BTreeMap::new() }
    }

    pub fn generator(alphabet: usize, a: Letter) -> Self {
        assert!(a >= 1 && a as usize <= alphabet, "letter {a} outside alphabet of size {alphabet}");
        Self::basis(alphabet, LyndonWord::letter(a))
    }

    pub fn basis(alphabet: usize, w: LyndonWord) -> Self {
        Self { alphabet, terms: BTreeMap::from([(w, C::one())]) }
    }

    pub fn from_terms(alphabet: usize, terms: impl IntoIterator<Item = (LyndonWord, C)>) -> Self {
        let mut out = Self::zero(alphabet);
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn terms(&self) -> &BTreeMap<LyndonWord, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: LyndonWord, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = x.clone() + c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.alphabet);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-C::one());
        out
    }

    /// The weight-`n` component.
    pub fn homogeneous(&self, n: usize) -> Self {
        Self {
            alphabet: self.alphabet,
            terms: self.terms.iter().filter(|(w, _)| w.weight() == n).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// The common weight of all terms, if homogeneous and nonzero.
    pub fn weight(&self) -> Option<usize> {
        let mut ws = self.terms.keys().map(LyndonWord::weight);
        let first = ws.next()?;
        ws.all(|w| w == first).then_some(first)
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(self.alphabet, other.alphabet));
        }
        let mut out = Self::zero(self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let uv = bracket_words::<C>(self.alphabet, u, v);
                out.add_scaled(&uv, &(a.clone() * b.clone()));
            }
        }
        Ok(out)
    }

    pub fn to_tensor(&self) -> TensorPoly<C> {
        let mut out = TensorPoly::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&word_to_tensor::<C>(w), c);
        }
        out
    }
}

/// `[u, v]` of two basis elements, rewritten into the Lyndon basis.
///
/// For `u < v`: if `u` is a letter or the right factor of `u` is `≥ v`, then
/// `uv` is Lyndon with standard factorization `(u, v)`. Otherwise, with
/// `u = [u1, u2]`, Jacobi gives `[u, v] = [u1, [u2, v]] - [u2, [u1, v]]`.
pub fn bracket_words<C: Ring>(alphabet: usize, u: &LyndonWord, v: &LyndonWord) -> FreeLieElement<C> {
    use std::cmp::Ordering;
    match u.cmp(v) {
        Ordering::Equal => FreeLieElement::zero(alphabet),
        Ordering::Greater => bracket_words::<C>(alphabet, v, u).neg(),
        Ordering::Less => match u.standard_factorization() {
            Some((u1, u2)) if u2 < *v => {
                let left = bracket_word_element(alphabet, &u1, &bracket_words::<C>(alphabet, &u2, v));
                let right = bracket_word_element(alphabet, &u2, &bracket_words::<C>(alphabet, &u1, v));
                left.sub(&right)
            }
            _ => FreeLieElement::basis(alphabet, u.concat(v)),
        },
    }
}

fn bracket_word_element<C: Ring>(alphabet: usize, u: &LyndonWord, x: &FreeLieElement<C>) -> FreeLieElement<C> {
    let mut out = FreeLieElement::zero(alphabet);
    for (v, c) in &x.terms {
        out.add_scaled(&bracket_words(alphabet, u, v), c);
    }
    out
}

fn word_to_tensor<C: Ring>(w: &LyndonWord) -> TensorPoly<C> {
    match w.standard_factorization() {
        None => TensorPoly::word(w.0.clone()),
        Some((u, v)) => TensorPoly::commutator(&word_to_tensor(&u), &word_to_tensor(&v)),
    }
}

pub fn to_tensor<C: Ring>(u: &FreeLieElement<C>) -> TensorPoly<C> {
    u.to_tensor()
}

impl<C: Ring> fmt::Display for FreeLieElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = *c < C::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "−")?,
                (0, false) => {}
                (_, true) => write!(f, " − ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}·{w}")?;
            }
        }
        Ok(())
    }
}

/// Noncommutative polynomial: words over the alphabet with coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorPoly<C> {
    terms: BTreeMap<Vec<Letter>, C>,
}

impl<C: Ring> TensorPoly<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn word(w: Vec<Letter>) -> Self {
        Self { terms: BTreeMap::from([(w, C::one())]) }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Letter>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Vec<Letter>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = x.clone() + c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x.clone() * c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-C::one());
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let w: Vec<Letter> = u.iter().chain(v).copied().collect();
                out.add_term(w, a.clone() * b.clone());
            }
        }
        out
    }

    /// `ab - ba`.
    pub fn commutator(a: &Self, b: &Self) -> Self {
        a.mul(b).sub(&b.mul(a))
    }
}

impl<C: Ring> fmt::Display for TensorPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}·{}", w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
