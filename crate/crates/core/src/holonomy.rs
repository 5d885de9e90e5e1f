//! The associated graded Lie algebra of a fiber-type arrangement group, built
//! as the iterated semidirect product `L[d_1] ⋉ … ⋉ L[d_ℓ]`.
//!
//! Level `q` is the free Lie algebra on the `d_q` hyperplanes of that level.
//! A generator `C_H` from a lower level acts on level `q` by the derivation
//!
//! ```text
//! C_H · B_m = Σ_{ {i,i'} ∈ S_q(H), m ∈ {i,i'} } [B_m, B_i + B_{i'}]
//! ```
//!
//! and brackets of lower-level elements act by commutators of derivations.
//! Every bracket is computed from this structure; the holonomy relations
//! `[C_X, C_H] = 0` are then checked, not imposed.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::fibration::{incidence_sets, FiberedPresentation, IncidenceData};
use crate::free_lie::{witt_dimension, FreeLieElement, Letter, LyndonWord};
use crate::lattice::IntersectionPoset;
use crate::report::CheckReport;
use crate::scalar::{Field, IntegerRing, Ring};
use crate::series::TruncatedSeries;

/// Sum of per-level free Lie elements. Levels with `d_j = 0` never appear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement<C> {
    components: BTreeMap<usize, FreeLieElement<C>>,
}

impl<C: Ring> Default for LieElement<C> {
    fn default() -> Self {
        Self { components: BTreeMap::new() }
    }
}

impl<C: Ring> LieElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_component(level: usize, x: FreeLieElement<C>) -> Self {
        let mut out = Self::zero();
        out.add_component(level, &x, &C::one());
        out
    }

    pub fn components(&self) -> &BTreeMap<usize, FreeLieElement<C>> {
        &self.components
    }

    pub fn component(&self, level: usize) -> Option<&FreeLieElement<C>> {
        self.components.get(&level)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn add_component(&mut self, level: usize, x: &FreeLieElement<C>, c: &C) {
        if x.is_zero() {
            return;
        }
        let entry = self.components.entry(level).or_insert_with(|| FreeLieElement::zero(x.alphabet()));
        entry.add_scaled(x, c);
        if entry.is_zero() {
            self.components.remove(&level);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&j, x) in &other.components {
            out.add_component(j, x, &C::one());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&j, x) in &other.components {
            out.add_component(j, x, &-C::one());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (&j, x) in &self.components {
            out.add_component(j, x, c);
        }
        out
    }

    /// Bracket weight, if every term shares one.
    pub fn weight(&self) -> Option<usize> {
        let mut ws = self.components.values().map(FreeLieElement::weight);
        let first = ws.next()??;
        ws.all(|w| w == Some(first)).then_some(first)
    }

    pub fn homogeneous(&self, n: usize) -> Self {
        let mut out = Self::zero();
        for (&j, x) in &self.components {
            out.add_component(j, &x.homogeneous(n), &C::one());
        }
        out
    }
}

impl<C: Ring> fmt::Display for LieElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.components.iter().map(|(j, x)| format!("L{j}: {x}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// The Lie algebra as data: presentation, incidence sets and grading.
#[derive(Clone, Debug)]
pub struct HolonomyLie<F> {
    presentation: FiberedPresentation<F>,
    incidence: IncidenceData,
    k: usize,
    table: Vec<(usize, usize)>,
    exponents: Vec<usize>,
}

pub fn build<F: Field>(fp: &FiberedPresentation<F>, k: usize) -> Result<HolonomyLie<F>> {
    HolonomyLie::new(fp, k)
}

impl<F: Field> HolonomyLie<F> {
    pub fn new(fp: &FiberedPresentation<F>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange("k must be at least 1".into()));
        }
        Ok(Self {
            presentation: fp.clone(),
            incidence: incidence_sets(fp),
            k,
            table: fp.generator_table(),
            exponents: fp.exponents(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn presentation(&self) -> &FiberedPresentation<F> {
        &self.presentation
    }

    pub fn incidence(&self) -> &IncidenceData {
        &self.incidence
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn generator_count(&self) -> usize {
        self.table.len()
    }

    /// `(level, letter)` of hyperplane `h`.
    pub fn generator_of(&self, h: usize) -> (usize, usize) {
        self.table[h]
    }

    /// Display degree of a weight-`n` element: `2nk`.
    pub fn degree(&self, weight: usize) -> usize {
        2 * weight * self.k
    }

    /// `C_H`.
    pub fn generator<C: Ring>(&self, h: usize) -> LieElement<C> {
        let (j, i) = self.table[h];
        LieElement::from_component(j, FreeLieElement::generator(self.exponents[j - 1], i as Letter))
    }

    /// `C_X = Σ_{X ⊂ H} C_H` for a flat with the given support.
    pub fn flat_element<C: Ring>(&self, support: &[usize]) -> LieElement<C> {
        support.iter().fold(LieElement::zero(), |acc, &h| acc.add(&self.generator(h)))
    }

    /// A level-`level` basis element, as an element of the whole algebra.
    pub fn basis_element<C: Ring>(&self, level: usize, w: LyndonWord) -> Result<LieElement<C>> {
        let d = *self.exponents.get(level.wrapping_sub(1)).ok_or_else(|| Error::ForeignElement(format!("level {level}")))?;
        if w.letters().iter().any(|&a| a == 0 || a as usize > d) {
            return Err(Error::ForeignElement(format!("word {w} at level {level} (d = {d})")));
        }
        Ok(LieElement::from_component(level, FreeLieElement::basis(d, w)))
    }

    fn check_element<C: Ring>(&self, x: &LieElement<C>) -> Result<()> {
        for (&j, c) in &x.components {
            match self.exponents.get(j.wrapping_sub(1)) {
                Some(&d) if d == c.alphabet() && d > 0 => {}
                _ => return Err(Error::ForeignElement(format!("component at level {j} with alphabet {}", c.alphabet()))),
            }
        }
        Ok(())
    }

    pub fn bracket<C: Ring>(&self, x: &LieElement<C>, y: &LieElement<C>) -> Result<LieElement<C>> {
        self.check_element(x)?;
        self.check_element(y)?;
        let mut out = LieElement::zero();
        for (&p, xp) in &x.components {
            for (&q, yq) in &y.components {
                match p.cmp(&q) {
                    std::cmp::Ordering::Equal => out.add_component(p, &xp.bracket(yq)?, &C::one()),
                    std::cmp::Ordering::Less => out.add_component(q, &self.act(p, xp, q, yq), &C::one()),
                    std::cmp::Ordering::Greater => out.add_component(p, &self.act(q, yq, p, xp), &-C::one()),
                }
            }
        }
        Ok(out)
    }

    /// `[u, y]` for `u` at level `p` and `y` at a higher level `q`; lands in level `q`.
    pub fn act<C: Ring>(&self, p: usize, u: &FreeLieElement<C>, q: usize, y: &FreeLieElement<C>) -> FreeLieElement<C> {
        debug_assert!(p < q);
        let mut out = FreeLieElement::zero(y.alphabet());
        for (w, c) in u.terms() {
            out.add_scaled(&self.act_word(p, w, q, y), c);
        }
        out
    }

    /// `D_w(y)` for a Lyndon word `w` at level `p`. A bracket `w = [w1, w2]`
    /// acts by the commutator `D_{w1} D_{w2} - D_{w2} D_{w1}`.
    fn act_word<C: Ring>(&self, p: usize, w: &LyndonWord, q: usize, y: &FreeLieElement<C>) -> FreeLieElement<C> {
        match w.standard_factorization() {
            None => self.act_letter(p, w.letters()[0], q, y),
            Some((w1, w2)) => {
                let a = self.act_word(p, &w1, q, &self.act_word(p, &w2, q, y));
                let b = self.act_word(p, &w2, q, &self.act_word(p, &w1, q, y));
                a.sub(&b)
            }
        }
    }

    fn act_letter<C: Ring>(&self, p: usize, a: Letter, q: usize, y: &FreeLieElement<C>) -> FreeLieElement<C> {
        let h = self.presentation.hyperplane_index(p, a as usize);
        let mut out = FreeLieElement::zero(y.alphabet());
        for (v, c) in y.terms() {
            out.add_scaled(&self.derive(h, q, v), c);
        }
        out
    }

    /// Leibniz expansion of `D_{C_H}` on a level-`q` basis word.
    fn derive<C: Ring>(&self, h: usize, q: usize, v: &LyndonWord) -> FreeLieElement<C> {
        let d = self.exponents[q - 1];
        match v.standard_factorization() {
            None => {
                let m = v.letters()[0] as usize;
                let mut target = FreeLieElement::zero(d);
                for &(i, i2) in self.incidence.pairs(q, h) {
                    if m == i || m == i2 {
                        target.add_term(LyndonWord::letter(i as Letter), C::one());
                        target.add_term(LyndonWord::letter(i2 as Letter), C::one());
                    }
                }
                FreeLieElement::<C>::basis(d, v.clone()).bracket(&target).expect("same alphabet")
            }
            Some((v1, v2)) => {
                let b1 = FreeLieElement::basis(d, v1.clone());
                let b2 = FreeLieElement::basis(d, v2.clone());
                let left = self.derive::<C>(h, q, &v1).bracket(&b2).expect("same alphabet");
                let right = b1.bracket(&self.derive::<C>(h, q, &v2)).expect("same alphabet");
                left.add(&right)
            }
        }
    }

    /// `[C_X, C_H]` for every codimension-two flat `X` and every `H ⊇ X`; all must vanish.
    pub fn verify_relations<C: Ring>(&self, p: &IntersectionPoset<F>) -> Result<CheckReport> {
        let mut report = CheckReport::new("holonomy-relations");
        for flat in p.codim2_flats() {
            let cx: LieElement<C> = self.flat_element(&flat.support);
            for &h in &flat.support {
                let r = self.bracket(&cx, &self.generator(h))?;
                report.record(r.is_zero(), || {
                    json!({
                        "flat_support": flat.support.iter().map(|&g| self.presentation.label(g)).collect::<Vec<_>>(),
                        "hyperplane": self.presentation.label(h),
                        "residue": r.to_string(),
                    })
                });
            }
        }
        Ok(report)
    }

    /// `φ_n = Σ_j witt(d_j, n)` for `n = 1..=max_weight` (index 0 is weight 1).
    pub fn graded_dimensions<T: IntegerRing>(&self, max_weight: usize) -> Vec<T> {
        (1..=max_weight).map(|n| lcs_rank(&self.exponents, n)).collect()
    }

    /// `Π_{n ≥ 1} (1 - t^{2nk})^{-φ_n}` truncated at `order`.
    pub fn uea_series<T: IntegerRing>(&self, order: usize) -> TruncatedSeries<T> {
        let mut s = TruncatedSeries::one(order);
        let mut n = 1;
        while self.degree(n) <= order {
            let phi: T = lcs_rank(&self.exponents, n);
            s = s.mul(&TruncatedSeries::inverse_binomial_power(self.degree(n), &phi, order));
            n += 1;
        }
        s
    }

    /// Every basis element of weight `n` across all levels.
    pub fn basis_of_weight<C: Ring>(&self, n: usize) -> Vec<LieElement<C>> {
        let mut out = Vec::new();
        for (j, &d) in self.exponents.iter().enumerate() {
            for w in crate::free_lie::lyndon_basis(d, n) {
                out.push(LieElement::from_component(j + 1, FreeLieElement::basis(d, w)));
            }
        }
        out
    }
}

/// `Σ_j witt(d_j, n)`.
pub fn lcs_rank<T: IntegerRing>(exponents: &[usize], n: usize) -> T {
    exponents.iter().filter(|&&d| d > 0).fold(T::zero(), |acc, &d| acc + witt_dimension::<T>(d, n))
}

/// `Π_j (1 - d_j t^{2k})^{-1}` truncated at `order`: the tensor-product form
/// of the loop-space homology of the `(k+1)`-fold redundant complement.
pub fn loop_homology_series<T: IntegerRing, F: Field>(fp: &FiberedPresentation<F>, k: usize, order: usize) -> TruncatedSeries<T> {
    assert!(k >= 1, "k must be positive");
    fp.exponents()
        .iter()
        .filter(|&&d| d > 0)
        .fold(TruncatedSeries::one(order), |s, &d| s.mul(&TruncatedSeries::geometric(&T::from(d as i64), 2 * k, order)))
}

/// Checks `Π_n (1 - t^n)^{φ_n} · Π_j (1 - d_j t)^{-1} = 1` to the given order.
pub fn product_identity<T: IntegerRing>(exponents: &[usize], order: usize) -> TruncatedSeries<T> {
    let mut s = TruncatedSeries::one(order);
    for n in 1..=order {
        let phi: T = lcs_rank(exponents, n);
        s = s.mul(&TruncatedSeries::binomial_power(n, &phi, order));
    }
    for &d in exponents.iter().filter(|&&d| d > 0) {
        s = s.mul(&TruncatedSeries::geometric(&T::from(d as i64), 1, order));
    }
    s
}

/// Coefficientwise comparison of the enveloping-algebra and loop-homology series.
pub fn verify_series<T: IntegerRing, F: Field>(h: &HolonomyLie<F>, order: usize) -> (CheckReport, TruncatedSeries<T>, TruncatedSeries<T>) {
    let uea: TruncatedSeries<T> = h.uea_series(order);
    let loops: TruncatedSeries<T> = loop_homology_series(h.presentation(), h.k(), order);
    let mut report = CheckReport::new("uea-vs-loop-homology");
    for i in 0..=order {
        let (a, b) = (uea.coefficient(i), loops.coefficient(i));
        report.record(a == b, || json!({ "degree": i, "uea": a.to_string(), "loop": b.to_string() }));
    }
    (report, uea, loops)
}
