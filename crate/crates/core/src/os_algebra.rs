//! The algebras `A[k] = E[k]/I[k]`: an exterior algebra on one generator of
//! degree `2k-1` per hyperplane, modulo boundaries of dependent sets and
//! monomials of empty intersections.
//!
//! Graded dimensions are computed by brute force, materializing the exterior
//! basis in each word length and row-reducing the ideal span exactly. This is
//! deliberately independent of the Möbius route in [`crate::lattice`].

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::lattice::IntersectionPoset;
use crate::linalg::SparseEchelon;
use crate::report::CheckReport;
use crate::scalar::{Field, Ring};
use crate::Rational;

/// Default cap on the number of hyperplanes for brute-force quotients.
pub const DEFAULT_HYPERPLANE_CAP: usize = 16;

/// Element of the exterior algebra: sorted index subsets with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement<C> {
    terms: BTreeMap<Vec<usize>, C>,
}

impl<C: Ring> Default for ExteriorElement<C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

/// Sign of the permutation sorting `word`, or `None` if a letter repeats.
fn sort_sign(word: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    // insertion sort, counting transpositions
    for i in 1..word.len() {
        let mut j = i;
        while j > 0 && word[j - 1] > word[j] {
            word.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if word.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

impl<C: Ring> ExteriorElement<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The monomial `e_{i_1} ∧ … ∧ e_{i_q}` in the given order, normalized.
    pub fn monomial(word: &[usize]) -> Self {
        let mut out = Self::zero();
        out.add_word(word.to_vec(), C::one(), 1);
        out
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Word length shared by every term, if homogeneous and nonzero.
    pub fn word_length(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Vec::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    fn add_word(&mut self, mut word: Vec<usize>, coeff: C, generator_degree: usize) {
        let Some(negative) = sort_sign(&mut word) else { return };
        // each transposition of two degree-d generators costs (-1)^{d·d}
        let coeff = if negative && generator_degree % 2 == 1 { -coeff } else { coeff };
        let entry = self.terms.entry(word.clone()).or_insert_with(C::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone(), 1);
        }
        out
    }

    /// Graded-commutative product with generators of the given degree.
    pub fn wedge(&self, other: &Self, generator_degree: usize) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let word: Vec<usize> = u.iter().chain(v).copied().collect();
                out.add_word(word, a.clone() * b.clone(), generator_degree);
            }
        }
        out
    }

    /// `Σ_p (-1)^{p-1} e_{S∖{H_p}}` for a sorted subset `S`.
    pub fn boundary_of(subset: &[usize]) -> Self {
        let mut out = Self::zero();
        for p in 0..subset.len() {
            let word: Vec<usize> =
                subset.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &h)| h).collect();
            let sign = if p % 2 == 0 { C::one() } else { -C::one() };
            out.add_word(word, sign, 1);
        }
        out
    }
}

fn subsets_of_size(n: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < q - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, q, &mut Vec::with_capacity(q), &mut out);
    out
}

/// Generators of `I[k]` coming from subsets of size at most `max_size`.
fn generators_up_to<C: Ring, F: Field>(p: &IntersectionPoset<F>, max_size: usize) -> Vec<ExteriorElement<C>> {
    let n = p.hyperplane_count();
    let mut gens = Vec::new();
    for q in 2..=max_size.min(n) {
        for s in subsets_of_size(n, q) {
            match p.subset_codim(&s) {
                None => gens.push(ExteriorElement::monomial(&s)),
                Some(c) if c < q => gens.push(ExteriorElement::boundary_of(&s)),
                Some(_) => {}
            }
        }
    }
    gens
}

/// Every generator of the ideal: boundaries of dependent subsets with
/// non-empty intersection, and monomials of subsets with empty intersection.
/// Independent subsets contribute nothing.
pub fn ideal_generators<F: Field>(a: &Arrangement<F>, p: &IntersectionPoset<F>) -> Vec<ExteriorElement<i64>> {
    debug_assert_eq!(a.len(), p.hyperplane_count());
    generators_up_to(p, a.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: Vec<usize>,
}

impl GradedDims {
    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Span of the ideal in word length `q`, as an echelon basis.
fn ideal_span(
    n: usize,
    q: usize,
    gens: &[ExteriorElement<i64>],
    generator_degree: usize,
) -> SparseEchelon<Vec<usize>, Rational> {
    let mut span = SparseEchelon::new();
    for g in gens {
        let Some(len) = g.word_length() else { continue };
        if len > q {
            continue;
        }
        for t in subsets_of_size(n, q - len) {
            if t.iter().any(|h| g.terms().keys().all(|w| w.contains(h))) {
                continue; // wedge vanishes identically
            }
            let product = ExteriorElement::<i64>::monomial(&t).wedge(g, generator_degree);
            if !product.is_zero() {
                span.insert(product.terms().iter().map(|(w, &c)| (w.clone(), Rational::from_integer(c.into()))).collect());
            }
        }
    }
    span
}

fn check_cap(a_len: usize, cap: usize) -> Result<()> {
    if a_len > cap {
        return Err(Error::CapExceeded { what: "hyperplane count", actual: a_len, cap });
    }
    Ok(())
}

/// Graded dimensions of `E/I` with generators in the given odd degree.
pub fn os_dimensions_graded<F: Field>(
    a: &Arrangement<F>,
    p: &IntersectionPoset<F>,
    max_q: usize,
    generator_degree: usize,
    cap: usize,
) -> Result<GradedDims> {
    check_cap(a.len(), cap)?;
    let n = a.len();
    let gens: Vec<ExteriorElement<i64>> = generators_up_to(p, max_q + 1);
    let mut dims = Vec::with_capacity(max_q + 1);
    for q in 0..=max_q {
        let total = binomial(n, q);
        let rank = if q == 0 { 0 } else { ideal_span(n, q, &gens, generator_degree).rank() };
        dims.push(total - rank);
    }
    Ok(GradedDims { dims })
}

/// Graded dimensions of `A[k]` by word length. They do not depend on `k`:
/// the generator degree `2k-1` is always odd, so the sign rules coincide.
pub fn os_dimensions<F: Field>(
    a: &Arrangement<F>,
    p: &IntersectionPoset<F>,
    max_q: usize,
    cap: usize,
) -> Result<GradedDims> {
    if max_q > a.dimension() {
        return Err(Error::OutOfRange(format!("max_q {max_q} exceeds dimension {}", a.dimension())));
    }
    os_dimensions_graded(a, p, max_q, 1, cap)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeCheck {
    pub q: usize,
    pub degree: usize,
    pub expected: i64,
    pub actual: usize,
    pub status: crate::Status,
}

/// Compares brute-force quotient dimensions with the coefficients of the
/// redundant Poincaré polynomial: `dims[q]` must equal the coefficient of
/// `t^{(2k-1)q}`.
pub fn verify_os_poincare<F: Field>(
    a: &Arrangement<F>,
    p: &IntersectionPoset<F>,
    k: usize,
    max_q: Option<usize>,
    cap: usize,
) -> Result<(CheckReport, Vec<DegreeCheck>)> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    let max_q = match max_q {
        Some(q) if q > a.dimension() => {
            return Err(Error::OutOfRange(format!("max_q {q} exceeds dimension {}", a.dimension())));
        }
        Some(q) => q,
        None => a.dimension(),
    };
    let dims = os_dimensions_graded(a, p, max_q, 2 * k - 1, cap)?;
    let poly = p.poincare_redundant(k);
    let mut report = CheckReport::new("os-poincare");
    let mut rows = Vec::new();
    for (q, &actual) in dims.dims.iter().enumerate() {
        let degree = (2 * k - 1) * q;
        let expected = poly.coefficient(degree);
        let ok = expected == actual as i64;
        report.record(ok, || json!({ "q": q, "degree": degree, "expected": expected, "actual": actual }));
        rows.push(DegreeCheck {
            q,
            degree,
            expected,
            actual,
            status: if ok { crate::Status::Ok } else { crate::Status::Violation },
        });
    }
    // nothing may live off the lattice of degrees (2k-1)q
    for (d, &c) in poly.coefficients().iter().enumerate() {
        if d % (2 * k - 1) != 0 && c != 0 {
            report.fail(json!({ "degree": d, "expected": 0, "actual": c }));
        }
    }
    Ok((report, rows))
}

/// Reduces every generator of word length at most `max_q` modulo the ideal span and
/// reports any nonzero residue.
pub fn verify_generators_vanish<F: Field>(
    a: &Arrangement<F>,
    p: &IntersectionPoset<F>,
    max_q: usize,
) -> CheckReport {
    let n = a.len();
    let gens: Vec<ExteriorElement<i64>> = generators_up_to(p, max_q + 1);
    let mut report = CheckReport::new("os-generators-vanish");
    for q in 1..=max_q {
        let span = ideal_span(n, q, &gens, 1);
        for g in gens.iter().filter(|g| g.word_length() == Some(q)) {
            let v = g.terms().iter().map(|(w, &c)| (w.clone(), Rational::from_integer(c.into()))).collect();
            let ok = span.contains(v);
            report.record(ok, || json!({ "generator": format!("{:?}", g.terms()) }));
        }
    }
    report
}
