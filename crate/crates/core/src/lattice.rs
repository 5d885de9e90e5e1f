//! Intersection poset, Möbius function and Poincaré polynomials.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde_json::{json, Value};

use crate::arrangement::{verify_redundant_codim, Arrangement};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::report::CheckReport;
use crate::scalar::Field;

/// A non-empty intersection of hyperplanes.
#[derive(Clone, Debug)]
pub struct Flat<F> {
    /// Every hyperplane containing the subspace, sorted.
    pub support: Vec<usize>,
    pub codim: usize,
    /// Nonzero rows of the rref of the augmented system `[A | b]`.
    pub canonical_form: Matrix<F>,
}

impl<F> Flat<F> {
    pub fn contains_hyperplane(&self, h: usize) -> bool {
        self.support.binary_search(&h).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct IntersectionPoset<F> {
    flats: Vec<Flat<F>>,
    mobius: Vec<i64>,
    // join[x][h]: flat of X ∩ H, if non-empty
    join: Vec<Vec<Option<usize>>>,
    hyperplane_count: usize,
}

fn augmented_rows<F: Field>(a: &Arrangement<F>, h: usize) -> Vec<F> {
    a.hyperplane(h).coeffs().iter().cloned().chain(std::iter::once(a.hyperplane(h).constant().clone())).collect()
}

/// Breadth-first closure of the arrangement under intersection.
///
/// Flats are deduplicated by canonical rref while the closure runs; supports
/// are closed afterwards by testing which hyperplane rows already lie in each
/// flat's row space.
pub fn build_poset<F: Field>(a: &Arrangement<F>) -> IntersectionPoset<F> {
    let n = a.len();
    let width = a.dimension() + 1;
    let rows: Vec<Vec<F>> = (0..n).map(|h| augmented_rows(a, h)).collect();

    let ambient = Matrix::from_row_slices(width, &[]).expect("empty system");
    let mut forms: Vec<Matrix<F>> = vec![ambient.clone()];
    let mut index: HashMap<Matrix<F>, usize> = HashMap::from([(ambient, 0)]);
    let mut raw_join: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
    let mut queue = VecDeque::from([0usize]);

    while let Some(x) = queue.pop_front() {
        for h in 0..n {
            let form = &forms[x];
            let mut system: Vec<Vec<F>> = (0..form.rows()).map(|i| form.row(i).to_vec()).collect();
            system.push(rows[h].clone());
            let m = Matrix::from_row_slices(width, &system).expect("rectangular");
            let (r, pivots) = m.rref();
            if pivots.last() == Some(&(width - 1)) {
                continue; // inconsistent: 0 = 1 row
            }
            let canon = r.row_space_basis();
            let y = match index.get(&canon) {
                Some(&y) => y,
                None => {
                    let y = forms.len();
                    index.insert(canon.clone(), y);
                    forms.push(canon);
                    raw_join.push(vec![None; n]);
                    queue.push_back(y);
                    y
                }
            };
            raw_join[x][h] = Some(y);
        }
    }

    let mut flats: Vec<Flat<F>> = forms
        .into_iter()
        .enumerate()
        .map(|(x, form)| {
            let support = (0..n).filter(|&h| raw_join[x][h] == Some(x)).collect();
            Flat { support, codim: form.rows(), canonical_form: form }
        })
        .collect();

    // deterministic order: by codimension, then support
    let mut order: Vec<usize> = (0..flats.len()).collect();
    order.sort_by(|&i, &j| (flats[i].codim, &flats[i].support).cmp(&(flats[j].codim, &flats[j].support)));
    let mut position = vec![0; flats.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let join = order
        .iter()
        .map(|&old| raw_join[old].iter().map(|y| y.map(|y| position[y])).collect())
        .collect();
    let mut taken: Vec<Option<Flat<F>>> = flats.drain(..).map(Some).collect();
    let flats: Vec<Flat<F>> = order.iter().map(|&old| taken[old].take().expect("each flat once")).collect();

    let mobius = mobius_values(&flats);
    IntersectionPoset { flats, mobius, join, hyperplane_count: n }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|h| big.binary_search(h).is_ok())
}

// flats must be sorted by codimension, minimum first
fn mobius_values<F>(flats: &[Flat<F>]) -> Vec<i64> {
    let mut mu = vec![0i64; flats.len()];
    for x in 0..flats.len() {
        if x == 0 {
            mu[0] = 1;
            continue;
        }
        let below: i64 = (0..x)
            .filter(|&y| flats[y].codim < flats[x].codim && is_subset(&flats[y].support, &flats[x].support))
            .map(|y| mu[y])
            .sum();
        mu[x] = -below;
    }
    mu
}

impl<F: Field> IntersectionPoset<F> {
    pub fn flats(&self) -> &[Flat<F>] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplane_count
    }

    pub fn mobius(&self, x: usize) -> i64 {
        self.mobius[x]
    }

    pub fn minimum(&self) -> usize {
        0
    }

    /// `Y ≤ X` in reverse inclusion, i.e. `X ⊆ Y` as subspaces.
    pub fn le(&self, y: usize, x: usize) -> bool {
        is_subset(&self.flats[y].support, &self.flats[x].support)
    }

    /// Flat of `X ∩ H`, or `None` if the intersection is empty.
    pub fn join_hyperplane(&self, x: usize, h: usize) -> Option<usize> {
        self.join[x][h]
    }

    /// Flat of `X ∩ Y`, or `None` if empty.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.flats[y].support.iter().try_fold(x, |acc, &h| self.join[acc][h])
    }

    /// The flat cut out by a set of hyperplanes, `None` when their intersection is empty.
    pub fn flat_of(&self, subset: &[usize]) -> Option<usize> {
        subset.iter().try_fold(self.minimum(), |acc, &h| self.join[acc][h])
    }

    /// Codimension of `∩ subset`, `None` if empty. This is the dependence oracle
    /// used by the Orlik–Solomon construction.
    pub fn subset_codim(&self, subset: &[usize]) -> Option<usize> {
        self.flat_of(subset).map(|x| self.flats[x].codim)
    }

    pub fn flats_of_codim(&self, codim: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.flats.len()).filter(move |&x| self.flats[x].codim == codim)
    }

    pub fn codim2_flats(&self) -> Vec<&Flat<F>> {
        self.flats_of_codim(2).map(|x| &self.flats[x]).collect()
    }

    pub fn rank(&self) -> usize {
        self.flats.iter().map(|f| f.codim).max().unwrap_or(0)
    }

    pub fn poincare_polynomial(&self) -> IntPolynomial {
        let mut coeffs = vec![0i64; self.rank() + 1];
        for (x, f) in self.flats.iter().enumerate() {
            coeffs[f.codim] += self.mobius[x].abs();
        }
        IntPolynomial::new(coeffs)
    }

    /// Poincaré polynomial of the complement of the k-fold redundant arrangement.
    pub fn poincare_redundant(&self, k: usize) -> IntPolynomial {
        assert!(k >= 1, "k must be positive");
        self.poincare_polynomial().substitute_power(2 * k - 1)
    }

    pub fn to_json(&self, labels: &dyn Fn(usize) -> String) -> Value {
        let flats: Vec<Value> = self
            .flats
            .iter()
            .enumerate()
            .map(|(x, f)| {
                json!({
                    "support": f.support.iter().map(|&h| labels(h)).collect::<Vec<_>>(),
                    "codim": f.codim,
                    "mobius": self.mobius[x],
                })
            })
            .collect();
        json!({ "flats": flats })
    }
}

pub fn codim2_flats<F: Field>(p: &IntersectionPoset<F>) -> Vec<&Flat<F>> {
    p.codim2_flats()
}

/// Checks the k-fold codimension scaling on every flat, and on every minimal
/// extension of a flat by one further hyperplane (which covers all empty
/// intersections that are reachable in one step).
pub fn verify_lattice_lift<F: Field>(a: &Arrangement<F>, p: &IntersectionPoset<F>, k: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("lattice-lift");
    for (x, flat) in p.flats().iter().enumerate() {
        if !flat.support.is_empty() {
            report.merge(verify_redundant_codim(a, &flat.support, k)?);
        }
        for h in 0..a.len() {
            if flat.contains_hyperplane(h) {
                continue;
            }
            let mut subset = flat.support.clone();
            subset.push(h);
            report.merge(verify_redundant_codim(a, &subset, k)?);
            let in_lattice = p.join_hyperplane(x, h).is_some();
            let consistent = a.intersection_codim(&subset)?.is_some();
            report.record(in_lattice == consistent, || {
                json!({ "flat": flat.support, "hyperplane": h, "reason": "lattice and defining system disagree" })
            });
        }
    }
    Ok(report)
}

/// Integer polynomial with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coefficients: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, degree: usize) -> i64 {
        self.coefficients.get(degree).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// `p(t) ↦ p(t^e)`.
    pub fn substitute_power(&self, e: usize) -> Self {
        if self.coefficients.is_empty() {
            return self.clone();
        }
        let mut out = vec![0; (self.coefficients.len() - 1) * e + 1];
        for (d, &c) in self.coefficients.iter().enumerate() {
            out[d * e] = c;
        }
        Self::new(out)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coefficients.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coefficients.is_empty() || other.coefficients.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![0; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (d, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "t".to_string(),
                (1, m) => format!("{m}t"),
                (d, 1) => format!("t^{d}"),
                (d, m) => format!("{m}t^{d}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
