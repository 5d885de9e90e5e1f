//! Affine hyperplane arrangements and their redundant (k-fold) lifts.
//!
//! A hyperplane `a·x = b` is stored with its first nonzero coefficient scaled
//! to one, which makes equality of hyperplanes plain structural equality.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::CheckReport;
use crate::scalar::{format_rational, parse_rational, Field};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct Hyperplane<F> {
    coeffs: Vec<F>,
    constant: F,
    pub name: Option<String>,
}

impl<F: Field> Hyperplane<F> {
    /// Normalizes so the leading coefficient is one. Fails on the zero form.
    pub fn new(coeffs: Vec<F>, constant: F, name: Option<String>) -> Result<Self> {
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()).cloned() else {
            return Err(Error::ZeroForm(name));
        };
        let coeffs = coeffs.into_iter().map(|c| c / lead.clone()).collect();
        Ok(Self { coeffs, constant: constant / lead, name })
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn constant(&self) -> &F {
        &self.constant
    }

    pub fn dimension(&self) -> usize {
        self.coeffs.len()
    }

    /// The affine form `a·x - b` as a coefficient vector `(a_1, …, a_ℓ, -b)`.
    pub fn affine_form(&self) -> Vec<F> {
        let mut v = self.coeffs.clone();
        v.push(-self.constant.clone());
        v
    }

    /// Same hyperplane with zero coefficients appended for extra trailing coordinates.
    pub fn embed(&self, dimension: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(dimension.max(coeffs.len()), F::zero());
        Self { coeffs, constant: self.constant.clone(), name: self.name.clone() }
    }

    fn key(&self) -> (&[F], &F) {
        (&self.coeffs, &self.constant)
    }
}

impl<F: Field> PartialEq for Hyperplane<F> {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl<F: Field> Eq for Hyperplane<F> {}

impl<F: Field> std::hash::Hash for Hyperplane<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement<F> {
    dimension: usize,
    hyperplanes: Vec<Hyperplane<F>>,
}

impl<F: Field> PartialEq for Arrangement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.dimension == other.dimension && self.hyperplanes == other.hyperplanes
    }
}

impl<F: Field> Arrangement<F> {
    pub fn new(dimension: usize, hyperplanes: Vec<Hyperplane<F>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Parse("dimension must be positive".into()));
        }
        let mut seen: HashMap<&Hyperplane<F>, usize> = HashMap::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.dimension() != dimension {
                return Err(Error::DimensionMismatch { expected: dimension, found: h.dimension() });
            }
            if let Some(j) = seen.insert(h, i) {
                return Err(Error::DuplicateHyperplane(format!(
                    "{} and {}",
                    label_of(&hyperplanes, j),
                    label_of(&hyperplanes, i)
                )));
            }
        }
        Ok(Self { dimension, hyperplanes })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane<F>] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane<F> {
        &self.hyperplanes[i]
    }

    /// Display label: the given name, or `H{i}` (1-based) otherwise.
    pub fn label(&self, i: usize) -> String {
        label_of(&self.hyperplanes, i)
    }

    pub fn index_of(&self, h: &Hyperplane<F>) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    /// Coefficient matrix `A` and constants column `b` of the subset's defining system.
    pub fn defining_system(&self, subset: &[usize]) -> Result<(Matrix<F>, Matrix<F>)> {
        let mut a = Vec::with_capacity(subset.len());
        let mut b = Vec::with_capacity(subset.len());
        for &i in subset {
            let h = self
                .hyperplanes
                .get(i)
                .ok_or(Error::IndexOutOfRange { index: i, len: self.hyperplanes.len() })?;
            a.push(h.coeffs.clone());
            b.push(vec![h.constant.clone()]);
        }
        Ok((Matrix::from_row_slices(self.dimension, &a)?, Matrix::from_row_slices(1, &b)?))
    }

    /// Codimension of the intersection of `subset`, or `None` when it is empty.
    pub fn intersection_codim(&self, subset: &[usize]) -> Result<Option<usize>> {
        let (a, b) = self.defining_system(subset)?;
        let r = a.rank();
        Ok((r == a.augment(&b)?.rank()).then_some(r))
    }
}

fn label_of<F>(hs: &[Hyperplane<F>], i: usize) -> String {
    hs[i].name.clone().unwrap_or_else(|| format!("H{}", i + 1))
}

/// The redundant arrangement `A^k`, kept implicit: each `H^k ⊂ C^{kℓ}` is cut
/// out by `k` copies of `H`'s equation, one per block of coordinates.
#[derive(Clone, Debug)]
pub struct RedundantSystem<'a, F> {
    pub base: &'a Arrangement<F>,
    pub k: usize,
}

impl<'a, F: Field> RedundantSystem<'a, F> {
    pub fn new(base: &'a Arrangement<F>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange("k must be at least 1".into()));
        }
        Ok(Self { base, k })
    }

    pub fn ambient_dimension(&self) -> usize {
        self.k * self.base.dimension
    }

    /// `(A^{(k)}, [A^{(k)} | b^{(k)}])` for the subset.
    ///
    /// Variables are ordered block by block (`x_{1,·}, …, x_{k,·}`), so the
    /// coefficient matrix is block diagonal with `k` copies of `A`, and the
    /// constants column is `b` repeated `k` times.
    pub fn defining_matrix(&self, subset: &[usize]) -> Result<(Matrix<F>, Matrix<F>)> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let (a, b) = self.base.defining_system(subset)?;
        let coeff = a.block_diagonal(self.k);
        let mut column = Vec::with_capacity(b.rows() * self.k);
        for _ in 0..self.k {
            column.extend(b.entries().iter().cloned().map(|x| vec![x]));
        }
        let augmented = coeff.augment(&Matrix::from_row_slices(1, &column)?)?;
        Ok((coeff, augmented))
    }
}

pub fn redundant_defining_matrix<F: Field>(
    a: &Arrangement<F>,
    subset: &[usize],
    k: usize,
) -> Result<(Matrix<F>, Matrix<F>)> {
    RedundantSystem::new(a, k)?.defining_matrix(subset)
}

/// Checks that the k-fold lift of `subset` is consistent exactly when the
/// base system is, and that codimension scales by `k`.
pub fn verify_redundant_codim<F: Field>(
    a: &Arrangement<F>,
    subset: &[usize],
    k: usize,
) -> Result<CheckReport> {
    let (coeff, aug) = redundant_defining_matrix(a, subset, k)?;
    let (base_a, base_b) = a.defining_system(subset)?;
    let base_rank = base_a.rank();
    let base_consistent = base_rank == base_a.augment(&base_b)?.rank();
    let lift_rank = coeff.rank();
    let lift_consistent = lift_rank == aug.rank();

    let mut report = CheckReport::new("redundant-codim");
    let ok = base_consistent == lift_consistent && (!base_consistent || lift_rank == k * base_rank);
    report.record(ok, || {
        json!({
            "subset": subset,
            "k": k,
            "base_consistent": base_consistent,
            "lift_consistent": lift_consistent,
            "base_codim": base_rank,
            "lift_codim": lift_rank,
        })
    });
    Ok(report)
}

#[derive(Serialize, Deserialize)]
struct HyperplaneDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    coeffs: Vec<String>,
    constant: String,
}

#[derive(Serialize, Deserialize)]
struct ArrangementDoc {
    dimension: usize,
    hyperplanes: Vec<HyperplaneDoc>,
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement<Rational>> {
    let doc: ArrangementDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut hyperplanes = Vec::with_capacity(doc.hyperplanes.len());
    for h in doc.hyperplanes {
        if h.coeffs.len() != doc.dimension {
            return Err(Error::DimensionMismatch { expected: doc.dimension, found: h.coeffs.len() });
        }
        let coeffs = h.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        hyperplanes.push(Hyperplane::new(coeffs, parse_rational(&h.constant)?, h.name)?);
    }
    Arrangement::new(doc.dimension, hyperplanes)
}

pub fn serialize_arrangement(a: &Arrangement<Rational>) -> String {
    let doc = ArrangementDoc {
        dimension: a.dimension,
        hyperplanes: a
            .hyperplanes
            .iter()
            .map(|h| HyperplaneDoc {
                name: h.name.clone(),
                coeffs: h.coeffs.iter().map(format_rational).collect(),
                constant: format_rational(&h.constant),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("arrangement serializes")
}
