//! Fibered presentations: a coordinate ordering in which the arrangement is
//! cut out level by level by hyperplanes `x_j = g_{i,j}(x_1, …, x_{j-1})`.
//!
//! The projection forgetting `x_j` is a bundle over the complement of the
//! lower levels exactly when the `d_j` roots never collide there. For affine
//! roots that means every difference `g_{i,j} - g_{m,j}` is either a nonzero
//! constant or vanishes precisely on one lower hyperplane, i.e. is
//! proportional to its defining form. [`check_fibered`] tests this pairwise
//! criterion directly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::lattice::IntersectionPoset;
use crate::linalg::proportional;
use crate::report::CheckReport;
use crate::scalar::{format_rational, parse_rational, Field};
use crate::Rational;

/// `g_{i,j}(x) = Σ_t coeffs[t]·x_{t+1} + constant`, at level `j` (1-based) with `j-1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootForm<F> {
    pub level: usize,
    pub index: usize,
    pub coeffs: Vec<F>,
    pub constant: F,
    pub name: Option<String>,
}

impl<F: Field> RootForm<F> {
    /// The hyperplane `x_j - g(x) = 0` in dimension `dimension`.
    pub fn hyperplane(&self, dimension: usize) -> Result<Hyperplane<F>> {
        let mut coeffs = vec![F::zero(); dimension];
        for (t, c) in self.coeffs.iter().enumerate() {
            coeffs[t] = -c.clone();
        }
        coeffs[self.level - 1] = F::one();
        Hyperplane::new(coeffs, self.constant.clone(), self.name.clone())
    }

    /// `g_self - g_other` as `(linear coefficients, constant)`.
    fn difference(&self, other: &Self) -> (Vec<F>, F) {
        let lin = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        (lin, self.constant.clone() - other.constant.clone())
    }
}

/// A validated fibered presentation with its exponents `d_1, …, d_ℓ`.
#[derive(Clone, Debug)]
pub struct FiberedPresentation<F> {
    dimension: usize,
    levels: Vec<Vec<RootForm<F>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub level: usize,
    pub i: usize,
    pub m: usize,
}

/// Outcome of validation: a presentation, or every pair of colliding roots.
pub type Checked<F> = std::result::Result<FiberedPresentation<F>, Vec<Violation>>;

/// Root forms keyed by level; `raw[j-1]` lists the roots at level `j`.
pub fn check_fibered<F: Field>(dimension: usize, raw: RawLevels<F>) -> Result<Checked<F>> {
    if raw.len() > dimension {
        return Err(Error::InvalidLevels(format!("{} levels for dimension {dimension}", raw.len())));
    }
    let mut levels: Vec<Vec<RootForm<F>>> = Vec::with_capacity(dimension);
    for j in 1..=dimension {
        let roots = raw.get(j - 1).cloned().unwrap_or_default();
        let mut level = Vec::with_capacity(roots.len());
        for (i, (coeffs, constant, name)) in roots.into_iter().enumerate() {
            if coeffs.len() != j - 1 {
                return Err(Error::DimensionMismatch { expected: j - 1, found: coeffs.len() });
            }
            level.push(RootForm { level: j, index: i + 1, coeffs, constant, name });
        }
        levels.push(level);
    }

    let mut violations = Vec::new();
    for j in 1..=dimension {
        // lower hyperplanes restricted to the first j-1 coordinates, as affine forms
        let lower: Vec<Vec<F>> = levels[..j - 1]
            .iter()
            .flatten()
            .map(|r| {
                let h = r.hyperplane(dimension)?;
                let mut form = h.coeffs()[..j - 1].to_vec();
                form.push(-h.constant().clone());
                Ok(form)
            })
            .collect::<Result<_>>()?;
        let roots = &levels[j - 1];
        for a in 0..roots.len() {
            for b in a + 1..roots.len() {
                let (lin, c) = roots[a].difference(&roots[b]);
                if lin.iter().all(F::is_zero) {
                    if c.is_zero() {
                        return Err(Error::DuplicateRoot { level: j, first: a + 1, second: b + 1 });
                    }
                    continue; // parallel roots never meet
                }
                let mut form = lin;
                form.push(c);
                let removed = lower.iter().any(|h| proportional(&form, h).unwrap_or(false));
                if !removed {
                    violations.push(Violation { level: j, i: a + 1, m: b + 1 });
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(Ok(FiberedPresentation { dimension, levels }))
    } else {
        Ok(Err(violations))
    }
}

impl<F: Field> FiberedPresentation<F> {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn levels(&self) -> &[Vec<RootForm<F>>] {
        &self.levels
    }

    pub fn exponents(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Hyperplane index (in [`Self::underlying_arrangement`] order) of root `i` at level `j`, both 1-based.
    pub fn hyperplane_index(&self, j: usize, i: usize) -> usize {
        self.levels[..j - 1].iter().map(Vec::len).sum::<usize>() + i - 1
    }

    /// `(level, letter)` for every hyperplane, in arrangement order.
    pub fn generator_table(&self) -> Vec<(usize, usize)> {
        self.levels.iter().flatten().map(|r| (r.level, r.index)).collect()
    }

    pub fn root(&self, j: usize, i: usize) -> &RootForm<F> {
        &self.levels[j - 1][i - 1]
    }

    pub fn underlying_arrangement(&self) -> Arrangement<F> {
        let hyperplanes = self
            .levels
            .iter()
            .flatten()
            .map(|r| r.hyperplane(self.dimension).expect("x_j - g is never the zero form"))
            .collect();
        Arrangement::new(self.dimension, hyperplanes).expect("validated roots give distinct hyperplanes")
    }

    /// Labels: root names if given, otherwise `H{j}.{i}`.
    pub fn label(&self, index: usize) -> String {
        let r = self.levels.iter().flatten().nth(index).expect("hyperplane index in range");
        r.name.clone().unwrap_or_else(|| format!("H{}.{}", r.level, r.index))
    }
}

/// `S_q(H)` for every level `q` and every hyperplane `H` of a lower level.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IncidenceData {
    /// `(q, hyperplane index) ↦ sorted pairs {i < m}` of level-`q` letters.
    sets: BTreeMap<(usize, usize), Vec<(usize, usize)>>,
}

impl IncidenceData {
    pub fn pairs(&self, level: usize, hyperplane: usize) -> &[(usize, usize)] {
        self.sets.get(&(level, hyperplane)).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, usize)>)> {
        self.sets.iter()
    }

    pub fn contains(&self, level: usize, hyperplane: usize, i: usize, m: usize) -> bool {
        let key = (i.min(m), i.max(m));
        self.pairs(level, hyperplane).binary_search(&key).is_ok()
    }
}

/// `{i, m} ∈ S_q(H)` iff `g_{i,q} - g_{m,q}` vanishes identically on `H`,
/// i.e. is a nonzero multiple of `H`'s affine form in the first `q-1` coordinates.
pub fn incidence_sets<F: Field>(fp: &FiberedPresentation<F>) -> IncidenceData {
    let a = fp.underlying_arrangement();
    let mut sets = BTreeMap::new();
    for q in 2..=fp.dimension {
        let roots = &fp.levels[q - 1];
        let lower = fp.hyperplane_index(q, 1);
        for h in 0..lower {
            let hp = a.hyperplane(h);
            let mut h_form = hp.coeffs()[..q - 1].to_vec();
            h_form.push(-hp.constant().clone());
            let mut pairs = Vec::new();
            for i in 0..roots.len() {
                for m in i + 1..roots.len() {
                    let (lin, c) = roots[i].difference(&roots[m]);
                    if lin.iter().all(F::is_zero) {
                        continue;
                    }
                    let mut form = lin;
                    form.push(c);
                    if proportional(&form, &h_form).unwrap_or(false) {
                        pairs.push((i + 1, m + 1));
                    }
                }
            }
            if !pairs.is_empty() {
                sets.insert((q, h), pairs);
            }
        }
    }
    IncidenceData { sets }
}

/// Checks `{i,m} ∈ S_q(H)` ⇔ `H ∩ H_i ∩ H_m` is a codimension-two flat ⇔ `H_i ∩ H_m ⊆ H`.
pub fn verify_incidence_vs_flats<F: Field>(fp: &FiberedPresentation<F>, p: &IntersectionPoset<F>) -> CheckReport {
    let inc = incidence_sets(fp);
    let mut report = CheckReport::new("incidence-vs-flats");
    for q in 2..=fp.dimension {
        let d = fp.levels[q - 1].len();
        for h in 0..fp.hyperplane_index(q, 1) {
            for i in 1..=d {
                for m in i + 1..=d {
                    let hi = fp.hyperplane_index(q, i);
                    let hm = fp.hyperplane_index(q, m);
                    let in_s = inc.contains(q, h, i, m);
                    let pair = p.flat_of(&[hi, hm]);
                    let codim2 = pair.and_then(|x| p.join_hyperplane(x, h)).is_some_and(|x| p.flats()[x].codim == 2);
                    let contained = pair.is_some_and(|x| p.flats()[x].contains_hyperplane(h));
                    report.record(in_s == codim2 && codim2 == contained, || {
                        json!({
                            "level": q, "hyperplane": fp.label(h), "pair": [i, m],
                            "in_incidence": in_s, "codim_two": codim2, "contained": contained,
                        })
                    });
                }
            }
        }
    }
    report
}

/// Rewrites an arrangement in permuted coordinates `y_t = x_{perm[t]}` and
/// assigns each hyperplane to the level of its last nonzero coordinate.
pub fn levels_for_permutation<F: Field>(
    a: &Arrangement<F>,
    perm: &[usize],
) -> RawLevels<F> {
    let l = a.dimension();
    let mut levels = vec![Vec::new(); l];
    for h in a.hyperplanes() {
        let c: Vec<F> = perm.iter().map(|&t| h.coeffs()[t].clone()).collect();
        let j = c.iter().rposition(|x| !x.is_zero()).expect("nonzero form");
        let lead = c[j].clone();
        // y_j = (b - Σ_{t<j} c_t y_t) / c_j
        let coeffs = c[..j].iter().map(|x| -(x.clone() / lead.clone())).collect();
        let constant = h.constant().clone() / lead;
        levels[j].push((coeffs, constant, h.name.clone()));
    }
    levels
}

#[derive(Clone, Debug)]
pub struct SearchOutcome<F> {
    pub permutation: Vec<usize>,
    pub presentation: FiberedPresentation<F>,
}

/// Tries every ordering of the coordinates. Returns the first fibered one
/// (lexicographically smallest permutation), or `None` with the number of
/// orderings tried.
pub fn search_permutations<F: Field>(a: &Arrangement<F>) -> Result<std::result::Result<SearchOutcome<F>, usize>> {
    let l = a.dimension();
    let mut perm: Vec<usize> = (0..l).collect();
    let mut tried = 0;
    loop {
        tried += 1;
        if let Ok(fp) = check_fibered(l, levels_for_permutation(a, &perm))? {
            return Ok(Ok(SearchOutcome { permutation: perm, presentation: fp }));
        }
        if !next_permutation(&mut perm) {
            return Ok(Err(tried));
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The braid arrangement `x_a = x_b` in `C^n` with its standard fibration:
/// level `j` has roots `x_1, …, x_{j-1}`, so the exponents are `0, 1, …, n-1`.
pub fn braid_presentation<F: Field>(n: usize) -> FiberedPresentation<F> {
    let raw = (1..=n)
        .map(|j| {
            (1..j)
                .map(|i| {
                    let mut c = vec![F::zero(); j - 1];
                    c[i - 1] = F::one();
                    (c, F::zero(), Some(format!("H{i}{j}")))
                })
                .collect()
        })
        .collect();
    check_fibered(n, raw).expect("well formed").expect("braid arrangements are fiber-type")
}

#[derive(Serialize, Deserialize)]
struct RootDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    coeffs: Vec<String>,
    constant: String,
}

#[derive(Serialize, Deserialize)]
struct LevelDoc {
    var: usize,
    roots: Vec<RootDoc>,
}

#[derive(Serialize, Deserialize)]
struct FiberedDoc {
    dimension: usize,
    levels: Vec<LevelDoc>,
}

/// Raw levels from a fibered file; validation is left to [`check_fibered`].
pub type RawLevels<F> = Vec<Vec<(Vec<F>, F, Option<String>)>>;

pub fn parse_fibered(text: &str) -> Result<(usize, RawLevels<Rational>)> {
    let doc: FiberedDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.dimension == 0 {
        return Err(Error::Parse("dimension must be positive".into()));
    }
    let mut levels: RawLevels<Rational> = vec![Vec::new(); doc.dimension];
    let mut seen = vec![false; doc.dimension];
    for level in doc.levels {
        if level.var == 0 || level.var > doc.dimension {
            return Err(Error::InvalidLevels(format!("var {} outside 1..={}", level.var, doc.dimension)));
        }
        if std::mem::replace(&mut seen[level.var - 1], true) {
            return Err(Error::InvalidLevels(format!("var {} listed twice", level.var)));
        }
        for r in level.roots {
            if r.coeffs.len() != level.var - 1 {
                return Err(Error::DimensionMismatch { expected: level.var - 1, found: r.coeffs.len() });
            }
            let coeffs = r.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
            levels[level.var - 1].push((coeffs, parse_rational(&r.constant)?, r.name));
        }
    }
    Ok((doc.dimension, levels))
}

pub fn serialize_fibered(fp: &FiberedPresentation<Rational>) -> String {
    let doc = FiberedDoc {
        dimension: fp.dimension,
        levels: fp
            .levels
            .iter()
            .enumerate()
            .filter(|(_, roots)| !roots.is_empty())
            .map(|(j, roots)| LevelDoc {
                var: j + 1,
                roots: roots
                    .iter()
                    .map(|r| RootDoc {
                        name: r.name.clone(),
                        coeffs: r.coeffs.iter().map(format_rational).collect(),
                        constant: format_rational(&r.constant),
                    })
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("presentation serializes")
}
