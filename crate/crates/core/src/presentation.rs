//! Holonomy presentations and the brute-force quotient oracle.
//!
//! A presentation has one generator per hyperplane and one relation
//! `[C_X, C_H]` per codimension-two flat `X` and hyperplane `H ⊇ X`, with
//! `C_X` the sum of the generators of `X`'s support. Emission only needs the
//! lattice, so it works for any arrangement; whether the relations present the
//! Lie algebra is a separate question answered by [`presented_dims_bruteforce`].

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fibration::FiberedPresentation;
use crate::free_lie::TensorPoly;
use crate::holonomy::HolonomyLie;
use crate::lattice::IntersectionPoset;
use crate::linalg::SparseEchelon;
use crate::scalar::Field;
use crate::Rational;

/// Brute-force limits: weight and generator count.
pub const DEFAULT_MAX_WEIGHT: usize = 6;
pub const DEFAULT_MAX_GENERATORS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BracketKind {
    Lie,
    Poisson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// `[Σ_{H' ∈ flat_support} g_{H'}, g_{hyperplane}]`, indices into the generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub flat_support: Vec<usize>,
    pub hyperplane: usize,
    pub bracket: BracketKind,
    pub operator: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

/// How generator degrees are displayed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// Degree equals bracket weight.
    Ungraded,
    /// Weight `n` sits in degree `2nk`.
    Regraded(usize),
}

impl Grading {
    fn generator_degree(self) -> usize {
        match self {
            Grading::Ungraded => 1,
            Grading::Regraded(k) => 2 * k,
        }
    }
}

impl Presentation {
    /// Holonomy presentation read off the lattice alone.
    pub fn from_lattice<F: Field>(p: &IntersectionPoset<F>, labels: &dyn Fn(usize) -> String, grading: Grading) -> Self {
        let degree = grading.generator_degree();
        Self::build(p, labels, degree, BracketKind::Lie, None)
    }

    /// Poisson presentation read off the lattice: generators in degree `2k+1-q`, for `1 < q < 2k+1`.
    pub fn poisson_from_lattice<F: Field>(
        p: &IntersectionPoset<F>,
        labels: &dyn Fn(usize) -> String,
        k: usize,
        q: usize,
    ) -> Result<Self> {
        if k == 0 || q <= 1 || q >= 2 * k + 1 {
            return Err(Error::OutOfRange(format!("need 1 < q < 2k+1, got q = {q}, k = {k}")));
        }
        Ok(Self::build(p, labels, 2 * k + 1 - q, BracketKind::Poisson, Some("λ_{q-1}".to_string())))
    }

    fn build<F: Field>(
        p: &IntersectionPoset<F>,
        labels: &dyn Fn(usize) -> String,
        degree: usize,
        bracket: BracketKind,
        operator: Option<String>,
    ) -> Self {
        let generators = (0..p.hyperplane_count()).map(|h| Generator { name: labels(h), degree }).collect();
        let mut relations = Vec::new();
        for flat in p.codim2_flats() {
            for &h in &flat.support {
                relations.push(Relation { flat_support: flat.support.clone(), hyperplane: h, bracket, operator: operator.clone() });
            }
        }
        Self { generators, relations }
    }

    /// Relation as a weight-two tensor: `Σ_{H'} (x_{H'} x_H - x_H x_{H'})`, letters 1-based.
    pub fn relation_tensor(&self, r: &Relation) -> TensorPoly<i64> {
        let h = r.hyperplane as u32 + 1;
        let mut out = TensorPoly::zero();
        for &g in &r.flat_support {
            let g = g as u32 + 1;
            out.add_scaled(&TensorPoly::commutator(&TensorPoly::word(vec![g]), &TensorPoly::word(vec![h])), &1);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let name = |i: usize| self.generators[i].name.clone();
        json!({
            "generators": self.generators.iter().map(|g| json!({ "name": g.name, "degree": g.degree })).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| json!({
                "flat_support": r.flat_support.iter().map(|&i| name(i)).collect::<Vec<_>>(),
                "hyperplane": name(r.hyperplane),
                "bracket": r.bracket,
                "operator": r.operator,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Generators `C_H` in degree `2k` and relations `[C_X, C_H]`.
pub fn emit_presentation<F: Field>(h: &HolonomyLie<F>, p: &IntersectionPoset<F>) -> Presentation {
    let fp = h.presentation();
    Presentation::from_lattice(p, &|i| fp.label(i), Grading::Regraded(h.k()))
}

/// Generators `β_H` in degree `2k+1-q` and relations `λ_{q-1}[β_X, β_H] = 0`, for `1 < q < 2k+1`.
pub fn emit_poisson_presentation<F: Field>(
    fp: &FiberedPresentation<F>,
    p: &IntersectionPoset<F>,
    k: usize,
    q: usize,
) -> Result<Presentation> {
    Presentation::poisson_from_lattice(p, &|i| fp.label(i), k, q)
}

/// Encodes a word over `g` letters (1-based) as a base-`g` integer, prefixed by its length.
fn encode(word: &[u32], g: usize) -> u64 {
    word.iter().fold(word.len() as u64, |acc, &a| acc * g as u64 + (a as u64 - 1))
}

fn to_row(t: &TensorPoly<i64>, g: usize) -> BTreeMap<u64, Rational> {
    t.terms().iter().map(|(w, &c)| (encode(w, g), Rational::from_integer(c.into()))).collect()
}

/// Graded dimensions (weights `1..=max_weight`) of the free Lie algebra on the
/// presentation's generators modulo the Lie ideal of its relations.
///
/// Everything happens in the tensor algebra. In weight `n` the free Lie part
/// is spanned by `[x_i, v]` over a basis `v` of weight `n-1`, and the ideal by
/// `[x_i, r]` over a spanning set `r` of the ideal in weight `n-1`, starting
/// from the relations in weight two. The quotient dimension is the difference
/// of the two exact ranks over the rationals.
pub fn presented_dims_bruteforce(pres: &Presentation, max_weight: usize, caps: (usize, usize)) -> Result<Vec<usize>> {
    let (weight_cap, gen_cap) = caps;
    let g = pres.generators.len();
    if max_weight > weight_cap {
        return Err(Error::CapExceeded { what: "weight", actual: max_weight, cap: weight_cap });
    }
    if g > gen_cap {
        return Err(Error::CapExceeded { what: "generator count", actual: g, cap: gen_cap });
    }
    if max_weight == 0 {
        return Ok(Vec::new());
    }
    let letters: Vec<TensorPoly<i64>> = (1..=g as u32).map(|a| TensorPoly::word(vec![a])).collect();

    let mut dims = vec![g];
    let mut lie_spanning: Vec<TensorPoly<i64>> = letters.clone();
    let mut ideal_spanning: Vec<TensorPoly<i64>> = Vec::new();
    for n in 2..=max_weight {
        let lie_candidates: Vec<TensorPoly<i64>> =
            letters.iter().flat_map(|x| lie_spanning.iter().map(move |v| TensorPoly::commutator(x, v))).collect();
        let ideal_candidates: Vec<TensorPoly<i64>> = if n == 2 {
            pres.relations.iter().map(|r| pres.relation_tensor(r)).collect()
        } else {
            letters.iter().flat_map(|x| ideal_spanning.iter().map(move |v| TensorPoly::commutator(x, v))).collect()
        };

        let mut ideal = SparseEchelon::new();
        ideal_spanning = ideal_candidates.into_iter().filter(|t| ideal.insert(to_row(t, g))).collect();
        let ideal_rank = ideal.rank();

        let mut free = SparseEchelon::new();
        lie_spanning = lie_candidates.into_iter().filter(|t| free.insert(to_row(t, g))).collect();
        let free_rank = free.rank();

        dims.push(free_rank - ideal_rank);
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::braid_presentation;
    use crate::free_lie::witt_dimension;
    use crate::holonomy::build;
    use crate::lattice::build_poset;

    const CAPS: (usize, usize) = (DEFAULT_MAX_WEIGHT, DEFAULT_MAX_GENERATORS);

    #[test]
    fn braid3_presentation_shape() {
        let fp = braid_presentation::<Rational>(3);
        let p = build_poset(&fp.underlying_arrangement());
        let h = build(&fp, 1).unwrap();
        let pres = emit_presentation(&h, &p);
        assert_eq!(pres.generators.len(), 3);
        assert!(pres.generators.iter().all(|g| g.degree == 2));
        assert_eq!(pres.relations.len(), 3);
        let ungraded = Presentation::from_lattice(&p, &|i| fp.label(i), Grading::Ungraded);
        assert!(ungraded.generators.iter().all(|g| g.degree == 1));
        assert_eq!(ungraded.relations, pres.relations);
    }

    #[test]
    fn braid3_quotient_dims() {
        let fp = braid_presentation::<Rational>(3);
        let p = build_poset(&fp.underlying_arrangement());
        let pres = Presentation::from_lattice(&p, &|i| fp.label(i), Grading::Ungraded);
        assert_eq!(presented_dims_bruteforce(&pres, 5, CAPS).unwrap(), vec![3, 1, 2, 3, 6]);
    }

    #[test]
    fn free_presentation_gives_witt() {
        let pres = Presentation {
            generators: (0..3).map(|i| Generator { name: format!("x{i}"), degree: 1 }).collect(),
            relations: vec![],
        };
        let dims = presented_dims_bruteforce(&pres, 5, CAPS).unwrap();
        let witt: Vec<usize> = (1..=5).map(|n| witt_dimension::<i64>(3, n) as usize).collect();
        assert_eq!(dims, witt);
    }

    #[test]
    fn abelianizing_pair() {
        let pres = Presentation {
            generators: (0..2).map(|i| Generator { name: format!("x{i}"), degree: 1 }).collect(),
            relations: vec![Relation { flat_support: vec![0], hyperplane: 1, bracket: BracketKind::Lie, operator: None }],
        };
        assert_eq!(presented_dims_bruteforce(&pres, 3, CAPS).unwrap(), vec![2, 0, 0]);
    }

    #[test]
    fn caps() {
        let pres = Presentation { generators: vec![], relations: vec![] };
        assert!(matches!(presented_dims_bruteforce(&pres, 7, CAPS), Err(Error::CapExceeded { .. })));
        let big = Presentation {
            generators: (0..9).map(|i| Generator { name: format!("x{i}"), degree: 1 }).collect(),
            relations: vec![],
        };
        assert!(matches!(presented_dims_bruteforce(&big, 2, CAPS), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn poisson_range() {
        let fp = braid_presentation::<Rational>(3);
        let p = build_poset(&fp.underlying_arrangement());
        let pres = emit_poisson_presentation(&fp, &p, 2, 3).unwrap();
        assert!(pres.generators.iter().all(|g| g.degree == 2));
        assert!(pres.relations.iter().all(|r| r.bracket == BracketKind::Poisson && r.operator.as_deref() == Some("λ_{q-1}")));
        assert!(emit_poisson_presentation(&fp, &p, 2, 5).is_err());
        assert!(emit_poisson_presentation(&fp, &p, 2, 1).is_err());
        assert!(emit_poisson_presentation(&fp, &p, 2, 7).is_err());
    }
}
