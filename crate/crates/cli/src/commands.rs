use std::path::Path;

use arrlie_core::arrangement::{parse_arrangement, Arrangement};
use arrlie_core::fibration::{
    check_fibered, incidence_sets, parse_fibered, search_permutations, serialize_fibered, verify_incidence_vs_flats,
    FiberedPresentation, RawLevels, RootForm,
};
use arrlie_core::holonomy::{build, product_identity, verify_series, HolonomyLie};
use arrlie_core::lattice::{build_poset, verify_lattice_lift, IntersectionPoset};
use arrlie_core::os_algebra::{verify_os_poincare, DEFAULT_HYPERPLANE_CAP};
use arrlie_core::presentation::{
    emit_presentation, presented_dims_bruteforce, Grading, Presentation, DEFAULT_MAX_GENERATORS, DEFAULT_MAX_WEIGHT,
};
use arrlie_core::{CheckReport, Error, Int, Rational};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub struct Outcome {
    pub ok: bool,
    pub payload: Value,
}

pub struct Failure {
    message: String,
    cap: Option<(String, usize, usize)>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { message: message.into(), cap: None }
    }

    pub fn into_payload(self) -> Value {
        let mut v = json!({ "error": self.message });
        if let Some((what, actual, cap)) = self.cap {
            v["cap"] = json!({ "what": what, "required": actual, "current": cap, "override": "ARRLIE_CAP_OVERRIDE" });
        }
        v
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let cap = match &e {
            Error::CapExceeded { what, actual, cap } => Some((what.to_string(), *actual, *cap)),
            _ => None,
        };
        Self { message: e.to_string(), cap }
    }
}

/// Brute-force limits, raised by `ARRLIE_CAP_OVERRIDE`.
pub struct Caps {
    pub hyperplanes: usize,
    pub weight: usize,
    pub generators: usize,
}

impl Caps {
    pub fn from_env() -> Result<Self, Failure> {
        let raised = match std::env::var("ARRLIE_CAP_OVERRIDE") {
            Ok(s) => Some(
                s.trim().parse::<usize>().map_err(|_| Failure::usage(format!("ARRLIE_CAP_OVERRIDE is not an integer: {s:?}")))?,
            ),
            Err(_) => None,
        };
        let lift = |default: usize| raised.map_or(default, |r| r.max(default));
        Ok(Self {
            hyperplanes: lift(DEFAULT_HYPERPLANE_CAP),
            weight: lift(DEFAULT_MAX_WEIGHT),
            generators: lift(DEFAULT_MAX_GENERATORS),
        })
    }
}

enum Input {
    Plain(Arrangement<Rational>),
    Fibered(usize, RawLevels<Rational>),
}

fn read_input(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
    if doc.get("levels").is_some() {
        let (dim, raw) = parse_fibered(&text)?;
        Ok(Input::Fibered(dim, raw))
    } else {
        Ok(Input::Plain(parse_arrangement(&text)?))
    }
}

/// The hyperplanes of a fibered file, whether or not it validates.
fn raw_arrangement(dim: usize, raw: &RawLevels<Rational>) -> Result<Arrangement<Rational>, Failure> {
    let mut hyperplanes = Vec::new();
    for (j, roots) in raw.iter().enumerate() {
        for (i, (coeffs, constant, name)) in roots.iter().enumerate() {
            let r = RootForm { level: j + 1, index: i + 1, coeffs: coeffs.clone(), constant: constant.clone(), name: name.clone() };
            hyperplanes.push(r.hyperplane(dim)?);
        }
    }
    Ok(Arrangement::new(dim, hyperplanes)?)
}

fn arrangement_of(input: &Input) -> Result<Arrangement<Rational>, Failure> {
    match input {
        Input::Plain(a) => Ok(a.clone()),
        Input::Fibered(dim, raw) => raw_arrangement(*dim, raw),
    }
}

enum Fibered {
    Valid(FiberedPresentation<Rational>),
    Rejected(Value),
}

fn fibered_of(input: Input, what: &str) -> Result<Fibered, Failure> {
    match input {
        Input::Fibered(dim, raw) => Ok(match check_fibered(dim, raw)? {
            Ok(fp) => Fibered::Valid(fp),
            Err(v) => Fibered::Rejected(json!({ "reason": "not fiber-type", "violations": v })),
        }),
        Input::Plain(_) => Err(Failure::usage(format!("{what} needs a fibered presentation file"))),
    }
}

fn labels(a: &Arrangement<Rational>) -> Vec<String> {
    (0..a.len()).map(|i| a.label(i)).collect()
}

fn int_json(x: &Int) -> Value {
    x.to_u64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn require_k(k: usize) -> Result<(), Failure> {
    if k == 0 {
        return Err(Failure::usage("--k must be at least 1"));
    }
    Ok(())
}

fn report_json(r: &CheckReport) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

pub fn lattice(path: &Path, full: bool, k: Option<usize>) -> Result<Outcome, Failure> {
    let a = arrangement_of(&read_input(path)?)?;
    let p = build_poset(&a);
    let names = labels(&a);
    let label = |i: usize| names[i].clone();
    let poly = p.poincare_polynomial();
    let whitney: Vec<usize> = (0..=p.rank()).map(|c| p.flats_of_codim(c).count()).collect();
    let mut payload = json!({
        "dimension": a.dimension(),
        "hyperplanes": names,
        "flat_count": p.len(),
        "rank": p.rank(),
        "flats_by_codim": whitney,
        "poincare": { "polynomial": poly.to_string(), "coefficients": poly.coefficients() },
        "codim2_flats": p.codim2_flats().iter().map(|f| f.support.iter().map(|&h| label(h)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    if full {
        payload["flats"] = p.to_json(&label)["flats"].clone();
    }
    let mut ok = true;
    if let Some(k) = k {
        require_k(k)?;
        let red = p.poincare_redundant(k);
        let lift = verify_lattice_lift(&a, &p, k)?;
        ok = lift.is_ok();
        payload["redundant"] = json!({
            "k": k,
            "polynomial": red.to_string(),
            "coefficients": red.coefficients(),
            "codim_scaling": report_json(&lift),
        });
    }
    Ok(Outcome { ok, payload })
}

pub fn os(path: &Path, k: usize, max_q: Option<usize>, caps: &Caps) -> Result<Outcome, Failure> {
    require_k(k)?;
    let a = arrangement_of(&read_input(path)?)?;
    let p = build_poset(&a);
    let max_q = max_q.unwrap_or_else(|| p.rank());
    let (report, rows) = verify_os_poincare(&a, &p, k, Some(max_q), caps.hyperplanes)?;
    let betti: i64 = (0..p.len()).map(|x| p.mobius(x).abs()).sum();
    let dims: Vec<usize> = rows.iter().map(|r| r.actual).collect();
    let payload = json!({
        "k": k,
        "generator_degree": 2 * k - 1,
        "dims": dims,
        "degrees": rows,
        "total": dims.iter().sum::<usize>(),
        "mobius_total": betti,
        "poincare_redundant": p.poincare_redundant(k).to_string(),
        "check": report_json(&report),
    });
    Ok(Outcome { ok: report.is_ok(), payload })
}

fn fibration_summary(fp: &FiberedPresentation<Rational>, p: &IntersectionPoset<Rational>) -> (CheckReport, Value) {
    let inc = incidence_sets(fp);
    let table: Vec<Value> = fp
        .generator_table()
        .iter()
        .enumerate()
        .map(|(h, &(level, index))| json!({ "name": fp.label(h), "level": level, "index": index }))
        .collect();
    let incidence: Vec<Value> = inc
        .iter()
        .map(|(&(q, h), pairs)| json!({ "level": q, "hyperplane": fp.label(h), "pairs": pairs }))
        .collect();
    let check = verify_incidence_vs_flats(fp, p);
    let v = json!({
        "exponents": fp.exponents(),
        "hyperplanes": table,
        "incidence": incidence,
        "incidence_vs_flats": report_json(&check),
    });
    (check, v)
}

pub fn fibration(path: &Path, search: bool) -> Result<Outcome, Failure> {
    match read_input(path)? {
        input @ Input::Fibered(..) => match fibered_of(input, "fibration")? {
            Fibered::Valid(fp) => {
                let p = build_poset(&fp.underlying_arrangement());
                let (check, payload) = fibration_summary(&fp, &p);
                Ok(Outcome { ok: check.is_ok(), payload })
            }
            Fibered::Rejected(payload) => Ok(Outcome { ok: false, payload }),
        },
        Input::Plain(a) => {
            if !search {
                return Err(Failure::usage("an arrangement file needs --search-permutations"));
            }
            match search_permutations(&a)? {
                Ok(found) => {
                    let fp = found.presentation;
                    let p = build_poset(&fp.underlying_arrangement());
                    let (check, mut payload) = fibration_summary(&fp, &p);
                    payload["permutation"] = json!(found.permutation);
                    payload["presentation"] = serde_json::from_str(&serialize_fibered(&fp)).expect("valid json");
                    Ok(Outcome { ok: check.is_ok(), payload })
                }
                Err(tried) => Ok(Outcome {
                    ok: false,
                    payload: json!({ "reason": "no coordinate order is fibered", "permutations_tried": tried }),
                }),
            }
        }
    }
}

fn holonomy_of(path: &Path, k: usize, what: &str) -> Result<Result<(HolonomyLie<Rational>, IntersectionPoset<Rational>), Value>, Failure> {
    require_k(k)?;
    match fibered_of(read_input(path)?, what)? {
        Fibered::Valid(fp) => {
            let p = build_poset(&fp.underlying_arrangement());
            Ok(Ok((build(&fp, k)?, p)))
        }
        Fibered::Rejected(v) => Ok(Err(v)),
    }
}

pub fn lie(path: &Path, k: usize, max_weight: usize, verify: bool, oracle: bool, caps: &Caps) -> Result<Outcome, Failure> {
    let (h, p) = match holonomy_of(path, k, "lie")? {
        Ok(hp) => hp,
        Err(payload) => return Ok(Outcome { ok: false, payload }),
    };
    let dims: Vec<Int> = h.graded_dimensions(max_weight);
    let graded: Vec<Value> = dims
        .iter()
        .enumerate()
        .map(|(i, d)| json!({ "weight": i + 1, "degree": h.degree(i + 1), "dimension": int_json(d) }))
        .collect();
    let mut payload = json!({ "k": k, "exponents": h.exponents(), "graded": graded });
    let mut ok = true;
    if verify {
        let r = h.verify_relations::<Int>(&p)?;
        ok &= r.is_ok();
        payload["relations"] = report_json(&r);
    }
    if oracle {
        let fp = h.presentation();
        let pres = Presentation::from_lattice(&p, &|i| fp.label(i), Grading::Ungraded);
        let presented = presented_dims_bruteforce(&pres, max_weight, (caps.weight, caps.generators))?;
        let mut r = CheckReport::new("lcs-vs-presentation");
        for (i, (a, b)) in dims.iter().zip(&presented).enumerate() {
            r.record(*a == Int::from(*b), || json!({ "weight": i + 1, "lcs": int_json(a), "presented": b }));
        }
        ok &= r.is_ok();
        payload["oracle"] = json!({ "presented": presented, "check": report_json(&r) });
    }
    Ok(Outcome { ok, payload })
}

pub fn series(path: &Path, k: usize, truncate: usize) -> Result<Outcome, Failure> {
    let (h, _) = match holonomy_of(path, k, "series")? {
        Ok(hp) => hp,
        Err(payload) => return Ok(Outcome { ok: false, payload }),
    };
    let (report, uea, loops) = verify_series::<Int, _>(&h, truncate);
    let identity = product_identity::<Int>(h.exponents(), truncate);
    let mut ident = CheckReport::new("witt-product-identity");
    ident.record(identity.is_one(), || json!({ "product": identity.to_json() }));
    let payload = json!({
        "k": k,
        "exponents": h.exponents(),
        "uea": uea.to_json(),
        "loop": loops.to_json(),
        "diff": report.failures,
        "check": report_json(&report),
        "product_identity": report_json(&ident),
    });
    Ok(Outcome { ok: report.is_ok() && ident.is_ok(), payload })
}

pub fn present(path: &Path, k: usize, poisson: bool, q: Option<usize>) -> Result<Outcome, Failure> {
    require_k(k)?;
    let q = match (poisson, q) {
        (true, None) => return Err(Failure::usage("--poisson needs --q")),
        (false, Some(_)) => return Err(Failure::usage("--q only applies with --poisson")),
        (_, q) => q,
    };
    let input = read_input(path)?;
    let fp = match &input {
        Input::Fibered(dim, raw) => check_fibered(*dim, raw.clone())?.ok(),
        Input::Plain(_) => None,
    };
    let a = match &fp {
        Some(fp) => fp.underlying_arrangement(),
        None => arrangement_of(&input)?,
    };
    let p = build_poset(&a);
    let names: Vec<String> = match &fp {
        Some(fp) => (0..a.len()).map(|i| fp.label(i)).collect(),
        None => labels(&a),
    };
    let label = |i: usize| names[i].clone();
    let mut payload = json!({ "k": k, "fiber_type": fp.is_some() });
    let mut ok = true;
    let pres = if let Some(q) = q {
        payload["kind"] = json!("poisson");
        payload["q"] = json!(q);
        Presentation::poisson_from_lattice(&p, &label, k, q)?
    } else {
        payload["kind"] = json!("lie");
        match &fp {
            Some(fp) => {
                let h = build(fp, k)?;
                let r = h.verify_relations::<Int>(&p)?;
                ok = r.is_ok();
                payload["relations_check"] = report_json(&r);
                emit_presentation(&h, &p)
            }
            None => Presentation::from_lattice(&p, &label, Grading::Regraded(k)),
        }
    };
    if fp.is_none() {
        payload["note"] = json!("unverified: not fiber-type");
    }
    payload["presentation"] = pres.to_json();
    Ok(Outcome { ok, payload })
}
