//! The ten acceptance criteria, each checked by exact equality against the
//! bundled corpus. Prints one line per criterion and exits nonzero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use arrlie_core::arrangement::{parse_arrangement, Arrangement};
use arrlie_core::fibration::{braid_presentation, check_fibered, parse_fibered, search_permutations, verify_incidence_vs_flats, FiberedPresentation};
use arrlie_core::free_lie::{lyndon_basis, witt_dimension, FreeLieElement, TensorPoly};
use arrlie_core::holonomy::{build, verify_series};
use arrlie_core::lattice::{build_poset, verify_lattice_lift};
use arrlie_core::os_algebra::{verify_os_poincare, DEFAULT_HYPERPLANE_CAP};
use arrlie_core::presentation::{presented_dims_bruteforce, Grading, Presentation, DEFAULT_MAX_GENERATORS, DEFAULT_MAX_WEIGHT};
use arrlie_core::{Int, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn arrangement(name: &str) -> Arrangement<Rational> {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.json"))).expect("corpus file");
    parse_arrangement(&text).expect("corpus arrangement parses")
}

fn fibered(name: &str) -> FiberedPresentation<Rational> {
    let text = std::fs::read_to_string(corpus_dir().join(format!("{name}.fib.json"))).expect("corpus file");
    let (dim, raw) = parse_fibered(&text).expect("corpus presentation parses");
    check_fibered(dim, raw).expect("well formed").expect("corpus presentation is fibered")
}

const PLAIN: [&str; 6] = ["braid3", "braid4", "braid5", "4line", "generic3", "generic4"];
const FIBERED: [&str; 4] = ["braid3", "braid4", "braid5", "4line"];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattice_betti() -> Outcome {
    let mut n = 0;
    for name in ["braid3", "braid4", "4line", "generic3"] {
        let a = arrangement(name);
        let p = build_poset(&a);
        for k in 1..=2 {
            let (r, rows) = verify_os_poincare(&a, &p, k, None, DEFAULT_HYPERPLANE_CAP).map_err(|e| e.to_string())?;
            ensure(r.is_ok(), || format!("{name}, k = {k}: {:?}", r.failures))?;
            n += rows.len();
        }
    }
    Ok(format!("{n} degrees agree"))
}

fn redundant_codims() -> Outcome {
    let mut n = 0;
    for name in PLAIN {
        let a = arrangement(name);
        let p = build_poset(&a);
        for k in 1..=3 {
            let r = verify_lattice_lift(&a, &p, k).map_err(|e| e.to_string())?;
            ensure(r.is_ok(), || format!("{name}, k = {k}: {:?}", r.failures))?;
            n += r.checked;
        }
    }
    Ok(format!("{n} subsets checked"))
}

fn fibration() -> Outcome {
    for n in 3..=5 {
        let fp = fibered(&format!("braid{n}"));
        ensure(fp.exponents() == (0..n).collect::<Vec<_>>(), || format!("braid{n} exponents {:?}", fp.exponents()))?;
    }
    let fp = fibered("4line");
    ensure(fp.exponents() == vec![1, 3], || format!("4line exponents {:?}", fp.exponents()))?;
    match search_permutations(&arrangement("generic4")).map_err(|e| e.to_string())? {
        Ok(found) => Err(format!("generic4 accepted under {:?}", found.permutation)),
        Err(tried) => {
            ensure(tried == 6, || format!("generic4 search tried {tried} orders"))?;
            Ok("braid and 4line accepted, generic4 rejected in all 6 orders".into())
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn braid_relations() -> Outcome {
    let mut total = 0;
    for n in 2..=5 {
        let fp = if n == 2 { braid_presentation::<Rational>(2) } else { fibered(&format!("braid{n}")) };
        let p = build_poset(&fp.underlying_arrangement());
        // three relations per triple {i,j,k}, two per disjoint pair {ij, kl}
        let expected = 3 * binomial(n, 3) + binomial(n, 2) * binomial(n - 2, 2);
        for k in 1..=2 {
            let h = build(&fp, k).map_err(|e| e.to_string())?;
            let r = h.verify_relations::<Int>(&p).map_err(|e| e.to_string())?;
            ensure(r.is_ok(), || format!("braid{n}, k = {k}: {:?}", r.failures))?;
            ensure(r.checked == expected, || format!("braid{n}: {} relations, expected {expected}", r.checked))?;
            total += r.checked;
        }
    }
    Ok(format!("{total} relation instances vanish"))
}

fn holonomy_relations() -> Outcome {
    let mut total = 0;
    for name in FIBERED {
        let fp = fibered(name);
        let p = build_poset(&fp.underlying_arrangement());
        for k in 1..=3 {
            let h = build(&fp, k).map_err(|e| e.to_string())?;
            let r = h.verify_relations::<Int>(&p).map_err(|e| e.to_string())?;
            ensure(r.is_ok() && r.checked > 0, || format!("{name}, k = {k}: {:?}", r.failures))?;
            total += r.checked;
        }
    }
    Ok(format!("{total} relation instances vanish"))
}

fn additive_structure() -> Outcome {
    let mut summary = Vec::new();
    for name in ["braid3", "braid4", "4line"] {
        let fp = fibered(name);
        let p = build_poset(&fp.underlying_arrangement());
        let h = build(&fp, 1).map_err(|e| e.to_string())?;
        let lcs: Vec<i64> = h.graded_dimensions(5);
        let pres = Presentation::from_lattice(&p, &|i| fp.label(i), Grading::Ungraded);
        let presented = presented_dims_bruteforce(&pres, 5, (DEFAULT_MAX_WEIGHT, DEFAULT_MAX_GENERATORS)).map_err(|e| e.to_string())?;
        let presented: Vec<i64> = presented.into_iter().map(|d| d as i64).collect();
        ensure(lcs == presented, || format!("{name}: lcs {lcs:?} vs presented {presented:?}"))?;
        summary.push(format!("{name} {lcs:?}"));
    }
    Ok(summary.join(", "))
}

fn enveloping_series() -> Outcome {
    for name in FIBERED {
        let fp = fibered(name);
        for k in 1..=3 {
            let h = build(&fp, k).map_err(|e| e.to_string())?;
            let (r, _, _) = verify_series::<Int, _>(&h, 40);
            ensure(r.is_ok() && r.checked == 41, || format!("{name}, k = {k}: {:?}", r.failures))?;
        }
    }
    let h = build(&fibered("braid3"), 1).map_err(|e| e.to_string())?;
    let (_, uea, _) = verify_series::<Int, _>(&h, 40);
    ensure(uea.coefficient(4) == Int::from(7), || format!("braid3 t^4 coefficient {}", uea.coefficient(4)))?;
    Ok("series agree to order 40, braid3 t^4 coefficient 7".into())
}

fn random_element(rng: &mut ChaCha8Rng, d: usize, weight: usize) -> FreeLieElement<i64> {
    let basis = lyndon_basis(d, weight);
    let terms = (0..rng.gen_range(1..=3)).map(|_| (basis[rng.gen_range(0..basis.len())].clone(), rng.gen_range(-3..=3)));
    FreeLieElement::from_terms(d, terms)
}

fn lie_engine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..100 {
        let d = rng.gen_range(2..=4);
        let (wx, wy, wz) = loop {
            let w = (rng.gen_range(1..=3), rng.gen_range(1..=2), rng.gen_range(1..=2));
            if w.0 + w.1 + w.2 <= 5 {
                break w;
            }
        };
        let (x, y, z) = (random_element(&mut rng, d, wx), random_element(&mut rng, d, wy), random_element(&mut rng, d, wz));
        let b = |u: &FreeLieElement<i64>, v: &FreeLieElement<i64>| u.bracket(v).expect("same alphabet");
        ensure(b(&x, &y).add(&b(&y, &x)).is_zero(), || format!("case {case}: antisymmetry"))?;
        let jacobi = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
        ensure(jacobi.is_zero(), || format!("case {case}: Jacobi residue {jacobi}"))?;
        let yz = b(&y, &z);
        let tensor = TensorPoly::commutator(&x.to_tensor(), &yz.to_tensor());
        ensure(b(&x, &yz).to_tensor() == tensor, || format!("case {case}: tensor oracle"))?;
    }
    for d in 1..=5 {
        for n in 1..=8 {
            let count = lyndon_basis(d, n).len() as i64;
            ensure(count == witt_dimension::<i64>(d, n), || format!("d = {d}, n = {n}: {count} Lyndon words"))?;
        }
    }
    Ok("100 random cases, 40 Witt counts".into())
}

fn incidence() -> Outcome {
    let mut n = 0;
    for name in FIBERED {
        let fp = fibered(name);
        let p = build_poset(&fp.underlying_arrangement());
        let r = verify_incidence_vs_flats(&fp, &p);
        ensure(r.is_ok(), || format!("{name}: {:?}", r.failures))?;
        n += r.checked;
    }
    Ok(format!("{n} pairs checked"))
}

fn corpus_run() -> Vec<u8> {
    let dir = corpus_dir();
    let mut out = Vec::new();
    let mut run = |args: &[&str]| {
        let o = Command::new(env!("CARGO_BIN_EXE_arrlie")).args(args).current_dir(&dir).output().expect("binary runs");
        out.extend_from_slice(format!("{args:?} -> {:?}\n", o.status.code()).as_bytes());
        out.extend_from_slice(&o.stdout);
    };
    for name in PLAIN {
        let file = format!("{name}.json");
        run(&["lattice", &file, "--full", "--k", "2"]);
        run(&["os", &file, "--k", "2"]);
        run(&["fibration", &file, "--search-permutations"]);
        run(&["present", &file, "--k", "1"]);
    }
    for name in FIBERED {
        let file = format!("{name}.fib.json");
        run(&["fibration", &file]);
        run(&["lie", &file, "--k", "2", "--max-weight", "4", "--verify-relations"]);
        run(&["series", &file, "--k", "1", "--truncate", "40"]);
        run(&["present", &file, "--k", "2", "--poisson", "--q", "3"]);
    }
    run(&["lie", "braid3.fib.json", "--oracle", "--max-weight", "5"]);
    out
}

fn determinism() -> Outcome {
    let (a, b) = (corpus_run(), corpus_run());
    ensure(a == b, || "two corpus runs differ".into())?;
    Ok(format!("{} identical bytes", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("lattice/Betti identity", lattice_betti),
        ("redundant codimension scaling", redundant_codims),
        ("fibration verification", fibration),
        ("infinitesimal pure braid relations", braid_relations),
        ("holonomy relations", holonomy_relations),
        ("additive structure", additive_structure),
        ("enveloping-algebra series", enveloping_series),
        ("Lie-engine soundness", lie_engine),
        ("incidence/flat equivalence", incidence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
