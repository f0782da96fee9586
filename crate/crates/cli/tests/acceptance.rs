//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use ghocolim::generate::{generate, Caps, SChoice};
use ghocolim::report::Check;
use ghocolim::resolve::Model;
use ghocolim::verify::{load, verify, Options};
use ghocolim::{parse, Document};
use ghocolim_core::algebra::action::GCategory;
use ghocolim_core::algebra::category::FinCategory;
use ghocolim_core::algebra::group::FinGroup;
use ghocolim_core::constructions::nerve::nerve;
use ghocolim_core::homology::{homology, ChainComplex, Coefficients};
use ghocolim_core::simplicial::sset::SSet;

/// Seeds of the generated corpus.
const SEEDS: std::ops::RangeInclusive<u64> = 1..=100;
/// Wall-clock budget for the axiom suite over the whole corpus.
const AXIOM_BUDGET: Duration = Duration::from_secs(60);
/// Truncation of the generated corpus.
const CORPUS_TRUNCATION: usize = 4;
/// Truncation for the coend and associativity checks.
const COEND_TRUNCATION: usize = 3;
/// Truncation for the thickening witness.
const THICKENING_TRUNCATION: usize = 4;
/// Instances with a generated S, and instances for the thickening witness.
const WITH_S: u64 = 25;
const THICKENING: u64 = 25;
// Isomorphisms, Betti numbers and torsion are exact: no tolerance anywhere.

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn corpus_caps(s: SChoice) -> Caps {
    Caps { max_group: 6, max_objects: 5, max_morphisms: 20, truncation: CORPUS_TRUNCATION, s }
}

fn instance(seed: u64, s: SChoice) -> Document {
    generate(seed, &corpus_caps(s)).expect("generator accepts the corpus caps")
}

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run_check(m: &Model, check: &str, opts: &Options) -> Result<Vec<Check>, String> {
    verify(m, check, opts).map(|(c, _)| c).map_err(|e| e.to_string())
}

/// Runs `checks` over documents; the first failure is the detail.
fn over_instances(docs: impl Iterator<Item = (String, Document)>, truncation: Option<usize>, checks: &[&str], opts: &Options) -> Outcome {
    let mut count = 0;
    for (label, doc) in docs {
        let m = match load(&doc, truncation) {
            Ok(m) => m,
            Err(e) => return outcome(false, format!("{label}: {e}")),
        };
        for check in checks {
            match run_check(&m, check, opts) {
                Ok(cs) => {
                    if let Some(c) = cs.iter().find(|c| !c.pass) {
                        return outcome(false, format!("{label}: {} {}", c.name, c.summary));
                    }
                    count += cs.len();
                }
                Err(e) => return outcome(false, format!("{label} {check}: {e}")),
            }
        }
    }
    outcome(true, format!("{count} checks passed"))
}

fn corpus() -> impl Iterator<Item = (String, Document)> {
    SEEDS.map(|s| (format!("seed {s}"), instance(s, SChoice::Random)))
}

fn criterion1() -> Outcome {
    let started = Instant::now();
    let r = over_instances(corpus(), None, &["axioms"], &Options::default());
    let elapsed = started.elapsed();
    let within = elapsed < AXIOM_BUDGET;
    outcome(r.pass && within, format!("{}; {:.1} s of {} s budget", r.detail, elapsed.as_secs_f64(), AXIOM_BUDGET.as_secs()))
}

fn criterion2() -> Outcome {
    over_instances(corpus(), None, &["iso:eq12"], &Options::default())
}

fn criterion3() -> Outcome {
    over_instances(corpus(), Some(COEND_TRUNCATION), &["iso:eq1", "iso:eq2"], &Options::default())
}

fn criterion4() -> Outcome {
    let docs = (1..=WITH_S).map(|s| (format!("seed {s} with S"), instance(s, SChoice::Any)));
    over_instances(docs, Some(COEND_TRUNCATION), &["iso:eq22", "iso:eq7"], &Options::default())
}

fn criterion5() -> Outcome {
    let opts = Options { coefficients: vec![Coefficients::Rationals, Coefficients::Prime(2)], ..Options::default() };
    over_instances(corpus(), None, &["contractible:eq28"], &opts)
}

fn criterion6() -> Outcome {
    let docs = (1..=THICKENING).map(|s| (format!("seed {s}"), instance(s, SChoice::None)));
    over_instances(docs, Some(THICKENING_TRUNCATION), &["witness:thm2"], &Options::default())
}

fn criterion7() -> Outcome {
    let cases = [
        ("swapped_pair.txt", "witness:thm4"),
        ("pushdown.txt", "witness:thm4"),
        ("ordinal.txt", "witness:thm5"),
        ("cone.txt", "witness:thm5"),
    ];
    for (file, check) in cases {
        let doc = parse(&std::fs::read_to_string(corpus_file(file)).unwrap()).unwrap();
        let m = load(&doc, None).unwrap();
        if m.groups.values().any(|g| g.order() > 4) || m.gcats.values().any(|c| c.cat.object_count() > 3) {
            return outcome(false, format!("{file} exceeds |G| ≤ 4 or 3 objects"));
        }
        let r = over_instances(std::iter::once((file.to_string(), doc)), None, &[check], &Options::default());
        if !r.pass {
            return r;
        }
    }
    outcome(true, "pushdown on 2 instances and cofinality on 2 instances pass the witness")
}

// Independent oracle: simplices enumerated directly, unnormalized chains,
// dense integer elimination.

/// Faces of every simplex in degrees `0..=top`, by direct enumeration.
struct Enumerated {
    faces: Vec<Vec<Vec<usize>>>,
    counts: Vec<usize>,
}

fn enumerate<T: Clone + PartialEq>(top: usize, simplices: impl Fn(usize) -> Vec<T>, face: impl Fn(&T, usize) -> T) -> Enumerated {
    let levels: Vec<Vec<T>> = (0..=top).map(&simplices).collect();
    let faces = (1..=top)
        .map(|n| {
            levels[n]
                .iter()
                .map(|s| (0..=n).map(|i| levels[n - 1].iter().position(|t| *t == face(s, i)).unwrap()).collect())
                .collect()
        })
        .collect();
    Enumerated { faces, counts: levels.iter().map(Vec::len).collect() }
}

fn monotone(top: usize, vertices: usize, keep: impl Fn(&[usize]) -> bool + Copy) -> Enumerated {
    let sequences = move |n: usize| {
        let mut out: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=n {
            out = out
                .into_iter()
                .flat_map(|s| {
                    let lo = s.last().copied().unwrap_or(0);
                    (lo..vertices).map(move |v| [s.clone(), vec![v]].concat())
                })
                .collect();
        }
        out.into_iter().filter(|s| keep(s)).collect()
    };
    enumerate(top, sequences, |s, i| [&s[..i], &s[i + 1..]].concat())
}

fn nerve_of_z2(top: usize) -> Enumerated {
    let tuples = |n: usize| (0..1usize << n).map(|bits| (0..n).map(|k| (bits >> k) & 1).collect::<Vec<usize>>()).collect();
    enumerate(top, tuples, |s: &Vec<usize>, i| {
        let n = s.len();
        if i == 0 {
            s[1..].to_vec()
        } else if i == n {
            s[..n - 1].to_vec()
        } else {
            [&s[..i - 1], &[s[i - 1] ^ s[i]][..], &s[i + 1..]].concat()
        }
    })
}

fn boundary(e: &Enumerated, n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; e.counts[n]]; e.counts[n - 1]];
    for (j, fs) in e.faces[n - 1].iter().enumerate() {
        for (i, &f) in fs.iter().enumerate() {
            m[f][j] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Diagonal of a Smith form (nonzero entries, absolute values), by
/// repeated gcd elimination.
fn smith(mut a: Vec<Vec<i64>>) -> Vec<i64> {
    let mut diag = Vec::new();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let p = a[t][t];
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / p;
            for j in t..cols {
                a[i][j] -= q * a[t][j];
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / p;
            for i in t..rows {
                a[i][j] -= q * a[i][t];
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

fn rank_mod2(a: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<u8>> = a.iter().map(|r| r.iter().map(|v| v.rem_euclid(2) as u8).collect()).collect();
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for j in 0..cols {
        if let Some(p) = (rank..rows.len()).find(|&i| rows[i][j] == 1) {
            rows.swap(rank, p);
            for i in 0..rows.len() {
                if i != rank && rows[i][j] == 1 {
                    let pivot = rows[rank].clone();
                    rows[i].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Integral (rank, torsion) and F2 dimension in degrees `0..top`.
fn oracle(e: &Enumerated) -> (Vec<(usize, Vec<i64>)>, Vec<usize>) {
    let top = e.counts.len() - 1;
    let smiths: Vec<Vec<i64>> = (1..=top).map(|n| smith(boundary(e, n))).collect();
    let mod2: Vec<usize> = (1..=top).map(|n| rank_mod2(&boundary(e, n))).collect();
    let at = |v: &Vec<usize>, n: usize| if n == 0 { 0 } else { v[n - 1] };
    let ranks: Vec<usize> = smiths.iter().map(Vec::len).collect();
    let integral = (0..top)
        .map(|n| {
            let torsion = smiths[n].iter().copied().filter(|&d| d > 1).collect();
            (e.counts[n] - at(&ranks, n) - ranks[n], torsion)
        })
        .collect();
    let f2 = (0..top).map(|n| e.counts[n] - at(&mod2, n) - mod2[n]).collect();
    (integral, f2)
}

fn core_profile(x: &SSet) -> (Vec<(usize, Vec<i64>)>, Vec<usize>) {
    let c = ChainComplex::new(x);
    let z = homology(&c, Coefficients::Integers).unwrap();
    let f2 = homology(&c, Coefficients::Prime(2)).unwrap();
    let integral = z
        .degrees
        .iter()
        .map(|d| (d.rank, d.torsion.iter().map(|t| i64::try_from(t).unwrap()).collect()))
        .collect();
    (integral, f2.ranks())
}

fn criterion8() -> Outcome {
    let z2 = Arc::new(FinGroup::cyclic(2));
    let bz2 = nerve(&GCategory::with_trivial_action(FinCategory::one_object(&z2), z2.clone()), 4).unwrap();
    let cases: [(&str, SSet, Enumerated, Vec<usize>); 3] = [
        ("Δ¹", SSet::standard(1, 3), monotone(3, 2, |_| true), vec![1, 0, 0]),
        ("∂Δ²", SSet::boundary(2, 3), monotone(3, 3, |s| !(s.contains(&0) && s.contains(&1) && s.contains(&2))), vec![1, 1, 0]),
        ("N(Z/2)", (*bz2.space).clone(), nerve_of_z2(4), vec![1, 0, 0, 0]),
    ];
    let mut details = Vec::new();
    for (name, x, e, expected_q) in cases {
        let (oracle_z, oracle_f2) = oracle(&e);
        let (core_z, core_f2) = core_profile(&x);
        let q: Vec<usize> = core_z.iter().map(|d| d.0).collect();
        if core_z != oracle_z || core_f2 != oracle_f2 || q != expected_q {
            return outcome(false, format!("{name}: core {core_z:?} / F2 {core_f2:?}, oracle {oracle_z:?} / F2 {oracle_f2:?}"));
        }
        details.push(format!("{name} {q:?}"));
    }
    let (z, f2) = core_profile(&bz2.space);
    let torsion_ok = z[1].1 == vec![2] && z[2].1.is_empty() && z[3].1 == vec![2];
    if f2 != vec![1, 1, 1, 1] || !torsion_ok {
        return outcome(false, format!("N(Z/2): F2 {f2:?}, integral {z:?}"));
    }
    details.push("N(Z/2) over F2 [1, 1, 1, 1], torsion Z/2 in degrees 1 and 3".into());
    outcome(true, details.join("; "))
}

fn criterion9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ghocolim");
    let collapse = Command::new(bin)
        .args(["verify", "witness:thm1", corpus_file("collapse.txt").to_str().unwrap(), "--map", "collapse"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&collapse.stdout);
    let collapse_ok = collapse.status.code() == Some(1) && text.contains("witness: degree=0 ");
    let corrupt = Command::new(bin).args(["check", corpus_file("corrupt_face.txt").to_str().unwrap()]).output().unwrap();
    let text2 = String::from_utf8_lossy(&corrupt.stdout);
    let corrupt_ok = corrupt.status.code() == Some(1) && text2.contains("location=");
    outcome(
        collapse_ok && corrupt_ok,
        format!(
            "collapse exit {:?} {}; corrupted face exit {:?} {}",
            collapse.status.code(),
            text.lines().find(|l| l.trim_start().starts_with("witness:")).unwrap_or("no witness").trim(),
            corrupt.status.code(),
            text2.lines().find(|l| l.trim_start().starts_with("witness:")).unwrap_or("no witness").trim(),
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axiom suite on 100 generated instances", criterion1),
        ("bar to hocolim is an equivariant bijection on 100 instances", criterion2),
        ("union-find coend equals the bar construction at truncation 3", criterion3),
        ("associativity and reduction isomorphisms on 25 instances with S", criterion4),
        ("fixed points of under-category nerves are acyclic over Q and F2", criterion5),
        ("thickening witness on 25 instances", criterion6),
        ("pushdown and cofinality witnesses on handcrafted instances", criterion7),
        ("homology oracles", criterion8),
        ("negative controls exit 1 with witnesses", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {} {}: {name} ({}; {:.1} s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            started.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
