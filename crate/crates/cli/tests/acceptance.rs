//! Acceptance checks; prints one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use foamhom::arith::{GaussianInt, GaussianPolynomial};
use foamhom::complex::{build_complex, euler_characteristic, Mode};
use foamhom::diagram::LinkDiagram;
use foamhom::foamval::{evaluate_foam, ClosedFoam, Facet};
use foamhom::homology::{homology_at, Coefficients, Homology, Strategy};
use foamhom::moves::{apply, candidates, Move};
use foamhom::oracle::verify_mirror_relation;
use foamhom::reduce::simplify;
use foamhom::state::quantum_sl2;
use foamhom_cli::corpus::{corpus_dir, load_all};

const FOAM_TABLE_LIMIT: Duration = Duration::from_secs(1);
const FIGURE_EIGHT_LIMIT: Duration = Duration::from_secs(5);
const EULER_LIMIT: Duration = Duration::from_secs(60);
const EIGHT_CROSSING_LIMIT: Duration = Duration::from_secs(30);
const MIN_REIDEMEISTER_PAIRS: usize = 50;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn corpus() -> Vec<(String, LinkDiagram)> {
    load_all(&corpus_dir()).expect("corpus loads")
}

fn entry(name: &str) -> LinkDiagram {
    corpus().into_iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("missing corpus entry {}", name)).1
}

fn homology(d: &LinkDiagram, a: i64, coeffs: Coefficients, mode: Mode) -> Homology {
    let c = build_complex(d, mode).unwrap();
    homology_at(&simplify(c).0, a, coeffs, Strategy::Eliminate).unwrap()
}

fn zi(d: &LinkDiagram) -> Homology {
    homology(d, 0, Coefficients::GaussianIntegers, Mode::Faithful)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let a = GaussianPolynomial::a();
    let i = GaussianPolynomial::constant(GaussianInt::i());
    let f = |genus, dots| Facet { genus, dots };
    let cases: Vec<(&str, ClosedFoam, GaussianPolynomial)> = vec![
        ("sphere", ClosedFoam::new(vec![f(0, 0)], &[]).unwrap(), GaussianPolynomial::zero()),
        ("dotted sphere", ClosedFoam::new(vec![f(0, 1)], &[]).unwrap(), GaussianPolynomial::one()),
        ("torus", ClosedFoam::new(vec![f(1, 0)], &[]).unwrap(), GaussianPolynomial::constant(GaussianInt::from_int(2))),
        ("genus 3", ClosedFoam::new(vec![f(3, 0)], &[]).unwrap(), a.scale(&GaussianInt::from_int(8))),
        ("ufo(0,0)", ClosedFoam::new(vec![f(0, 0), f(0, 0)], &[vec![0, 1]]).unwrap(), GaussianPolynomial::zero()),
        ("ufo(1,0)", ClosedFoam::new(vec![f(0, 1), f(0, 0)], &[vec![0, 1]]).unwrap(), i.clone()),
        ("ufo(0,1)", ClosedFoam::new(vec![f(0, 0), f(0, 1)], &[vec![0, 1]]).unwrap(), i.scale(&GaussianInt::from_int(-1))),
        ("ufo(1,1)", ClosedFoam::new(vec![f(0, 1), f(0, 1)], &[vec![0, 1]]).unwrap(), GaussianPolynomial::zero()),
    ];
    for (name, foam, expect) in &cases {
        let got = evaluate_foam(foam);
        if got != *expect {
            return Err(format!("{} evaluates to {}, expected {}", name, got, expect));
        }
    }
    let t = start.elapsed();
    if t > FOAM_TABLE_LIMIT {
        return Err(format!("took {:?}", t));
    }
    Ok(format!("{} evaluations exact in {:?}", cases.len(), t))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let h = homology(&entry("4_1"), 0, Coefficients::GaussianRationals, Mode::Faithful);
    let t = start.elapsed();
    let got: Vec<((i64, i64), usize)> = h.groups.iter().map(|(k, g)| (*k, g.free)).collect();
    let expect = vec![((-2, 5), 1), ((-1, 1), 1), ((0, -1), 1), ((0, 1), 1), ((1, -1), 1), ((2, -5), 1)];
    if got != expect {
        return Err(format!("got {:?}", got));
    }
    if t > FIGURE_EIGHT_LIMIT {
        return Err(format!("took {:?}", t));
    }
    Ok(format!("six rank-1 groups in {:?}", t))
}

fn criterion_3() -> Outcome {
    let mut seen = Vec::new();
    for name in ["unknot", "unknot_kink_a", "unknot_kink_b", "unknot_curl"] {
        let d = entry(name);
        let h = zi(&d);
        let got: Vec<((i64, i64), usize, usize)> = h.groups.iter().map(|(k, g)| (*k, g.free, g.torsion.len())).collect();
        if got != vec![((0, -1), 1, 0), ((0, 1), 1, 0)] {
            return Err(format!("{}: {:?}", name, got));
        }
        seen.push(d.crossing_count());
    }
    seen.sort_unstable();
    seen.dedup();
    if seen != vec![0, 1, 2] {
        return Err(format!("crossing numbers covered: {:?}", seen));
    }
    Ok("0, 1 and 2 crossing unknots give q + q^-1".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let all = corpus();
    for (name, d) in &all {
        let c = build_complex(d, Mode::Faithful).map_err(|e| format!("{}: {}", name, e))?;
        let chi = euler_characteristic(&c);
        let p = quantum_sl2(d);
        if chi != p {
            return Err(format!("{}: euler {} vs sl2 {}", name, chi, p));
        }
    }
    let t = start.elapsed();
    if t > EULER_LIMIT {
        return Err(format!("took {:?}", t));
    }
    Ok(format!("{} diagrams in {:?}", all.len(), t))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let seeds: Vec<LinkDiagram> = corpus().into_iter().map(|(_, d)| d).filter(|d| d.crossing_count() <= 4).collect();
    let mut pairs = 0;
    let mut kinds: BTreeMap<&str, usize> = BTreeMap::new();
    for round in 0..200 {
        if pairs >= MIN_REIDEMEISTER_PAIRS && kinds.len() == 3 && round >= 60 {
            break;
        }
        let mut d = seeds[round % seeds.len()].clone();
        // Walk a few moves away so later pairs start from larger diagrams.
        for _ in 0..1 + round % 3 {
            let mut cands = candidates(&d);
            if cands.is_empty() {
                break;
            }
            // Prefer third moves when one is available.
            let slides: Vec<Move> = cands.iter().copied().filter(|m| matches!(m, Move::Slide { .. })).collect();
            let mv = if !slides.is_empty() && round % 2 == 0 {
                *slides.choose(&mut rng).unwrap()
            } else {
                cands.shuffle(&mut rng);
                cands[0]
            };
            let Ok(e) = apply(&d, mv) else { continue };
            if e.crossing_count() > 8 {
                break;
            }
            let (hd, he) = (zi(&d), zi(&e));
            if hd != he {
                return Err(format!("{:?} changes homology: {} -> {}", mv, d.to_pd_string(), e.to_pd_string()));
            }
            pairs += 1;
            let kind = match mv {
                Move::Kink { .. } => "R1",
                Move::Poke { .. } => "R2",
                Move::Slide { .. } => "R3",
            };
            *kinds.entry(kind).or_default() += 1;
            d = e;
        }
    }
    if pairs < MIN_REIDEMEISTER_PAIRS || kinds.len() < 3 {
        return Err(format!("only {} pairs, by kind {:?}", pairs, kinds));
    }
    Ok(format!("{} pairs identical, by kind {:?}", pairs, kinds))
}

fn criterion_6() -> Outcome {
    let mut n = 0;
    for name in ["unknot", "hopf_positive", "hopf_negative", "3_1_left", "3_1_right", "4_1"] {
        match verify_mirror_relation(&entry(name)) {
            Ok(Ok(k)) => n += k,
            Ok(Err(m)) => return Err(format!("{}: {:?}", name, m)),
            Err(e) => return Err(format!("{}: {}", name, e)),
        }
    }
    Ok(format!("6 diagrams, {} bidegrees agree including torsion", n))
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for (name, d) in corpus() {
        let comps = d.component_count();
        if comps > 2 {
            continue;
        }
        let h = homology(&d, 1, Coefficients::GaussianRationals, Mode::Faithful);
        if h.total_rank() != 1 << comps {
            return Err(format!("{}: dimension {} with {} components", name, h.total_rank(), comps));
        }
        checked += 1;
    }
    Ok(format!("{} diagrams have dimension 2^components at a = 1", checked))
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for (name, d) in corpus() {
        let mut tables = Vec::new();
        for mode in [Mode::Faithful, Mode::KhovanovStyle] {
            let c = build_complex(&d, mode).map_err(|e| format!("{} {:?}: {}", name, mode, e))?;
            c.verify_d_squared().map_err(|h| format!("{} {:?}: d^2 != 0 at {}", name, mode, h))?;
            c.verify_homogeneous().map_err(|e| format!("{} {:?}: inhomogeneous {:?}", name, mode, e))?;
            let r = simplify(c).0;
            let at0 = homology_at(&r, 0, Coefficients::GaussianIntegers, Strategy::Eliminate).unwrap();
            let at1 = homology_at(&r, 1, Coefficients::GaussianRationals, Strategy::Eliminate).unwrap();
            tables.push((at0, at1));
        }
        if tables[0] != tables[1] {
            return Err(format!("{}: modes disagree", name));
        }
        n += 1;
    }
    Ok(format!("{} diagrams, both modes, tables identical", n))
}

fn criterion_9() -> Outcome {
    let mut n = 0;
    for (name, d) in corpus() {
        let c = build_complex(&d, Mode::Faithful).unwrap();
        let (r, _) = simplify(c.clone());
        if euler_characteristic(&r) != euler_characteristic(&c) {
            return Err(format!("{}: Euler characteristic changed", name));
        }
        for (a, coeffs) in [(0, Coefficients::GaussianIntegers), (1, Coefficients::GaussianRationals)] {
            let full = homology_at(&c, a, coeffs, Strategy::Direct).unwrap();
            let reduced = homology_at(&r, a, coeffs, Strategy::Direct).unwrap();
            if full != reduced {
                return Err(format!("{}: homology at a = {} changed", name, a));
            }
        }
        n += 1;
    }
    Ok(format!("{} diagrams, Euler characteristic and homology preserved", n))
}

fn criterion_10() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut count = 0;
    for (name, d) in corpus() {
        if d.crossing_count() != 8 {
            continue;
        }
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_foamhom"))
            .args(["homology", "--a", "0", "--reduce", &name])
            .env("FOAMHOM_CORPUS", corpus_dir())
            .output()
            .map_err(|e| e.to_string())?;
        let t = start.elapsed();
        if !out.status.success() {
            return Err(format!("{} exited with {:?}", name, out.status.code()));
        }
        if t > EIGHT_CROSSING_LIMIT {
            return Err(format!("{} took {:?}", name, t));
        }
        worst = worst.max(t);
        count += 1;
    }
    if count == 0 {
        return Err("no 8-crossing corpus entries".into());
    }
    Ok(format!("{} diagrams, slowest {:?}", count, worst))
}

fn main() {
    let criteria: [Check; 10] = [
        ("closed foam table", criterion_1),
        ("figure-eight at a = 0 over Q(i)", criterion_2),
        ("unknot diagrams", criterion_3),
        ("Euler characteristic equals sl(2) polynomial", criterion_4),
        ("Reidemeister invariance", criterion_5),
        ("mirror relation with the Khovanov oracle", criterion_6),
        ("dimension at a = 1", criterion_7),
        ("d^2 = 0, homogeneity, mode agreement", criterion_8),
        ("reduction soundness", criterion_9),
        ("8-crossing performance", criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {}: {}", k + 1, name, detail),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {}: {}", k + 1, name, detail);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {:?}", failed);
        std::process::exit(1);
    }
}
