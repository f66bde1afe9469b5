//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Set `GRNORM_BLESS=1` to rewrite the
//! staircase goldens instead of comparing against them.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;

use grnorm_core::ade::{e_paren_parametrization, fingerprint, wedge_with_line_parametrization};
use grnorm_core::semigroup::box_points;
use grnorm_core::{
    attainable_valuations, delta_intersects, global_n, gr_chain, is_symmetric, make_ade, render_chain_text,
    AdeType, AlgebroidCurve, ChainReport, Fingerprint, MultiElement,
};

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweep() -> Vec<AdeType> {
    let mut out: Vec<AdeType> = (1..=12).map(AdeType::A).collect();
    out.extend((4..=12).map(AdeType::D));
    out.extend((6..=8).map(AdeType::E));
    out
}

fn chains() -> BTreeMap<AdeType, ChainReport> {
    sweep()
        .into_iter()
        .map(|t| (t, gr_chain(&make_ade(t).expect("model")).expect("chain")))
        .collect()
}

fn step_count_table(chains: &BTreeMap<AdeType, ChainReport>) -> Outcome {
    for (t, report) in chains {
        let expected = match *t {
            AdeType::A(n) => n.div_ceil(2),
            AdeType::D(n) => n / 2,
            AdeType::E(n) => (n - 1) / 2,
        } as usize;
        ensure(report.n == expected, || format!("{t}: n = {} but table says {expected}", report.n))?;
    }
    Ok(())
}

fn conductors(chains: &BTreeMap<AdeType, ChainReport>) -> Outcome {
    for (t, report) in chains {
        let expected: Vec<u32> = match *t {
            AdeType::A(n) if n % 2 == 0 => vec![n],
            AdeType::A(n) => vec![n.div_ceil(2); 2],
            AdeType::D(n) if n % 2 == 1 => vec![2, n - 1],
            AdeType::D(n) => vec![2, n / 2, n / 2],
            AdeType::E(6) => vec![6],
            AdeType::E(7) => vec![3, 5],
            AdeType::E(_) => vec![8],
        };
        let got = report.steps[0].ring.gamma();
        ensure(got == expected, || format!("{t}: gamma {got:?}, expected {expected:?}"))?;
    }
    Ok(())
}

fn prints(ring: &AlgebroidCurve) -> Vec<Fingerprint> {
    let mut out: Vec<Fingerprint> = ring
        .idempotent_split()
        .expect("split")
        .iter()
        .map(|(_, f)| fingerprint(f).expect("fingerprint"))
        .collect();
    out.sort();
    out
}

fn model_prints(models: Vec<AlgebroidCurve>) -> Vec<Fingerprint> {
    let mut out: Vec<Fingerprint> = models.iter().map(|m| fingerprint(m).expect("fingerprint")).collect();
    out.sort();
    out
}

fn from_pair((gens, s): (Vec<MultiElement>, usize)) -> AlgebroidCurve {
    AlgebroidCurve::from_parametrization(gens, s).expect("model")
}

fn intermediate_types(chains: &BTreeMap<AdeType, ChainReport>) -> Outcome {
    let smooth = || AlgebroidCurve::normalization(1);
    let a = |k: u32| make_ade(AdeType::A(k)).expect("model");
    for (t, report) in chains {
        let (first, second): (Vec<AlgebroidCurve>, Option<Vec<AlgebroidCurve>>) = match *t {
            AdeType::A(1) => (vec![smooth(), smooth()], None),
            AdeType::A(2) => (vec![smooth()], None),
            AdeType::A(n) => (vec![a(n - 2)], None),
            AdeType::D(n) => {
                let wedge = from_pair(wedge_with_line_parametrization(n - 3).expect("model"));
                let second = match n {
                    4 => vec![smooth(), smooth(), smooth()],
                    5 => vec![smooth(), smooth()],
                    _ => vec![smooth(), a(n - 5)],
                };
                (vec![wedge], Some(second))
            }
            AdeType::E(n) => {
                let paren = from_pair(e_paren_parametrization(n).expect("model"));
                let second = if n == 6 { smooth() } else { a(n - 6) };
                (vec![paren], Some(vec![second]))
            }
        };
        ensure(prints(&report.steps[1].ring) == model_prints(first), || format!("{t}: first step type"))?;
        if let Some(second) = second {
            ensure(prints(&report.steps[2].ring) == model_prints(second), || format!("{t}: second step type"))?;
        }
    }
    Ok(())
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn staircase_goldens(chains: &BTreeMap<AdeType, ChainReport>) -> Outcome {
    let bless = std::env::var_os("GRNORM_BLESS").is_some();
    let pictured = [AdeType::A(8), AdeType::A(7), AdeType::D(7), AdeType::D(10), AdeType::E(6), AdeType::E(7), AdeType::E(8)];
    for t in pictured {
        let text = render_chain_text(&t.to_string(), &chains[&t]).map_err(|e| e.to_string())?;
        let path = golden_dir().join(format!("{}.txt", t.to_string().to_lowercase()));
        if bless {
            std::fs::write(&path, &text).map_err(|e| e.to_string())?;
            continue;
        }
        let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(golden == text, || format!("{t}: picture differs from {}", path.display()))?;
    }
    Ok(())
}

fn local_non_normal(ring: &AlgebroidCurve) -> bool {
    !ring.is_normal() && ring.is_local().expect("locality")
}

/// All chain-level properties for one input curve.
fn chain_properties(a: &AlgebroidCurve, plane: bool) -> Outcome {
    let report = gr_chain(a).map_err(|e| e.to_string())?;
    let s = a.branch_count();
    let abar = AlgebroidCurve::normalization(s);
    let mut total = 0;
    for pair in report.steps.windows(2) {
        let (cur, next) = (&pair[0].ring, &pair[1].ring);
        let sandwich = cur.is_subring_of(next).map_err(|e| e.to_string())?
            && next.is_subring_of(&abar).map_err(|e| e.to_string())?;
        ensure(sandwich, || "sandwich fails".into())?;
        total += pair[1].dim_over_previous;
        if local_non_normal(cur) {
            let tau = cur.tau();
            for (i, &ti) in tau.iter().enumerate() {
                for e in ti.max(0) as u32..=next.gamma()[i] {
                    let m = MultiElement::unit_monomial(s, i, e);
                    ensure(next.contains(&m).map_err(|e| e.to_string())?, || {
                        format!("t^{e} on branch {i} missing from End(m) though tau = {tau:?}")
                    })?;
                }
            }
            let symmetric = is_symmetric(cur.semigroup());
            ensure(symmetric == (pair[1].dim_over_previous == 1), || {
                format!("symmetric = {symmetric} but dim(End(m)/A) = {}", pair[1].dim_over_previous)
            })?;
        }
    }
    ensure(total == a.delta_invariant(), || format!("steps sum to {total}, delta = {}", a.delta_invariant()))?;
    for step in &report.steps {
        ensure(step.gr_criterion, || format!("normality criterion fails at step {}", step.index))?;
        let ring = &step.ring;
        ensure(!delta_intersects(&ring.tau(), ring.semigroup()), || format!("Delta(tau) meets Gamma at step {}", step.index))?;
    }
    if report.n > 0 {
        let next = &report.steps[1].ring;
        for g in a.generators() {
            let Some(nu) = g.valuation().map_err(|e| e.to_string())?.to_finite() else { continue };
            for alpha in box_points(&next.gamma().iter().map(|g| g + 1).collect::<Vec<_>>()) {
                if next.semigroup().contains_nat(&alpha) {
                    let shifted: Vec<u32> = alpha.iter().zip(&nu).map(|(x, v)| x + v).collect();
                    ensure(a.semigroup().contains_nat(&shifted), || {
                        format!("{alpha:?} in Gamma' but {alpha:?} + {nu:?} not in Gamma")
                    })?;
                }
            }
        }
    }
    if plane {
        let symmetric = is_symmetric(a.semigroup());
        let first = report.steps.get(1).map_or(0, |s| s.dim_over_previous);
        ensure(a.is_normal() || symmetric == (first == 1), || "plane curve symmetry mismatch".into())?;
    }
    let gens = a.generators().to_vec();
    for start in [8, 16, 32] {
        let again = AlgebroidCurve::from_parametrization_with_box(gens.clone(), s, Some(start)).map_err(|e| e.to_string())?;
        ensure(again.gamma() == a.gamma() && again.ring_equals(a).map_err(|e| e.to_string())?, || {
            format!("conductor changes when starting at box {start}")
        })?;
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let curves = common::samples(common::plane_curve(), 200);
    for branches in &curves {
        let a = common::plane_ring(branches);
        chain_properties(&a, true).map_err(|e| format!("{branches:?}: {e}"))?;
    }
    for t in sweep() {
        chain_properties(&make_ade(t).expect("model"), true).map_err(|e| format!("{t}: {e}"))?;
    }
    Ok(())
}

fn global_combinator() -> Outcome {
    let types = sweep();
    let table: BTreeMap<AdeType, (AlgebroidCurve, usize)> = types
        .iter()
        .map(|&t| {
            let ring = make_ade(t).expect("model");
            let n = gr_chain(&ring).expect("chain").n;
            (t, (ring, n))
        })
        .collect();
    let strategy = proptest::collection::vec(0..types.len(), 1..=6);
    for picks in common::samples(strategy, 100) {
        let locals: Vec<AlgebroidCurve> = picks.iter().map(|&i| table[&types[i]].0.clone()).collect();
        let expected = picks.iter().map(|&i| table[&types[i]].1).max().unwrap_or(0);
        let got = global_n(&locals).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{picks:?}: global n {got}, max {expected}"))?;
    }
    Ok(())
}

fn numerical_semigroup(generators: &[u32], limit: u32) -> Vec<u32> {
    let mut member = vec![false; limit as usize + 1];
    member[0] = true;
    for k in 1..=limit {
        member[k as usize] = generators.iter().any(|&g| g <= k && member[(k - g) as usize]);
    }
    (0..=limit).filter(|&k| member[k as usize]).collect()
}

fn oracle_equivalence() -> Outcome {
    for exps in common::samples(common::monomial_curve(), 50) {
        let a = common::monomial_ring(&exps);
        let limit = a.gamma()[0] + 10;
        let attained: Vec<u32> = attainable_valuations(&a.span_at(&[limit + 1])).into_iter().map(|v| v[0]).collect();
        let brute = numerical_semigroup(&exps, limit);
        ensure(attained == brute, || format!("{exps:?}: {attained:?} vs {brute:?}"))?;
    }
    Ok(())
}

fn main() {
    let chains = chains();
    let criteria: Vec<Criterion> = vec![
        ("1 step-count table", Box::new(|| step_count_table(&chains))),
        ("2 conductor vectors", Box::new(|| conductors(&chains))),
        ("3 intermediate types", Box::new(|| intermediate_types(&chains))),
        ("4 staircase goldens", Box::new(|| staircase_goldens(&chains))),
        ("5 property suites", Box::new(property_suites)),
        ("6 global combinator", Box::new(global_combinator)),
        ("7 semigroup oracle", Box::new(oracle_equivalence)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
