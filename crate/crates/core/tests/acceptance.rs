//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cocoa_kit::analysis::{
    closed_subsccs, diff_nonempty, dpw_equiv, parity_to_streett, residual_classes,
    streett_nonempty, StreettPair,
};
use cocoa_kit::boolops::ncw_determinize;
use cocoa_kit::cocoa::{
    check_chain, cocoa_conjunction_gamma, cocoa_demorgan_complement, cocoa_demorgan_disjunction,
    cocoa_eval, cocoa_to_dpw, natural_color_probe, replay_toggle_chain, Cocoa,
};
use cocoa_kit::families::{
    ck, comp_family, fig1, fig2, l0hat, lhat, lk, minparity_chain, minparity_dpw, ncw_fixture, pk,
};
use cocoa_kit::word::{all_lassos, random_lassos, sub_alphabet_lassos, words_up_to};
use cocoa_kit::{
    accepts_lasso_cobuchi, run_deterministic, Alphabet, Automaton, LassoWord, Letter, Transition,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Debug>(err: E) -> String {
    format!("{err:?}")
}

fn lasso(alphabet: &Alphabet, text: &str) -> LassoWord {
    LassoWord::parse(alphabet, text).expect("lasso literal")
}

/// Random lassos plus lassos whose period avoids the first `skip` letters,
/// so that words settling in the tail of the alphabet are well represented.
fn sampled_lassos(alphabet: &Alphabet, skip: usize, count: usize, seed: u64) -> Vec<LassoWord> {
    let mut out = random_lassos(alphabet, count, 3, 4, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = alphabet.len();
    for _ in 0..count {
        let stem: Vec<Letter> = (0..rng.gen_range(0..=3))
            .map(|_| rng.gen_range(0..n))
            .collect();
        let period: Vec<Letter> = (0..rng.gen_range(1..=4))
            .map(|_| rng.gen_range(skip..n))
            .collect();
        out.push(LassoWord::new(stem, period).unwrap());
    }
    out
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if n < r {
        return vec![];
    }
    let mut with_last: Vec<Vec<usize>> = combinations(n - 1, r - 1);
    for c in &mut with_last {
        c.push(n - 1);
    }
    let mut out = combinations(n - 1, r);
    out.extend(with_last);
    out
}

fn criterion_1() -> Outcome {
    let c = fig1();
    let cases = [("; a", 0, true), ("; b c", 2, true), ("; c", 3, false)];
    for (w, level, member) in cases {
        let v = cocoa_eval(&c, &lasso(c.alphabet(), w)).map_err(e)?;
        ensure(v.level == level && v.member == member, || {
            format!("({w}) gave level {} member {}", v.level, v.member)
        })?;
    }
    Ok("levels 0, 2, 3 as stated".into())
}

fn criterion_2() -> Outcome {
    for k in 1..=5 {
        let c = ck(k).map_err(e)?;
        let d = cocoa_to_dpw(&c).map_err(e)?;
        ensure(d.reachable_states().len() == 1 << k, || {
            format!("k={k}: {} DPW states", d.reachable_states().len())
        })?;
        ensure(c.num_states() == 2 * k, || {
            format!("k={k}: {} chain states", c.num_states())
        })?;
    }
    let d2 = cocoa_to_dpw(&ck(2).map_err(e)?).map_err(e)?;
    ensure(dpw_equiv(&d2, &fig2()).map_err(e)?.equivalent, || {
        "k=2 DPW differs from the fixture".into()
    })?;
    let mut checked = 0usize;
    for k in 1..=4 {
        let c = ck(k).map_err(e)?;
        let d = cocoa_to_dpw(&c).map_err(e)?;
        let n = c.alphabet().len();
        let mut words: Vec<LassoWord> = Vec::new();
        for subset in combinations(n, 4) {
            words.extend(sub_alphabet_lassos(c.alphabet(), &subset, 2, 3).map_err(e)?);
        }
        words.extend(random_lassos(c.alphabet(), 500, 4, 5, k as u64));
        for w in &words {
            let v = cocoa_eval(&c, w).map_err(e)?;
            let r = run_deterministic(&d, w).map_err(e)?;
            ensure(
                r.accepted == v.member && r.dominating_color as usize == v.level,
                || format!("k={k}: disagreement on {}", w.display(c.alphabet())),
            )?;
        }
        checked += words.len();
    }
    Ok(format!(
        "2^k states for k<=5, fixture equivalent, {checked} lassos agree"
    ))
}

fn criterion_3() -> Outcome {
    for k in 1..=4 {
        let d = cocoa_to_dpw(&ck(k).map_err(e)?).map_err(e)?;
        let classes = residual_classes(&d).map_err(e)?;
        ensure(classes.len() == 1, || {
            format!("k={k}: {} classes", classes.len())
        })?;
    }
    Ok("one residual class for k=1..4".into())
}

fn criterion_4() -> Outcome {
    for k in 1..=4 {
        let classes = residual_classes(&pk(k).map_err(e)?).map_err(e)?;
        ensure(classes.len() == 1 << k, || {
            format!("k={k}: {} classes", classes.len())
        })?;
    }
    for k in 1..=3 {
        let d = cocoa_to_dpw(&lk(k).map_err(e)?).map_err(e)?;
        let v = dpw_equiv(&d, &pk(k).map_err(e)?).map_err(e)?;
        ensure(v.equivalent, || {
            format!("k={k}: counterexample {:?}", v.counterexample)
        })?;
    }
    Ok("2^k residuals for k=1..4, chain DPW equals P^k for k=1..3".into())
}

fn criterion_5() -> Outcome {
    let mut sizes = Vec::new();
    for k in [2, 4] {
        let a = lk(k).map_err(e)?;
        let b = lhat(k).map_err(e)?;
        let conj = cocoa_conjunction_gamma(&a, &b).map_err(e)?;
        let dc = cocoa_to_dpw(&conj).map_err(e)?;
        let da = cocoa_to_dpw(&a).map_err(e)?;
        let db = cocoa_to_dpw(&b).map_err(e)?;
        ensure(diff_nonempty(&[&dc], &[&da]).map_err(e)?.is_none(), || {
            format!("k={k}: conjunction not inside the first language")
        })?;
        ensure(diff_nonempty(&[&dc], &[&db]).map_err(e)?.is_none(), || {
            format!("k={k}: conjunction not inside the second language")
        })?;
        ensure(
            diff_nonempty(&[&da, &db], &[&dc]).map_err(e)?.is_none(),
            || format!("k={k}: intersection not inside the conjunction"),
        )?;
        let middle = conj.element(k);
        let classes = residual_classes(middle).map_err(e)?;
        ensure(classes.len() == 1 << k, || {
            format!("k={k}: element {k} has {} residual classes", classes.len())
        })?;
        sizes.push(format!(
            "k={k}: element {k} has {} states",
            middle.num_states()
        ));
    }
    Ok(format!(
        "languages match, 2^k residuals ({})",
        sizes.join(", ")
    ))
}

fn criterion_6() -> Outcome {
    let chains: Vec<(&str, Cocoa)> = vec![
        ("fig1", fig1()),
        ("L2", lk(2).map_err(e)?),
        ("minparity3", minparity_chain(3).map_err(e)?),
        ("comp2", comp_family(2).map_err(e)?),
    ];
    for (name, c) in &chains {
        let twice =
            cocoa_demorgan_complement(&cocoa_demorgan_complement(c).map_err(e)?).map_err(e)?;
        for w in sampled_lassos(c.alphabet(), 0, 300, 11) {
            ensure(
                cocoa_eval(c, &w).map_err(e)?.member == cocoa_eval(&twice, &w).map_err(e)?.member,
                || {
                    format!(
                        "{name}: double complement differs on {}",
                        w.display(c.alphabet())
                    )
                },
            )?;
        }
    }
    let a = lk(2).map_err(e)?;
    let b = lhat(2).map_err(e)?;
    let or = cocoa_demorgan_disjunction(&a, &b).map_err(e)?;
    let words = sampled_lassos(a.alphabet(), 4, 1000, 12);
    for w in &words {
        let expected = cocoa_eval(&a, w).map_err(e)?.member || cocoa_eval(&b, w).map_err(e)?.member;
        ensure(cocoa_eval(&or, w).map_err(e)?.member == expected, || {
            format!("disjunction wrong on {}", w.display(a.alphabet()))
        })?;
    }
    Ok(format!(
        "double complement and k=2 disjunction agree on {} lassos",
        words.len()
    ))
}

fn criterion_7() -> Outcome {
    let mut counts = Vec::new();
    for k in 1..=4 {
        let zero = l0hat(k).map_err(e)?;
        let classes = residual_classes(&zero).map_err(e)?.len();
        ensure(classes >= 1 << k, || {
            format!("k={k}: only {classes} residual classes")
        })?;
        let comp = comp_family(k).map_err(e)?;
        let d = cocoa_to_dpw(&comp).map_err(e)?;
        let common = diff_nonempty(&[&zero, &d], &[]).map_err(e)?;
        ensure(common.is_none(), || {
            format!(
                "k={k}: {} lies in both languages",
                common.unwrap().display(comp.alphabet())
            )
        })?;
        let report = check_chain(&comp).map_err(e)?;
        ensure(report.is_ok(), || {
            format!("k={k}: chain check failed: {report:?}")
        })?;
        counts.push(classes.to_string());
    }
    Ok(format!(
        "residual classes {} for k=1..4, disjoint, chains strict",
        counts.join("/")
    ))
}

fn criterion_8() -> Outcome {
    let n = ncw_fixture();
    let d = ncw_determinize(&n).map_err(e)?;
    ensure(d.num_states() <= 27, || {
        format!("{} states", d.num_states())
    })?;
    let mut count = 0;
    for w in all_lassos(n.alphabet(), 2, 3) {
        ensure(
            accepts_lasso_cobuchi(&n, &w).map_err(e)?
                == run_deterministic(&d, &w).map_err(e)?.accepted,
            || format!("disagreement on {}", w.display(n.alphabet())),
        )?;
        count += 1;
    }
    Ok(format!("{} states, {count} lassos agree", d.num_states()))
}

fn criterion_9() -> Outcome {
    for k in 1..=6 {
        let p = minparity_dpw(k).map_err(e)?;
        let c = minparity_chain(k).map_err(e)?;
        ensure(p.num_states() == 1 && p.colors().len() == k, || {
            format!("k={k}: bad DPW")
        })?;
        ensure(
            c.len() == k && c.elements().iter().all(|a| a.num_states() == 1),
            || format!("k={k}: bad chain"),
        )?;
        let d = cocoa_to_dpw(&c).map_err(e)?;
        ensure(dpw_equiv(&d, &p).map_err(e)?.equivalent, || {
            format!("k={k}: not equivalent")
        })?;
    }
    Ok("k=1..6".into())
}

fn criterion_10() -> Outcome {
    for k in [2, 3] {
        let d = cocoa_to_dpw(&ck(k).map_err(e)?).map_err(e)?;
        let names: Vec<&str> = d.alphabet().letters().iter().map(String::as_str).collect();
        let without = |skip: &str| -> Vec<Letter> {
            names
                .iter()
                .enumerate()
                .filter(|(_, n)| **n != skip)
                .map(|(i, _)| i)
                .collect()
        };
        let left = closed_subsccs(&d, &without("x1")).map_err(e)?;
        let right = closed_subsccs(&d, &without("y1")).map_err(e)?;
        let found = left.iter().any(|s| right.iter().any(|t| s.is_disjoint(t)));
        ensure(found, || {
            format!(
                "k={k}: {} and {} closed sub-SCCs, none disjoint",
                left.len(),
                right.len()
            )
        })?;
    }
    Ok("two disjoint closed sub-SCCs for k=2,3".into())
}

fn random_instance(rng: &mut ChaCha8Rng) -> (Automaton, Vec<StreettPair>) {
    let letters = rng.gen_range(1..=3);
    let states = rng.gen_range(1..=5);
    let alphabet = Alphabet::new((0..letters).map(|i| format!("l{i}"))).unwrap();
    let mut a = Automaton::new(alphabet, (0..states).map(|i| format!("s{i}"))).unwrap();
    for q in 0..states {
        for l in 0..letters {
            a.add_transition(q, l, rng.gen_range(0..states), rng.gen_range(0..=3));
        }
    }
    let mut pairs = if rng.gen_bool(0.5) {
        parity_to_streett(&a).unwrap()
    } else {
        Vec::new()
    };
    let all: Vec<Transition> = a.transitions().collect();
    while pairs.len() < 2 && rng.gen_bool(0.6) {
        pairs.push(StreettPair {
            lower: all.iter().copied().filter(|_| rng.gen_bool(0.4)).collect(),
            upper: all.iter().copied().filter(|_| rng.gen_bool(0.2)).collect(),
        });
    }
    pairs.truncate(2);
    (a, pairs)
}

/// Transitions taken infinitely often by the run from `q` on `period^ω`.
fn recurring(a: &Automaton, q: usize, period: &[Letter]) -> Vec<Transition> {
    let mut seen = vec![usize::MAX; a.num_states()];
    let mut trace = Vec::new();
    let mut cur = q;
    let mut it = 0;
    while seen[cur] == usize::MAX {
        seen[cur] = it;
        for &l in period {
            let (d, c) = a.step(cur, l);
            trace.push(Transition {
                src: cur,
                letter: l,
                dst: d,
                color: c,
            });
            cur = d;
        }
        it += 1;
    }
    trace[seen[cur] * period.len()..].to_vec()
}

fn satisfies(inf: &[Transition], pairs: &[StreettPair]) -> bool {
    pairs.iter().all(|p| {
        !inf.iter().any(|t| p.lower.contains(t)) || inf.iter().any(|t| p.upper.contains(t))
    })
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut nonempty, mut empty) = (0, 0);
    for i in 0..200 {
        let (a, pairs) = random_instance(&mut rng);
        match streett_nonempty(&a, &pairs).map_err(e)? {
            Some(w) => {
                let q = a.step_word(a.initial(), w.stem());
                ensure(satisfies(&recurring(&a, q, w.period()), &pairs), || {
                    format!(
                        "instance {i}: witness {} does not replay",
                        w.display(a.alphabet())
                    )
                })?;
                nonempty += 1;
            }
            None => {
                let letters: Vec<Letter> = (0..a.alphabet().len()).collect();
                let mut starts: Vec<usize> = words_up_to(&letters, 5)
                    .iter()
                    .map(|u| a.step_word(a.initial(), u))
                    .collect();
                starts.sort_unstable();
                starts.dedup();
                for v in words_up_to(&letters, 10).iter().filter(|v| !v.is_empty()) {
                    for &q in &starts {
                        ensure(!satisfies(&recurring(&a, q, v), &pairs), || {
                            format!("instance {i}: empty verdict but a lasso satisfies the pairs")
                        })?;
                    }
                }
                empty += 1;
            }
        }
    }
    Ok(format!(
        "200 instances: {nonempty} witnesses replayed, {empty} empty verdicts confirmed"
    ))
}

fn criterion_12() -> Outcome {
    let c = fig1();
    let reference = cocoa_to_dpw(&c).map_err(e)?;
    let w = lasso(c.alphabet(), "; c");
    let v = natural_color_probe(&reference, &w, 2, 4).map_err(e)?;
    ensure(v.certified_lower_bound == 3, || {
        format!("bound {}", v.certified_lower_bound)
    })?;
    ensure(
        replay_toggle_chain(&reference, &w, &v.steps())
            .map_err(e)?
            .is_some(),
        || "probe chain does not replay".into(),
    )?;
    let letter = |s: &str| c.alphabet().letter(s).unwrap();
    let (a, b) = (letter("a"), letter("b"));
    let textbook = [(0, vec![b]), (0, vec![b, b]), (0, vec![a, a])];
    ensure(
        replay_toggle_chain(&reference, &w, &textbook)
            .map_err(e)?
            .is_some(),
        || "chain b, bb, aa does not replay".into(),
    )?;
    let shown: Vec<String> = v
        .toggle_chain
        .iter()
        .map(|s| {
            s.injected
                .iter()
                .map(|&l| c.alphabet().name(l))
                .collect::<String>()
        })
        .collect();
    Ok(format!("bound 3 via {}", shown.join(", ")))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("example chain semantics", criterion_1),
        ("Ck parity automata", criterion_2),
        ("Ck single residual", criterion_3),
        ("Pk residuals and equivalence", criterion_4),
        ("level-pair conjunction", criterion_5),
        ("De Morgan operations", criterion_6),
        ("complement family", criterion_7),
        ("breakpoint determinization", criterion_8),
        ("min-parity family", criterion_9),
        ("closed sub-SCCs", criterion_10),
        ("Streett emptiness", criterion_11),
        ("natural-color probe", criterion_12),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} ({ms} ms)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
