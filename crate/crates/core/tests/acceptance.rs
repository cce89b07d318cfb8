//! Acceptance gate: runs every criterion and prints one PASS/FAIL line each.
//! Exits nonzero when any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lamplight_core::classify::{
    brute_force_units_pair, construct_witness, has_index2_ideal, is_realizable,
};
use lamplight_core::groupcheck::{
    check_basis_distinct, check_conjugation, check_spherical_transitivity, check_wreath_relations,
    find_annihilator, series_to_word, state_as_affine, word_to_series, AffineMap,
};
use lamplight_core::{
    build_af, minimize, GroupSpec, Mealy, RingElem, RingSpec, SeriesParams, TruncSeries,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(s: &str) -> Arc<RingSpec> {
    Arc::new(s.parse().expect("valid ring"))
}

fn params(spec: &str, r: &str, a: &str, b: &str) -> SeriesParams {
    SeriesParams::parse(ring(spec), r, a, b).expect("valid parameters")
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}.tsv", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn golden_edges(name: &str) -> BTreeSet<(String, String, String, String)> {
    golden(name)
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].into(), f[1].into(), f[2].into(), f[3].into())
        })
        .collect()
}

fn labelled_edges(m: &Mealy) -> BTreeSet<(String, String, String, String)> {
    m.edges()
        .map(|(q, x, y, p)| {
            (
                m.states()[q].clone(),
                m.alphabet()[x].clone(),
                m.alphabet()[y].clone(),
                m.states()[p].clone(),
            )
        })
        .collect()
}

fn compare_tables(m: &Mealy, transition: &str, output: &str) -> Result<usize, String> {
    let mut cells = 0;
    for (ours, theirs, what) in [
        (m.transition_tsv(), golden(transition), "transition"),
        (m.output_tsv(), golden(output), "output"),
    ] {
        let ours: Vec<&str> = ours.lines().collect();
        let theirs: Vec<&str> = theirs.lines().collect();
        ensure(ours.len() == theirs.len(), || {
            format!("{what}: row count differs")
        })?;
        for (i, (a, b)) in ours.iter().zip(&theirs).enumerate() {
            ensure(a == b, || {
                format!("{what} row {i}: got {a:?}, expected {b:?}")
            })?;
            if i > 0 {
                cells += a.split('\t').count() - 1;
            }
        }
    }
    Ok(cells)
}

fn criterion_1() -> Outcome {
    let p = params("zmod:3", "2", "2", "1");
    let expected = golden_edges("z3_edges");
    let mut best = Duration::MAX;
    let mut m = None;
    for _ in 0..20 {
        let start = Instant::now();
        let built = build_af(&p).map_err(|e| e.to_string())?;
        best = best.min(start.elapsed());
        m = Some(built);
    }
    let m = m.unwrap();
    let got = labelled_edges(&m);
    ensure(got == expected, || {
        format!(
            "edges differ: {:?}",
            got.symmetric_difference(&expected).collect::<Vec<_>>()
        )
    })?;
    ensure(expected.len() == 9, || {
        "reference list must have 9 edges".into()
    })?;
    ensure(best < Duration::from_millis(1), || {
        format!("build took {best:?}")
    })?;
    Ok(format!("9 edges match, build {best:?}"))
}

fn criterion_2() -> Outcome {
    let m = build_af(&params("zmod:9", "2", "1", "2")).map_err(|e| e.to_string())?;
    let cells = compare_tables(&m, "z9_transition", "z9_output")?;
    ensure(cells == 162, || format!("compared {cells} cells"))?;
    Ok("81 + 81 cells match".into())
}

fn criterion_3() -> Outcome {
    let m = build_af(&params("gr:2:2:2", "1", "1", "2+z")).map_err(|e| e.to_string())?;
    let cells = compare_tables(&m, "gr4_transition", "gr4_output")?;
    ensure(cells == 512, || format!("compared {cells} cells"))?;
    Ok("256 + 256 cells match, header order included".into())
}

fn criterion_4() -> Outcome {
    let m = build_af(&params("zmod:6", "1", "3", "2")).map_err(|e| e.to_string())?;
    let expected = golden_edges("z6_edges");
    ensure(expected.len() == 36, || {
        "reference list must have 36 edges".into()
    })?;
    ensure(labelled_edges(&m) == expected, || {
        "edges differ from the reference list".into()
    })?;
    ensure(!m.is_reversible().unwrap(), || {
        "automaton is reversible".into()
    })?;
    ensure(!m.invert().unwrap().is_reversible().unwrap(), || {
        "inverse is reversible".into()
    })?;
    for x in 0..6 {
        for s in 0..6 {
            for t in 0..6 {
                if s % 3 == t % 3 {
                    ensure(m.delta(s, x) == m.delta(t, x), || {
                        format!("delta_{x} separates {s} and {t}")
                    })?;
                }
            }
        }
    }
    Ok(
        "36 edges match, not reversible, inverse not reversible, delta_x constant on classes mod 3"
            .into(),
    )
}

/// Dual invertibility by collecting each column of the transition table.
fn columns_are_permutations(m: &Mealy) -> bool {
    (0..m.num_letters()).all(|x| {
        (0..m.num_states())
            .map(|q| m.delta(q, x))
            .collect::<HashSet<_>>()
            .len()
            == m.num_states()
    })
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut specs: Vec<String> = (2..=12).map(|n| format!("zmod:{n}")).collect();
    specs.extend(["gr:2:1:2", "gr:2:2:2", "gr:3:1:2"].map(String::from));
    let mut automata = 0;
    for spec in &specs {
        let r = ring(spec);
        let elems = r.enumerate().unwrap();
        let units: Vec<&RingElem> = elems.iter().filter(|x| r.is_unit(x)).collect();
        for &unit in &units {
            for a in &elems {
                for b in &elems {
                    if !r.is_unit(&r.sub(a, b).unwrap()) {
                        continue;
                    }
                    let p =
                        SeriesParams::new(r.clone(), unit.clone(), a.clone(), b.clone()).unwrap();
                    let m = build_af(&p).unwrap();
                    let inv = m.invert().unwrap();
                    let label = || {
                        format!(
                            "{spec} r={} a={} b={}",
                            r.render(unit),
                            r.render(a),
                            r.render(b)
                        )
                    };
                    let count = minimize(&m).num_states();
                    ensure(count as u128 == r.order(), || {
                        format!("{}: {count} minimal states", label())
                    })?;
                    let rev = m.is_reversible().unwrap();
                    ensure(rev == r.is_unit(b), || {
                        format!("{}: reversible = {rev}", label())
                    })?;
                    let inv_rev = inv.is_reversible().unwrap();
                    ensure(inv_rev == r.is_unit(a), || {
                        format!("{}: inverse reversible = {inv_rev}", label())
                    })?;
                    ensure(columns_are_permutations(&m) == rev, || {
                        format!("{}: dual check disagrees", label())
                    })?;
                    ensure(m.dual().is_invertible() == rev, || {
                        format!("{}: dual invertibility disagrees", label())
                    })?;
                    ensure(columns_are_permutations(&inv) == inv_rev, || {
                        format!("{}: inverse dual check disagrees", label())
                    })?;
                    automata += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("sweep took {elapsed:?}")
    })?;
    Ok(format!(
        "{automata} automata over {} rings in {elapsed:?}",
        specs.len()
    ))
}

fn random_elem(r: &RingSpec, rng: &mut ChaCha8Rng) -> RingElem {
    r.element(rng.gen_range(0..r.order())).unwrap()
}

fn criterion_6() -> Outcome {
    let families = [
        "zmod:3",
        "zmod:6",
        "zmod:9",
        "zmod:12",
        "gr:2:2:2",
        "gr:3:1:2",
        "gr:2:1:3",
        "zmod:3*gr:2:1:2",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for spec in families {
        let r = ring(spec);
        for _ in 0..1000 {
            let unit = loop {
                let x = random_elem(&r, &mut rng);
                if r.is_unit(&x) {
                    break x;
                }
            };
            let p = SeriesParams::new(
                r.clone(),
                unit,
                random_elem(&r, &mut rng),
                random_elem(&r, &mut rng),
            )
            .unwrap();
            let m = build_af(&p).unwrap();
            let q = rng.gen_range(0..m.num_states());
            let len = rng.gen_range(0..=12usize);
            let word: Vec<usize> = (0..len)
                .map(|_| rng.gen_range(0..m.num_letters()))
                .collect();
            let run = m.run(q, &word).unwrap();
            let series = if len == 0 {
                Vec::new()
            } else {
                let s = r.element(q as u128).unwrap();
                let map = state_as_affine(&p, &s, len - 1).unwrap();
                series_to_word(&map.apply(&word_to_series(&r, &word).unwrap()).unwrap())
            };
            ensure(run == series, || {
                format!("{spec}: state {q} word {word:?}: run {run:?} vs series {series:?}")
            })?;
        }
    }
    Ok(format!("{} x 1000 samples agree exactly", families.len()))
}

fn criterion_7() -> Outcome {
    let sets = [
        params("zmod:3", "2", "2", "1"),
        params("zmod:9", "2", "1", "2"),
        params("zmod:6", "1", "3", "2"),
        params("gr:2:2:2", "1", "1", "2+z"),
    ];
    let (depth, level) = (8, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut orbits = Vec::new();
    for p in &sets {
        let r = p.ring();
        let name = r.to_string();
        for _ in 0..20 {
            let coeffs = (0..=depth).map(|_| random_elem(r, &mut rng)).collect();
            let h = TruncSeries::new(r.clone(), coeffs).unwrap();
            ensure(check_conjugation(p, &h).unwrap(), || {
                format!("{name}: conjugation fails for {h}")
            })?;
        }
        let w = check_wreath_relations(p, depth).map_err(|e| e.to_string())?;
        ensure(w.lamps_additive, || format!("{name}: relation (i) fails"))?;
        ensure(w.shift, || format!("{name}: relation (ii) fails"))?;
        ensure(w.order_bound_met(), || {
            format!("{name}: mu_f has order {:?}", w.mu_order)
        })?;
        for d in 0..=2 {
            ensure(
                check_basis_distinct(p, d).map_err(|e| e.to_string())?,
                || format!("{name}: basis collides at d={d}"),
            )?;
        }
        let t = check_spherical_transitivity(p, level).map_err(|e| e.to_string())?;
        ensure(t.is_transitive(), || {
            format!("{name}: orbit {} of {}", t.orbit_size, t.level_size)
        })?;
        orbits.push(format!("{name}:{}", t.orbit_size));
    }
    Ok(format!(
        "all relations hold at depth {depth}; level-{level} orbits {}",
        orbits.join(" ")
    ))
}

fn criterion_8() -> Outcome {
    let p = params("zmod:4", "1", "2", "0");
    for d in 1..=10 {
        let mu = AffineMap::multiplication(p.expand_f(d)).unwrap();
        ensure(mu.order(64) == Some(2), || {
            format!("depth {d}: order {:?}", mu.order(64))
        })?;
    }
    let s = find_annihilator(&p, 10).unwrap();
    ensure(s == Some(RingElem::Mod(2)), || format!("annihilator {s:?}"))?;
    let count = minimize(&build_af(&p).unwrap()).num_states();
    ensure(count < 4, || format!("{count} minimal states"))?;
    Ok(format!(
        "order 2 at depths 1..=10, annihilator 2, {count} minimal states"
    ))
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    out
}

/// Every abelian group of order `n`, as lists of cyclic orders.
fn abelian_groups(n: u64) -> Vec<Vec<u64>> {
    let mut groups = vec![vec![]];
    for (p, k) in prime_factors(n) {
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(k, k) {
                let mut h = g.clone();
                h.extend(part.iter().map(|&e| p.pow(e)));
                next.push(h);
            }
        }
        groups = next;
    }
    groups
}

/// Multiplicity of `Z/2^i` from the ranks of the 2^i-torsion subgroups.
fn two_multiplicities(orders: &[u64]) -> Vec<i64> {
    let rank = |i: u32| -> i64 {
        orders
            .iter()
            .map(|&q| i64::from(q.trailing_zeros().min(i)))
            .sum()
    };
    (1..=7)
        .map(|i| 2 * rank(i) - rank(i - 1) - rank(i + 1))
        .collect()
}

/// Number of elements killed by `k`, computed by repeated addition.
fn killed_by(r: &RingSpec, k: u64) -> usize {
    r.enumerate()
        .unwrap()
        .iter()
        .filter(|x| {
            let mut acc = r.zero();
            for _ in 0..k {
                acc = r.add(&acc, x).unwrap();
            }
            acc == r.zero()
        })
        .count()
}

fn constructible_rings(max_order: u128) -> Vec<RingSpec> {
    let mut atoms: Vec<RingSpec> = (2..=max_order as u64)
        .map(|n| RingSpec::zmod(n).unwrap())
        .collect();
    for (p, m, r) in [
        (2, 1, 2),
        (2, 1, 3),
        (2, 1, 4),
        (2, 1, 5),
        (2, 2, 2),
        (3, 1, 2),
        (5, 1, 2),
    ] {
        let g = RingSpec::galois(p, m, r).unwrap();
        if g.order() <= max_order {
            atoms.push(g);
        }
    }
    let mut out = Vec::new();
    fn extend(
        atoms: &[RingSpec],
        from: usize,
        acc: Vec<RingSpec>,
        order: u128,
        max: u128,
        out: &mut Vec<RingSpec>,
    ) {
        if !acc.is_empty() {
            out.push(RingSpec::product(acc.clone()).unwrap());
        }
        for i in from..atoms.len() {
            let o = order * atoms[i].order();
            if o <= max {
                let mut next = acc.clone();
                next.push(atoms[i].clone());
                extend(atoms, i, next, o, max, out);
            }
        }
    }
    extend(&atoms, 0, Vec::new(), 1, max_order, &mut out);
    out
}

fn criterion_9() -> Outcome {
    let mut groups = 0;
    let mut realizable = 0;
    for n in 2..=64u64 {
        for orders in abelian_groups(n) {
            let g = GroupSpec::from_cyclic_orders(orders.clone()).unwrap();
            let expected = two_multiplicities(&orders).iter().all(|&a| a != 1);
            ensure(is_realizable(&g) == expected, || {
                format!("{g}: realizability")
            })?;
            let res = construct_witness(&g).map_err(|e| e.to_string())?;
            ensure(res.realizable == expected, || format!("{g}: witness flag"))?;
            groups += 1;
            if let Some(w) = res.witness {
                realizable += 1;
                ensure(w.is_valid(), || format!("{g}: witness units fail"))?;
                ensure(w.ring.additive_group() == g, || {
                    format!("{g}: witness has group {}", w.ring.additive_group())
                })?;
                // torsion counts pin down the group independently
                for (p, _) in prime_factors(n) {
                    let mut pk = 1;
                    while pk <= 64 {
                        pk *= p;
                        let want: u64 = orders.iter().map(|&q| gcd(q, pk)).product();
                        let got = killed_by(&w.ring, pk) as u64;
                        ensure(got == want, || {
                            format!("{g}: {got} elements killed by {pk}, expected {want}")
                        })?;
                    }
                }
            } else {
                ensure(!expected, || format!("{g}: missing witness"))?;
            }
        }
    }
    for n in 2..=64u64 {
        let found = brute_force_units_pair(&RingSpec::zmod(n).unwrap())
            .unwrap()
            .is_some();
        ensure(found == (n % 2 == 1), || {
            format!("zmod:{n}: pair found = {found}")
        })?;
    }
    let rings = constructible_rings(32);
    for r in &rings {
        let pair = brute_force_units_pair(r).unwrap().is_some();
        let ideal = has_index2_ideal(r).unwrap();
        ensure(ideal == !pair, || {
            format!("{r}: index-2 ideal = {ideal}, unit pair = {pair}")
        })?;
    }
    Ok(format!(
        "{groups} groups ({realizable} realizable), zmod:2..=64, {} rings of order <= 32",
        rings.len()
    ))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "Z/3 edges", criterion_1),
        (2, "Z/9 tables", criterion_2),
        (3, "GR(4,2) tables", criterion_3),
        (4, "Z/6 edges and negative predicates", criterion_4),
        (5, "reversibility sweep", criterion_5),
        (6, "run vs affine oracle", criterion_6),
        (7, "group structure suite", criterion_7),
        (8, "degenerate Z/4 witness", criterion_8),
        (9, "classification", criterion_9),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        match std::panic::catch_unwind(f) {
            Ok(Ok(detail)) => println!("criterion {n}: PASS  {name}: {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("criterion {n}: FAIL  {name}: {why}");
            }
            Err(_) => {
                failed += 1;
                println!("criterion {n}: FAIL  {name}: panicked");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
