use std::sync::Arc;

use lamplight_core::groupcheck::{
    check_basis_distinct, check_conjugation, check_spherical_transitivity, find_annihilator,
    AffineMap,
};
use lamplight_core::{build_af, minimize, Mealy, RingElem, RingSpec, SeriesParams, TruncSeries};
use proptest::prelude::*;

const RINGS: &[&str] = &[
    "zmod:2",
    "zmod:3",
    "zmod:4",
    "zmod:6",
    "zmod:8",
    "zmod:9",
    "zmod:12",
    "gr:2:1:2",
    "gr:2:2:2",
    "gr:3:1:2",
    "gr:2:1:3",
    "zmod:3*gr:2:1:2",
    "zmod:2*zmod:4",
];

fn ring_strategy() -> impl Strategy<Value = Arc<RingSpec>> {
    prop::sample::select(RINGS).prop_map(|s| Arc::new(s.parse::<RingSpec>().unwrap()))
}

fn elem(r: &RingSpec, i: u64) -> RingElem {
    r.element(u128::from(i) % r.order()).unwrap()
}

fn unit(r: &RingSpec, i: u64) -> RingElem {
    let units: Vec<RingElem> = r
        .enumerate()
        .unwrap()
        .into_iter()
        .filter(|x| r.is_unit(x))
        .collect();
    units[i as usize % units.len()].clone()
}

/// A ring with random parameters `(r, a, b)`.
fn params_strategy() -> impl Strategy<Value = SeriesParams> {
    (ring_strategy(), any::<u64>(), any::<u64>(), any::<u64>()).prop_map(|(ring, r, a, b)| {
        let (r, a, b) = (unit(&ring, r), elem(&ring, a), elem(&ring, b));
        SeriesParams::new(ring, r, a, b).unwrap()
    })
}

fn word(m: &Mealy, seeds: &[u64]) -> Vec<usize> {
    seeds
        .iter()
        .map(|&s| s as usize % m.num_letters())
        .collect()
}

/// Schoolbook product in `(Z/p^m)[x]/(Q)`, independent of the library's
/// reduction code.
fn naive_galois_mul(pm: u64, low: &[u64], x: &[u64], y: &[u64]) -> Vec<u64> {
    let r = low.len();
    let mut prod = vec![0u64; 2 * r];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % pm;
        }
    }
    // x^r = -(low_0 + low_1 x + ... )
    for k in (r..2 * r).rev() {
        let c = prod[k];
        prod[k] = 0;
        for (i, l) in low.iter().enumerate() {
            prod[k - r + i] = (prod[k - r + i] + (pm - l % pm) * c) % pm;
        }
    }
    prod.truncate(r);
    prod
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(r in ring_strategy(), i in any::<u64>(), j in any::<u64>(), k in any::<u64>()) {
        let (x, y, z) = (elem(&r, i), elem(&r, j), elem(&r, k));
        prop_assert_eq!(r.add(&x, &y).unwrap(), r.add(&y, &x).unwrap());
        prop_assert_eq!(r.mul(&x, &y).unwrap(), r.mul(&y, &x).unwrap());
        let xy_z = r.mul(&r.mul(&x, &y).unwrap(), &z).unwrap();
        prop_assert_eq!(xy_z, r.mul(&x, &r.mul(&y, &z).unwrap()).unwrap());
        let lhs = r.mul(&x, &r.add(&y, &z).unwrap()).unwrap();
        let rhs = r.add(&r.mul(&x, &y).unwrap(), &r.mul(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(r.add(&x, &r.neg(&x).unwrap()).unwrap(), r.zero());
        prop_assert_eq!(r.mul(&x, &r.one()).unwrap(), x.clone());
        if r.is_unit(&x) {
            prop_assert_eq!(r.mul(&x, &r.inverse(&x).unwrap()).unwrap(), r.one());
        } else {
            prop_assert!(r.inverse(&x).is_err());
        }
    }

    #[test]
    fn unit_test_matches_search(r in ring_strategy(), i in any::<u64>()) {
        let x = elem(&r, i);
        let has_inverse = r.enumerate().unwrap().iter().any(|y| r.mul(&x, y).unwrap() == r.one());
        prop_assert_eq!(r.is_unit(&x), has_inverse);
    }

    #[test]
    fn galois_product_matches_schoolbook(i in any::<u64>(), j in any::<u64>(), which in 0usize..4) {
        let spec = ["gr:2:2:2", "gr:3:1:2", "gr:2:1:3", "gr:2:2:3"][which];
        let r: RingSpec = spec.parse().unwrap();
        let RingSpec::Galois(g) = &r else { unreachable!() };
        let (x, y) = (elem(&r, i), elem(&r, j));
        let (RingElem::Poly(xc), RingElem::Poly(yc)) = (&x, &y) else { unreachable!() };
        let expected = naive_galois_mul(g.pm(), g.modulus(), xc, yc);
        prop_assert_eq!(r.mul(&x, &y).unwrap(), RingElem::Poly(expected));
    }

    #[test]
    fn element_text_round_trips(r in ring_strategy(), i in any::<u64>()) {
        let x = elem(&r, i);
        prop_assert_eq!(r.parse_elem(&r.render(&x)).unwrap(), x.clone());
        prop_assert_eq!(r.element(r.index_of(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn series_inverse_and_shift(p in params_strategy(), depth in 1usize..10) {
        let ring = p.ring().clone();
        let f = p.expand_f(depth);
        prop_assert!(f.mul(&f.invert().unwrap()).unwrap().is_one());
        prop_assert_eq!(p.expand_f_inverse(depth), f.invert().unwrap());
        // sigma(f) = bf - ra, one degree shallower
        let shallower = p.expand_f(depth - 1);
        let ra = TruncSeries::constant(ring.clone(), ring.mul(p.r(), p.a()).unwrap(), depth - 1).unwrap();
        let rhs = shallower.scale(p.b()).unwrap().sub(&ra).unwrap();
        prop_assert_eq!(f.shift().unwrap(), rhs);
    }

    #[test]
    fn run_invert_round_trip(p in params_strategy(), q in any::<u64>(), seeds in prop::collection::vec(any::<u64>(), 0..=12)) {
        let m = build_af(&p).unwrap();
        let inv = m.invert().unwrap();
        let q = q as usize % m.num_states();
        let w = word(&m, &seeds);
        let image = m.run(q, &w).unwrap();
        prop_assert_eq!(image.len(), w.len());
        prop_assert_eq!(inv.run(q, &image).unwrap(), w);
    }

    #[test]
    fn prefixes_are_preserved(p in params_strategy(), q in any::<u64>(), seeds in prop::collection::vec(any::<u64>(), 0..=12), cut in any::<prop::sample::Index>()) {
        let m = build_af(&p).unwrap();
        let q = q as usize % m.num_states();
        let w = word(&m, &seeds);
        let k = cut.index(w.len() + 1);
        let whole = m.run(q, &w).unwrap();
        prop_assert_eq!(&whole[..k], &m.run(q, &w[..k]).unwrap()[..]);
    }

    #[test]
    fn minimize_is_idempotent_and_faithful(p in params_strategy(), seeds in prop::collection::vec(any::<u64>(), 0..=8)) {
        let m = build_af(&p).unwrap();
        let classes = lamplight_core::automaton::state_classes(&m);
        let min = minimize(&m);
        prop_assert_eq!(minimize(&min), min.clone());
        let w = word(&m, &seeds);
        for (q, &class) in classes.iter().enumerate() {
            prop_assert_eq!(m.run(q, &w).unwrap(), min.run(class, &w).unwrap());
        }
    }

    #[test]
    fn dual_is_an_involution(p in params_strategy()) {
        let m = build_af(&p).unwrap();
        prop_assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn affine_group_laws(p in params_strategy(), s in any::<u64>(), t in any::<u64>(), u in any::<u64>(), g in prop::collection::vec(any::<u64>(), 6)) {
        let ring = p.ring();
        let depth = 5;
        let maps: Vec<AffineMap> = [s, t, u]
            .iter()
            .map(|&i| lamplight_core::groupcheck::state_as_affine(&p, &elem(ring, i), depth).unwrap())
            .collect();
        let (x, y, z) = (&maps[0], &maps[1], &maps[2]);
        prop_assert_eq!(x.compose(y).unwrap().compose(z).unwrap(), x.compose(&y.compose(z).unwrap()).unwrap());
        let g = TruncSeries::new(ring.clone(), g.iter().map(|&i| elem(ring, i)).collect()).unwrap();
        prop_assert_eq!(x.compose(y).unwrap().apply(&g).unwrap(), x.apply(&y.apply(&g).unwrap()).unwrap());
        prop_assert_eq!(x.inverse().unwrap().apply(&x.apply(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn conjugation_identity(p in params_strategy(), h in prop::collection::vec(any::<u64>(), 11)) {
        let ring = p.ring();
        let h = TruncSeries::new(ring.clone(), h.iter().map(|&i| elem(ring, i)).collect()).unwrap();
        prop_assert!(check_conjugation(&p, &h).unwrap());
    }

    #[test]
    fn annihilator_iff_difference_not_unit(p in params_strategy(), depth in 0usize..6) {
        let found = find_annihilator(&p, depth).unwrap();
        prop_assert_eq!(found.is_some(), !p.difference_is_unit());
        if let Some(s) = found {
            for m in -(depth as i64)..=depth as i64 {
                prop_assert!(p.basis_element(m, depth).scale(&s).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn basis_distinct_iff_difference_is_unit() {
    for spec in [
        "zmod:2", "zmod:3", "zmod:4", "zmod:6", "zmod:8", "zmod:9", "gr:2:1:2", "gr:2:1:3",
        "gr:3:1:2",
    ] {
        let ring: Arc<RingSpec> = Arc::new(spec.parse().unwrap());
        let elems = ring.enumerate().unwrap();
        let r = unit(&ring, 1);
        for a in &elems {
            for b in &elems {
                let p = SeriesParams::new(ring.clone(), r.clone(), a.clone(), b.clone()).unwrap();
                assert!(check_basis_distinct(&p, 0).unwrap());
                for d in 1..=2 {
                    assert_eq!(
                        check_basis_distinct(&p, d).unwrap(),
                        p.difference_is_unit(),
                        "{spec} a={a:?} b={b:?} d={d}"
                    );
                }
            }
        }
    }
}

#[test]
fn bireversible_parameters_are_spherically_transitive() {
    for spec in [
        "zmod:3", "zmod:5", "zmod:9", "zmod:15", "gr:2:1:2", "gr:2:2:2", "gr:3:1:2",
    ] {
        let ring: Arc<RingSpec> = Arc::new(spec.parse().unwrap());
        let elems = ring.enumerate().unwrap();
        let mut tested = 0;
        for a in elems.iter().filter(|x| ring.is_unit(x)) {
            for b in elems.iter().filter(|x| ring.is_unit(x)) {
                let p = SeriesParams::new(ring.clone(), ring.one(), a.clone(), b.clone()).unwrap();
                if !p.difference_is_unit() || tested >= 6 {
                    continue;
                }
                tested += 1;
                for level in 0..=3 {
                    let t = check_spherical_transitivity(&p, level).unwrap();
                    assert!(t.is_transitive(), "{spec} a={a:?} b={b:?} level {level}");
                }
            }
        }
        assert!(tested > 0, "{spec}");
    }
}
