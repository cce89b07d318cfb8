use super::Mealy;
use crate::error::Result;
use crate::series::SeriesParams;

/// The automaton `A_f` with states and letters both indexed by the ring in
/// enumeration order: state `s` reads `x`, writes `r(x + (b - a)s)` and moves
/// to `sb + x`.
///
/// The state set is all of `R` even when `a - b` is not a unit, in which case
/// distinct states may define the same tree automorphism.
pub fn build_af(params: &SeriesParams) -> Result<Mealy> {
    let ring = params.ring();
    let elems = ring.enumerate()?;
    let n = elems.len();
    let b_minus_a = ring.sub_raw(params.b(), params.a());
    let mut delta = Vec::with_capacity(n * n);
    let mut lambda = Vec::with_capacity(n * n);
    for s in &elems {
        let sb = ring.mul_raw(s, params.b());
        let shift = ring.mul_raw(&b_minus_a, s);
        for x in &elems {
            delta.push(ring.index_raw(&ring.add_raw(&sb, x)) as usize);
            let out = ring.mul_raw(params.r(), &ring.add_raw(x, &shift));
            lambda.push(ring.index_raw(&out) as usize);
        }
    }
    let labels: Vec<String> = elems.iter().map(|e| ring.render(e)).collect();
    Mealy::new(labels.clone(), labels, delta, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn af(ring: &str, r: &str, a: &str, b: &str) -> Mealy {
        let ring = Arc::new(ring.parse().unwrap());
        build_af(&SeriesParams::parse(ring, r, a, b).unwrap()).unwrap()
    }

    fn edge(m: &Mealy, s: &str, x: &str) -> (String, String) {
        let (q, l) = (m.state_index(s).unwrap(), m.letter_index(x).unwrap());
        (
            m.alphabet()[m.lambda(q, l)].clone(),
            m.states()[m.delta(q, l)].clone(),
        )
    }

    #[test]
    fn reference_edges() {
        let m = af("zmod:3", "2", "2", "1");
        assert_eq!(edge(&m, "0", "2"), ("1".into(), "2".into()));
        assert_eq!(edge(&m, "1", "0"), ("1".into(), "1".into()));
        let m = af("zmod:6", "1", "3", "2");
        assert_eq!(edge(&m, "5", "0"), ("1".into(), "4".into()));
    }

    #[test]
    fn table_cells() {
        let m = af("zmod:9", "2", "1", "2");
        assert_eq!(edge(&m, "3", "0"), ("6".into(), "6".into()));
        let m = af("gr:2:2:2", "1", "1", "2+z");
        assert_eq!(edge(&m, "z", "0"), ("3".into(), "3+z".into()));
    }

    #[test]
    fn always_invertible() {
        for (ring, r, a, b) in [
            ("zmod:4", "1", "2", "0"),
            ("zmod:6", "5", "0", "0"),
            ("gr:2:1:2", "z", "1", "z"),
        ] {
            assert!(af(ring, r, a, b).is_invertible());
        }
    }
}
