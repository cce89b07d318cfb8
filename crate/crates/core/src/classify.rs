//! Which finite abelian groups are the additive group of a finite
//! commutative ring with two units whose difference is a unit.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{check_budget, Error, Result};
use crate::group::GroupSpec;
use crate::ring::{RingElem, RingSpec};
use crate::series::SeriesParams;

/// A ring together with units `a`, `b` such that `a - b` is a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub ring: RingSpec,
    pub a: RingElem,
    pub b: RingElem,
}

impl Witness {
    /// Parameters `r = 1` with the witness units, ready for `build_af`.
    pub fn params(&self) -> SeriesParams {
        let ring = Arc::new(self.ring.clone());
        SeriesParams::new(ring.clone(), ring.one(), self.a.clone(), self.b.clone())
            .expect("witness elements belong to the ring")
    }

    /// `a`, `b` and `a - b` are all units.
    pub fn is_valid(&self) -> bool {
        let r = &self.ring;
        r.is_unit(&self.a)
            && r.is_unit(&self.b)
            && r.sub(&self.a, &self.b)
                .map(|d| r.is_unit(&d))
                .unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizabilityResult {
    pub realizable: bool,
    pub witness: Option<Witness>,
}

impl RealizabilityResult {
    pub fn to_json(&self) -> Value {
        match &self.witness {
            None => json!({ "realizable": self.realizable, "witness": null }),
            Some(w) => json!({
                "realizable": self.realizable,
                "witness": {
                    "ring": w.ring.to_string(),
                    "a": w.ring.render(&w.a),
                    "b": w.ring.render(&w.b),
                },
            }),
        }
    }
}

/// True iff no cyclic factor `Z/2^i` occurs exactly once.
pub fn is_realizable(g: &GroupSpec) -> bool {
    g.iter().all(|(q, count)| q % 2 == 1 || count != 1)
}

/// Builds a witness ring: `Z/p^k` for every odd cyclic factor and one
/// Galois ring `GR(2^m, c)` for each factor `Z/2^m` of multiplicity `c`.
/// Units are `a = 1` with `b = -1` on odd factors and `b = z` on Galois
/// factors.
///
/// The trivial group is rejected since every ring here has `1 != 0`.
pub fn construct_witness(g: &GroupSpec) -> Result<RealizabilityResult> {
    if g.is_trivial() {
        return Err(Error::PreconditionFailed(
            "the trivial group has no witness ring".into(),
        ));
    }
    if !is_realizable(g) {
        return Ok(RealizabilityResult {
            realizable: false,
            witness: None,
        });
    }
    let mut factors = Vec::new();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (q, count) in g.iter() {
        if q % 2 == 1 {
            for _ in 0..count {
                factors.push(RingSpec::zmod(q)?);
                a.push(RingElem::Mod(1));
                b.push(RingElem::Mod(q - 1));
            }
        } else {
            let m = q.trailing_zeros();
            factors.push(RingSpec::galois(2, m, count)?);
            let mut z = vec![0; count];
            z[1] = 1;
            let mut one = vec![0; count];
            one[0] = 1;
            a.push(RingElem::Poly(one));
            b.push(RingElem::Poly(z));
        }
    }
    let (a, b) = if factors.len() == 1 {
        (a.pop().unwrap(), b.pop().unwrap())
    } else {
        (RingElem::Tuple(a), RingElem::Tuple(b))
    };
    let ring = RingSpec::product(factors)?;
    Ok(RealizabilityResult {
        realizable: true,
        witness: Some(Witness { ring, a, b }),
    })
}

/// First ordered pair of units `(a, b)` in enumeration order with `a - b` a
/// unit.
///
/// If any pair exists then one exists for every choice of `a` (scale by
/// `a/a'`), so only the first unit needs to be tried as `a`.
pub fn brute_force_units_pair(spec: &RingSpec) -> Result<Option<(RingElem, RingElem)>> {
    let elems = spec.enumerate()?;
    let mut units = elems.iter().filter(|x| spec.is_unit_raw(x));
    let Some(a) = units.next() else {
        return Ok(None);
    };
    let found = elems
        .iter()
        .filter(|b| spec.is_unit_raw(b))
        .find(|b| spec.is_unit_raw(&spec.sub_raw(a, b)));
    Ok(found.map(|b| (a.clone(), b.clone())))
}

/// True iff some additive subgroup of index 2 is an ideal.
///
/// Index-2 subgroups are kernels of nonzero additive maps `phi: R -> Z/2`,
/// given by a parity bit on each even-order coordinate. The kernel is an
/// ideal iff for every additive generator `g`, the map `x -> phi(g x)` is
/// either zero or `phi` itself.
pub fn has_index2_ideal(spec: &RingSpec) -> Result<bool> {
    check_budget(spec.order())?;
    let gens = spec.additive_generators();
    let moduli: Vec<u64> = spec
        .coordinates(&spec.zero())
        .iter()
        .map(|&(_, n)| n)
        .collect();
    let even: Vec<usize> = (0..moduli.len())
        .filter(|&i| moduli[i].is_multiple_of(2))
        .collect();
    if even.is_empty() {
        return Ok(false);
    }
    // products[g][e] = coordinates of gens[g] * gens[e]
    let products: Vec<Vec<Vec<u64>>> = gens
        .iter()
        .map(|g| {
            gens.iter()
                .map(|e| {
                    spec.coordinates(&spec.mul_raw(g, e))
                        .into_iter()
                        .map(|(v, _)| v)
                        .collect()
                })
                .collect()
        })
        .collect();
    let phi = |mask: u64, coords: &[u64]| -> u64 {
        even.iter()
            .enumerate()
            .filter(|(bit, _)| mask >> bit & 1 == 1)
            .map(|(_, &i)| coords[i] & 1)
            .sum::<u64>()
            & 1
    };
    for mask in 1u64..(1 << even.len()) {
        let on_gens: Vec<u64> = (0..gens.len())
            .map(|e| {
                u64::from(
                    even.iter()
                        .position(|&i| i == e)
                        .is_some_and(|bit| mask >> bit & 1 == 1),
                )
            })
            .collect();
        let closed = products.iter().all(|row| {
            let twisted: Vec<u64> = row.iter().map(|c| phi(mask, c)).collect();
            twisted.iter().all(|&v| v == 0) || twisted == on_gens
        });
        if closed {
            return Ok(true);
        }
    }
    Ok(false)
}
