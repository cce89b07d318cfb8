//! Finite-depth checks that the group generated by `A_f` has lamplighter
//! structure.
//!
//! A word `x_0 x_1 ... x_d` is identified with the series
//! `x_0 + x_1 t + ... + x_d t^d`. A map of depth `d` therefore acts on words
//! of length `d + 1`.

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::automaton::{build_af, DocumentParams};
use crate::error::{check_budget, Error, Result};
use crate::ring::{RingElem, RingSpec};
use crate::series::{SeriesParams, TruncSeries};

/// The map `g -> u*g + h` on truncated series, with `u` a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    multiplier: TruncSeries,
    translation: TruncSeries,
}

impl AffineMap {
    pub fn new(multiplier: TruncSeries, translation: TruncSeries) -> Result<Self> {
        multiplier.sub(&translation)?;
        let ring = multiplier.ring();
        if !ring.is_unit(multiplier.coeff(0)) {
            return Err(Error::NotAUnit(ring.render(multiplier.coeff(0))));
        }
        Ok(Self {
            multiplier,
            translation,
        })
    }

    pub fn identity(ring: Arc<RingSpec>, depth: usize) -> Self {
        Self {
            multiplier: TruncSeries::one(ring.clone(), depth),
            translation: TruncSeries::zero(ring, depth),
        }
    }

    /// `mu_u: g -> u*g`.
    pub fn multiplication(u: TruncSeries) -> Result<Self> {
        let zero = TruncSeries::zero(u.ring().clone(), u.depth());
        Self::new(u, zero)
    }

    /// `alpha_h: g -> g + h`.
    pub fn translation_by(h: TruncSeries) -> Self {
        Self {
            multiplier: TruncSeries::one(h.ring().clone(), h.depth()),
            translation: h,
        }
    }

    pub fn multiplier(&self) -> &TruncSeries {
        &self.multiplier
    }

    pub fn translation(&self) -> &TruncSeries {
        &self.translation
    }

    pub fn depth(&self) -> usize {
        self.multiplier.depth()
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.multiplier.ring()
    }

    pub fn apply(&self, g: &TruncSeries) -> Result<TruncSeries> {
        self.multiplier.mul(g)?.add(&self.translation)
    }

    /// `self ∘ other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            multiplier: self.multiplier.mul(&other.multiplier)?,
            translation: self
                .multiplier
                .mul(&other.translation)?
                .add(&self.translation)?,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let u_inv = self.multiplier.invert()?;
        let translation = u_inv.mul_raw(&self.translation).neg();
        Ok(Self {
            multiplier: u_inv,
            translation,
        })
    }

    /// The same map restricted to shorter words.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        Ok(Self {
            multiplier: self.multiplier.truncate(depth)?,
            translation: self.translation.truncate(depth)?,
        })
    }

    /// The section at a first-level letter `x`:
    /// `g -> u*g + sigma(u)*x + sigma(h)`, one degree shallower.
    pub fn section(&self, x: &RingElem) -> Result<Self> {
        let su = self.multiplier.shift()?;
        let translation = su.scale(x)?.add(&self.translation.shift()?)?;
        Ok(Self {
            multiplier: self.multiplier.truncate(su.depth())?,
            translation,
        })
    }

    /// The section at a word, taking one letter at a time. The map must be
    /// deeper than the word is long.
    pub fn section_at_word(&self, word: &[RingElem]) -> Result<Self> {
        let mut m = self.clone();
        for x in word {
            m = m.section(x)?;
        }
        Ok(m)
    }

    /// Image of the first letter.
    fn first_letter(&self, x: &RingElem) -> Result<RingElem> {
        let ring = self.ring();
        ring.add(
            &ring.mul(self.multiplier.coeff(0), x)?,
            self.translation.coeff(0),
        )
    }

    /// Image of a word of length at most `depth + 1`.
    pub fn apply_word(&self, word: &[RingElem]) -> Result<Vec<RingElem>> {
        if word.is_empty() {
            return Ok(Vec::new());
        }
        let short = self.truncate(word.len() - 1)?;
        let g = TruncSeries::new(self.ring().clone(), word.to_vec())?;
        Ok(short.apply(&g)?.coeffs().to_vec())
    }

    /// Smallest `k` in `1..=limit` with `self^k` the identity.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let id = Self::identity(self.ring().clone(), self.depth());
        let mut power = self.clone();
        for k in 1..=limit {
            if power == id {
                return Some(k);
            }
            power = power.compose(self).expect("same ring and depth");
        }
        None
    }
}

pub fn affine_apply(m: &AffineMap, g: &TruncSeries) -> Result<TruncSeries> {
    m.apply(g)
}

pub fn affine_compose(m1: &AffineMap, m2: &AffineMap) -> Result<AffineMap> {
    m1.compose(m2)
}

pub fn affine_inverse(m: &AffineMap) -> Result<AffineMap> {
    m.inverse()
}

/// Coefficients as letter indices in enumeration order.
pub fn series_to_word(g: &TruncSeries) -> Vec<usize> {
    g.coeffs()
        .iter()
        .map(|c| g.ring().index_raw(c) as usize)
        .collect()
}

/// The series whose coefficients are the letters of a non-empty word.
pub fn word_to_series(ring: &Arc<RingSpec>, word: &[usize]) -> Result<TruncSeries> {
    let coeffs = word
        .iter()
        .map(|&x| ring.element(x as u128))
        .collect::<Result<Vec<_>>>()?;
    TruncSeries::new(ring.clone(), coeffs)
}

/// State `s` of `A_f` as the affine map `alpha_{-sra} mu_f alpha_{sb}`,
/// whose multiplier is `f` and translation `s(-ar + bf)`.
pub fn state_as_affine(params: &SeriesParams, s: &RingElem, depth: usize) -> Result<AffineMap> {
    let translation = params.basis_generator(depth).scale(s)?;
    AffineMap::new(params.expand_f(depth), translation)
}

/// `mu_f alpha_h mu_f^{-1} = alpha_{fh}`, compared as affine maps at the
/// depth of `h`.
pub fn check_conjugation(params: &SeriesParams, h: &TruncSeries) -> Result<bool> {
    if h.ring() != params.ring() {
        return Err(Error::RingMismatch(params.ring().to_string()));
    }
    let f = params.expand_f(h.depth());
    let mu = AffineMap::multiplication(f.clone())?;
    let lhs = mu
        .compose(&AffineMap::translation_by(h.clone()))?
        .compose(&mu.inverse()?)?;
    let rhs = AffineMap::translation_by(f.mul(h)?);
    Ok(lhs == rhs)
}

/// Enumerates every coefficient tuple `(c_0, ..., c_d)` and reports whether
/// the series `(1 - bt)^{-1} (c_0 + c_1 f + ... + c_d f^d)` are pairwise
/// distinct modulo `t^{d+1}`.
pub fn check_basis_distinct(params: &SeriesParams, depth: usize) -> Result<bool> {
    let ring = params.ring();
    let n = ring.order();
    let total = (0..=depth)
        .try_fold(1u128, |acc, _| acc.checked_mul(n))
        .unwrap_or(u128::MAX);
    check_budget(total)?;
    let one_minus_bt =
        TruncSeries::linear(ring.clone(), ring.one(), ring.neg_raw(params.b()), depth)?;
    let scale = one_minus_bt.invert()?;
    let basis: Vec<TruncSeries> = (0..=depth)
        .map(|i| params.f_power(i as i64, depth).mul_raw(&scale))
        .collect();
    let elems = ring.enumerate()?;
    let mut seen = HashSet::with_capacity(total as usize);
    let mut digits = vec![0usize; depth + 1];
    loop {
        let mut acc = TruncSeries::zero(ring.clone(), depth);
        for (i, &k) in digits.iter().enumerate() {
            if k != 0 {
                acc = acc.add(&basis[i].scale(&elems[k])?)?;
            }
        }
        if !seen.insert(acc) {
            return Ok(false);
        }
        // odometer over all tuples
        let mut i = 0;
        loop {
            if i > depth {
                return Ok(true);
            }
            digits[i] += 1;
            if digits[i] < elems.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// When `a - b` is not a unit, the first nonzero `s` (in enumeration order)
/// with `s(a - b) = 0` that also kills `basis_element(m)` for `|m| <= depth`.
pub fn find_annihilator(params: &SeriesParams, depth: usize) -> Result<Option<RingElem>> {
    if params.difference_is_unit() {
        return Ok(None);
    }
    let ring = params.ring();
    let diff = params.difference();
    let d = depth as i64;
    let basis: Vec<TruncSeries> = (-d..=d).map(|m| params.basis_element(m, depth)).collect();
    for s in ring.enumerate()?.into_iter().skip(1) {
        if !ring.is_zero(&ring.mul_raw(&s, &diff)) {
            continue;
        }
        if basis
            .iter()
            .all(|e| e.scale(&s).map(|x| x.is_zero()).unwrap_or(false))
        {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Outcome of the level-`L` orbit computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub level: usize,
    pub orbit_size: u128,
    pub level_size: u128,
}

impl TransitivityReport {
    pub fn is_transitive(&self) -> bool {
        self.orbit_size == self.level_size
    }
}

fn encode(word: &[usize], base: usize) -> usize {
    word.iter().fold(0, |acc, &x| acc * base + x)
}

/// Breadth-first orbit of the all-zero word of length `level` under the
/// states of `A_f` and of its inverse.
pub fn check_spherical_transitivity(
    params: &SeriesParams,
    level: usize,
) -> Result<TransitivityReport> {
    let n = params.ring().order();
    let level_size = (0..level)
        .try_fold(1u128, |acc, _| acc.checked_mul(n))
        .unwrap_or(u128::MAX);
    check_budget(level_size)?;
    let m = build_af(params)?;
    let inv = m.invert()?;
    let base = m.num_letters();
    let mut visited = vec![false; level_size as usize];
    let start = vec![0usize; level];
    visited[encode(&start, base)] = true;
    let mut queue = vec![start];
    let mut orbit_size = 1u128;
    while let Some(w) = queue.pop() {
        for machine in [&m, &inv] {
            for q in 0..machine.num_states() {
                let image = machine.run(q, &w)?;
                let key = encode(&image, base);
                if !visited[key] {
                    visited[key] = true;
                    orbit_size += 1;
                    queue.push(image);
                }
            }
        }
    }
    Ok(TransitivityReport {
        level,
        orbit_size,
        level_size,
    })
}

/// The individual identities behind self-replication.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfReplicationReport {
    /// `mu_f` fixes the letter 0.
    pub fixes_zero: bool,
    /// `(mu_f)|_s = alpha_{-sa} mu_f` for every `s`.
    pub mu_sections: bool,
    /// `(alpha_{-s} mu_f alpha_s)|_0 = alpha_{-as} mu_f` for every `s`.
    pub conjugate_sections: bool,
    /// `(gh)|_v = g|_{h(v)} h|_v` on sampled generator pairs and words.
    pub composition_law: bool,
    /// Whether the parameters were replaced by those of `f^{-1}` to reach `b = 0`.
    pub used_inverse: bool,
}

impl SelfReplicationReport {
    pub fn passed(&self) -> bool {
        self.fixes_zero && self.mu_sections && self.conjugate_sections && self.composition_law
    }
}

/// Checks the witness identities for self-replication. Requires `r = 1`,
/// `a - b` a unit, and `a = 0` or `b = 0`; with `a = 0` the identities are
/// checked for `f^{-1}`, which generates the same group. `depth` must be
/// at least 1.
pub fn check_self_replication_witnesses(
    params: &SeriesParams,
    depth: usize,
    seed: u64,
) -> Result<SelfReplicationReport> {
    let ring = params.ring().clone();
    let one = ring.one();
    if params.r() != &one {
        return Err(Error::PreconditionFailed("r must be 1".into()));
    }
    if !params.difference_is_unit() {
        return Err(Error::PreconditionFailed("a - b must be a unit".into()));
    }
    if depth == 0 {
        return Err(Error::PreconditionFailed("depth must be at least 1".into()));
    }
    let (p, used_inverse) = if ring.is_zero(params.b()) {
        (params.clone(), false)
    } else if ring.is_zero(params.a()) {
        (params.inverse_params(), true)
    } else {
        return Err(Error::PreconditionFailed("a or b must be 0".into()));
    };
    let elems = ring.enumerate()?;
    let f = p.expand_f(depth);
    let mu = AffineMap::multiplication(f.clone())?;
    let zero = ring.zero();
    let fixes_zero = ring.is_zero(&mu.first_letter(&zero)?);

    let tail = |s: &RingElem| -> Result<AffineMap> {
        // alpha_{-as} mu_f at depth - 1
        let c = ring.neg_raw(&ring.mul_raw(p.a(), s));
        let alpha = AffineMap::translation_by(TruncSeries::constant(ring.clone(), c, depth - 1)?);
        alpha.compose(&mu.truncate(depth - 1)?)
    };
    let mut mu_sections = true;
    let mut conjugate_sections = true;
    for s in &elems {
        mu_sections &= mu.section(s)? == tail(s)?;
        let alpha = |c: RingElem| -> Result<AffineMap> {
            Ok(AffineMap::translation_by(TruncSeries::constant(
                ring.clone(),
                c,
                depth,
            )?))
        };
        let conj = alpha(ring.neg_raw(s))?
            .compose(&mu)?
            .compose(&alpha(s.clone())?)?;
        conjugate_sections &= conj.section(&zero)? == tail(s)?;
    }

    let mut generators = Vec::with_capacity(2 * elems.len());
    for s in &elems {
        let g = state_as_affine(&p, s, depth)?;
        generators.push(g.inverse()?);
        generators.push(g);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut composition_law = true;
    for _ in 0..64 {
        let g = &generators[rng.gen_range(0..generators.len())];
        let h = &generators[rng.gen_range(0..generators.len())];
        let len = rng.gen_range(1..=depth.min(3));
        let v: Vec<RingElem> = (0..len)
            .map(|_| elems[rng.gen_range(0..elems.len())].clone())
            .collect();
        let lhs = g.compose(h)?.section_at_word(&v)?;
        let rhs = g
            .section_at_word(&h.apply_word(&v)?)?
            .compose(&h.section_at_word(&v)?)?;
        composition_law &= lhs == rhs;
    }
    Ok(SelfReplicationReport {
        fixes_zero,
        mu_sections,
        conjugate_sections,
        composition_law,
        used_inverse,
    })
}

/// Outcome of the lamplighter relation checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathReport {
    pub depth: usize,
    /// `x_s x_{s'} = x_{s+s'}` and `x_s x_{s'} = x_{s'} x_s` for all `s, s'`,
    /// with `x_s = alpha_{s(-ar+bf)}`.
    pub lamps_additive: bool,
    /// `mu_f alpha_{s B f^m} mu_f^{-1} = alpha_{s B f^{m+1}}` for all `s` and
    /// `m` in `-2..=2`.
    pub shift: bool,
    /// Order of `mu_f` when it is at most `depth`; `None` otherwise.
    pub mu_order: Option<u64>,
}

impl WreathReport {
    /// The order of `mu_f` is at least `depth + 1`.
    pub fn order_bound_met(&self) -> bool {
        self.mu_order.is_none()
    }

    pub fn passed(&self) -> bool {
        self.lamps_additive && self.shift && self.order_bound_met()
    }
}

pub fn check_wreath_relations(params: &SeriesParams, depth: usize) -> Result<WreathReport> {
    let ring = params.ring();
    check_budget(ring.order().saturating_mul(ring.order()))?;
    let elems = ring.enumerate()?;
    let gen = params.basis_generator(depth);
    let lamp = |s: &RingElem| -> Result<AffineMap> { Ok(AffineMap::translation_by(gen.scale(s)?)) };
    let lamps = elems.iter().map(lamp).collect::<Result<Vec<_>>>()?;

    let mut lamps_additive = true;
    for (i, s) in elems.iter().enumerate() {
        for (j, t) in elems.iter().enumerate() {
            let st = lamps[i].compose(&lamps[j])?;
            lamps_additive &= st == lamp(&ring.add_raw(s, t))?;
            lamps_additive &= st == lamps[j].compose(&lamps[i])?;
        }
    }

    let mu = AffineMap::multiplication(params.expand_f(depth))?;
    let mu_inv = mu.inverse()?;
    let mut shift = true;
    for m in -2i64..=2 {
        let here = params.basis_element(m, depth);
        let next = params.basis_element(m + 1, depth);
        for s in &elems {
            let lhs = mu
                .compose(&AffineMap::translation_by(here.scale(s)?))?
                .compose(&mu_inv)?;
            shift &= lhs == AffineMap::translation_by(next.scale(s)?);
        }
    }
    Ok(WreathReport {
        depth,
        lamps_additive,
        shift,
        mu_order: mu.order(depth as u64),
    })
}

/// Outcome of comparing automaton runs with the affine computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub samples: usize,
    pub mismatches: usize,
    /// First disagreement as `(state, word)` in element strings.
    pub first_mismatch: Option<(String, Vec<String>)>,
}

/// Samples random states and words of length `0..=max_len` and checks that
/// `run(A_f, s, w)` equals the coefficients of `state_as_affine(s)` applied
/// to `w`.
pub fn check_oracle(
    params: &SeriesParams,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Result<OracleReport> {
    let ring = params.ring();
    let m = build_af(params)?;
    let n = m.num_letters();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0;
    let mut first_mismatch = None;
    for _ in 0..samples {
        let q = rng.gen_range(0..m.num_states());
        let len = rng.gen_range(0..=max_len);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let from_run = m.run(q, &word)?;
        let from_series = if word.is_empty() {
            Vec::new()
        } else {
            let s = ring.element(q as u128)?;
            let g = word_to_series(ring, &word)?;
            series_to_word(&state_as_affine(params, &s, len - 1)?.apply(&g)?)
        };
        if from_run != from_series {
            mismatches += 1;
            first_mismatch.get_or_insert_with(|| {
                (
                    m.states()[q].clone(),
                    word.iter().map(|&x| m.alphabet()[x].clone()).collect(),
                )
            });
        }
    }
    Ok(OracleReport {
        samples,
        mismatches,
        first_mismatch,
    })
}

/// One line of a verification run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub ring: String,
    pub params: DocumentParams,
    pub depth: usize,
    /// `None` when the check was skipped.
    pub result: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl CheckReport {
    pub fn failed(&self) -> bool {
        self.result == Some(false)
    }
}

/// Settings for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub depth: usize,
    pub level: usize,
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            depth: 8,
            level: 3,
            seed: 0,
            samples: 1000,
        }
    }
}

/// Largest depth at which basis distinctness is enumerated in the suite.
pub const SUITE_BASIS_DEPTH: usize = 2;

/// Runs every check on one parameter set. Checks that would exceed the
/// enumeration limit, or whose preconditions do not hold, are reported as
/// skipped rather than failed.
pub fn run_suite(params: &SeriesParams, opts: &SuiteOptions) -> Vec<CheckReport> {
    let ring = params.ring();
    let doc_params = DocumentParams {
        r: ring.render(params.r()),
        a: ring.render(params.a()),
        b: ring.render(params.b()),
    };
    let report = |check: &str, depth: usize, outcome: Result<(bool, Option<Value>)>| {
        let (result, witness, skipped) = match outcome {
            Ok((ok, w)) => (Some(ok), w, None),
            Err(e) => (None, None, Some(e.to_string())),
        };
        CheckReport {
            check: check.into(),
            ring: ring.to_string(),
            params: doc_params.clone(),
            depth,
            result,
            witness,
            skipped,
        }
    };
    let d = opts.depth;
    let mut out = Vec::new();

    out.push(report(
        "conjugation",
        d,
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let n = ring.order();
            for _ in 0..16 {
                let coeffs = (0..=d)
                    .map(|_| ring.element_raw(rng.gen_range(0..n)))
                    .collect();
                let h = TruncSeries::new(ring.clone(), coeffs)?;
                if !check_conjugation(params, &h)? {
                    return Ok((false, Some(json!(h.to_string()))));
                }
            }
            Ok((true, None))
        })(),
    ));

    let bd = d.min(SUITE_BASIS_DEPTH);
    out.push(report(
        "basis_distinct",
        bd,
        check_basis_distinct(params, bd).map(|ok| (ok, None)),
    ));

    out.push(report(
        "annihilator",
        d,
        find_annihilator(params, d).map(|s| match s {
            None => (true, None),
            Some(s) => (false, Some(json!({ "annihilator": ring.render(&s) }))),
        }),
    ));

    out.push(report(
        "wreath_relations",
        d,
        check_wreath_relations(params, d).map(|w| {
            let witness = json!({
                "lamps_additive": w.lamps_additive,
                "shift": w.shift,
                "mu_order": w.mu_order.map(|k| format!("order {k}")),
            });
            (w.passed(), Some(witness))
        }),
    ));

    out.push(report(
        "spherical_transitivity",
        opts.level,
        check_spherical_transitivity(params, opts.level).map(|t| {
            (t.is_transitive(), Some(json!({ "orbit_size": t.orbit_size.to_string(), "level_size": t.level_size.to_string() })))
        }),
    ));

    out.push(report(
        "oracle",
        12,
        check_oracle(params, opts.samples, 12, opts.seed).map(|o| {
            let witness = o
                .first_mismatch
                .as_ref()
                .map(|(s, w)| json!({ "state": s, "word": w }));
            (o.mismatches == 0, witness)
        }),
    ));

    out.push(report(
        "self_replication",
        d,
        check_self_replication_witnesses(params, d, opts.seed).map(|s| {
            let ok = s.passed();
            (ok, Some(serde_json::to_value(s).expect("plain struct")))
        }),
    ));
    out
}
