//! Truncated power series in `R[[t]]/(t^{d+1})` and the rational series
//! `f = r(1 - at)/(1 - bt)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{RingElem, RingSpec};

/// A power series truncated after the `t^depth` term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    ring: Arc<RingSpec>,
    coeffs: Vec<RingElem>,
}

impl TruncSeries {
    /// Builds a series from its coefficients; the depth is `coeffs.len() - 1`.
    pub fn new(ring: Arc<RingSpec>, coeffs: Vec<RingElem>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidSpec(
                "a truncated series needs at least one coefficient".into(),
            ));
        }
        for c in &coeffs {
            ring.check(c)?;
        }
        Ok(Self { ring, coeffs })
    }

    pub(crate) fn from_raw(ring: Arc<RingSpec>, coeffs: Vec<RingElem>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { ring, coeffs }
    }

    pub fn zero(ring: Arc<RingSpec>, depth: usize) -> Self {
        let coeffs = vec![ring.zero(); depth + 1];
        Self { ring, coeffs }
    }

    pub fn one(ring: Arc<RingSpec>, depth: usize) -> Self {
        Self::constant(ring.clone(), ring.one(), depth).expect("one belongs to its ring")
    }

    pub fn constant(ring: Arc<RingSpec>, c: RingElem, depth: usize) -> Result<Self> {
        ring.check(&c)?;
        let mut coeffs = vec![ring.zero(); depth + 1];
        coeffs[0] = c;
        Ok(Self { ring, coeffs })
    }

    /// `c_0 + c_1 t` padded with zeros up to `depth`.
    pub fn linear(ring: Arc<RingSpec>, c0: RingElem, c1: RingElem, depth: usize) -> Result<Self> {
        let mut s = Self::constant(ring.clone(), c0, depth)?;
        ring.check(&c1)?;
        if depth >= 1 {
            s.coeffs[1] = c1;
        }
        Ok(s)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &RingElem {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    pub fn is_one(&self) -> bool {
        self.ring
            .is_zero(&self.ring.sub_raw(&self.coeffs[0], &self.ring.one()))
            && self.coeffs[1..].iter().all(|c| self.ring.is_zero(c))
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string()));
        }
        if self.depth() != other.depth() {
            return Err(Error::DepthMismatch {
                left: self.depth(),
                right: other.depth(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip_with(other, RingSpec::add_raw))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.zip_with(other, RingSpec::sub_raw))
    }

    fn zip_with(&self, other: &Self, op: fn(&RingSpec, &RingElem, &RingElem) -> RingElem) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| op(&self.ring, x, y))
            .collect();
        Self::from_raw(self.ring.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg_raw(c)).collect();
        Self::from_raw(self.ring.clone(), coeffs)
    }

    /// Cauchy product truncated at the common depth.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(self.mul_raw(other))
    }

    pub(crate) fn mul_raw(&self, other: &Self) -> Self {
        let ring = &self.ring;
        let d = self.depth();
        let mut coeffs = vec![ring.zero(); d + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in other.coeffs[..=d - i].iter().enumerate() {
                coeffs[i + j] = ring.add_raw(&coeffs[i + j], &ring.mul_raw(x, y));
            }
        }
        Self::from_raw(ring.clone(), coeffs)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &RingElem) -> Result<Self> {
        self.ring.check(c)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| self.ring.mul_raw(c, x))
            .collect();
        Ok(Self::from_raw(self.ring.clone(), coeffs))
    }

    /// Multiplicative inverse via `g_0 = c_0^{-1}`,
    /// `g_n = -c_0^{-1} * sum_{i=1..n} c_i g_{n-i}`.
    pub fn invert(&self) -> Result<Self> {
        let ring = &self.ring;
        let c0_inv = ring
            .inverse_raw(&self.coeffs[0])
            .ok_or_else(|| Error::NotAUnit(ring.render(&self.coeffs[0])))?;
        let neg_inv = ring.neg_raw(&c0_inv);
        let mut g: Vec<RingElem> = Vec::with_capacity(self.coeffs.len());
        g.push(c0_inv);
        for n in 1..self.coeffs.len() {
            let mut acc = ring.zero();
            for i in 1..=n {
                acc = ring.add_raw(&acc, &ring.mul_raw(&self.coeffs[i], &g[n - i]));
            }
            g.push(ring.mul_raw(&neg_inv, &acc));
        }
        Ok(Self::from_raw(ring.clone(), g))
    }

    /// `sigma(c_0 + c_1 t + ...) = c_1 + c_2 t + ...`, one degree shallower.
    pub fn shift(&self) -> Result<Self> {
        if self.depth() == 0 {
            return Err(Error::DepthExhausted);
        }
        Ok(Self::from_raw(self.ring.clone(), self.coeffs[1..].to_vec()))
    }

    /// Drops every coefficient above `depth`. Never extends.
    pub fn truncate(&self, depth: usize) -> Result<Self> {
        if depth > self.depth() {
            return Err(Error::DepthMismatch {
                left: self.depth(),
                right: depth,
            });
        }
        Ok(Self::from_raw(
            self.ring.clone(),
            self.coeffs[..=depth].to_vec(),
        ))
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.depth());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            base = base.mul_raw(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for TruncSeries {
    /// `c0 + c1*t + c2*t^2 + ...`, every coefficient shown.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let c = self.ring.render(c);
            let c = if c.contains('+') { format!("({c})") } else { c };
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

/// The data of `f = r(1 - at)/(1 - bt)` with `r` a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesParams {
    ring: Arc<RingSpec>,
    r: RingElem,
    a: RingElem,
    b: RingElem,
}

impl SeriesParams {
    pub fn new(ring: Arc<RingSpec>, r: RingElem, a: RingElem, b: RingElem) -> Result<Self> {
        for x in [&r, &a, &b] {
            ring.check(x)?;
        }
        if !ring.is_unit_raw(&r) {
            return Err(Error::NotAUnit(ring.render(&r)));
        }
        Ok(Self { ring, r, a, b })
    }

    /// Parses the three elements in the ring's element syntax.
    pub fn parse(ring: Arc<RingSpec>, r: &str, a: &str, b: &str) -> Result<Self> {
        let (r, a, b) = (
            ring.parse_elem(r)?,
            ring.parse_elem(a)?,
            ring.parse_elem(b)?,
        );
        Self::new(ring, r, a, b)
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn r(&self) -> &RingElem {
        &self.r
    }

    pub fn a(&self) -> &RingElem {
        &self.a
    }

    pub fn b(&self) -> &RingElem {
        &self.b
    }

    /// `a - b`.
    pub fn difference(&self) -> RingElem {
        self.ring.sub_raw(&self.a, &self.b)
    }

    pub fn difference_is_unit(&self) -> bool {
        self.ring.is_unit_raw(&self.difference())
    }

    /// Parameters of `f^{-1} = r^{-1}(1 - bt)/(1 - at)`.
    pub fn inverse_params(&self) -> Self {
        let r_inv = self.ring.inverse_raw(&self.r).expect("r is a unit");
        Self {
            ring: self.ring.clone(),
            r: r_inv,
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// `r + r(b-a) t + r b (b-a) t^2 + ... + r b^{d-1} (b-a) t^d`.
    pub fn expand_f(&self, depth: usize) -> TruncSeries {
        let ring = &self.ring;
        let mut coeffs = Vec::with_capacity(depth + 1);
        coeffs.push(self.r.clone());
        let mut c = ring.mul_raw(&self.r, &ring.sub_raw(&self.b, &self.a));
        for _ in 1..=depth {
            coeffs.push(c.clone());
            c = ring.mul_raw(&c, &self.b);
        }
        TruncSeries::from_raw(ring.clone(), coeffs)
    }

    pub fn expand_f_inverse(&self, depth: usize) -> TruncSeries {
        self.inverse_params().expand_f(depth)
    }

    /// `f^m` for any integer `m`; negative powers use the inverse expansion.
    pub fn f_power(&self, m: i64, depth: usize) -> TruncSeries {
        if m >= 0 {
            self.expand_f(depth).pow(m as u64)
        } else {
            self.expand_f_inverse(depth).pow(m.unsigned_abs())
        }
    }

    /// `-ar + bf`, which equals `-r(a-b)/(1-bt)`.
    pub fn basis_generator(&self, depth: usize) -> TruncSeries {
        let ring = &self.ring;
        let f = self.expand_f(depth);
        let bf = f.scale(&self.b).expect("b belongs to the ring");
        let ar = TruncSeries::constant(ring.clone(), ring.mul_raw(&self.a, &self.r), depth)
            .expect("ar belongs to the ring");
        bf.sub(&ar).expect("same ring and depth")
    }

    /// The translation part `(-ar + bf) f^m` of the lamp at position `m`.
    pub fn basis_element(&self, m: i64, depth: usize) -> TruncSeries {
        self.basis_generator(depth).mul_raw(&self.f_power(m, depth))
    }
}
