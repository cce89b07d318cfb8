//! Exact arithmetic in finite commutative rings: `Z/n`, Galois rings and
//! finite direct products of those.
//!
//! Elements are plain values ([`RingElem`]) interpreted relative to a
//! [`RingSpec`]. Every public operation checks membership first and reports a
//! [`Error::RingMismatch`] for foreign elements; crate-internal code that has
//! already validated its inputs uses the unchecked `*_raw` variants.

mod galois;
pub(crate) mod int;
mod text;

use std::fmt;

pub use galois::GaloisSpec;
pub(crate) use text::split_top_level;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use int::{factorize, gcd, inv_mod, mul_mod};

/// A finite commutative ring with unity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// `Z/nZ`, `n >= 2`.
    ModN { n: u64 },
    /// `GR(p^m, r) = (Z/p^m)[x]/(Q)`.
    Galois(GaloisSpec),
    /// Direct product; factors are never themselves products.
    Product(Vec<RingSpec>),
}

/// Canonical representation of a ring element.
///
/// Two elements of the same ring are equal iff their representations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElem {
    /// Residue in `[0, n)`.
    Mod(u64),
    /// Coefficients `c_0 .. c_{r-1}` of `c_0 + c_1 z + ...`, each in `[0, p^m)`.
    Poly(Vec<u64>),
    /// One component per product factor.
    Tuple(Vec<RingElem>),
}

impl RingSpec {
    pub fn zmod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("zmod needs n >= 2, got {n}")));
        }
        Ok(RingSpec::ModN { n })
    }

    /// `GR(p^m, r)` with the conventional modulus (see [`GaloisSpec::new`]).
    pub fn galois(p: u64, m: u32, r: usize) -> Result<Self> {
        GaloisSpec::new(p, m, r).map(RingSpec::Galois)
    }

    /// Direct product. Nested products are flattened and a single factor is
    /// returned unchanged.
    pub fn product(factors: Vec<RingSpec>) -> Result<Self> {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                RingSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(Error::InvalidSpec(
                "product needs at least one factor".into(),
            )),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(RingSpec::Product(flat)),
        }
    }

    /// Number of elements, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        match self {
            RingSpec::ModN { n } => u128::from(*n),
            RingSpec::Galois(g) => u128::from(g.pm()).saturating_pow(g.r() as u32),
            RingSpec::Product(fs) => fs.iter().fold(1u128, |a, f| a.saturating_mul(f.order())),
        }
    }

    pub fn zero(&self) -> RingElem {
        match self {
            RingSpec::ModN { .. } => RingElem::Mod(0),
            RingSpec::Galois(g) => RingElem::Poly(vec![0; g.r()]),
            RingSpec::Product(fs) => RingElem::Tuple(fs.iter().map(|f| f.zero()).collect()),
        }
    }

    pub fn one(&self) -> RingElem {
        match self {
            RingSpec::ModN { .. } => RingElem::Mod(1),
            RingSpec::Galois(g) => {
                let mut c = vec![0; g.r()];
                c[0] = 1;
                RingElem::Poly(c)
            }
            RingSpec::Product(fs) => RingElem::Tuple(fs.iter().map(|f| f.one()).collect()),
        }
    }

    /// Image of the integer `k` under `Z -> R`.
    pub fn from_int(&self, k: i64) -> RingElem {
        match self {
            RingSpec::ModN { n } => RingElem::Mod(reduce_int(k, *n)),
            RingSpec::Galois(g) => {
                let mut c = vec![0; g.r()];
                c[0] = reduce_int(k, g.pm());
                RingElem::Poly(c)
            }
            RingSpec::Product(fs) => RingElem::Tuple(fs.iter().map(|f| f.from_int(k)).collect()),
        }
    }

    /// True iff `x` is a canonical element of this ring.
    pub fn contains(&self, x: &RingElem) -> bool {
        match (self, x) {
            (RingSpec::ModN { n }, RingElem::Mod(v)) => v < n,
            (RingSpec::Galois(g), RingElem::Poly(c)) => {
                c.len() == g.r() && c.iter().all(|&v| v < g.pm())
            }
            (RingSpec::Product(fs), RingElem::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    pub(crate) fn check(&self, x: &RingElem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string()))
        }
    }

    pub fn add(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_raw(x, y))
    }

    pub fn sub(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.sub_raw(x, y))
    }

    pub fn mul(&self, x: &RingElem, y: &RingElem) -> Result<RingElem> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_raw(x, y))
    }

    pub fn neg(&self, x: &RingElem) -> Result<RingElem> {
        self.check(x)?;
        Ok(self.neg_raw(x))
    }

    /// `S^x = S \ m` in each local factor: for `Z/n` this is `gcd(x, n) = 1`,
    /// for a Galois ring it is a nonzero reduction modulo `p`.
    pub fn is_unit(&self, x: &RingElem) -> bool {
        if !self.contains(x) {
            return false;
        }
        self.is_unit_raw(x)
    }

    pub fn inverse(&self, x: &RingElem) -> Result<RingElem> {
        self.check(x)?;
        self.inverse_raw(x)
            .ok_or_else(|| Error::NotAUnit(self.render(x)))
    }

    pub(crate) fn add_raw(&self, x: &RingElem, y: &RingElem) -> RingElem {
        match (self, x, y) {
            (RingSpec::ModN { n }, RingElem::Mod(a), RingElem::Mod(b)) => {
                RingElem::Mod(((u128::from(*a) + u128::from(*b)) % u128::from(*n)) as u64)
            }
            (RingSpec::Galois(g), RingElem::Poly(a), RingElem::Poly(b)) => {
                RingElem::Poly(g.add(a, b))
            }
            (RingSpec::Product(fs), RingElem::Tuple(a), RingElem::Tuple(b)) => RingElem::Tuple(
                fs.iter()
                    .zip(a.iter().zip(b))
                    .map(|(f, (x, y))| f.add_raw(x, y))
                    .collect(),
            ),
            _ => unreachable!("operands validated against the ring"),
        }
    }

    pub(crate) fn neg_raw(&self, x: &RingElem) -> RingElem {
        match (self, x) {
            (RingSpec::ModN { n }, RingElem::Mod(a)) => RingElem::Mod((n - a) % n),
            (RingSpec::Galois(g), RingElem::Poly(a)) => RingElem::Poly(g.neg(a)),
            (RingSpec::Product(fs), RingElem::Tuple(a)) => {
                RingElem::Tuple(fs.iter().zip(a).map(|(f, x)| f.neg_raw(x)).collect())
            }
            _ => unreachable!("operand validated against the ring"),
        }
    }

    pub(crate) fn sub_raw(&self, x: &RingElem, y: &RingElem) -> RingElem {
        match (self, x, y) {
            (RingSpec::ModN { n }, RingElem::Mod(a), RingElem::Mod(b)) => {
                RingElem::Mod(((u128::from(*a) + u128::from(n - b)) % u128::from(*n)) as u64)
            }
            (RingSpec::Galois(g), RingElem::Poly(a), RingElem::Poly(b)) => {
                RingElem::Poly(g.sub(a, b))
            }
            (RingSpec::Product(fs), RingElem::Tuple(a), RingElem::Tuple(b)) => RingElem::Tuple(
                fs.iter()
                    .zip(a.iter().zip(b))
                    .map(|(f, (x, y))| f.sub_raw(x, y))
                    .collect(),
            ),
            _ => unreachable!("operands validated against the ring"),
        }
    }

    pub(crate) fn mul_raw(&self, x: &RingElem, y: &RingElem) -> RingElem {
        match (self, x, y) {
            (RingSpec::ModN { n }, RingElem::Mod(a), RingElem::Mod(b)) => {
                RingElem::Mod(mul_mod(*a, *b, *n))
            }
            (RingSpec::Galois(g), RingElem::Poly(a), RingElem::Poly(b)) => {
                RingElem::Poly(g.mul(a, b))
            }
            (RingSpec::Product(fs), RingElem::Tuple(a), RingElem::Tuple(b)) => RingElem::Tuple(
                fs.iter()
                    .zip(a.iter().zip(b))
                    .map(|(f, (x, y))| f.mul_raw(x, y))
                    .collect(),
            ),
            _ => unreachable!("operands validated against the ring"),
        }
    }

    pub(crate) fn is_unit_raw(&self, x: &RingElem) -> bool {
        match (self, x) {
            (RingSpec::ModN { n }, RingElem::Mod(a)) => gcd(*a, *n) == 1,
            (RingSpec::Galois(g), RingElem::Poly(a)) => g.is_unit(a),
            (RingSpec::Product(fs), RingElem::Tuple(a)) => {
                fs.iter().zip(a).all(|(f, x)| f.is_unit_raw(x))
            }
            _ => false,
        }
    }

    pub(crate) fn inverse_raw(&self, x: &RingElem) -> Option<RingElem> {
        match (self, x) {
            (RingSpec::ModN { n }, RingElem::Mod(a)) => inv_mod(*a, *n).map(RingElem::Mod),
            (RingSpec::Galois(g), RingElem::Poly(a)) => g.inverse(a).map(RingElem::Poly),
            (RingSpec::Product(fs), RingElem::Tuple(a)) => fs
                .iter()
                .zip(a)
                .map(|(f, x)| f.inverse_raw(x))
                .collect::<Option<Vec<_>>>()
                .map(RingElem::Tuple),
            _ => None,
        }
    }

    pub(crate) fn is_zero(&self, x: &RingElem) -> bool {
        *x == self.zero()
    }

    /// Position of `x` in [`RingSpec::enumerate`] order.
    pub fn index_of(&self, x: &RingElem) -> Result<u128> {
        self.check(x)?;
        Ok(self.index_raw(x))
    }

    pub(crate) fn index_raw(&self, x: &RingElem) -> u128 {
        match (self, x) {
            (RingSpec::ModN { .. }, RingElem::Mod(a)) => u128::from(*a),
            (RingSpec::Galois(g), RingElem::Poly(c)) => c
                .iter()
                .rev()
                .fold(0u128, |acc, &v| acc * u128::from(g.pm()) + u128::from(v)),
            (RingSpec::Product(fs), RingElem::Tuple(xs)) => fs
                .iter()
                .zip(xs)
                .fold(0u128, |acc, (f, x)| acc * f.order() + f.index_raw(x)),
            _ => unreachable!("operand validated against the ring"),
        }
    }

    /// Inverse of [`RingSpec::index_of`].
    pub fn element(&self, index: u128) -> Result<RingElem> {
        if index >= self.order() {
            return Err(Error::Parse(format!(
                "element index {index} out of range for {self}"
            )));
        }
        Ok(self.element_raw(index))
    }

    pub(crate) fn element_raw(&self, mut index: u128) -> RingElem {
        match self {
            RingSpec::ModN { .. } => RingElem::Mod(index as u64),
            RingSpec::Galois(g) => {
                let pm = u128::from(g.pm());
                let c = (0..g.r())
                    .map(|_| {
                        let v = (index % pm) as u64;
                        index /= pm;
                        v
                    })
                    .collect();
                RingElem::Poly(c)
            }
            RingSpec::Product(fs) => {
                let mut parts: Vec<RingElem> = fs
                    .iter()
                    .rev()
                    .map(|f| {
                        let o = f.order();
                        let e = f.element_raw(index % o);
                        index /= o;
                        e
                    })
                    .collect();
                parts.reverse();
                RingElem::Tuple(parts)
            }
        }
    }

    /// All elements in canonical order: `Z/n` by residue, Galois rings
    /// lexicographically with the constant coefficient varying fastest,
    /// products lexicographically with the first factor most significant.
    pub fn enumerate(&self) -> Result<Vec<RingElem>> {
        crate::error::check_budget(self.order())?;
        Ok((0..self.order()).map(|i| self.element_raw(i)).collect())
    }

    /// Additive group `R^+` as a multiset of prime-power cyclic orders.
    pub fn additive_group(&self) -> GroupSpec {
        let mut g = GroupSpec::default();
        match self {
            RingSpec::ModN { n } => {
                for (p, k) in factorize(*n) {
                    g.push(p.pow(k), 1);
                }
            }
            RingSpec::Galois(gs) => g.push(gs.pm(), gs.r()),
            RingSpec::Product(fs) => {
                for f in fs {
                    g = g.union(&f.additive_group());
                }
            }
        }
        g
    }

    /// Product factors, or the ring itself when it is not a product.
    pub fn factors(&self) -> &[RingSpec] {
        match self {
            RingSpec::Product(fs) => fs,
            other => std::slice::from_ref(other),
        }
    }

    /// Additive coordinates: the integer vector of an element together with
    /// the modulus of each coordinate. Used for additive-subgroup arguments.
    pub(crate) fn coordinates(&self, x: &RingElem) -> Vec<(u64, u64)> {
        match (self, x) {
            (RingSpec::ModN { n }, RingElem::Mod(a)) => vec![(*a, *n)],
            (RingSpec::Galois(g), RingElem::Poly(c)) => c.iter().map(|&v| (v, g.pm())).collect(),
            (RingSpec::Product(fs), RingElem::Tuple(xs)) => fs
                .iter()
                .zip(xs)
                .flat_map(|(f, x)| f.coordinates(x))
                .collect(),
            _ => unreachable!("operand validated against the ring"),
        }
    }

    /// Additive generators matching [`RingSpec::coordinates`]: unit vectors.
    pub(crate) fn additive_generators(&self) -> Vec<RingElem> {
        let n = self.coordinates(&self.zero()).len();
        (0..n)
            .map(|k| {
                let mut idx = 0;
                self.map_coordinates(&mut |_| {
                    let v = u64::from(idx == k);
                    idx += 1;
                    v
                })
            })
            .collect()
    }

    fn map_coordinates(&self, next: &mut dyn FnMut(u64) -> u64) -> RingElem {
        match self {
            RingSpec::ModN { n } => RingElem::Mod(next(*n) % n),
            RingSpec::Galois(g) => {
                RingElem::Poly((0..g.r()).map(|_| next(g.pm()) % g.pm()).collect())
            }
            RingSpec::Product(fs) => {
                RingElem::Tuple(fs.iter().map(|f| f.map_coordinates(next)).collect())
            }
        }
    }

    /// Renders an element: decimal for `Z/n`, `3+2z` for Galois rings,
    /// `(x,y)` for products.
    pub fn render(&self, x: &RingElem) -> String {
        text::render_elem(self, x)
    }

    /// Parses the syntax produced by [`RingSpec::render`].
    pub fn parse_elem(&self, s: &str) -> Result<RingElem> {
        text::parse_elem(self, s)
    }
}

fn reduce_int(k: i64, n: u64) -> u64 {
    i128::from(k).rem_euclid(i128::from(n)) as u64
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render_spec(self))
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    /// `zmod:<n>` | `gr:<p>:<m>:<r>` | `<spec>*<spec>`.
    fn from_str(s: &str) -> Result<Self> {
        text::parse_spec(s)
    }
}
