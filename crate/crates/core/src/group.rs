//! Finite abelian groups in invariant (prime-power) form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::int::factorize;

/// A finite abelian group `Z/q_1 + ... + Z/q_k` with every `q_i` a prime power.
///
/// Stored as a multiset: prime power to multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: BTreeMap<u64, usize>,
}

impl GroupSpec {
    /// Builds the group from arbitrary cyclic orders, splitting each into its
    /// prime-power parts. Orders equal to 1 contribute nothing.
    pub fn from_cyclic_orders<I: IntoIterator<Item = u64>>(orders: I) -> Result<Self> {
        let mut g = Self::default();
        for n in orders {
            if n == 0 {
                return Err(Error::Parse("cyclic order must be positive".into()));
            }
            for (p, k) in factorize(n) {
                g.push(p.pow(k), 1);
            }
        }
        Ok(g)
    }

    pub(crate) fn push(&mut self, prime_power: u64, count: usize) {
        if count > 0 {
            *self.orders.entry(prime_power).or_default() += count;
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Self {
        let mut g = self.clone();
        for (&q, &c) in &other.orders {
            g.push(q, c);
        }
        g
    }

    /// Multiplicity of the cyclic factor `Z/q`.
    pub fn multiplicity(&self, q: u64) -> usize {
        self.orders.get(&q).copied().unwrap_or(0)
    }

    /// `(prime power, multiplicity)` pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.orders.iter().map(|(&q, &c)| (q, c))
    }

    /// All cyclic factors with repetition, in increasing order.
    pub fn cyclic_orders(&self) -> Vec<u64> {
        self.iter()
            .flat_map(|(q, c)| std::iter::repeat_n(q, c))
            .collect()
    }

    pub fn order(&self) -> u128 {
        self.iter().fold(1u128, |acc, (q, c)| {
            acc.saturating_mul(u128::from(q).saturating_pow(c as u32))
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .cyclic_orders()
            .iter()
            .map(|q| format!("Z/{q}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `Z/8 + Z/8 + Z/3`. Factors need not be prime powers.
    fn from_str(s: &str) -> Result<Self> {
        let mut orders = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let n = part
                .strip_prefix("Z/")
                .or_else(|| part.strip_prefix("z/"))
                .ok_or_else(|| Error::Parse(format!("expected Z/<n>, got {part:?}")))?;
            let n: u64 = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cyclic order {n:?}")))?;
            orders.push(n);
        }
        Self::from_cyclic_orders(orders)
    }
}

/// True when every entry is a prime power (always holds for parsed values).
#[cfg(test)]
fn is_normalized(g: &GroupSpec) -> bool {
    g.iter()
        .all(|(q, _)| crate::ring::int::prime_power(q).is_some())
}
