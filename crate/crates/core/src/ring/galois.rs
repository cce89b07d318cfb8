//! Galois rings `(Z/p^m)[x]/(Q)` with `Q` monic and irreducible modulo `p`.

use super::int::{inv_mod, is_prime, mul_mod};
use crate::error::{Error, Result};

/// Parameters of a Galois ring `GR(p^m, r)` together with its defining modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaloisSpec {
    p: u64,
    m: u32,
    /// Low coefficients `q_0 .. q_{r-1}` of the monic modulus, each in `[0, p^m)`.
    modulus: Vec<u64>,
    pm: u64,
}

impl GaloisSpec {
    /// `GR(p^m, r)` built on the first monic degree-`r` polynomial over `F_p`
    /// that is irreducible, in the order where the polynomial is read as a
    /// base-`p` integer with the constant coefficient least significant.
    pub fn new(p: u64, m: u32, r: usize) -> Result<Self> {
        check_params(p, m, r)?;
        let mut low = vec![0u64; r];
        loop {
            let mut q = low.clone();
            q.push(1);
            if fp_is_irreducible(&q, p) {
                return Self::with_modulus(p, m, &low);
            }
            // increment the base-p counter, constant coefficient fastest
            let mut i = 0;
            loop {
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
                if i == r {
                    unreachable!("irreducible polynomials exist in every degree");
                }
            }
        }
    }

    /// `GR(p^m, r)` with an explicit modulus `x^r + low[r-1] x^{r-1} + ... + low[0]`.
    pub fn with_modulus(p: u64, m: u32, low: &[u64]) -> Result<Self> {
        let r = low.len();
        check_params(p, m, r)?;
        let pm = p
            .checked_pow(m)
            .ok_or_else(|| Error::InvalidSpec(format!("{p}^{m} overflows")))?;
        if low.iter().any(|&c| c >= pm) {
            return Err(Error::InvalidSpec(format!(
                "modulus coefficients must lie in [0, {pm})"
            )));
        }
        let mut reduced: Vec<u64> = low.iter().map(|c| c % p).collect();
        reduced.push(1);
        if !fp_is_irreducible(&reduced, p) {
            return Err(Error::InvalidSpec(format!(
                "modulus is not irreducible modulo {p}"
            )));
        }
        Ok(Self {
            p,
            m,
            modulus: low.to_vec(),
            pm,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn r(&self) -> usize {
        self.modulus.len()
    }

    /// The characteristic `p^m`.
    pub fn pm(&self) -> u64 {
        self.pm
    }

    /// Low coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// True when the modulus is the one [`GaloisSpec::new`] would choose.
    pub fn has_default_modulus(&self) -> bool {
        Self::new(self.p, self.m, self.r())
            .map(|g| g.modulus == self.modulus)
            .unwrap_or(false)
    }

    pub(crate) fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.pm).collect()
    }

    pub(crate) fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().map(|a| (self.pm - a) % self.pm).collect()
    }

    pub(crate) fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a + self.pm - b) % self.pm)
            .collect()
    }

    pub(crate) fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let r = self.r();
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(a, b, self.pm)) % self.pm;
            }
        }
        self.reduce(prod)
    }

    /// Reduces a polynomial of any degree modulo the monic modulus.
    pub(crate) fn reduce(&self, mut poly: Vec<u64>) -> Vec<u64> {
        let r = self.r();
        for k in (r..poly.len()).rev() {
            let c = poly[k] % self.pm;
            poly[k] = 0;
            if c == 0 {
                continue;
            }
            // x^k = x^{k-r} * x^r and x^r = -(q_0 + ... + q_{r-1} x^{r-1})
            for (i, &q) in self.modulus.iter().enumerate() {
                let t = mul_mod(c, q, self.pm);
                let slot = &mut poly[k - r + i];
                *slot = (*slot % self.pm + self.pm - t) % self.pm;
            }
        }
        poly.resize(r, 0);
        for c in &mut poly {
            *c %= self.pm;
        }
        poly
    }

    pub(crate) fn is_unit(&self, x: &[u64]) -> bool {
        x.iter().any(|c| c % self.p != 0)
    }

    /// Inverts in the residue field `F_p[x]/(q mod p)`, then lifts to `p^m`
    /// by Newton iteration `y <- y (2 - x y)`.
    pub(crate) fn inverse(&self, x: &[u64]) -> Option<Vec<u64>> {
        if !self.is_unit(x) {
            return None;
        }
        let p = self.p;
        let xbar: Vec<u64> = x.iter().map(|c| c % p).collect();
        let mut qbar: Vec<u64> = self.modulus.iter().map(|c| c % p).collect();
        qbar.push(1);
        let ybar = fp_inverse_mod(&xbar, &qbar, p)?;
        let mut y = ybar;
        y.resize(self.r(), 0);
        let mut one = vec![0u64; self.r()];
        one[0] = 1;
        let two: Vec<u64> = one.iter().map(|c| (2 * c) % self.pm).collect();
        // precision doubles each round, so 64 rounds is far beyond any u64 modulus
        for _ in 0..64 {
            let xy = self.mul(x, &y);
            if xy == one {
                return Some(y);
            }
            y = self.mul(&y, &self.sub(&two, &xy));
        }
        None
    }
}

fn check_params(p: u64, m: u32, r: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not prime")));
    }
    if m == 0 || r == 0 {
        return Err(Error::InvalidSpec("m and r must be at least 1".into()));
    }
    Ok(())
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b` over `F_p`; `b` must be nonzero.
fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p).expect("p is prime");
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = mul_mod(*rem.last().unwrap(), lead_inv, p);
        quot[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            rem[shift + i] = (rem[shift + i] + p - mul_mod(c, bi, p)) % p;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Inverse of `a` in `F_p[x]/(q)` by the extended Euclidean algorithm.
fn fp_inverse_mod(a: &[u64], q: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut old_r, mut r) = (trim(a.to_vec()), trim(q.to_vec()));
    let (mut old_s, mut s) = (vec![1u64], Vec::new());
    // invariant: old_s * a = old_r (mod q)
    while !r.is_empty() {
        let (quot, rem) = fp_divrem(&old_r, &r, p);
        old_r = std::mem::replace(&mut r, rem);
        let next_s = fp_sub(&old_s, &fp_mul(&quot, &s, p), p);
        old_s = std::mem::replace(&mut s, next_s);
    }
    if old_r.len() != 1 {
        return None;
    }
    let c = inv_mod(old_r[0], p)?;
    let scaled: Vec<u64> = old_s.iter().map(|&v| mul_mod(v, c, p)).collect();
    Some(fp_divrem(&scaled, q, p).1)
}

fn fp_powmod(base: &[u64], mut e: u64, q: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_divrem(base, q, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_divrem(&fp_mul(&acc, &b, p), q, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), q, p).1;
        e >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test: `q` of degree `r` is irreducible over `F_p`
/// iff `gcd(x^{p^i} - x, q) = 1` for every `1 <= i <= r/2`.
pub(crate) fn fp_is_irreducible(q: &[u64], p: u64) -> bool {
    let q = trim(q.to_vec());
    let r = match q.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if r == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=r / 2 {
        h = fp_powmod(&h, p, &q, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &q, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
