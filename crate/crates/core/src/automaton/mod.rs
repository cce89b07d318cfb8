//! Finite Mealy automata and the automaton `A_f` of a rational series.

mod build;
mod equiv;
mod export;
mod minimize;

pub use build::build_af;
pub use equiv::{equivalent, find_isomorphism, Isomorphism};
pub use export::{AutomatonDocument, DocumentEdge, DocumentParams};
pub use minimize::{minimize, state_classes};

use std::collections::HashSet;

use crate::error::{Error, Result};

/// A finite word, as letter indices.
pub type Word = Vec<usize>;

/// Splits a comma-separated word of element strings, ignoring commas inside
/// parentheses so product elements like `(1,2)` stay whole. The empty string
/// is the empty word.
pub fn split_word(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        return Vec::new();
    }
    crate::ring::split_top_level(s)
        .into_iter()
        .map(str::trim)
        .collect()
}

/// A Mealy automaton `(Q, X, delta, lambda)` with labelled states and letters.
///
/// Both tables are stored row-major: entry `q * |X| + x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mealy {
    states: Vec<String>,
    alphabet: Vec<String>,
    delta: Vec<usize>,
    lambda: Vec<usize>,
}

fn is_permutation(values: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for v in values {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    seen.iter().all(|&s| s)
}

impl Mealy {
    /// Builds an automaton from row-major tables, checking totality, index
    /// ranges and label uniqueness.
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        delta: Vec<usize>,
        lambda: Vec<usize>,
    ) -> Result<Self> {
        let (nq, nx) = (states.len(), alphabet.len());
        if nq == 0 || nx == 0 {
            return Err(Error::InvalidAutomaton(
                "empty state set or alphabet".into(),
            ));
        }
        if delta.len() != nq * nx || lambda.len() != nq * nx {
            return Err(Error::InvalidAutomaton(format!(
                "tables must have {} entries",
                nq * nx
            )));
        }
        if delta.iter().any(|&q| q >= nq) {
            return Err(Error::InvalidAutomaton(
                "transition target out of range".into(),
            ));
        }
        if lambda.iter().any(|&x| x >= nx) {
            return Err(Error::InvalidAutomaton("output letter out of range".into()));
        }
        for labels in [&states, &alphabet] {
            if labels.iter().collect::<HashSet<_>>().len() != labels.len() {
                return Err(Error::InvalidAutomaton("duplicate label".into()));
            }
        }
        Ok(Self {
            states,
            alphabet,
            delta,
            lambda,
        })
    }

    /// Unlabelled automaton with states and letters named by their index.
    pub fn from_tables(
        num_states: usize,
        num_letters: usize,
        delta: Vec<usize>,
        lambda: Vec<usize>,
    ) -> Result<Self> {
        Self::new(
            (0..num_states).map(|q| q.to_string()).collect(),
            (0..num_letters).map(|x| x.to_string()).collect(),
            delta,
            lambda,
        )
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn letter_index(&self, label: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == label)
    }

    /// `delta(q, x)`. Panics on out-of-range indices.
    pub fn delta(&self, q: usize, x: usize) -> usize {
        assert!(x < self.num_letters());
        self.delta[q * self.num_letters() + x]
    }

    /// `lambda(q, x)`. Panics on out-of-range indices.
    pub fn lambda(&self, q: usize, x: usize) -> usize {
        assert!(x < self.num_letters());
        self.lambda[q * self.num_letters() + x]
    }

    pub(crate) fn delta_row(&self, q: usize) -> &[usize] {
        let n = self.num_letters();
        &self.delta[q * n..(q + 1) * n]
    }

    pub(crate) fn lambda_row(&self, q: usize) -> &[usize] {
        let n = self.num_letters();
        &self.lambda[q * n..(q + 1) * n]
    }

    /// Edges `(from, in, out, to)` in state-major, letter-minor order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        (0..self.num_states()).flat_map(move |q| {
            (0..self.num_letters()).map(move |x| (q, x, self.lambda(q, x), self.delta(q, x)))
        })
    }

    /// `lambda_q(x_0 x_1 ... x_n) = lambda_q(x_0) lambda_{delta(q, x_0)}(x_1 ... x_n)`.
    pub fn run(&self, q: usize, word: &[usize]) -> Result<Word> {
        Ok(self.run_with_end(q, word)?.0)
    }

    /// Like [`Mealy::run`], also returning the state reached after the word.
    pub fn run_with_end(&self, mut q: usize, word: &[usize]) -> Result<(Word, usize)> {
        if q >= self.num_states() {
            return Err(Error::InvalidState(q));
        }
        let mut out = Vec::with_capacity(word.len());
        for &x in word {
            if x >= self.num_letters() {
                return Err(Error::InvalidLetter(x));
            }
            out.push(self.lambda(q, x));
            q = self.delta(q, x);
        }
        Ok((out, q))
    }

    /// Every state function `lambda_q` is a permutation of the alphabet.
    pub fn is_invertible(&self) -> bool {
        (0..self.num_states())
            .all(|q| is_permutation(self.lambda_row(q).iter().copied(), self.num_letters()))
    }

    /// The inverse automaton: input and output letters swap on every edge.
    pub fn invert(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let n = self.num_letters();
        let mut delta = vec![0; self.delta.len()];
        let mut lambda = vec![0; self.lambda.len()];
        for (q, x, y, p) in self.edges() {
            delta[q * n + y] = p;
            lambda[q * n + y] = x;
        }
        Ok(Self {
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            delta,
            lambda,
        })
    }

    /// The dual `(X, Q, lambda, delta)`: states and letters trade places.
    pub fn dual(&self) -> Self {
        let (nq, nx) = (self.num_states(), self.num_letters());
        let mut delta = vec![0; nq * nx];
        let mut lambda = vec![0; nq * nx];
        for (q, x, y, p) in self.edges() {
            delta[x * nq + q] = y;
            lambda[x * nq + q] = p;
        }
        Self {
            states: self.alphabet.clone(),
            alphabet: self.states.clone(),
            delta,
            lambda,
        }
    }

    /// Every `delta_x` permutes the states. Checked on the columns of the
    /// transition table directly.
    pub fn is_reversible(&self) -> Result<bool> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok((0..self.num_letters()).all(|x| {
            is_permutation(
                (0..self.num_states()).map(|q| self.delta(q, x)),
                self.num_states(),
            )
        }))
    }

    /// Reversible, and the inverse automaton is reversible too.
    pub fn is_bireversible(&self) -> Result<bool> {
        Ok(self.is_reversible()? && self.invert()?.is_reversible()?)
    }

    /// Same tables under new labels.
    pub fn relabel(&self, states: Vec<String>, alphabet: Vec<String>) -> Result<Self> {
        Self::new(states, alphabet, self.delta.clone(), self.lambda.clone())
    }
}
