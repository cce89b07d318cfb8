use std::collections::HashSet;

use super::{minimize, Mealy};

/// Bijections witnessing that two minimized automata coincide:
/// `states[q]` is the image of state `q`, `letters[x]` the image of letter `x`
/// (applied to inputs and outputs alike).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub states: Vec<usize>,
    pub letters: Vec<usize>,
}

/// True iff the minimal automata of `m1` and `m2` are isomorphic under a
/// state bijection together with a single letter bijection.
pub fn equivalent(m1: &Mealy, m2: &Mealy) -> bool {
    find_isomorphism(m1, m2).is_some()
}

/// Searches for an [`Isomorphism`] between `minimize(m1)` and `minimize(m2)`.
/// The returned bijections index the states of the minimized automata.
pub fn find_isomorphism(m1: &Mealy, m2: &Mealy) -> Option<Isomorphism> {
    let (a, b) = (minimize(m1), minimize(m2));
    if a.num_states() != b.num_states() || a.num_letters() != b.num_letters() {
        return None;
    }
    let mut search = Search::new(&a, &b);
    if search.solve() {
        Some(Isomorphism {
            states: search.phi.iter().map(|p| p.unwrap()).collect(),
            letters: search.psi.iter().map(|p| p.unwrap()).collect(),
        })
    } else {
        None
    }
}

/// Invariants preserved by any isomorphism, used to prune candidate images.
fn state_signature(m: &Mealy, q: usize) -> (usize, usize) {
    let fixed = (0..m.num_letters())
        .filter(|&x| m.lambda(q, x) == x)
        .count();
    let loops = (0..m.num_letters()).filter(|&x| m.delta(q, x) == q).count();
    (fixed, loops)
}

fn letter_signature(m: &Mealy, x: usize) -> (usize, usize) {
    let fixed = (0..m.num_states()).filter(|&q| m.lambda(q, x) == x).count();
    let loops = (0..m.num_states()).filter(|&q| m.delta(q, x) == q).count();
    (fixed, loops)
}

/// Signatures of the automaton being matched and of the target.
type SigPair = (Vec<(usize, usize)>, Vec<(usize, usize)>);

struct Search<'a> {
    a: &'a Mealy,
    b: &'a Mealy,
    phi: Vec<Option<usize>>,
    psi: Vec<Option<usize>>,
    phi_used: Vec<bool>,
    psi_used: Vec<bool>,
    state_sig: SigPair,
    letter_sig: SigPair,
}

enum Assign {
    State(usize, usize),
    Letter(usize, usize),
}

impl<'a> Search<'a> {
    fn new(a: &'a Mealy, b: &'a Mealy) -> Self {
        let (nq, nx) = (a.num_states(), a.num_letters());
        Self {
            a,
            b,
            phi: vec![None; nq],
            psi: vec![None; nx],
            phi_used: vec![false; nq],
            psi_used: vec![false; nx],
            state_sig: (
                (0..nq).map(|q| state_signature(a, q)).collect(),
                (0..nq).map(|q| state_signature(b, q)).collect(),
            ),
            letter_sig: (
                (0..nx).map(|x| letter_signature(a, x)).collect(),
                (0..nx).map(|x| letter_signature(b, x)).collect(),
            ),
        }
    }

    /// Records an assignment; false on conflict.
    fn assign(&mut self, what: Assign, trail: &mut Vec<Assign>) -> bool {
        match what {
            Assign::State(q, p) => match self.phi[q] {
                Some(existing) => existing == p,
                None if self.phi_used[p] || self.state_sig.0[q] != self.state_sig.1[p] => false,
                None => {
                    self.phi[q] = Some(p);
                    self.phi_used[p] = true;
                    trail.push(Assign::State(q, p));
                    true
                }
            },
            Assign::Letter(x, y) => match self.psi[x] {
                Some(existing) => existing == y,
                None if self.psi_used[y] || self.letter_sig.0[x] != self.letter_sig.1[y] => false,
                None => {
                    self.psi[x] = Some(y);
                    self.psi_used[y] = true;
                    trail.push(Assign::Letter(x, y));
                    true
                }
            },
        }
    }

    fn undo(&mut self, trail: Vec<Assign>) {
        for a in trail.into_iter().rev() {
            match a {
                Assign::State(q, p) => {
                    self.phi[q] = None;
                    self.phi_used[p] = false;
                }
                Assign::Letter(x, y) => {
                    self.psi[x] = None;
                    self.psi_used[y] = false;
                }
            }
        }
    }

    /// Closes the partial assignment under the edge constraints
    /// `phi(delta(q,x)) = delta'(phi q, psi x)` and
    /// `psi(lambda(q,x)) = lambda'(phi q, psi x)`.
    fn propagate(&mut self, trail: &mut Vec<Assign>) -> bool {
        let mut checked = HashSet::new();
        loop {
            let pending: Vec<(usize, usize)> = (0..self.phi.len())
                .filter(|&q| self.phi[q].is_some())
                .flat_map(|q| (0..self.psi.len()).map(move |x| (q, x)))
                .filter(|&(q, x)| self.psi[x].is_some() && !checked.contains(&(q, x)))
                .collect();
            if pending.is_empty() {
                return true;
            }
            for (q, x) in pending {
                checked.insert((q, x));
                let (p, y) = (self.phi[q].unwrap(), self.psi[x].unwrap());
                let ok = self.assign(Assign::State(self.a.delta(q, x), self.b.delta(p, y)), trail)
                    && self.assign(
                        Assign::Letter(self.a.lambda(q, x), self.b.lambda(p, y)),
                        trail,
                    );
                if !ok {
                    return false;
                }
            }
        }
    }

    fn solve(&mut self) -> bool {
        let mut trail = Vec::new();
        if !self.propagate(&mut trail) {
            self.undo(trail);
            return false;
        }
        let choice = if let Some(q) = self.phi.iter().position(Option::is_none).filter(|_| {
            self.phi.iter().all(Option::is_none) || self.psi.iter().all(Option::is_some)
        }) {
            Some((true, q))
        } else {
            self.psi
                .iter()
                .position(Option::is_none)
                .map(|x| (false, x))
        };
        let Some((is_state, idx)) = choice else {
            return true;
        };
        let candidates = if is_state {
            self.phi_used.len()
        } else {
            self.psi_used.len()
        };
        for target in 0..candidates {
            let mut local = Vec::new();
            let what = if is_state {
                Assign::State(idx, target)
            } else {
                Assign::Letter(idx, target)
            };
            if self.assign(what, &mut local) && self.solve() {
                return true;
            }
            self.undo(local);
        }
        self.undo(trail);
        false
    }
}
