use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Mealy;
use crate::error::{Error, Result};
use crate::series::SeriesParams;

/// The `(r, a, b)` triple as element strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentParams {
    pub r: String,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentEdge {
    pub from: String,
    #[serde(rename = "in")]
    pub input: String,
    #[serde(rename = "out")]
    pub output: String,
    pub to: String,
}

/// Serializable form of an automaton, with every state and letter written
/// as its label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDocument {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<DocumentParams>,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    pub edges: Vec<DocumentEdge>,
}

impl AutomatonDocument {
    /// Document for a bare automaton.
    pub fn new(m: &Mealy) -> Self {
        let edges = m
            .edges()
            .map(|(q, x, y, p)| DocumentEdge {
                from: m.states()[q].clone(),
                input: m.alphabet()[x].clone(),
                output: m.alphabet()[y].clone(),
                to: m.states()[p].clone(),
            })
            .collect();
        Self {
            ring: None,
            params: None,
            alphabet: m.alphabet().to_vec(),
            states: m.states().to_vec(),
            edges,
        }
    }

    /// Document for `A_f`, recording the ring and parameters it came from.
    pub fn for_params(m: &Mealy, params: &SeriesParams) -> Self {
        let ring = params.ring();
        Self {
            ring: Some(ring.to_string()),
            params: Some(DocumentParams {
                r: ring.render(params.r()),
                a: ring.render(params.a()),
                b: ring.render(params.b()),
            }),
            ..Self::new(m)
        }
    }

    /// Rebuilds the automaton. Every (state, letter) pair must appear in
    /// exactly one edge.
    pub fn to_mealy(&self) -> Result<Mealy> {
        let (nq, nx) = (self.states.len(), self.alphabet.len());
        let find = |labels: &[String], l: &str| {
            labels
                .iter()
                .position(|s| s == l)
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown label {l:?}")))
        };
        let mut delta = vec![None; nq * nx];
        let mut lambda = vec![0; nq * nx];
        for e in &self.edges {
            let q = find(&self.states, &e.from)?;
            let x = find(&self.alphabet, &e.input)?;
            let idx = q * nx + x;
            if delta[idx].is_some() {
                return Err(Error::InvalidAutomaton(format!(
                    "duplicate edge from {:?} on {:?}",
                    e.from, e.input
                )));
            }
            delta[idx] = Some(find(&self.states, &e.to)?);
            lambda[idx] = find(&self.alphabet, &e.output)?;
        }
        let delta = delta
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidAutomaton("transition table is not total".into()))?;
        Mealy::new(self.states.clone(), self.alphabet.clone(), delta, lambda)
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl Mealy {
    /// Graphviz source: one node per state, one edge labelled `x|y` per
    /// transition.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
        for s in self.states() {
            let _ = writeln!(out, "  {};", dot_quote(s));
        }
        for (q, x, y, p) in self.edges() {
            let label = format!("{}|{}", self.alphabet()[x], self.alphabet()[y]);
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                dot_quote(&self.states()[q]),
                dot_quote(&self.states()[p]),
                dot_quote(&label)
            );
        }
        out.push_str("}\n");
        out
    }

    fn tsv(&self, cell: impl Fn(usize, usize) -> String) -> String {
        let mut out = String::from("state\\letter");
        for x in self.alphabet() {
            out.push('\t');
            out.push_str(x);
        }
        out.push('\n');
        for (q, s) in self.states().iter().enumerate() {
            out.push_str(s);
            for x in 0..self.num_letters() {
                out.push('\t');
                out.push_str(&cell(q, x));
            }
            out.push('\n');
        }
        out
    }

    /// Transition table as TSV: rows are states, columns letters.
    pub fn transition_tsv(&self) -> String {
        self.tsv(|q, x| self.states()[self.delta(q, x)].clone())
    }

    /// Output table as TSV: rows are states, columns letters.
    pub fn output_tsv(&self) -> String {
        self.tsv(|q, x| self.alphabet()[self.lambda(q, x)].clone())
    }
}
