use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{Context, Result};
use lamplight_core::automaton::split_word;
use lamplight_core::groupcheck::{run_suite, SuiteOptions};
use lamplight_core::{
    build_af, construct_witness, minimize, AutomatonDocument, GroupSpec, Mealy, RingSpec,
    SeriesParams,
};
use serde_json::json;

use crate::{Format, ParamArgs};

fn parse_params(args: &ParamArgs) -> Result<SeriesParams> {
    let ring: RingSpec = args
        .ring
        .parse()
        .with_context(|| format!("ring {:?}", args.ring))?;
    SeriesParams::parse(Arc::new(ring), &args.r, &args.a, &args.b).context("parameters")
}

fn automaton(args: &ParamArgs) -> Result<(SeriesParams, Mealy)> {
    let params = parse_params(args)?;
    let m = build_af(&params)?;
    Ok((params, m))
}

pub fn build(args: &ParamArgs, format: Format) -> Result<String> {
    let (params, m) = automaton(args)?;
    Ok(match format {
        Format::Json => {
            let doc = AutomatonDocument::for_params(&m, &params);
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Dot => m.to_dot(),
        Format::Tsv => format!("{}\n{}", m.transition_tsv(), m.output_tsv()),
    })
}

pub fn tables(args: &ParamArgs, out: &Path) -> Result<String> {
    let (_, m) = automaton(args)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut written = String::new();
    for (name, body) in [
        ("transition.tsv", m.transition_tsv()),
        ("output.tsv", m.output_tsv()),
    ] {
        let path = out.join(name);
        fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        written.push_str(&format!("{}\n", path.display()));
    }
    Ok(written)
}

pub fn check(args: &ParamArgs) -> Result<String> {
    let (_, m) = automaton(args)?;
    let invertible = m.is_invertible();
    let (reversible, inverse_reversible) = if invertible {
        (Some(m.is_reversible()?), Some(m.invert()?.is_reversible()?))
    } else {
        (None, None)
    };
    let report = json!({
        "invertible": invertible,
        "reversible": reversible,
        "inverse_reversible": inverse_reversible,
        "bireversible": reversible.zip(inverse_reversible).map(|(x, y)| x && y),
        "minimized_state_count": minimize(&m).num_states(),
    });
    Ok(format!("{report}\n"))
}

/// Returns the report lines and whether every check passed or was skipped.
pub fn verify(
    args: &ParamArgs,
    depth: usize,
    level: usize,
    seed: u64,
    samples: usize,
) -> Result<(String, bool)> {
    let params = parse_params(args)?;
    let opts = SuiteOptions {
        depth,
        level,
        seed,
        samples,
    };
    let reports = run_suite(&params, &opts);
    let mut out = String::new();
    for r in &reports {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok((out, reports.iter().all(|r| !r.failed())))
}

pub fn classify(group: &str) -> Result<String> {
    let g: GroupSpec = group.parse().with_context(|| format!("group {group:?}"))?;
    let result = construct_witness(&g)?;
    let mut report = result.to_json();
    report["group"] = json!(g.to_string());
    if let Some(w) = &result.witness {
        let ring = w.ring.to_string();
        let (a, b) = (w.ring.render(&w.a), w.ring.render(&w.b));
        report["build_args"] = json!([ring, "--r", "1", "--a", a, "--b", b]);
    }
    Ok(format!("{report}\n"))
}

pub fn run(args: &ParamArgs, state: &str, word: &str) -> Result<String> {
    let (params, m) = automaton(args)?;
    let ring = params.ring();
    let q = ring.index_of(&ring.parse_elem(state).context("state")?)? as usize;
    let letters = split_word(word)
        .into_iter()
        .map(|x| {
            let e = ring
                .parse_elem(x)
                .with_context(|| format!("letter {x:?}"))?;
            Ok(ring.index_of(&e)? as usize)
        })
        .collect::<Result<Vec<_>>>()?;
    let out = m.run(q, &letters)?;
    let rendered: Vec<&str> = out.iter().map(|&x| m.alphabet()[x].as_str()).collect();
    Ok(format!("{}\n", rendered.join(",")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(ring: &str, r: &str, a: &str, b: &str) -> ParamArgs {
        ParamArgs {
            ring: ring.into(),
            r: r.into(),
            a: a.into(),
            b: b.into(),
        }
    }

    #[test]
    fn tsv_tables_are_separated_by_a_blank_line() {
        let out = build(&args("zmod:3", "2", "2", "1"), Format::Tsv).unwrap();
        let parts: Vec<&str> = out.split("\n\n").collect();
        assert_eq!(parts.len(), 2);
        assert!(parts[1].starts_with("state\\letter"));
    }

    #[test]
    fn bad_inputs_are_rejected() {
        assert!(check(&args("zmod:4", "2", "1", "0")).is_err());
        assert!(run(&args("zmod:4", "1", "1", "0"), "z", "").is_err());
    }

    #[test]
    fn trivial_group_is_an_error() {
        assert!(classify("Z/1").is_err());
        assert!(classify("Z/9").unwrap().contains("\"realizable\":true"));
    }
}
