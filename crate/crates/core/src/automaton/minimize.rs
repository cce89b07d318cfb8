use std::collections::HashMap;

use super::Mealy;

/// Moore partition refinement. Returns, for every state, the index of its
/// equivalence class; classes are numbered in order of first appearance.
///
/// Two states are equivalent iff they define the same map on words.
pub fn state_classes(m: &Mealy) -> Vec<usize> {
    let nq = m.num_states();
    let mut class = number_by_key((0..nq).map(|q| m.lambda_row(q).to_vec()));
    let mut count = class.iter().max().map_or(0, |c| c + 1);
    loop {
        let next = number_by_key((0..nq).map(|q| {
            let mut key = Vec::with_capacity(m.num_letters() + 1);
            key.push(class[q]);
            key.extend(m.delta_row(q).iter().map(|&p| class[p]));
            key
        }));
        let next_count = next.iter().max().map_or(0, |c| c + 1);
        class = next;
        if next_count == count {
            return class;
        }
        count = next_count;
    }
}

fn number_by_key(keys: impl Iterator<Item = Vec<usize>>) -> Vec<usize> {
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    keys.map(|k| {
        let fresh = ids.len();
        *ids.entry(k).or_insert(fresh)
    })
    .collect()
}

/// Quotient by [`state_classes`]. Each class is labelled by its first member.
pub fn minimize(m: &Mealy) -> Mealy {
    let class = state_classes(m);
    let count = class.iter().max().map_or(0, |c| c + 1);
    let mut rep = vec![usize::MAX; count];
    for (q, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = q;
        }
    }
    let nx = m.num_letters();
    let mut delta = Vec::with_capacity(count * nx);
    let mut lambda = Vec::with_capacity(count * nx);
    for &q in &rep {
        delta.extend(m.delta_row(q).iter().map(|&p| class[p]));
        lambda.extend_from_slice(m.lambda_row(q));
    }
    let states = rep.iter().map(|&q| m.states()[q].clone()).collect();
    Mealy::new(states, m.alphabet().to_vec(), delta, lambda).expect("quotient of a valid automaton")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_rows_collapse() {
        let m = Mealy::from_tables(2, 2, vec![0, 1, 0, 1], vec![1, 0, 1, 0]).unwrap();
        let min = minimize(&m);
        assert_eq!(min.num_states(), 1);
        assert_eq!(
            min.run(0, &[0, 1, 1]).unwrap(),
            m.run(1, &[0, 1, 1]).unwrap()
        );
    }

    #[test]
    fn refinement_needs_transitions() {
        // same outputs everywhere, but state 2 moves to a state with different output
        let m = Mealy::from_tables(3, 2, vec![0, 0, 0, 0, 2, 2], vec![0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(state_classes(&m), vec![0, 0, 0]);
        let m = Mealy::from_tables(3, 2, vec![0, 0, 2, 2, 1, 1], vec![0, 1, 0, 1, 1, 0]).unwrap();
        // state 0 loops on identity, state 1 goes to the swap state 2
        assert_eq!(state_classes(&m), vec![0, 1, 2]);
    }

    #[test]
    fn minimize_is_idempotent() {
        let m = Mealy::from_tables(
            4,
            2,
            vec![1, 1, 0, 0, 3, 3, 2, 2],
            vec![0, 1, 1, 0, 0, 1, 1, 0],
        )
        .unwrap();
        let once = minimize(&m);
        assert_eq!(once.num_states(), 2);
        assert_eq!(minimize(&once), once);
    }
}
