//! Moore partition refinement.

use std::collections::HashMap;

use super::Dfao;

pub(super) fn minimize(a: &Dfao) -> Dfao {
    let a = a.canonical();
    let n = a.len();
    let pu = a.p.as_usize();

    // Initial partition by output.
    let mut class = relabel(a.output.iter().map(|&o| vec![o as usize]));
    let mut count = distinct(&class);
    loop {
        let refined = relabel((0..n).map(|s| {
            let mut sig = Vec::with_capacity(pu + 1);
            sig.push(class[s]);
            sig.extend(a.next[s].iter().map(|&t| class[t]));
            sig
        }));
        let refined_count = distinct(&refined);
        class = refined;
        if refined_count == count {
            break;
        }
        count = refined_count;
    }

    let mut next = vec![Vec::new(); count];
    let mut output = vec![0; count];
    for s in 0..n {
        let c = class[s];
        if next[c].is_empty() {
            next[c] = a.next[s].iter().map(|&t| class[t]).collect();
            output[c] = a.output[s];
        }
    }
    Dfao {
        p: a.p,
        start: class[a.start],
        next,
        output,
    }
    .canonical()
}

/// Numbers signatures in order of first appearance.
fn relabel<I>(sigs: I) -> Vec<usize>
where
    I: Iterator<Item = Vec<usize>>,
{
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    sigs.map(|sig| {
        let next = ids.len();
        *ids.entry(sig).or_insert(next)
    })
    .collect()
}

fn distinct(class: &[usize]) -> usize {
    class.iter().max().map_or(0, |&m| m + 1)
}
