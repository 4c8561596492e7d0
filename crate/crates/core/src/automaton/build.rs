use std::collections::{HashMap, VecDeque};

use crate::algebraic::BranchSpec;
use crate::error::{Error, Result};
use crate::kernel::{ClosureConfig, DigitPath, KernelRepresentation, RootExpansion};
use crate::weeding::{section_raw, SectionIndex};

use super::Dfao;

/// One state per distinct series in the orbit of the branch under all
/// sections, compared on the first `n_eq` coefficients. The output of a state
/// is its constant term and reading digit `d` applies `Λ_d`.
pub fn build_dfao(spec: &BranchSpec, cfg: &ClosureConfig) -> Result<Dfao> {
    cfg.validate()?;
    let p = spec.prime();
    let pu = p.as_usize();
    let n_eq = cfg.n_eq;
    let mut root = RootExpansion::new(spec, n_eq * pu)?;

    let f = root.state(&[], n_eq)?;
    let mut ids: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut paths = vec![DigitPath::default()];
    let mut output = vec![f.residues()[0]];
    ids.insert(f.residues().to_vec(), 0);
    let mut next: Vec<Vec<usize>> = Vec::new();

    let mut i = 0;
    while i < paths.len() {
        let path = paths[i].clone();
        let raw: Vec<usize> = path.digits().iter().map(|d| d.get()).collect();
        let parent = root.state(&raw, pu * n_eq)?;
        let mut row = Vec::with_capacity(pu);
        for d in 0..pu {
            let child = section_raw(&parent, d).truncate(n_eq);
            let id = match ids.get(child.residues()) {
                Some(&id) => id,
                None => {
                    if paths.len() >= cfg.max_states {
                        return Err(Error::StateCapExceeded(cfg.max_states));
                    }
                    let id = paths.len();
                    ids.insert(child.residues().to_vec(), id);
                    paths.push(path.child(SectionIndex::new(d, p)?));
                    output.push(child.residues()[0]);
                    id
                }
            };
            row.push(id);
        }
        next.push(row);
        i += 1;
    }
    Dfao::new(p, 0, next, output)
}

/// The coordinate-vector machine: states are the vectors reachable from the
/// initial vector under the digit matrices, output is the dot product with
/// the constant terms of the basis.
pub fn dfao_from_linear(rep: &KernelRepresentation, max_states: usize) -> Result<Dfao> {
    let p = rep.prime();
    let pu = p.as_usize();
    let alpha0 = rep.initial_vector().to_vec();
    let mut ids: HashMap<Vec<u32>, usize> = HashMap::from([(alpha0.clone(), 0)]);
    let mut states = vec![alpha0];
    let mut next = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let mut row = Vec::with_capacity(pu);
        for d in 0..pu {
            let t = rep.step_raw(&states[s], d);
            let id = match ids.get(&t) {
                Some(&id) => id,
                None => {
                    if states.len() >= max_states {
                        return Err(Error::StateCapExceeded(max_states));
                    }
                    let id = states.len();
                    ids.insert(t.clone(), id);
                    states.push(t);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        next.push(row);
    }
    let output = states.iter().map(|a| rep.output_raw(a)).collect();
    Dfao::new(p, 0, next, output)
}
