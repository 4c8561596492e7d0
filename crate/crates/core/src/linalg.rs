//! Incremental row reduction over F_p.

use crate::field::Prime;

/// Outcome of offering a vector to an [`IncrementalBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Insertion {
    /// The vector is `Σ coords[k] * basis[k]` (coords sized to the basis at
    /// the time of the call).
    Dependent(Vec<u32>),
    /// The vector was independent and is now basis element `index`.
    Added(usize),
}

#[derive(Debug, Clone)]
struct EchelonRow {
    pivot: usize,
    /// Pivot entry normalized to 1.
    vec: Vec<u32>,
    /// `vec = Σ combo[k] * basis[k]`.
    combo: Vec<u32>,
}

/// A growing list of linearly independent vectors, kept alongside an echelon
/// form that expresses each echelon row in terms of the original vectors.
#[derive(Debug, Clone)]
pub(crate) struct IncrementalBasis {
    p: Prime,
    width: usize,
    rows: Vec<EchelonRow>,
}

impl IncrementalBasis {
    pub fn new(p: Prime, width: usize) -> Self {
        IncrementalBasis {
            p,
            width,
            rows: Vec::new(),
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Residual and coordinates of `v` against the current basis.
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        assert_eq!(v.len(), self.width, "vector width");
        let p = self.p;
        let mut residual = v.to_vec();
        let mut coords = vec![0u32; self.rows.len()];
        for row in &self.rows {
            let c = residual[row.pivot];
            if c == 0 {
                continue;
            }
            let neg = p.neg(c);
            for (x, &y) in residual[row.pivot..].iter_mut().zip(&row.vec[row.pivot..]) {
                *x = p.mul_add(*x, neg, y);
            }
            for (x, &y) in coords.iter_mut().zip(&row.combo) {
                *x = p.mul_add(*x, c, y);
            }
        }
        (residual, coords)
    }

    pub fn insert(&mut self, v: &[u32]) -> Insertion {
        let (residual, coords) = self.reduce(v);
        let Some(pivot) = residual.iter().position(|&x| x != 0) else {
            return Insertion::Dependent(coords);
        };
        let p = self.p;
        let index = self.rows.len();
        let inv = p.inv(residual[pivot]).expect("nonzero pivot");
        let vec = residual.iter().map(|&x| p.mul(x, inv)).collect();
        // residual = basis[index] - Σ coords[k] basis[k]
        let mut combo: Vec<u32> = coords.iter().map(|&c| p.mul(p.neg(c), inv)).collect();
        combo.push(inv);
        for row in &mut self.rows {
            row.combo.push(0);
        }
        self.rows.push(EchelonRow { pivot, vec, combo });
        Insertion::Added(index)
    }
}

/// Row vector times matrix over F_p.
pub(crate) fn vec_mat(p: Prime, v: &[u32], m: &[Vec<u32>]) -> Vec<u32> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![0u32; cols];
    for (&c, row) in v.iter().zip(m) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = p.mul_add(*o, c, x);
        }
    }
    out
}

pub(crate) fn dot(p: Prime, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| p.mul_add(acc, x, y))
}

pub(crate) fn rank(p: Prime, rows: &[Vec<u32>]) -> usize {
    let mut basis = IncrementalBasis::new(p, rows.first().map_or(0, Vec::len));
    rows.iter()
        .filter(|r| matches!(basis.insert(r), Insertion::Added(_)))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn combine(p: Prime, coords: &[u32], basis: &[Vec<u32>], width: usize) -> Vec<u32> {
        let mut out = vec![0; width];
        for (&c, b) in coords.iter().zip(basis) {
            for (o, &x) in out.iter_mut().zip(b) {
                *o = p.mul_add(*o, c, x);
            }
        }
        out
    }

    #[test]
    fn detects_dependency() {
        let p = Prime::new(3).unwrap();
        let mut b = IncrementalBasis::new(p, 3);
        assert_eq!(b.insert(&[1, 2, 0]), Insertion::Added(0));
        assert_eq!(b.insert(&[0, 1, 1]), Insertion::Added(1));
        // 2*(1,2,0) + (0,1,1) = (2, 2, 1)
        assert_eq!(b.insert(&[2, 2, 1]), Insertion::Dependent(vec![2, 1]));
        assert_eq!(b.insert(&[0, 0, 0]), Insertion::Dependent(vec![0, 0]));
        assert_eq!(b.len(), 2);
    }

    proptest! {
        #[test]
        fn coordinates_reconstruct(
            rows in prop::collection::vec(prop::collection::vec(0u32..5, 6), 1..12)
        ) {
            let p = Prime::new(5).unwrap();
            let mut b = IncrementalBasis::new(p, 6);
            let mut kept: Vec<Vec<u32>> = Vec::new();
            for r in &rows {
                match b.insert(r) {
                    Insertion::Added(i) => {
                        prop_assert_eq!(i, kept.len());
                        kept.push(r.clone());
                    }
                    Insertion::Dependent(c) => {
                        prop_assert_eq!(&combine(p, &c, &kept, 6), r);
                    }
                }
            }
            prop_assert!(kept.len() <= 6);
        }
    }
}
