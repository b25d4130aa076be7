use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Characteristic string of `S ⊆ [N]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OracleSet {
    members: Vec<bool>,
}

impl OracleSet {
    pub fn new(members: Vec<bool>) -> Result<Self> {
        if !members.iter().any(|&b| b) {
            return Err(Error::Precondition("S must be nonempty".into()));
        }
        Ok(OracleSet { members })
    }

    /// 0-based element indices.
    pub fn from_indices(n: usize, elems: &[usize]) -> Result<Self> {
        let mut members = vec![false; n];
        for &e in elems {
            if e >= n {
                return Err(Error::Precondition(format!("element {e} outside [0, {n})")));
            }
            members[e] = true;
        }
        Self::new(members)
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }
}

/// `|S⟩^{⊗R}` with the first copy as the most significant digit.
pub fn prepare_subset_state(s: &OracleSet, r: usize) -> DVector<Complex64> {
    let n = s.n();
    let amp = Complex64::new(1.0 / (s.size() as f64).sqrt(), 0.0);
    let single = DVector::from_iterator(
        n,
        (0..n).map(|i| {
            if s.contains(i) {
                amp
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
    );
    let mut state = DVector::from_element(1, Complex64::new(1.0, 0.0));
    for _ in 0..r {
        state = state.kronecker(&single);
    }
    state
}

/// All `k`-subsets of `[n]` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = OracleSet::from_indices(2, &[1]).unwrap();
        let v = prepare_subset_state(&s, 1);
        assert_eq!(v[1], Complex64::new(1.0, 0.0));
        let s = OracleSet::from_indices(2, &[0, 1]).unwrap();
        let v = prepare_subset_state(&s, 1);
        assert!((v[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        let s = OracleSet::from_indices(5, &[0, 2, 3]).unwrap();
        let v = prepare_subset_state(&s, 3);
        assert_eq!(v.len(), 125);
        assert!((v.norm() - 1.0).abs() < 1e-12);
        assert!(OracleSet::new(vec![false; 3]).is_err());
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
    }
}
