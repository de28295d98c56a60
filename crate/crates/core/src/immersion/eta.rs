//! η-sets: grouping of the sums and differences Y_r ± Y_s by value.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::linalg::IntMatrix;

/// One realization Y_r + σ·Y_s = orientation·η with r < s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EtaPair {
    pub r: usize,
    pub s: usize,
    pub sigma: i8,
    pub orientation: i8,
}

/// All η ∈ E with their η-sets, keyed by the canonical η (first nonzero
/// entry positive) in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EtaSystem {
    entries: BTreeMap<Vec<i64>, Vec<EtaPair>>,
}

impl EtaSystem {
    pub fn entries(&self) -> &BTreeMap<Vec<i64>, Vec<EtaPair>> {
        &self.entries
    }

    pub fn get(&self, eta: &[i64]) -> Option<&[EtaPair]> {
        self.entries.get(eta).map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &Vec<EtaPair>)> {
        self.entries.iter()
    }

    /// Total number of pairs; 2·C(N, 2) for N columns.
    pub fn pair_count(&self) -> usize {
        self.entries.values().map(|v| v.len()).sum()
    }
}

/// Flips `v` so that its first nonzero entry is positive; returns the sign
/// applied.
pub fn canonicalize(v: &mut [i64]) -> i8 {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => {
            for e in v.iter_mut() {
                *e = -*e;
            }
            -1
        }
        _ => 1,
    }
}

pub fn eta_sets(y: &IntMatrix) -> EtaSystem {
    let mut entries: BTreeMap<Vec<i64>, Vec<EtaPair>> = BTreeMap::new();
    let cols = y.columns();
    for r in 0..cols.len() {
        for s in r + 1..cols.len() {
            for sigma in [1i8, -1] {
                let mut eta: Vec<i64> = cols[r]
                    .iter()
                    .zip(&cols[s])
                    .map(|(a, b)| a + i64::from(sigma) * b)
                    .collect();
                let orientation = canonicalize(&mut eta);
                entries.entry(eta).or_default().push(EtaPair {
                    r,
                    s,
                    sigma,
                    orientation,
                });
            }
        }
    }
    EtaSystem { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_basis_vectors() {
        let sys = eta_sets(&IntMatrix::identity(2));
        assert_eq!(sys.len(), 2);
        assert!(sys.iter().all(|(_, p)| p.len() == 1));
        let diff = sys.get(&[1, -1]).unwrap()[0];
        assert_eq!((diff.sigma, diff.orientation), (-1, 1));
    }

    #[test]
    fn orientation_tracks_the_sign_flip() {
        let y = IntMatrix::from_columns(2, vec![vec![-1, 0], vec![0, -1]]).unwrap();
        let sys = eta_sets(&y);
        let p = sys.get(&[1, 1]).unwrap()[0];
        assert_eq!((p.sigma, p.orientation), (1, -1));
    }
}
