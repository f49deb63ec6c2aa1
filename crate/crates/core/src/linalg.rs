//! Incremental sparse Gaussian elimination over ℚ with combination tracking.

use std::collections::BTreeMap;

use crate::ring::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Rational::zero);
        *e += &(a * v);
        if e.is_zero() {
            y.remove(k);
        }
    }
}

struct PivotRow<K> {
    row: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Row echelon form built one vector at a time. Every stored row remembers
/// which inputs it is a combination of, so dependencies come out as kernel
/// vectors of the input family.
pub struct Eliminator<K: Ord + Clone> {
    pivots: BTreeMap<K, PivotRow<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Eliminator<K> {
    fn default() -> Self {
        Eliminator {
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }
}

impl<K: Ord + Clone> Eliminator<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` by leading-term elimination. Returns the remainder and the
    /// combination of inputs that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut combo = SparseVec::new();
        loop {
            let key = v
                .keys()
                .find(|k| self.pivots.contains_key(*k))
                .cloned();
            let Some(k) = key else { break };
            let c = v[&k].clone();
            let p = &self.pivots[&k];
            axpy(&mut v, &-&c, &p.row);
            axpy(&mut combo, &-&c, &p.combo);
        }
        (v, combo)
    }

    /// Inserts the next input vector (tagged with its insertion index).
    /// Returns a kernel relation `Σ c_i·input_i = 0` if it is dependent.
    pub fn insert(&mut self, v: SparseVec<K>) -> Option<SparseVec<usize>> {
        let tag = self.inserted;
        self.inserted += 1;
        let (rem, mut combo) = self.reduce(v);
        axpy(&mut combo, &Rational::one(), &BTreeMap::from([(tag, Rational::one())]));
        match rem.iter().next() {
            None => Some(combo),
            Some((k, lead)) => {
                let k = k.clone();
                let inv = lead.recip();
                let row = rem.into_iter().map(|(key, x)| (key, &x * &inv)).collect();
                let combo = combo.into_iter().map(|(key, x)| (key, &x * &inv)).collect();
                self.pivots.insert(k, PivotRow { row, combo });
                None
            }
        }
    }

    /// Coefficients `x` with `Σ x_i·input_i = b`, if `b` is in the span.
    pub fn solve(&self, b: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rem, combo) = self.reduce(b.clone());
        if !rem.is_empty() {
            return None;
        }
        Some(combo.into_iter().map(|(k, x)| (k, -x)).collect())
    }

    pub fn contains(&self, b: &SparseVec<K>) -> bool {
        self.reduce(b.clone()).0.is_empty()
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut el = Eliminator::new();
    for v in vectors {
        el.insert(v);
    }
    el.rank()
}

/// Basis of `{x : Σ x_i·v_i = 0}`.
pub fn kernel<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> Vec<SparseVec<usize>> {
    let mut el = Eliminator::new();
    vectors.into_iter().filter_map(|v| el.insert(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec<usize> {
        entries
            .iter()
            .map(|&(k, x)| (k, Rational::from_int(x)))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(0, 2), (1, 4)]), v(&[(1, 1)])];
        assert_eq!(rank(vs.clone()), 2);
        let ker = kernel(vs);
        assert_eq!(ker, vec![v(&[(0, -2), (1, 1)])]);
    }

    #[test]
    fn solve_in_span() {
        let mut el = Eliminator::new();
        el.insert(v(&[(0, 1), (2, 1)]));
        el.insert(v(&[(1, 3)]));
        let x = el.solve(&v(&[(0, 2), (1, 3), (2, 2)])).unwrap();
        assert_eq!(x, v(&[(0, 2), (1, 1)]));
        assert!(el.solve(&v(&[(2, 1)])).is_none());
    }
}
