use std::collections::BTreeMap;

use super::Scalar;

/// Sparse vector: strictly increasing column indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unsorted, possibly repeated entries; repeated columns are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(items: I) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in items {
            if v.is_zero() {
                continue;
            }
            *acc.entry(c).or_default() += v;
        }
        Self::from_sorted_map(acc)
    }

    pub(crate) fn from_sorted_map(map: BTreeMap<usize, Scalar>) -> Self {
        SparseVec { entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect() }
    }

    /// Caller guarantees sorted, deduplicated, nonzero entries.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect(),
        }
    }

    pub fn unit(col: usize) -> Self {
        SparseVec { entries: vec![(col, Scalar::one())] }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(c, v)| (*c, v))
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn get(&self, col: usize) -> Option<&Scalar> {
        self.entries.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &self.entries[i].1)
    }

    pub fn scale(&self, k: &Scalar) -> SparseVec {
        if k.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(c, v)| (*c, v * k)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(c, v)| (*c, -v)).collect() }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &Scalar, other: &SparseVec) -> SparseVec {
        if k.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, k * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(k * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&-Scalar::one(), other)
    }

    pub fn dot_dense(&self, dense: &[Scalar]) -> Scalar {
        self.entries.iter().map(|(c, v)| v * &dense[*c]).sum()
    }

    pub fn map_cols<F: Fn(usize) -> usize>(&self, f: F) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(c, v)| (f(*c), v.clone())))
    }

    /// Divides by the leading coefficient so the leading entry becomes 1.
    pub fn normalized(&self) -> SparseVec {
        match self.leading() {
            None => SparseVec::new(),
            Some((_, lead)) if lead.is_one() => self.clone(),
            Some((_, lead)) => {
                let inv = lead.recip().expect("leading entry is nonzero");
                self.scale(&inv)
            }
        }
    }
}

impl FromIterator<(usize, Scalar)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (usize, Scalar)>>(iter: I) -> Self {
        SparseVec::from_entries(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn merge_cancels() {
        let a = SparseVec::from_entries([(0, s(1)), (3, s(2))]);
        let b = SparseVec::from_entries([(3, s(1)), (5, s(4))]);
        let c = a.add_scaled(&s(-2), &b);
        assert_eq!(c.entries(), &[(0, s(1)), (5, s(-8))]);
    }

    #[test]
    fn duplicates_summed() {
        let a = SparseVec::from_entries([(2, s(1)), (2, s(-1)), (1, s(3))]);
        assert_eq!(a.entries(), &[(1, s(3))]);
    }
}
