use crate::error::{Error, Result};
use crate::linalg::{ClusterStats, PointSet};

/// A partition of `0..n` into non-empty parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clustering {
    n: usize,
    labels: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl Clustering {
    /// Parts are ordered by increasing label value; labels need not be
    /// contiguous.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut distinct: Vec<usize> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let mut parts = vec![Vec::new(); distinct.len()];
        let mut compact = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let k = distinct.binary_search(l).expect("label present");
            parts[k].push(i);
            compact.push(k);
        }
        Ok(Clustering {
            n: labels.len(),
            labels: compact,
            parts,
        })
    }

    pub fn from_parts(parts: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (k, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::EmptySubset);
            }
            for &i in part {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                if labels[i] != usize::MAX {
                    return Err(Error::NotAPartition { index: i });
                }
                labels[i] = k;
            }
        }
        if let Some(index) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidParameter(format!(
                "point {index} belongs to no part"
            )));
        }
        let mut parts = parts;
        parts.iter_mut().for_each(|p| p.sort_unstable());
        Ok(Clustering { n, labels, parts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// Compact labels in `0..k`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn check_against(&self, p: &PointSet) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::DimMismatch {
                expected: p.n(),
                got: self.n,
            });
        }
        Ok(())
    }

    pub fn stats(&self, p: &PointSet) -> Result<Vec<ClusterStats>> {
        self.check_against(p)?;
        self.parts
            .iter()
            .map(|part| ClusterStats::compute(p, part))
            .collect()
    }
}

/// Smallest part size as a fraction of `n`.
pub fn min_weight(clusters: &Clustering) -> f64 {
    let smallest = clusters.parts().iter().map(Vec::len).min().unwrap_or(0);
    smallest as f64 / clusters.n() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_weight_examples() {
        assert_eq!(
            min_weight(&Clustering::from_labels(&[0, 0, 0]).unwrap()),
            1.0
        );
        assert_eq!(
            min_weight(&Clustering::from_labels(&[1, 0, 0, 0]).unwrap()),
            0.25
        );
        let labels = [0, 0, 1, 1, 2, 2, 2, 2, 2, 2];
        assert_eq!(min_weight(&Clustering::from_labels(&labels).unwrap()), 0.2);
    }

    #[test]
    fn parts_must_partition() {
        assert!(matches!(
            Clustering::from_parts(vec![vec![0, 1], vec![1]], 2),
            Err(Error::NotAPartition { index: 1 })
        ));
        assert!(Clustering::from_parts(vec![vec![0]], 2).is_err());
        let c = Clustering::from_parts(vec![vec![2, 0], vec![1]], 3).unwrap();
        assert_eq!(c.labels(), &[0, 1, 0]);
    }
}
