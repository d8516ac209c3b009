use std::cmp::Ordering;
use std::fmt;

/// Basis label `α(-n_1)…α(-n_k)1` with `n_1 ≥ … ≥ n_k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "partition parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// Removes one copy of `part`; `None` if absent.
    pub fn without(&self, part: u32) -> Option<Partition> {
        let i = self.0.iter().position(|&p| p == part)?;
        let mut parts = self.0.clone();
        parts.remove(i);
        Some(Partition(parts))
    }

    pub fn with(&self, part: u32) -> Partition {
        let mut parts = self.0.clone();
        let i = parts.iter().position(|&p| p < part).unwrap_or(parts.len());
        parts.insert(i, part);
        Partition(parts)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "a(-{p})")?;
        }
        f.write_str("1")
    }
}

/// All partitions of `n`, in the crate's basis order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p as u32);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All partitions of weight at most `n`.
pub fn partitions_up_to(n: usize) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partition_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn insert_remove_roundtrip() {
        let p = Partition::new(vec![1, 3, 1]);
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.with(2).parts(), &[3, 2, 1, 1]);
        assert_eq!(p.without(1).unwrap().parts(), &[3, 1]);
        assert!(p.without(2).is_none());
        assert_eq!(p.to_string(), "a(-3)a(-1)a(-1)1");
    }
}
