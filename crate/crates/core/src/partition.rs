//! Integer partitions: the index set of the Schur basis.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing tuple of positive integers. The empty partition
/// indexes the unit `s_() = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(Error::InvalidPartition(parts.into_iter().map(i64::from).collect()))
        }
    }

    /// Builds a partition from a weakly decreasing vector that may carry
    /// trailing zeros.
    pub fn from_padded(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single column `(1, …, 1)` of length `j`, i.e. the index of `e_j`.
    pub fn column(j: usize) -> Self {
        Partition(vec![1; j])
    }

    pub fn row(k: u32) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.part(0)
    }

    /// The parts zero-padded (or truncated) to exactly `n` entries.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.part(i)).collect()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.first() as usize;
        let parts = (1..=width as u32)
            .map(|j| self.0.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Dominance order `self ⊴ other`, defined only for equal sizes.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        let (a, b) = (self.size(), other.size());
        if a != b {
            return Err(Error::SizeMismatch { left: a, right: b });
        }
        let len = self.len().max(other.len());
        let (mut sa, mut sb) = (0u32, 0u32);
        for i in 0..len {
            sa += self.part(i);
            sb += other.part(i);
            if sa > sb {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Componentwise sum with zero padding.
    pub fn add(&self, other: &Partition) -> Partition {
        let len = self.len().max(other.len());
        Partition((0..len).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// Strips full columns of height `n`: `(λ_1 − λ_n, …, λ_{n−1} − λ_n)`.
    pub fn reduce_mod_determinant(&self, n: usize) -> Result<Partition> {
        if self.len() > n {
            return Err(Error::LengthExceeds { length: self.len(), n });
        }
        let base = self.part(n - 1);
        let parts = self.0[..self.len().min(n - 1)]
            .iter()
            .map(|&p| p - base)
            .filter(|&p| p > 0)
            .collect();
        Ok(Partition(parts))
    }

    /// `self ⊆ other` as Young diagrams.
    pub fn contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `size` with at most `max_len` parts, in decreasing
/// lexicographic order.
pub fn partitions_of(size: u32, max_len: usize) -> Vec<Partition> {
    fn rec(rem: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=rem.min(max_part)).rev() {
            cur.push(p);
            rec(rem - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, size, max_len, &mut Vec::new(), &mut out);
    out
}

/// All partitions with size at most `max_size` and at most `max_len` parts,
/// ordered by size then decreasing lexicographic order.
pub fn partitions_up_to(max_size: u32, max_len: usize) -> Vec<Partition> {
    (0..=max_size).flat_map(|k| partitions_of(k, max_len)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rejects_invalid() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::from_padded(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 2]).conjugate(), p(&[2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[2, 2]).dominated_by(&p(&[3, 1])).unwrap());
        assert!(p(&[1, 1, 1]).dominated_by(&p(&[3])).unwrap());
        assert!(!p(&[3, 1]).dominated_by(&p(&[2, 2])).unwrap());
        assert_eq!(
            p(&[2]).dominated_by(&p(&[1])),
            Err(Error::SizeMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[2, 1]).add(&p(&[1, 1])), p(&[3, 2]));
        assert_eq!(p(&[4, 2, 1]).add(&Partition::empty()), p(&[4, 2, 1]));
        assert_eq!(p(&[1, 1]).add(&p(&[1, 1])), p(&[2, 2]));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(p(&[2, 1, 1]).reduce_mod_determinant(3).unwrap(), p(&[1]));
        assert_eq!(p(&[1, 1, 1]).reduce_mod_determinant(3).unwrap(), Partition::empty());
        assert_eq!(p(&[3, 2]).reduce_mod_determinant(3).unwrap(), p(&[3, 2]));
        assert_eq!(
            p(&[1, 1, 1, 1]).reduce_mod_determinant(3),
            Err(Error::LengthExceeds { length: 4, n: 3 })
        );
    }

    #[test]
    fn enumerations() {
        assert_eq!(partitions_of(4, 4).len(), 5);
        assert_eq!(partitions_of(4, 2), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(partitions_of(0, 3), vec![Partition::empty()]);
        assert_eq!(partitions_up_to(3, 3).len(), 1 + 1 + 2 + 3);
    }

    #[test]
    fn json_form() {
        assert_eq!(serde_json::to_string(&p(&[3, 1])).unwrap(), "[3,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        let back: Partition = serde_json::from_str("[2,2,1]").unwrap();
        assert_eq!(back, p(&[2, 2, 1]));
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }

    fn all_up_to_8() -> Vec<Partition> {
        partitions_up_to(8, 8)
    }

    #[test]
    fn conjugation_is_involution() {
        for l in all_up_to_8() {
            assert_eq!(l.conjugate().conjugate(), l);
        }
    }

    #[test]
    fn dominance_is_partial_order_and_conjugation_reverses_it() {
        for k in 0..=8 {
            let ps = partitions_of(k, 8);
            for a in &ps {
                assert!(a.dominated_by(a).unwrap());
                for b in &ps {
                    let ab = a.dominated_by(b).unwrap();
                    let ba = b.dominated_by(a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    assert_eq!(ab, b.conjugate().dominated_by(&a.conjugate()).unwrap());
                    for c in &ps {
                        if ab && b.dominated_by(c).unwrap() {
                            assert!(a.dominated_by(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduction_is_idempotent() {
        for n in 2..=5 {
            for l in partitions_up_to(8, n) {
                let r = l.reduce_mod_determinant(n).unwrap();
                assert!(r.len() < n);
                assert_eq!(r.reduce_mod_determinant(n).unwrap(), r);
            }
        }
    }
}
