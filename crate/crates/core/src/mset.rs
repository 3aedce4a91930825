//! Multisets over the ground set `{0, .., s-1}` with every multiplicity
//! capped by a common height `l`.
//!
//! Elements are stored by index, so an mset is just its count vector.
//! Displayed in the usual `{c/a, ...}` notation with 1-based labels.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mset {
    height: u32,
    counts: Vec<u32>,
}

impl Mset {
    pub fn new(height: u32, counts: Vec<u32>) -> Result<Self> {
        if height == 0 {
            return Err(Error::OutOfRange("mset height must be positive".into()));
        }
        if counts.is_empty() {
            return Err(Error::OutOfRange("ground set must be nonempty".into()));
        }
        if let Some((i, c)) = counts.iter().enumerate().find(|(_, &c)| c > height) {
            return Err(Error::OutOfRange(format!(
                "count {c} of element {} exceeds height {height}",
                i + 1
            )));
        }
        Ok(Self { height, counts })
    }

    pub fn empty(ground_size: usize, height: u32) -> Self {
        Self { height, counts: vec![0; ground_size] }
    }

    /// The regular mset `{l/1, .., l/s}`.
    pub fn full(ground_size: usize, height: u32) -> Self {
        Self { height, counts: vec![height; ground_size] }
    }

    pub fn ground_size(&self) -> usize {
        self.counts.len()
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, element: usize) -> u32 {
        self.counts[element]
    }

    pub fn cardinality(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Root set `M*`, ascending.
    pub fn root_set(&self) -> Vec<usize> {
        (0..self.counts.len()).filter(|&i| self.counts[i] > 0).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    /// True when every element of the root set occurs `height` times.
    pub fn has_full_count(&self) -> bool {
        self.counts.iter().all(|&c| c == 0 || c == self.height)
    }

    pub(crate) fn check_shape(&self, other: &Mset) -> Result<()> {
        if self.counts.len() != other.counts.len() || self.height != other.height {
            return Err(Error::Shape(format!(
                "msets over [{}]^{} and [{}]^{}",
                self.counts.len(),
                self.height,
                other.counts.len(),
                other.height
            )));
        }
        Ok(())
    }

    /// Capped sum: `min(l, a_i + b_i)`.
    pub fn msum(&self, other: &Mset) -> Result<Mset> {
        self.check_shape(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| (a + b).min(self.height))
            .collect();
        Ok(Mset { height: self.height, counts })
    }

    /// Truncated difference: `max(a_i - b_i, 0)`.
    pub fn mdiff(&self, other: &Mset) -> Result<Mset> {
        self.check_shape(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.saturating_sub(b))
            .collect();
        Ok(Mset { height: self.height, counts })
    }

    /// Union: pointwise maximum.
    pub fn union(&self, other: &Mset) -> Result<Mset> {
        self.check_shape(other)?;
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Ok(Mset { height: self.height, counts })
    }

    pub fn complement(&self) -> Mset {
        Mset {
            height: self.height,
            counts: self.counts.iter().map(|&c| self.height - c).collect(),
        }
    }

    pub fn is_submset(&self, other: &Mset) -> Result<bool> {
        self.check_shape(other)?;
        Ok(self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b))
    }
}

impl fmt::Display for Mset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (i, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{}/{}", c, i + 1)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn ms(height: u32, counts: &[u32]) -> Mset {
        Mset::new(height, counts.to_vec()).unwrap()
    }

    #[test]
    fn capped_sum() {
        assert_eq!(ms(2, &[1]).msum(&ms(2, &[1])).unwrap(), ms(2, &[2]));
        assert_eq!(ms(2, &[2]).msum(&ms(2, &[1])).unwrap(), ms(2, &[2]));
        assert_eq!(ms(3, &[1, 3]).msum(&ms(3, &[2, 1])).unwrap(), ms(3, &[3, 3]));
    }

    #[test]
    fn truncated_difference() {
        assert_eq!(ms(3, &[3, 1]).mdiff(&ms(3, &[1, 2])).unwrap(), ms(3, &[2, 0]));
        let a = ms(3, &[2, 3]);
        assert!(a.mdiff(&a).unwrap().is_empty());
        assert_eq!(ms(3, &[1]).mdiff(&ms(3, &[3])).unwrap(), ms(3, &[0]));
    }

    #[test]
    fn complement_values() {
        assert_eq!(ms(3, &[3, 1]).complement(), ms(3, &[0, 2]));
        assert_eq!(Mset::empty(2, 3).complement(), ms(3, &[3, 3]));
    }

    #[test]
    fn submset() {
        assert!(ms(2, &[1, 0]).is_submset(&ms(2, &[2, 1])).unwrap());
        assert!(!ms(2, &[0, 2]).is_submset(&ms(2, &[2, 1])).unwrap());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(ms(2, &[1]).msum(&ms(3, &[1])), Err(Error::Shape(_))));
        assert!(matches!(ms(2, &[1]).mdiff(&ms(2, &[1, 1])), Err(Error::Shape(_))));
        assert!(matches!(ms(2, &[1]).is_submset(&ms(2, &[1, 1])), Err(Error::Shape(_))));
        assert!(Mset::new(2, vec![3]).is_err());
    }

    #[test]
    fn notation() {
        assert_eq!(ms(3, &[3, 0, 1]).to_string(), "{3/1,1/3}");
        assert_eq!(Mset::empty(2, 2).to_string(), "{}");
        assert_eq!(ms(3, &[3, 0, 1]).root_set(), vec![0, 2]);
        assert_eq!(ms(3, &[3, 0, 1]).cardinality(), 4);
    }
}
