//! Pomsets on the regular mset `{l/1, .., l/s}`.
//!
//! Every pomset used here is induced by a strict partial order on the block
//! indices, so it is stored as that poset (bitmask rows of strict
//! predecessors) together with the common height `l`. Order ideals are then
//! msets whose root set is a down-set and whose non-maximal elements carry
//! full count.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mset::Mset;

/// Largest ground set supported by the bitmask representation.
pub const MAX_GROUND_SIZE: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pomset {
    height: u32,
    /// `below[i]` has bit `j` set iff `j < i`.
    below: Vec<u64>,
}

fn bit(i: usize) -> u64 {
    1u64 << i
}

fn mask_elements(mask: u64) -> impl Iterator<Item = usize> {
    (0..MAX_GROUND_SIZE).filter(move |&i| mask & bit(i) != 0)
}

impl Pomset {
    /// Builds the pomset from pairs `(a, b)` meaning `a < b` (0-based).
    ///
    /// The pairs may be a covering set; the transitive closure is taken and
    /// cycles are rejected.
    pub fn new(ground_size: usize, height: u32, relations: &[(usize, usize)]) -> Result<Self> {
        if ground_size == 0 || ground_size > MAX_GROUND_SIZE {
            return Err(Error::OutOfRange(format!(
                "ground size {ground_size} not in 1..={MAX_GROUND_SIZE}"
            )));
        }
        if height == 0 {
            return Err(Error::OutOfRange("pomset height must be positive".into()));
        }
        let mut below = vec![0u64; ground_size];
        for &(a, b) in relations {
            if a >= ground_size || b >= ground_size {
                return Err(Error::InvalidOrder(format!(
                    "relation {} < {} outside ground set [{}]",
                    a + 1,
                    b + 1,
                    ground_size
                )));
            }
            below[b] |= bit(a);
        }
        for k in 0..ground_size {
            for i in 0..ground_size {
                if below[i] & bit(k) != 0 {
                    below[i] |= below[k];
                }
            }
        }
        if let Some(i) = (0..ground_size).find(|&i| below[i] & bit(i) != 0) {
            return Err(Error::InvalidOrder(format!(
                "relations contain a cycle through element {}",
                i + 1
            )));
        }
        Ok(Self { height, below })
    }

    pub fn antichain(ground_size: usize, height: u32) -> Result<Self> {
        Self::new(ground_size, height, &[])
    }

    /// The chain `0 < 1 < .. < s-1`.
    pub fn chain(ground_size: usize, height: u32) -> Result<Self> {
        let rel: Vec<_> = (1..ground_size).map(|i| (i - 1, i)).collect();
        Self::new(ground_size, height, &rel)
    }

    pub fn ground_size(&self) -> usize {
        self.below.len()
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.below[b] & bit(a) != 0
    }

    /// All pairs `(a, b)` with `a < b`, sorted.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let s = self.ground_size();
        let mut out = Vec::new();
        for a in 0..s {
            for b in 0..s {
                if self.less(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Covering pairs of the order (its Hasse diagram), sorted.
    pub fn covering_relations(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(a, b)| {
                (0..self.ground_size()).all(|c| !(self.less(a, c) && self.less(c, b)))
            })
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        let s = self.ground_size();
        (0..s).all(|a| (a + 1..s).all(|b| self.less(a, b) || self.less(b, a)))
    }

    pub fn is_antichain(&self) -> bool {
        self.below.iter().all(|&m| m == 0)
    }

    pub fn dual(&self) -> Pomset {
        let s = self.ground_size();
        let mut below = vec![0u64; s];
        for (a, b) in self.relations() {
            below[a] |= bit(b);
        }
        Pomset { height: self.height, below }
    }

    fn check_same_ground(&self, other: &Pomset) -> Result<()> {
        if self.ground_size() != other.ground_size() || self.height != other.height {
            return Err(Error::Shape(format!(
                "pomsets over [{}]^{} and [{}]^{}",
                self.ground_size(),
                self.height,
                other.ground_size(),
                other.height
            )));
        }
        Ok(())
    }

    /// True iff every relation of `self` also holds in `other`, i.e. `other`
    /// is finer than `self`.
    pub fn is_finer(&self, other: &Pomset) -> Result<bool> {
        self.check_same_ground(other)?;
        Ok(self.below.iter().zip(&other.below).all(|(a, b)| a & !b == 0))
    }

    fn check_mset(&self, a: &Mset) -> Result<()> {
        if a.ground_size() != self.ground_size() || a.height() != self.height {
            return Err(Error::Shape(format!(
                "mset over [{}]^{} for pomset over [{}]^{}",
                a.ground_size(),
                a.height(),
                self.ground_size(),
                self.height
            )));
        }
        Ok(())
    }

    pub fn is_ideal(&self, a: &Mset) -> Result<bool> {
        self.check_mset(a)?;
        let s = self.ground_size();
        Ok((0..s).filter(|&i| a.count(i) > 0).all(|i| {
            mask_elements(self.below[i]).all(|j| a.count(j) == self.height)
        }))
    }

    /// Smallest ideal containing `generators`.
    pub fn ideal_generated(&self, generators: &Mset) -> Result<Ideal> {
        self.check_mset(generators)?;
        let counts = self.generated_counts(generators.counts());
        Ok(Ideal::from_valid(self, Mset::new(self.height, counts)?))
    }

    pub(crate) fn generated_counts(&self, counts: &[u32]) -> Vec<u32> {
        let mut filled = 0u64;
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 {
                filled |= self.below[i];
            }
        }
        counts
            .iter()
            .enumerate()
            .map(|(j, &c)| if filled & bit(j) != 0 { self.height } else { c })
            .collect()
    }

    /// Cardinality of the ideal generated by a count vector, without
    /// materialising it.
    pub(crate) fn generated_cardinality(&self, counts: &[u32]) -> u32 {
        let mut filled = 0u64;
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 {
                filled |= self.below[i];
            }
        }
        counts
            .iter()
            .enumerate()
            .map(|(j, &c)| if filled & bit(j) != 0 { self.height } else { c })
            .sum()
    }

    fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.ground_size()).collect();
        order.sort_by_key(|&i| (self.below[i].count_ones(), i));
        order
    }

    /// Every down-set of the underlying poset as a bitmask.
    pub(crate) fn downset_masks(&self) -> Vec<u64> {
        fn walk(p: &Pomset, order: &[usize], chosen: u64, out: &mut Vec<u64>) {
            match order.split_first() {
                None => out.push(chosen),
                Some((&i, rest)) => {
                    walk(p, rest, chosen, out);
                    if p.below[i] & !chosen == 0 {
                        walk(p, rest, chosen | bit(i), out);
                    }
                }
            }
        }
        let order = self.topological_order();
        let mut out = Vec::new();
        walk(self, &order, 0, &mut out);
        out
    }

    /// Maximal elements of a down-set given as a bitmask.
    pub(crate) fn maximal_in(&self, mask: u64) -> u64 {
        let mut covered = 0u64;
        for i in mask_elements(mask) {
            covered |= self.below[i];
        }
        mask & !covered
    }

    /// Smallest down-set containing `mask`.
    pub(crate) fn down_closure(&self, mask: u64) -> u64 {
        let mut out = mask;
        for i in mask_elements(mask) {
            out |= self.below[i];
        }
        out
    }

    /// All down-sets of the poset with exactly `size` elements, each as an
    /// ascending index list; sorted lexicographically.
    pub fn enumerate_root_downsets(&self, size: usize) -> Result<Vec<Vec<usize>>> {
        if size > self.ground_size() {
            return Err(Error::OutOfRange(format!(
                "down-set size {size} exceeds ground size {}",
                self.ground_size()
            )));
        }
        let mut out: Vec<Vec<usize>> = self
            .downset_masks()
            .into_iter()
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| mask_elements(m).collect())
            .collect();
        out.sort();
        Ok(out)
    }

    /// Every ideal of the pomset, sorted lexicographically by count vector.
    pub fn all_ideals(&self) -> Vec<Ideal> {
        let mut out = Vec::new();
        for mask in self.downset_masks() {
            let maxima: Vec<usize> = mask_elements(self.maximal_in(mask)).collect();
            let mut counts: Vec<u32> = (0..self.ground_size())
                .map(|i| if mask & bit(i) != 0 { self.height } else { 0 })
                .collect();
            // odometer over the counts 1..=l of the maximal elements
            for &i in &maxima {
                counts[i] = 1;
            }
            loop {
                let ideal = Mset::new(self.height, counts.clone()).expect("counts within height");
                out.push(Ideal { counts: ideal, maximal: maxima.clone() });
                let mut pos = 0;
                loop {
                    if pos == maxima.len() {
                        break;
                    }
                    let i = maxima[pos];
                    if counts[i] < self.height {
                        counts[i] += 1;
                        break;
                    }
                    counts[i] = 1;
                    pos += 1;
                }
                if pos == maxima.len() {
                    break;
                }
            }
        }
        out.sort_by(|a, b| a.counts.counts().cmp(b.counts.counts()));
        out
    }

    /// All ideals of cardinality `r`, sorted lexicographically by count
    /// vector.
    pub fn enumerate_ideals(&self, r: u32) -> Result<Vec<Ideal>> {
        let top = self.height * self.ground_size() as u32;
        if r > top {
            return Err(Error::OutOfRange(format!("cardinality {r} exceeds |M| = {top}")));
        }
        Ok(self.all_ideals().into_iter().filter(|i| i.cardinality() == r).collect())
    }

    /// Complement of `ideal`, returned as an ideal of the dual pomset.
    pub fn ideal_complement(&self, ideal: &Ideal) -> Result<Ideal> {
        if !self.is_ideal(ideal.as_mset())? {
            return Err(Error::NotAnIdeal(format!("{}", ideal.as_mset())));
        }
        let dual = self.dual();
        let complement = ideal.as_mset().complement();
        if !dual.is_ideal(&complement)? {
            return Err(Error::Inconsistent(format!(
                "complement {complement} is not an ideal of the dual pomset"
            )));
        }
        Ok(Ideal::from_valid(&dual, complement))
    }
}

/// An order ideal of a [`Pomset`], with its maximal elements cached.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ideal {
    counts: Mset,
    maximal: Vec<usize>,
}

impl Ideal {
    pub fn new(pomset: &Pomset, counts: Mset) -> Result<Self> {
        if !pomset.is_ideal(&counts)? {
            return Err(Error::NotAnIdeal(format!("{counts}")));
        }
        Ok(Self::from_valid(pomset, counts))
    }

    pub fn from_counts(pomset: &Pomset, counts: &[u32]) -> Result<Self> {
        Self::new(pomset, Mset::new(pomset.height(), counts.to_vec())?)
    }

    pub fn empty(pomset: &Pomset) -> Self {
        Self { counts: Mset::empty(pomset.ground_size(), pomset.height()), maximal: Vec::new() }
    }

    fn from_valid(pomset: &Pomset, counts: Mset) -> Self {
        let mut mask = 0u64;
        for i in counts.root_set() {
            mask |= bit(i);
        }
        let maximal = mask_elements(pomset.maximal_in(mask)).collect();
        Self { counts, maximal }
    }

    pub fn as_mset(&self) -> &Mset {
        &self.counts
    }

    pub fn counts(&self) -> &[u32] {
        self.counts.counts()
    }

    pub fn count(&self, element: usize) -> u32 {
        self.counts.count(element)
    }

    pub fn cardinality(&self) -> u32 {
        self.counts.cardinality()
    }

    pub fn height(&self) -> u32 {
        self.counts.height()
    }

    /// `I*`
    pub fn root_set(&self) -> Vec<usize> {
        self.counts.root_set()
    }

    /// `I_f`: elements of the root set with full count.
    pub fn full_elements(&self) -> Vec<usize> {
        let l = self.height();
        self.root_set().into_iter().filter(|&i| self.count(i) == l).collect()
    }

    /// `I_p`: elements of the root set with partial count.
    pub fn partial_elements(&self) -> Vec<usize> {
        let l = self.height();
        self.root_set().into_iter().filter(|&i| self.count(i) < l).collect()
    }

    /// `M(I)*`: maximal elements of the ideal.
    pub fn maximal_elements(&self) -> &[usize] {
        &self.maximal
    }

    pub fn has_full_count(&self) -> bool {
        self.counts.has_full_count()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

impl core::fmt::Display for Ideal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.counts.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v_shape() -> Pomset {
        Pomset::new(3, 2, &[(0, 1), (0, 2)]).unwrap()
    }

    fn ms(height: u32, counts: &[u32]) -> Mset {
        Mset::new(height, counts.to_vec()).unwrap()
    }

    #[test]
    fn closure_and_cycles() {
        let p = Pomset::new(3, 1, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.less(0, 2));
        assert!(p.is_chain());
        assert_eq!(p.covering_relations(), vec![(0, 1), (1, 2)]);
        assert!(matches!(
            Pomset::new(3, 1, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::InvalidOrder(_))
        ));
        assert!(Pomset::new(2, 1, &[(1, 1)]).is_err());
        assert!(Pomset::new(2, 1, &[(0, 5)]).is_err());
    }

    #[test]
    fn ideal_predicate() {
        let p = v_shape();
        assert!(p.is_ideal(&ms(2, &[2, 1, 0])).unwrap());
        assert!(!p.is_ideal(&ms(2, &[1, 1, 0])).unwrap());
        let a = Pomset::antichain(3, 2).unwrap();
        assert!(a.is_ideal(&ms(2, &[1, 0, 2])).unwrap());
    }

    #[test]
    fn generated_ideals() {
        let p = v_shape();
        assert_eq!(p.ideal_generated(&ms(2, &[0, 1, 0])).unwrap().counts(), &[2, 1, 0]);
        let chain = Pomset::chain(2, 3).unwrap();
        assert_eq!(chain.ideal_generated(&ms(3, &[0, 3])).unwrap().counts(), &[3, 3]);
        let i = ms(2, &[2, 2, 1]);
        assert_eq!(p.ideal_generated(&i).unwrap().as_mset(), &i);
    }

    #[test]
    fn v_shape_census() {
        let p = v_shape();
        let counts: Vec<usize> =
            (1..=6).map(|r| p.enumerate_ideals(r).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 2, 1]);
        assert_eq!(p.enumerate_ideals(0).unwrap(), vec![Ideal::empty(&p)]);
        assert!(p.enumerate_ideals(7).is_err());
    }

    #[test]
    fn chain_has_one_ideal_per_cardinality() {
        let p = Pomset::chain(3, 3).unwrap();
        for r in 0..=9 {
            assert_eq!(p.enumerate_ideals(r).unwrap().len(), 1);
        }
    }

    #[test]
    fn downsets() {
        let chain = Pomset::chain(2, 1).unwrap();
        assert_eq!(chain.enumerate_root_downsets(1).unwrap(), vec![vec![0]]);
        let two_chains = Pomset::new(4, 2, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            two_chains.enumerate_root_downsets(3).unwrap(),
            vec![vec![0, 1, 2], vec![0, 2, 3]]
        );
        let anti = Pomset::antichain(4, 1).unwrap();
        assert_eq!(anti.enumerate_root_downsets(2).unwrap().len(), 6);
        assert!(anti.enumerate_root_downsets(5).is_err());
    }

    #[test]
    fn dual_and_refinement() {
        let chain = Pomset::chain(2, 2).unwrap();
        let d = chain.dual();
        assert!(d.less(1, 0) && !d.less(0, 1));
        assert_eq!(d.dual(), chain);
        let anti = Pomset::antichain(2, 2).unwrap();
        assert_eq!(anti.dual(), anti);
        assert!(anti.is_finer(&chain).unwrap());
        assert!(!chain.is_finer(&anti).unwrap());
        assert!(chain.is_finer(&chain).unwrap());
    }

    #[test]
    fn complements_are_dual_ideals() {
        let chain = Pomset::chain(2, 2).unwrap();
        let i = Ideal::from_counts(&chain, &[2, 0]).unwrap();
        let c = chain.ideal_complement(&i).unwrap();
        assert_eq!(c.counts(), &[0, 2]);
        let full = Ideal::from_counts(&chain, &[2, 2]).unwrap();
        assert!(chain.ideal_complement(&full).unwrap().is_empty());
    }

    #[test]
    fn derived_sets() {
        let p = v_shape();
        let i = Ideal::from_counts(&p, &[2, 1, 2]).unwrap();
        assert_eq!(i.root_set(), vec![0, 1, 2]);
        assert_eq!(i.full_elements(), vec![0, 2]);
        assert_eq!(i.partial_elements(), vec![1]);
        assert_eq!(i.maximal_elements(), &[1, 2]);
        assert!(Ideal::from_counts(&p, &[1, 1, 0]).is_err());
    }
}
