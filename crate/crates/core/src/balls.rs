//! r-balls, I-balls and I-spheres: closed-form sizes, explicit enumeration
//! and the translate partitions of the space by I-balls.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mset::Mset;
use crate::pomset::Ideal;
use crate::space::{checked_pow, Space, Vector};

/// Default limit on the number of vectors any single enumeration may visit.
pub const DEFAULT_SCAN_BUDGET: u64 = 10_000_000;

pub(crate) fn check_ideal(space: &Space, ideal: &Ideal) -> Result<()> {
    if !space.pomset().is_ideal(ideal.as_mset())? {
        return Err(Error::NotAnIdeal(format!("{ideal}")));
    }
    Ok(())
}

/// Number of residues mod `m` whose Lee weight is at most `c`.
pub fn residues_within(c: u32, modulus: u32) -> u32 {
    (2 * c + 1).min(modulus)
}

/// Residues of Lee weight at most `c`, ascending.
pub(crate) fn residue_set(c: u32, modulus: u32) -> Vec<u32> {
    if 2 * c + 1 >= modulus {
        return (0..modulus).collect();
    }
    (0..=c).chain(modulus - c..modulus).collect()
}

/// True iff `v` lies in the I-ball centred at `u`: every block of `u - v`
/// has Lee block weight at most `C_I(t)`. `i` need not be an ideal.
pub fn in_i_ball(space: &Space, v: &[u32], u: &[u32], i: &Mset) -> Result<bool> {
    space.check_vector(u)?;
    space.check_vector(v)?;
    if i.ground_size() != space.block_count() || i.height() != space.height() {
        return Err(Error::Shape(format!(
            "mset over [{}]^{} for a space with {} blocks of height {}",
            i.ground_size(),
            i.height(),
            space.block_count(),
            space.height()
        )));
    }
    Ok(in_ball_unchecked(space, v, u, i.counts()))
}

pub(crate) fn in_ball_unchecked(space: &Space, v: &[u32], u: &[u32], counts: &[u32]) -> bool {
    let m = space.modulus();
    (0..space.block_count()).all(|t| {
        space.block_range(t).all(|j| {
            let d = (u[j] + m - v[j]) % m;
            crate::space::lee_weight(d, m) <= counts[t]
        })
    })
}

/// `|B_I|`: product of `(2 C_I(t) + 1)^{k_t}` over partial elements times
/// `m` to the total dimension of the full elements.
pub fn i_ball_cardinality(space: &Space, ideal: &Ideal) -> Result<u64> {
    check_ideal(space, ideal)?;
    let m = space.modulus();
    let mut acc = 1u64;
    for t in ideal.root_set() {
        let per_coord = residues_within(ideal.count(t), m) as u64;
        let factor = checked_pow(per_coord, space.labeling()[t]).ok_or(Error::Overflow("|B_I|"))?;
        acc = acc.checked_mul(factor).ok_or(Error::Overflow("|B_I|"))?;
    }
    Ok(acc)
}

/// `|S_I|`: number of vectors whose generated support ideal is exactly `I`.
/// The empty ideal has the zero vector as its only member.
pub fn i_sphere_cardinality(space: &Space, ideal: &Ideal) -> Result<u64> {
    check_ideal(space, ideal)?;
    let m = space.modulus();
    let maximal = ideal.maximal_elements();
    let mut acc = 1u64;
    for t in ideal.root_set() {
        let k = space.labeling()[t];
        let factor = if maximal.contains(&t) {
            let c = ideal.count(t);
            let within = checked_pow(residues_within(c, m) as u64, k);
            let inside = checked_pow(residues_within(c - 1, m) as u64, k);
            match (within, inside) {
                (Some(a), Some(b)) => a - b,
                _ => return Err(Error::Overflow("|S_I|")),
            }
        } else {
            checked_pow(m as u64, k).ok_or(Error::Overflow("|S_I|"))?
        };
        acc = acc.checked_mul(factor).ok_or(Error::Overflow("|S_I|"))?;
    }
    Ok(acc)
}

/// `|B_r(u)| = 1 + sum over ideals I with 1 <= |I| <= r of |S_I|`.
pub fn r_ball_cardinality(space: &Space, r: u32) -> Result<u64> {
    if r > space.max_weight() {
        return Err(Error::OutOfRange(format!(
            "radius {r} exceeds maximal weight {}",
            space.max_weight()
        )));
    }
    let mut acc = 1u64;
    for ideal in space.pomset().all_ideals() {
        let c = ideal.cardinality();
        if c == 0 || c > r {
            continue;
        }
        acc = acc
            .checked_add(i_sphere_cardinality(space, &ideal)?)
            .ok_or(Error::Overflow("|B_r|"))?;
    }
    Ok(acc)
}

/// Allowed residues per coordinate of `B_I`.
fn ball_coordinate_sets(space: &Space, ideal: &Ideal) -> Vec<Vec<u32>> {
    let m = space.modulus();
    let mut sets = vec![Vec::new(); space.length()];
    for t in 0..space.block_count() {
        let allowed = residue_set(ideal.count(t), m);
        for j in space.block_range(t) {
            sets[j] = allowed.clone();
        }
    }
    sets
}

fn cartesian<F: FnMut(&[u32])>(sets: &[Vec<u32>], mut f: F) {
    let mut digits = vec![0usize; sets.len()];
    let mut buf: Vec<u32> = sets.iter().map(|s| s[0]).collect();
    loop {
        f(&buf);
        let mut pos = sets.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < sets[pos].len() {
                buf[pos] = sets[pos][digits[pos]];
                break;
            }
            digits[pos] = 0;
            buf[pos] = sets[pos][0];
        }
    }
}

/// Elements of `B_I` (centred at zero), lexicographic.
pub(crate) fn i_ball_at_zero(space: &Space, ideal: &Ideal, budget: u64) -> Result<Vec<Vector>> {
    let size = i_ball_cardinality(space, ideal)?;
    if size > budget {
        return Err(Error::BudgetExceeded { needed: size, budget });
    }
    let sets = ball_coordinate_sets(space, ideal);
    let mut out = Vec::with_capacity(size as usize);
    cartesian(&sets, |v| out.push(Vector::from_reduced(v.to_vec())));
    Ok(out)
}

/// `B_I(u) = u + B_I`, listed lexicographically.
pub fn enumerate_i_ball(space: &Space, u: &[u32], ideal: &Ideal, budget: u64) -> Result<Vec<Vector>> {
    space.check_vector(u)?;
    let ball = i_ball_at_zero(space, ideal, budget)?;
    let mut out: Vec<Vector> = ball
        .iter()
        .map(|b| space.add(u, b).expect("same space"))
        .collect();
    out.sort();
    Ok(out)
}

/// Centres `D` whose I-balls tile `Z_m^n`: zero on full elements, multiples
/// of `2 C_I(t) + 1` on partial elements, free outside the root set.
pub fn partition_centers(space: &Space, ideal: &Ideal, budget: u64) -> Result<Vec<Vector>> {
    check_ideal(space, ideal)?;
    let m = space.modulus();
    let l = space.height();
    let mut sets = vec![Vec::new(); space.length()];
    let mut size = 1u64;
    for t in 0..space.block_count() {
        let c = ideal.count(t);
        let allowed: Vec<u32> = if c == 0 {
            (0..m).collect()
        } else if c == l {
            vec![0]
        } else {
            let step = 2 * c + 1;
            if m % step != 0 {
                return Err(Error::PartitionImpossible { element: t + 1, count: c, modulus: m });
            }
            (0..m).step_by(step as usize).collect()
        };
        let factor = checked_pow(allowed.len() as u64, space.labeling()[t]).ok_or(Error::Overflow("|D|"))?;
        size = size.checked_mul(factor).ok_or(Error::Overflow("|D|"))?;
        for j in space.block_range(t) {
            sets[j] = allowed.clone();
        }
    }
    if size > budget {
        return Err(Error::BudgetExceeded { needed: size, budget });
    }
    let mut out = Vec::with_capacity(size as usize);
    cartesian(&sets, |v| out.push(Vector::from_reduced(v.to_vec())));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BallShape {
    Radius(u32),
    Ideal(Ideal),
}

/// A ball of a given space: a centre together with a radius or an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallSpec {
    space: Space,
    center: Vector,
    shape: BallShape,
}

impl BallSpec {
    pub fn radius(space: &Space, center: &[u32], r: u32) -> Result<Self> {
        space.check_vector(center)?;
        if r > space.max_weight() {
            return Err(Error::OutOfRange(format!(
                "radius {r} exceeds maximal weight {}",
                space.max_weight()
            )));
        }
        Ok(Self { space: space.clone(), center: Vector::from_reduced(center.to_vec()), shape: BallShape::Radius(r) })
    }

    pub fn ideal(space: &Space, center: &[u32], ideal: Ideal) -> Result<Self> {
        space.check_vector(center)?;
        check_ideal(space, &ideal)?;
        Ok(Self { space: space.clone(), center: Vector::from_reduced(center.to_vec()), shape: BallShape::Ideal(ideal) })
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn shape(&self) -> &BallShape {
        &self.shape
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        match &self.shape {
            BallShape::Radius(r) => Ok(self.space.distance(&self.center, v)? <= *r),
            BallShape::Ideal(i) => in_i_ball(&self.space, v, &self.center, i.as_mset()),
        }
    }

    pub fn cardinality(&self) -> Result<u64> {
        match &self.shape {
            BallShape::Radius(r) => r_ball_cardinality(&self.space, *r),
            BallShape::Ideal(i) => i_ball_cardinality(&self.space, i),
        }
    }

    /// Members in lexicographic order. Radius balls are found by scanning.
    pub fn enumerate(&self, budget: u64) -> Result<Vec<Vector>> {
        match &self.shape {
            BallShape::Ideal(i) => enumerate_i_ball(&self.space, &self.center, i, budget),
            BallShape::Radius(r) => {
                let mut out = Vec::new();
                let mut scratch = vec![0; self.space.block_count()];
                let mut diff = vec![0; self.space.length()];
                self.space.for_each_vector(budget, |v| {
                    self.space.sub_into(v, &self.center, &mut diff);
                    if self.space.weight_unchecked(&diff, &mut scratch) <= *r {
                        out.push(Vector::from_reduced(v.to_vec()));
                    }
                })?;
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pomset::Pomset;

    fn space(m: u32, rel: &[(usize, usize)], lab: &[usize]) -> Space {
        Space::with_order(m, rel, lab.to_vec()).unwrap()
    }

    fn ideal(s: &Space, counts: &[u32]) -> Ideal {
        Ideal::from_counts(s.pomset(), counts).unwrap()
    }

    #[test]
    fn i_ball_membership_from_worked_example() {
        let s = space(6, &[], &[2, 1]);
        let i2 = Mset::new(3, vec![2, 2]).unwrap();
        assert!(in_i_ball(&s, &[2, 1, 0], &[3, 0, 0], &i2).unwrap());
        assert!(in_i_ball(&s, &[2, 1, 0], &[0, 3, 0], &i2).unwrap());
        let any = Mset::empty(2, 3);
        assert!(in_i_ball(&s, &[4, 5, 1], &[4, 5, 1], &any).unwrap());
    }

    #[test]
    fn i_ball_sizes() {
        let s = space(6, &[], &[1, 2]);
        assert_eq!(i_ball_cardinality(&s, &ideal(&s, &[3, 1])).unwrap(), 54);
        let s = space(6, &[], &[2, 1]);
        assert_eq!(i_ball_cardinality(&s, &ideal(&s, &[1, 3])).unwrap(), 54);
        assert_eq!(i_ball_cardinality(&s, &Ideal::empty(s.pomset())).unwrap(), 1);
    }

    #[test]
    fn sphere_sizes() {
        let s = space(5, &[], &[1, 1]);
        assert_eq!(i_sphere_cardinality(&s, &ideal(&s, &[1, 0])).unwrap(), 2);
        let s = space(6, &[], &[1]);
        assert_eq!(i_sphere_cardinality(&s, &ideal(&s, &[3])).unwrap(), 1);
        let s = space(5, &[(0, 1)], &[1, 1]);
        assert_eq!(i_sphere_cardinality(&s, &ideal(&s, &[2, 1])).unwrap(), 10);
        assert_eq!(i_sphere_cardinality(&s, &Ideal::empty(s.pomset())).unwrap(), 1);
    }

    #[test]
    fn even_modulus_wide_block_sphere() {
        // pairs in Z_6^2 with at least one coordinate equal to 3
        let s = space(6, &[], &[2]);
        assert_eq!(i_sphere_cardinality(&s, &ideal(&s, &[3])).unwrap(), 11);
    }

    #[test]
    fn r_ball_sizes() {
        let s = space(5, &[], &[1, 1]);
        assert_eq!(r_ball_cardinality(&s, 1).unwrap(), 5);
        assert_eq!(r_ball_cardinality(&s, 0).unwrap(), 1);
        assert_eq!(r_ball_cardinality(&s, 4).unwrap(), 25);
        assert!(r_ball_cardinality(&s, 5).is_err());
    }

    #[test]
    fn ball_enumeration() {
        let s = space(6, &[], &[2, 1]);
        let u = s.vector(&[1, 2, 3]).unwrap();
        let e = Ideal::empty(s.pomset());
        assert_eq!(enumerate_i_ball(&s, &u, &e, 10).unwrap(), vec![u.clone()]);
        let i = ideal(&s, &[1, 3]);
        let ball = enumerate_i_ball(&s, &u, &i, 1000).unwrap();
        assert_eq!(ball.len(), 54);
        assert!(ball.iter().all(|v| in_i_ball(&s, v, &u, i.as_mset()).unwrap()));
        assert!(matches!(enumerate_i_ball(&s, &u, &i, 53), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn partitions() {
        let s = space(6, &[], &[2, 1]);
        let d = partition_centers(&s, &ideal(&s, &[1, 3]), 1000).unwrap();
        let expect: Vec<Vector> = [[0, 0, 0], [0, 3, 0], [3, 0, 0], [3, 3, 0]]
            .iter()
            .map(|c| s.vector(&c.map(i64::from)).unwrap())
            .collect();
        assert_eq!(d, expect);

        let s = space(9, &[], &[1, 1]);
        let d = partition_centers(&s, &ideal(&s, &[4, 1]), 1000).unwrap();
        assert_eq!(d, vec![s.vector(&[0, 0]).unwrap(), s.vector(&[0, 3]).unwrap(), s.vector(&[0, 6]).unwrap()]);

        let s = space(6, &[], &[1, 1]);
        assert!(matches!(
            partition_centers(&s, &ideal(&s, &[2, 0]), 1000),
            Err(Error::PartitionImpossible { element: 1, count: 2, modulus: 6 })
        ));
    }

    #[test]
    fn foreign_ideal_rejected() {
        let s = space(5, &[(0, 1)], &[1, 1]);
        let anti = Pomset::antichain(2, 2).unwrap();
        let i = Ideal::from_counts(&anti, &[0, 1]).unwrap();
        assert!(matches!(i_ball_cardinality(&s, &i), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn ball_specs() {
        let s = space(5, &[], &[1, 1]);
        let b = BallSpec::radius(&s, &[1, 2], 1).unwrap();
        assert_eq!(b.cardinality().unwrap(), 5);
        assert_eq!(b.enumerate(100).unwrap().len(), 5);
        assert!(b.contains(&[1, 3]).unwrap() && !b.contains(&[2, 3]).unwrap());
        assert!(BallSpec::radius(&s, &[0, 0], 5).is_err());
        let b = BallSpec::ideal(&s, &[0, 0], ideal(&s, &[1, 2])).unwrap();
        assert_eq!(b.cardinality().unwrap(), 15);
        assert_eq!(b.enumerate(100).unwrap().len(), 15);
        assert!(b.contains(&[4, 3]).unwrap());
    }
}
