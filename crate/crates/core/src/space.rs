//! The pomset block space `(Z_m^n, d_(P,pi))`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, Range};

use crate::error::{Error, Result};
use crate::mset::Mset;
use crate::pomset::Pomset;

/// Lee weight `min(x, m - x)` of a residue.
pub fn lee_weight(x: u32, modulus: u32) -> u32 {
    let x = x % modulus;
    x.min(modulus - x)
}

/// Largest Lee weight among the coordinates of a block.
pub fn block_weight(block: &[u32], modulus: u32) -> Result<u32> {
    if block.is_empty() {
        return Err(Error::Shape("empty block".into()));
    }
    Ok(block.iter().map(|&x| lee_weight(x, modulus)).max().unwrap_or(0))
}

/// A vector of `Z_m^n` with every coordinate reduced to `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vector(Vec<u32>);

impl Vector {
    pub(crate) fn from_reduced(coords: Vec<u32>) -> Self {
        Vector(coords)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl Deref for Vector {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Modulus, pomset and labeling `pi = (k_1, .., k_s)` of a pomset block
/// space. The pomset height is always `floor(m/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    modulus: u32,
    pomset: Pomset,
    labeling: Vec<usize>,
    offsets: Vec<usize>,
}

impl Space {
    pub fn new(modulus: u32, pomset: Pomset, labeling: Vec<usize>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::OutOfRange(format!("modulus {modulus} must be at least 2")));
        }
        if pomset.height() != modulus / 2 {
            return Err(Error::Shape(format!(
                "pomset height {} differs from floor({modulus}/2)",
                pomset.height()
            )));
        }
        if labeling.len() != pomset.ground_size() {
            return Err(Error::Shape(format!(
                "labeling has {} blocks, pomset has {} elements",
                labeling.len(),
                pomset.ground_size()
            )));
        }
        if labeling.iter().any(|&k| k == 0) {
            return Err(Error::OutOfRange("block dimensions must be positive".into()));
        }
        let mut offsets = Vec::with_capacity(labeling.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &k in &labeling {
            acc += k;
            offsets.push(acc);
        }
        Ok(Self { modulus, pomset, labeling, offsets })
    }

    /// Convenience constructor from 0-based covering relations.
    pub fn with_order(
        modulus: u32,
        relations: &[(usize, usize)],
        labeling: Vec<usize>,
    ) -> Result<Self> {
        let pomset = Pomset::new(labeling.len(), modulus / 2, relations)?;
        Self::new(modulus, pomset, labeling)
    }

    /// Same modulus and labeling over another pomset.
    pub fn with_pomset(&self, pomset: Pomset) -> Result<Self> {
        Self::new(self.modulus, pomset, self.labeling.clone())
    }

    /// The space over the dual pomset.
    pub fn dual(&self) -> Self {
        Self { pomset: self.pomset.dual(), ..self.clone() }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn height(&self) -> u32 {
        self.modulus / 2
    }

    pub fn pomset(&self) -> &Pomset {
        &self.pomset
    }

    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    pub fn block_count(&self) -> usize {
        self.labeling.len()
    }

    /// Total length `n`.
    pub fn length(&self) -> usize {
        *self.offsets.last().expect("offsets nonempty")
    }

    /// Coordinate range of block `i`.
    pub fn block_range(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Largest possible pomset weight, `s * floor(m/2)`.
    pub fn max_weight(&self) -> u32 {
        self.height() * self.block_count() as u32
    }

    /// `m^n`.
    pub fn size(&self) -> Result<u64> {
        checked_pow(self.modulus as u64, self.length()).ok_or(Error::Overflow("m^n"))
    }

    /// Reduces signed coordinates mod `m`.
    pub fn vector(&self, coords: &[i64]) -> Result<Vector> {
        self.check_len(coords.len())?;
        let m = self.modulus as i64;
        Ok(Vector(coords.iter().map(|&x| x.rem_euclid(m) as u32).collect()))
    }

    pub fn zero(&self) -> Vector {
        Vector(vec![0; self.length()])
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.length() {
            return Err(Error::Shape(format!(
                "vector of length {len} in a space of length {}",
                self.length()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_vector(&self, u: &[u32]) -> Result<()> {
        self.check_len(u.len())?;
        if let Some(&x) = u.iter().find(|&&x| x >= self.modulus) {
            return Err(Error::OutOfRange(format!("residue {x} not reduced mod {}", self.modulus)));
        }
        Ok(())
    }

    pub fn add(&self, u: &[u32], v: &[u32]) -> Result<Vector> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        let m = self.modulus;
        Ok(Vector(u.iter().zip(v).map(|(&a, &b)| (a + b) % m).collect()))
    }

    pub fn sub(&self, u: &[u32], v: &[u32]) -> Result<Vector> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        let mut out = vec![0; u.len()];
        self.sub_into(u, v, &mut out);
        Ok(Vector(out))
    }

    pub fn neg(&self, u: &[u32]) -> Result<Vector> {
        self.check_vector(u)?;
        let m = self.modulus;
        Ok(Vector(u.iter().map(|&a| (m - a) % m).collect()))
    }

    pub(crate) fn sub_into(&self, u: &[u32], v: &[u32], out: &mut [u32]) {
        let m = self.modulus;
        for ((o, &a), &b) in out.iter_mut().zip(u).zip(v) {
            *o = (a + m - b) % m;
        }
    }

    /// Block weights of `u`, one per block (zeros included).
    pub(crate) fn block_weights_into(&self, u: &[u32], out: &mut [u32]) {
        let m = self.modulus;
        for (i, o) in out.iter_mut().enumerate() {
            *o = u[self.block_range(i)].iter().map(|&x| lee_weight(x, m)).max().unwrap_or(0);
        }
    }

    /// Lee block support of `u`.
    pub fn support(&self, u: &[u32]) -> Result<Mset> {
        self.check_vector(u)?;
        let mut counts = vec![0; self.block_count()];
        self.block_weights_into(u, &mut counts);
        Mset::new(self.height(), counts)
    }

    pub(crate) fn weight_unchecked(&self, u: &[u32], scratch: &mut [u32]) -> u32 {
        self.block_weights_into(u, scratch);
        self.pomset.generated_cardinality(scratch)
    }

    /// `(P,pi)`-weight: cardinality of the ideal generated by the support.
    pub fn weight(&self, u: &[u32]) -> Result<u32> {
        self.check_vector(u)?;
        let mut scratch = vec![0; self.block_count()];
        Ok(self.weight_unchecked(u, &mut scratch))
    }

    pub fn distance(&self, u: &[u32], v: &[u32]) -> Result<u32> {
        let diff = self.sub(u, v)?;
        self.weight(&diff)
    }

    /// Position of `u` in the lexicographic listing of `Z_m^n`.
    pub fn index_of(&self, u: &[u32]) -> u64 {
        u.iter().fold(0u64, |acc, &x| acc * self.modulus as u64 + x as u64)
    }

    pub fn vector_at(&self, mut index: u64) -> Vector {
        let n = self.length();
        let m = self.modulus as u64;
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = (index % m) as u32;
            index /= m;
        }
        Vector(out)
    }

    /// Visits every vector of `Z_m^n` in lexicographic order.
    pub fn for_each_vector<F: FnMut(&[u32])>(&self, budget: u64, mut f: F) -> Result<()> {
        let size = self.size()?;
        if size > budget {
            return Err(Error::BudgetExceeded { needed: size, budget });
        }
        let mut cur = vec![0u32; self.length()];
        odometer(&mut cur, self.modulus, |v| f(v));
        Ok(())
    }

    /// Every vector of `Z_m^n`, lexicographically.
    pub fn all_vectors(&self, budget: u64) -> Result<Vec<Vector>> {
        let mut out = Vec::new();
        self.for_each_vector(budget, |v| out.push(Vector(v.to_vec())))?;
        Ok(out)
    }

    pub fn dot(&self, u: &[u32], v: &[u32]) -> u32 {
        let m = self.modulus as u64;
        (u.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64 % m).sum::<u64>() % m) as u32
    }
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Runs `f` on every vector of `{0..m}^len`, starting from `cur`.
pub(crate) fn odometer<F: FnMut(&[u32])>(cur: &mut [u32], modulus: u32, mut f: F) {
    loop {
        f(cur);
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < modulus {
                break;
            }
            cur[pos] = 0;
        }
    }
}
