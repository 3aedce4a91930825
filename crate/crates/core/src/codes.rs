//! Code-level analytics for `(P,pi)`-codes: minimum distance, duals,
//! I-perfect and r-perfect tilings, the Singleton bound and MDS codes,
//! parity-check block dependence, ball/code intersections and weight
//! distributions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::balls::{check_ideal, in_ball_unchecked};
use crate::error::{Error, Result};
use crate::linalg;
use crate::pomset::Ideal;
use crate::space::{checked_pow, odometer, Space, Vector};

/// Default limit for exhaustive annihilator scans.
pub const DEFAULT_ANNIHILATOR_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Listed codeword by codeword.
    Explicit,
    /// Every `Z_m`-combination of the generator rows.
    Generated(Vec<Vec<u32>>),
    /// Computed as an annihilator, hence a submodule.
    Dual,
}

/// A finite nonempty set of vectors of a [`Space`], kept sorted and
/// deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    space: Space,
    codewords: Vec<Vector>,
    origin: Origin,
}

impl Code {
    pub fn new(space: Space, codewords: Vec<Vector>) -> Result<Self> {
        if codewords.is_empty() {
            return Err(Error::InvalidParameters("a code needs at least one codeword".into()));
        }
        for c in &codewords {
            space.check_vector(c)?;
        }
        Ok(Self::from_parts(space, codewords, Origin::Explicit))
    }

    /// Codewords given as signed coordinates, reduced mod `m`.
    pub fn from_rows(space: Space, rows: &[Vec<i64>]) -> Result<Self> {
        let words = rows.iter().map(|r| space.vector(r)).collect::<Result<Vec<_>>>()?;
        Self::new(space, words)
    }

    fn from_parts(space: Space, mut codewords: Vec<Vector>, origin: Origin) -> Self {
        codewords.sort();
        codewords.dedup();
        Self { space, codewords, origin }
    }

    /// The submodule spanned by the rows of `generator`.
    pub fn span_generator(space: Space, generator: &[Vec<i64>], budget: u64) -> Result<Self> {
        let rows = generator.iter().map(|r| space.vector(r)).collect::<Result<Vec<_>>>()?;
        let m = space.modulus();
        let combos = checked_pow(m as u64, rows.len()).ok_or(Error::Overflow("m^rows"))?;
        if combos > budget {
            return Err(Error::BudgetExceeded { needed: combos, budget });
        }
        let n = space.length();
        let mut words = Vec::with_capacity(combos as usize);
        let mut coeffs = vec![0u32; rows.len()];
        let mut acc = vec![0u32; n];
        odometer(&mut coeffs, m, |a| {
            acc.iter_mut().for_each(|x| *x = 0);
            for (&c, row) in a.iter().zip(&rows) {
                for (x, &g) in acc.iter_mut().zip(row.iter()) {
                    *x = ((*x as u64 + c as u64 * g as u64) % m as u64) as u32;
                }
            }
            words.push(Vector::from_reduced(acc.clone()));
        });
        let rows = rows.into_iter().map(Vector::into_inner).collect();
        Ok(Self::from_parts(space, words, Origin::Generated(rows)))
    }

    /// The same codewords viewed in another space of equal modulus and length
    /// (typically over a different pomset).
    pub fn with_space(&self, space: Space) -> Result<Self> {
        if space.modulus() != self.space.modulus() || space.length() != self.space.length() {
            return Err(Error::Shape(format!(
                "cannot move a code over Z_{}^{} into Z_{}^{}",
                self.space.modulus(),
                self.space.length(),
                space.modulus(),
                space.length()
            )));
        }
        Ok(Self { space, codewords: self.codewords.clone(), origin: self.origin.clone() })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn codewords(&self) -> &[Vector] {
        &self.codewords
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn generator(&self) -> Option<&[Vec<u32>]> {
        match &self.origin {
            Origin::Generated(rows) => Some(rows),
            _ => None,
        }
    }

    /// `K`.
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.codewords.binary_search_by(|c| c.as_slice().cmp(v)).is_ok()
    }

    /// `ceil(log_m K)`, computed exactly.
    pub fn log_size_ceil(&self) -> u32 {
        let m = self.space.modulus() as u128;
        let k = self.codewords.len() as u128;
        let mut e = 0;
        let mut p = 1u128;
        while p < k {
            p *= m;
            e += 1;
        }
        e
    }

    /// `k` when `K = m^k`.
    pub fn exact_dimension(&self) -> Option<u32> {
        let e = self.log_size_ceil();
        let m = self.space.modulus() as u128;
        (m.pow(e) == self.codewords.len() as u128).then_some(e)
    }

    /// Closed under addition and negation (always true for generated codes).
    pub fn is_linear(&self) -> bool {
        match self.origin {
            Origin::Generated(_) | Origin::Dual => true,
            Origin::Explicit => {
                let s = &self.space;
                self.codewords.iter().all(|a| {
                    self.contains(&s.neg(a).expect("same space"))
                        && self
                            .codewords
                            .iter()
                            .all(|b| self.contains(&s.add(a, b).expect("same space")))
                })
            }
        }
    }

    /// Codewords whose r-ball contains `v`.
    pub fn centers_within(&self, v: &[u32], r: u32) -> Result<Vec<Vector>> {
        self.space.check_vector(v)?;
        let mut out = Vec::new();
        for c in &self.codewords {
            if self.space.distance(v, c)? <= r {
                out.push(c.clone());
            }
        }
        Ok(out)
    }
}

/// Minimum `(P,pi)`-distance over distinct codeword pairs.
pub fn min_distance(code: &Code) -> Result<u32> {
    if code.len() < 2 {
        return Err(Error::UndefinedDistance);
    }
    let s = &code.space;
    let mut scratch = vec![0; s.block_count()];
    let mut diff = vec![0; s.length()];
    let mut best = u32::MAX;
    if code.is_linear() {
        for c in &code.codewords {
            if c.iter().any(|&x| x != 0) {
                best = best.min(s.weight_unchecked(c, &mut scratch));
            }
        }
    } else {
        for (i, a) in code.codewords.iter().enumerate() {
            for b in &code.codewords[i + 1..] {
                s.sub_into(a, b, &mut diff);
                best = best.min(s.weight_unchecked(&diff, &mut scratch));
            }
        }
    }
    Ok(best)
}

fn spanning_rows(code: &Code) -> Vec<Vec<u32>> {
    match &code.origin {
        Origin::Generated(rows) => rows.clone(),
        _ => code.codewords.iter().map(|c| c.to_vec()).collect(),
    }
}

/// `C^perp = { v : c . v = 0 for all c in C }` by exhaustive scan.
pub fn dual_code(code: &Code, budget: u64) -> Result<Code> {
    if !code.is_linear() {
        return Err(Error::NonLinear);
    }
    annihilator(&code.space, &spanning_rows(code), budget)
}

/// `{ v : r . v = 0 for every row r }` by exhaustive scan.
pub fn annihilator(space: &Space, rows: &[Vec<u32>], budget: u64) -> Result<Code> {
    for r in rows {
        space.check_vector(r)?;
    }
    let mut words = Vec::new();
    space.for_each_vector(budget, |v| {
        if rows.iter().all(|r| space.dot(r, v) == 0) {
            words.push(Vector::from_reduced(v.to_vec()));
        }
    })?;
    Ok(Code::from_parts(space.clone(), words, Origin::Dual))
}

/// Two balls share `vector`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub vector: Vector,
    pub centers: [Vector; 2],
}

/// Outcome of a tiling check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tiling {
    Perfect,
    Overlap(Overlap),
    Uncovered(Vector),
}

impl Tiling {
    pub fn is_perfect(&self) -> bool {
        matches!(self, Tiling::Perfect)
    }
}

/// Census of how many translates `c + offsets` (over codewords `c`) hit each
/// vector; reports the lexicographically first failure.
fn tile<P: Fn(&[u32], &[u32]) -> bool>(
    code: &Code,
    offsets: &[Vec<u32>],
    member: P,
    require_cover: bool,
    budget: u64,
) -> Result<Tiling> {
    let s = &code.space;
    let size = s.size()?;
    if size > budget {
        return Err(Error::BudgetExceeded { needed: size, budget });
    }
    let m = s.modulus();
    let mut hits = vec![0u8; size as usize];
    let mut point = vec![0u32; s.length()];
    for c in &code.codewords {
        for off in offsets {
            for ((p, &a), &b) in point.iter_mut().zip(c.iter()).zip(off) {
                *p = (a + b) % m;
            }
            let idx = s.index_of(&point) as usize;
            hits[idx] = hits[idx].saturating_add(1);
        }
    }
    for (idx, &h) in hits.iter().enumerate() {
        if h >= 2 {
            let v = s.vector_at(idx as u64);
            let mut owners = code.codewords.iter().filter(|c| member(&v, c));
            let first = owners.next().cloned();
            let second = owners.next().cloned();
            return match (first, second) {
                (Some(a), Some(b)) => Ok(Tiling::Overlap(Overlap { vector: v, centers: [a, b] })),
                _ => Err(Error::Inconsistent(format!("ball census disagrees at {v}"))),
            };
        }
        if h == 0 && require_cover {
            return Ok(Tiling::Uncovered(s.vector_at(idx as u64)));
        }
    }
    Ok(Tiling::Perfect)
}

fn offsets_where<F: Fn(&[u32]) -> bool>(space: &Space, budget: u64, keep: F) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    space.for_each_vector(budget, |v| {
        if keep(v) {
            out.push(v.to_vec());
        }
    })?;
    Ok(out)
}

fn i_ball_offsets(space: &Space, ideal: &Ideal, budget: u64) -> Result<Vec<Vec<u32>>> {
    let zero = space.zero();
    let counts = ideal.counts();
    offsets_where(space, budget, |v| in_ball_unchecked(space, v, &zero, counts))
}

fn r_ball_offsets(space: &Space, r: u32, budget: u64) -> Result<Vec<Vec<u32>>> {
    let mut scratch = vec![0; space.block_count()];
    let mut out = Vec::new();
    space.for_each_vector(budget, |v| {
        if space.weight_unchecked(v, &mut scratch) <= r {
            out.push(v.to_vec());
        }
    })?;
    Ok(out)
}

/// Whether the I-balls centred at the codewords tile `Z_m^n`.
pub fn is_i_perfect(code: &Code, ideal: &Ideal, budget: u64) -> Result<Tiling> {
    let s = &code.space;
    check_ideal(s, ideal)?;
    let offsets = i_ball_offsets(s, ideal, budget)?;
    let counts = ideal.counts();
    tile(code, &offsets, |v, c| in_ball_unchecked(s, v, c, counts), true, budget)
}

fn check_radius(space: &Space, r: u32) -> Result<()> {
    if r > space.max_weight() {
        return Err(Error::OutOfRange(format!(
            "radius {r} exceeds maximal weight {}",
            space.max_weight()
        )));
    }
    Ok(())
}

/// Whether the r-balls centred at the codewords tile `Z_m^n`.
pub fn is_r_perfect(code: &Code, r: u32, budget: u64) -> Result<Tiling> {
    let s = &code.space;
    check_radius(s, r)?;
    let offsets = r_ball_offsets(s, r, budget)?;
    tile(code, &offsets, |v, c| s.distance(v, c).map_or(false, |d| d <= r), true, budget)
}

/// Whether the r-balls centred at the codewords are pairwise disjoint.
/// Returns the first shared vector when they are not.
pub fn is_r_error_correcting(code: &Code, r: u32, budget: u64) -> Result<Option<Overlap>> {
    let s = &code.space;
    check_radius(s, r)?;
    let offsets = r_ball_offsets(s, r, budget)?;
    match tile(code, &offsets, |v, c| s.distance(v, c).map_or(false, |d| d <= r), false, budget)? {
        Tiling::Overlap(o) => Ok(Some(o)),
        _ => Ok(None),
    }
}

/// Both sides of the Singleton bound
/// `n - ceil(log_m K) >= max { sum_{i in I*} k_i : |I*| = floor((d-1)/floor(m/2)) }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingletonReport {
    pub distance: u32,
    /// `floor((d-1)/floor(m/2))`
    pub root_size: u32,
    /// `n - ceil(log_m K)`
    pub lhs: u32,
    pub rhs: u32,
    /// Down-sets of size `root_size` reaching `rhs`.
    pub maximizers: Vec<Vec<usize>>,
}

impl SingletonReport {
    pub fn is_mds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn singleton(code: &Code) -> Result<SingletonReport> {
    let s = &code.space;
    let distance = min_distance(code)?;
    let root_size = (distance - 1) / s.height();
    let downsets = s.pomset().enumerate_root_downsets(root_size as usize)?;
    let dims = |d: &Vec<usize>| d.iter().map(|&i| s.labeling()[i]).sum::<usize>() as u32;
    let rhs = downsets.iter().map(dims).max().unwrap_or(0);
    let maximizers = downsets.into_iter().filter(|d| dims(d) == rhs).collect();
    let lhs = s.length() as u32 - code.log_size_ceil();
    Ok(SingletonReport { distance, root_size, lhs, rhs, maximizers })
}

pub fn singleton_rhs(code: &Code) -> Result<u32> {
    Ok(singleton(code)?.rhs)
}

/// Checks the bound, then whether it holds with equality.
pub fn is_mds(code: &Code) -> Result<bool> {
    let report = singleton(code)?;
    if report.lhs < report.rhs {
        return Err(Error::Inconsistent(format!(
            "Singleton bound violated: n - ceil(log_m K) = {} < {}",
            report.lhs, report.rhs
        )));
    }
    Ok(report.is_mds())
}

/// Coordinate positions of the blocks inside and outside `ideal`'s root set.
fn split_coordinates(space: &Space, ideal: &Ideal) -> (Vec<usize>, Vec<usize>) {
    let roots = ideal.root_set();
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for t in 0..space.block_count() {
        let target = if roots.contains(&t) { &mut inside } else { &mut outside };
        target.extend(space.block_range(t));
    }
    (inside, outside)
}

/// The graph code `{ (v, f(v)) }` where `v` ranges over the blocks outside
/// the root set of a full-count ideal and `f(v)` fills the blocks inside.
pub fn construct_i_perfect<F>(space: &Space, ideal: &Ideal, f: F, budget: u64) -> Result<Code>
where
    F: Fn(&[u32]) -> Vec<u32>,
{
    check_ideal(space, ideal)?;
    if !ideal.has_full_count() {
        return Err(Error::InvalidParameters(format!("ideal {ideal} has partial count")));
    }
    let m = space.modulus();
    let (inside, outside) = split_coordinates(space, ideal);
    let count = checked_pow(m as u64, outside.len()).ok_or(Error::Overflow("code size"))?;
    if count > budget {
        return Err(Error::BudgetExceeded { needed: count, budget });
    }
    let mut words = Vec::with_capacity(count as usize);
    let mut failure = None;
    let mut free = vec![0u32; outside.len()];
    odometer(&mut free, m, |v| {
        if failure.is_some() {
            return;
        }
        let image = f(v);
        if image.len() != inside.len() || image.iter().any(|&x| x >= m) {
            failure = Some(format!(
                "f must map every vector to {} residues mod {m}; got {:?} at {:?}",
                inside.len(),
                image,
                v
            ));
            return;
        }
        let mut word = vec![0u32; space.length()];
        for (&pos, &x) in outside.iter().zip(v) {
            word[pos] = x;
        }
        for (&pos, &x) in inside.iter().zip(&image) {
            word[pos] = x;
        }
        words.push(Vector::from_reduced(word));
    });
    if let Some(msg) = failure {
        return Err(Error::InvalidParameters(msg));
    }
    let code = Code::from_parts(space.clone(), words, Origin::Explicit);
    match is_i_perfect(&code, ideal, budget)? {
        Tiling::Perfect => Ok(code),
        other => Err(Error::Inconsistent(format!("graph code is not I-perfect: {other:?}"))),
    }
}

/// Smallest down-set size whose parity-check blocks are dependent, with the
/// witnessing down-sets, cross-checked against codeword supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockThreshold {
    pub threshold: usize,
    pub witnesses: Vec<Vec<usize>>,
    /// `min |<supp(c)>*|` over nonzero codewords.
    pub codeword_minimum: usize,
    pub parity_check: Vec<Vec<u32>>,
}

pub fn block_dependency_threshold(code: &Code) -> Result<BlockThreshold> {
    let s = &code.space;
    let p = s.modulus();
    if !linalg::is_prime(p) {
        return Err(Error::Unsupported(format!("parity-check analysis needs a prime modulus, got {p}")));
    }
    if !code.is_linear() {
        return Err(Error::NonLinear);
    }
    let nonzero: Vec<&Vector> = code.codewords.iter().filter(|c| c.iter().any(|&x| x != 0)).collect();
    if nonzero.is_empty() {
        return Err(Error::InvalidParameters("the zero code has no dependent block set".into()));
    }
    let n = s.length();
    let h = linalg::nullspace(spanning_rows(code), n, p);

    let pomset = s.pomset();
    let mut downsets: Vec<u64> = pomset.downset_masks().into_iter().filter(|&d| d != 0).collect();
    downsets.sort_by_key(|d| (d.count_ones(), *d));
    let mut threshold = None;
    let mut witnesses = Vec::new();
    for d in downsets {
        let size = d.count_ones() as usize;
        if threshold.is_some_and(|t| size > t) {
            break;
        }
        let blocks: Vec<usize> = (0..s.block_count()).filter(|&i| d & (1 << i) != 0).collect();
        let cols: Vec<usize> = blocks.iter().flat_map(|&b| s.block_range(b)).collect();
        let sub: Vec<Vec<u32>> = h.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
        if linalg::rank(sub, cols.len(), p) < cols.len() {
            threshold = Some(size);
            witnesses.push(blocks);
        }
    }

    let mut weights = vec![0u32; s.block_count()];
    let codeword_minimum = nonzero
        .iter()
        .map(|c| {
            s.block_weights_into(c, &mut weights);
            let mask = weights
                .iter()
                .enumerate()
                .filter(|(_, &w)| w > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i));
            pomset.down_closure(mask).count_ones() as usize
        })
        .min()
        .expect("nonzero codewords exist");

    let threshold = threshold.ok_or_else(|| Error::Inconsistent("no dependent block set found".into()))?;
    if threshold != codeword_minimum {
        return Err(Error::Inconsistent(format!(
            "dependent block threshold {threshold} differs from codeword minimum {codeword_minimum}"
        )));
    }
    witnesses.sort();
    Ok(BlockThreshold { threshold, witnesses, codeword_minimum, parity_check: h })
}

/// `|B_I(x) ∩ C|`.
pub fn ball_code_intersection(code: &Code, ideal: &Ideal, x: &[u32]) -> Result<u64> {
    let s = &code.space;
    check_ideal(s, ideal)?;
    s.check_vector(x)?;
    let counts = ideal.counts();
    Ok(code.codewords.iter().filter(|c| in_ball_unchecked(s, c, x, counts)).count() as u64)
}

/// `A_r` for `r = 0 ..= s * floor(m/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution(pub Vec<u64>);

impl WeightDistribution {
    pub fn get(&self, r: u32) -> u64 {
        self.0.get(r as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

pub fn weight_distribution(code: &Code) -> WeightDistribution {
    let s = &code.space;
    let mut out = vec![0u64; s.max_weight() as usize + 1];
    let mut scratch = vec![0; s.block_count()];
    for c in &code.codewords {
        out[s.weight_unchecked(c, &mut scratch) as usize] += 1;
    }
    WeightDistribution(out)
}

/// Parameters of a linear `(n, m^k, d)` code over equal block dimension `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EqualBlockParams {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub m: u32,
    pub s: u32,
}

impl EqualBlockParams {
    pub fn new(n: u32, k: u32, t: u32, m: u32, s: u32) -> Result<Self> {
        if m < 2 || t == 0 || s == 0 {
            return Err(Error::InvalidParameters(format!("m = {m}, t = {t}, s = {s}")));
        }
        if s * t != n {
            return Err(Error::InvalidParameters(format!("s * t = {} differs from n = {n}", s * t)));
        }
        if k > n {
            return Err(Error::InvalidParameters(format!("k = {k} exceeds n = {n}")));
        }
        if (n - k) % t != 0 {
            return Err(Error::InvalidParameters(format!("t = {t} does not divide n - k = {}", n - k)));
        }
        Ok(Self { n, k, t, m, s })
    }

    /// Reads the parameters off a code: equal block dimensions and `K = m^k`.
    pub fn of_code(code: &Code) -> Result<Self> {
        let s = code.space();
        let t = s.labeling()[0];
        if s.labeling().iter().any(|&k| k != t) {
            return Err(Error::InvalidParameters("blocks have different dimensions".into()));
        }
        let k = code
            .exact_dimension()
            .ok_or_else(|| Error::InvalidParameters(format!("K = {} is not a power of m", code.len())))?;
        Self::new(s.length() as u32, k, t as u32, s.modulus(), s.block_count() as u32)
    }

    pub fn height(&self) -> u32 {
        self.m / 2
    }

    /// `(n - k) / t`
    pub fn critical_roots(&self) -> u32 {
        (self.n - self.k) / self.t
    }

    /// Minimum distance forced by the MDS property: `(n-k)/t * floor(m/2) + 1`.
    pub fn mds_distance(&self) -> u32 {
        self.critical_roots() * self.height() + 1
    }

    fn pow_m(&self, exp: i64) -> Result<u64> {
        if exp < 0 {
            return Err(Error::Inconsistent(format!("negative exponent {exp}")));
        }
        checked_pow(self.m as u64, exp as usize).ok_or(Error::Overflow("m^e"))
    }

    /// `t*l - n + k`
    fn excess(&self, l: u32) -> i64 {
        (self.t * l) as i64 - self.n as i64 + self.k as i64
    }
}

/// Branch of the closed-form chain weight distribution used for a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChainBranch {
    Zero,
    BelowDistance,
    /// `r = l * floor(m/2) >= d`
    FullCount,
    /// `r = l * floor(m/2) + 1 >= d`
    UnitExcess,
    /// `r = l * floor(m/2) + p >= d`, `2 <= p < floor(m/2)`
    PartialExcess,
}

/// Single term `A_r` of the MDS chain weight distribution, tagged with the
/// branch that produced it.
pub fn mds_chain_weight_term(params: &EqualBlockParams, r: u32) -> Result<(ChainBranch, u64)> {
    let h = params.height();
    let d = params.mds_distance();
    let t = params.t as usize;
    if r == 0 {
        return Ok((ChainBranch::Zero, 1));
    }
    if r < d {
        return Ok((ChainBranch::BelowDistance, 0));
    }
    let (l, p) = (r / h, r % h);
    let pow = |base: u32| checked_pow(base as u64, t).ok_or(Error::Overflow("A_r"));
    match p {
        0 => {
            let lead = pow(params.m)? - pow(2 * h - 1)?;
            let tail = params.pow_m(params.excess(l) - params.t as i64)?;
            Ok((ChainBranch::FullCount, lead.checked_mul(tail).ok_or(Error::Overflow("A_r"))?))
        }
        1 => {
            let lead = pow(3)? - 1;
            let tail = params.pow_m(params.excess(l))?;
            Ok((ChainBranch::UnitExcess, lead.checked_mul(tail).ok_or(Error::Overflow("A_r"))?))
        }
        _ => {
            let lead = pow(2 * p + 1)? - pow(2 * p - 1)?;
            let tail = params.pow_m(params.excess(l))?;
            Ok((ChainBranch::PartialExcess, lead.checked_mul(tail).ok_or(Error::Overflow("A_r"))?))
        }
    }
}

/// Closed-form weight distribution of an MDS linear code over a chain
/// pomset with equal block dimensions.
pub fn mds_chain_weight_distribution(params: &EqualBlockParams) -> Result<WeightDistribution> {
    let top = params.s * params.height();
    let terms = (0..=top)
        .map(|r| mds_chain_weight_term(params, r).map(|(_, a)| a))
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightDistribution(terms))
}

/// The closed form for a concrete code, after checking that its space is a
/// chain with equal block dimensions and that its distance matches.
pub fn mds_chain_weight_distribution_for(code: &Code) -> Result<WeightDistribution> {
    if !code.space().pomset().is_chain() {
        return Err(Error::InvalidParameters("pomset is not a chain".into()));
    }
    let params = EqualBlockParams::of_code(code)?;
    if code.len() > 1 {
        let d = min_distance(code)?;
        if d != params.mds_distance() {
            return Err(Error::InvalidParameters(format!(
                "minimum distance {d} differs from the MDS value {}",
                params.mds_distance()
            )));
        }
    }
    mds_chain_weight_distribution(&params)
}

/// `|B_I ∩ C|` for an MDS linear chain code and an ideal of cardinality
/// `cardinality`: 1 up to the critical size, then `m^{tl-n+k}` for full
/// ideals and `(2p+1)^t m^{tl-n+k}` for partial ones.
pub fn mds_chain_ball_intersection(params: &EqualBlockParams, cardinality: u32) -> Result<u64> {
    let h = params.height();
    let critical = params.critical_roots() * h;
    if cardinality <= critical {
        return Ok(1);
    }
    let (l, p) = (cardinality / h, cardinality % h);
    let tail = params.pow_m(params.excess(l))?;
    if p == 0 {
        return Ok(tail);
    }
    let lead = checked_pow((2 * p + 1) as u64, params.t as usize).ok_or(Error::Overflow("|B_I ∩ C|"))?;
    lead.checked_mul(tail).ok_or(Error::Overflow("|B_I ∩ C|"))
}

/// `|B_I(x) ∩ C|` predicted for an MDS code and a full-count ideal with
/// `roots` elements: `m^{t*roots-n+k}` from the critical size on, otherwise
/// 1 or 0 depending on whether `x` is covered by some codeword's I-ball.
pub fn mds_full_ball_intersection(params: &EqualBlockParams, roots: u32, covered: bool) -> Result<u64> {
    if roots >= params.critical_roots() {
        params.pow_m(params.excess(roots))
    } else {
        Ok(u64::from(covered))
    }
}

/// `hits[index_of(x)] = |B_I(x) ∩ C|` for every `x`.
fn ball_hit_counts(code: &Code, ideal: &Ideal, budget: u64) -> Result<Vec<u32>> {
    let s = &code.space;
    let size = s.size()?;
    if size > budget {
        return Err(Error::BudgetExceeded { needed: size, budget });
    }
    let offsets = i_ball_offsets(s, ideal, budget)?;
    let m = s.modulus();
    let mut hits = vec![0u32; size as usize];
    let mut point = vec![0u32; s.length()];
    for c in &code.codewords {
        for off in &offsets {
            for ((p, &a), &b) in point.iter_mut().zip(c.iter()).zip(off) {
                *p = (a + b) % m;
            }
            hits[s.index_of(&point) as usize] += 1;
        }
    }
    Ok(hits)
}

/// Full-count ideals whose root sets are the Singleton maximizers, each with
/// whether the code is I-perfect for it.
pub fn singleton_ideal_sweep(code: &Code, budget: u64) -> Result<Vec<(Ideal, bool)>> {
    let report = singleton(code)?;
    let pomset = code.space.pomset();
    let h = code.space.height();
    let mut out = Vec::new();
    for roots in &report.maximizers {
        let mut counts = vec![0u32; pomset.ground_size()];
        for &r in roots {
            counts[r] = h;
        }
        let ideal = Ideal::from_counts(pomset, &counts)?;
        let perfect = is_i_perfect(code, &ideal, budget)?.is_perfect();
        out.push((ideal, perfect));
    }
    Ok(out)
}

fn full_count_ideals_with_roots(space: &Space, roots: usize) -> Result<Vec<Ideal>> {
    let pomset = space.pomset();
    let h = space.height();
    pomset
        .enumerate_root_downsets(roots)?
        .into_iter()
        .map(|d| {
            let mut counts = vec![0u32; pomset.ground_size()];
            for i in d {
                counts[i] = h;
            }
            Ideal::from_counts(pomset, &counts)
        })
        .collect()
}

/// The five equivalent conditions for a linear code with equal block
/// dimensions, each evaluated directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    /// The code is MDS (vacuously so when it has a single codeword).
    pub mds: bool,
    /// I-perfect for every full-count ideal with `(n-k)/t` roots.
    pub perfect: bool,
    /// The dual code is I-perfect in the dual pomset for every full-count
    /// ideal with `k/t` roots.
    pub dual_perfect: bool,
    /// The dual code is MDS in the dual pomset.
    pub dual_mds: bool,
    /// `|B_I(x) ∩ C|` matches the piecewise count for every full-count ideal
    /// and every `x`.
    pub intersections: bool,
    /// First `(ideal, x, counted, predicted)` mismatch of the last condition.
    pub intersection_witness: Option<(Ideal, Vector, u64, u64)>,
}

impl DualityReport {
    /// The implications that hold for every code: MDS gives perfectness,
    /// perfectness, dual perfectness and the intersection counts coincide,
    /// and an MDS dual gives dual perfectness. Perfectness alone does not
    /// force MDS: the span of `(1,1)` in the Lee space `Z_5^2` tiles with
    /// both coordinate balls but has distance 2.
    pub fn consistent(&self) -> bool {
        (!self.mds || self.perfect)
            && self.perfect == self.dual_perfect
            && self.perfect == self.intersections
            && (!self.dual_mds || self.dual_perfect)
    }

    pub fn all_agree(&self) -> bool {
        let v = [self.mds, self.perfect, self.dual_perfect, self.dual_mds, self.intersections];
        v.iter().all(|&b| b == v[0])
    }
}

pub fn duality_report(code: &Code, budget: u64) -> Result<DualityReport> {
    if !code.is_linear() {
        return Err(Error::NonLinear);
    }
    let params = EqualBlockParams::of_code(code)?;
    if params.k % params.t != 0 {
        return Err(Error::InvalidParameters(format!("t = {} does not divide k = {}", params.t, params.k)));
    }
    let s = &code.space;
    let dual_space = s.dual();
    let dual = dual_code(code, budget)?.with_space(dual_space.clone())?;

    let all_perfect = |c: &Code, sp: &Space, roots: u32| -> Result<bool> {
        for i in full_count_ideals_with_roots(sp, roots as usize)? {
            if !is_i_perfect(c, &i, budget)?.is_perfect() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    // A single codeword has no distance; it counts as MDS here.
    let mds_or_trivial = |c: &Code| match is_mds(c) {
        Err(Error::UndefinedDistance) => Ok(true),
        other => other,
    };

    let mds = mds_or_trivial(code)?;
    let perfect = all_perfect(code, s, params.critical_roots())?;
    let dual_perfect = all_perfect(&dual, &dual_space, params.k / params.t)?;
    let dual_mds = mds_or_trivial(&dual)?;

    let mut intersection_witness = None;
    'ideals: for roots in 0..=params.s {
        for ideal in full_count_ideals_with_roots(s, roots as usize)? {
            let hits = ball_hit_counts(code, &ideal, budget)?;
            let covered: Vec<bool> = hits.iter().map(|&h| h > 0).collect();
            for (idx, &h) in hits.iter().enumerate() {
                let predicted = mds_full_ball_intersection(&params, roots, covered[idx])?;
                if h as u64 != predicted {
                    intersection_witness = Some((ideal, s.vector_at(idx as u64), h as u64, predicted));
                    break 'ideals;
                }
            }
        }
    }
    Ok(DualityReport {
        mds,
        perfect,
        dual_perfect,
        dual_mds,
        intersections: intersection_witness.is_none(),
        intersection_witness,
    })
}

/// Whether the partial-count perfectness criterion applies to `code` and
/// `ideal`: equal block dimensions `t`, `t | ceil(log_m K)`, a nonempty set of
/// partial elements whose `(2 C_I + 1)` multiply to less than `m`, and
/// `floor((d-1)/floor(m/2))` at least the number of full-count roots.
/// When it applies, an I-perfect code is MDS.
pub fn partial_criterion_applies(code: &Code, ideal: &Ideal) -> Result<bool> {
    let s = &code.space;
    check_ideal(s, ideal)?;
    let t = s.labeling()[0];
    if s.labeling().iter().any(|&k| k != t) || code.log_size_ceil() as usize % t != 0 {
        return Ok(false);
    }
    let partial = ideal.partial_elements();
    if partial.is_empty() {
        return Ok(false);
    }
    let m = s.modulus() as u64;
    let mut product = 1u64;
    for &i in &partial {
        product = product.saturating_mul(2 * ideal.count(i) as u64 + 1);
    }
    if product >= m {
        return Ok(false);
    }
    let d = min_distance(code)?;
    Ok(((d - 1) / s.height()) as usize >= ideal.full_elements().len())
}

/// Distinct codewords `c, c'` and ideals `I, I'` of cardinality `r` with
/// `c - c'` in `B_{I ⊕ I'}`. With `full_only`, only full-count ideals are
/// tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumBallWitness {
    pub codewords: [Vector; 2],
    pub ideals: [Ideal; 2],
}

pub fn sum_ball_witness(code: &Code, r: u32, full_only: bool) -> Result<Option<SumBallWitness>> {
    let s = &code.space;
    check_radius(s, r)?;
    let ideals: Vec<Ideal> = s
        .pomset()
        .enumerate_ideals(r)?
        .into_iter()
        .filter(|i| !full_only || i.has_full_count())
        .collect();
    let mut sums = Vec::new();
    for a in &ideals {
        for b in &ideals {
            sums.push((a.as_mset().msum(b.as_mset())?, a, b));
        }
    }
    let mut diff = vec![0; s.length()];
    let mut weights = vec![0; s.block_count()];
    for c in &code.codewords {
        for c2 in &code.codewords {
            if c == c2 {
                continue;
            }
            s.sub_into(c, c2, &mut diff);
            s.block_weights_into(&diff, &mut weights);
            for (sum, a, b) in &sums {
                if weights.iter().zip(sum.counts()).all(|(w, x)| w <= x) {
                    return Ok(Some(SumBallWitness {
                        codewords: [c.clone(), c2.clone()],
                        ideals: [(*a).clone(), (*b).clone()],
                    }));
                }
            }
        }
    }
    Ok(None)
}
