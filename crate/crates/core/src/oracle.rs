//! Brute-force certification. Everything here is computed from the
//! definitions (block support, ideal generation, distance) by scanning the
//! space; the closed forms in [`crate::balls`] are only ever the thing being
//! checked, never a means of checking.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::balls;
use crate::codes::{self, Code, Tiling};
use crate::error::{Error, Result};
use crate::pomset::Ideal;
use crate::space::{Space, Vector};

/// Default number of triples for metric checks.
pub const DEFAULT_TRIPLE_BUDGET: u64 = 100_000;

/// Exact counts of vectors by weight and by generated support ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    /// `m^n`
    pub total: u64,
    /// `by_weight[r] = |S_r(0)|`
    pub by_weight: Vec<u64>,
    /// Count vector of `<supp v>` to the number of such `v`.
    pub by_ideal: BTreeMap<Vec<u32>, u64>,
}

impl CensusReport {
    /// `|B_r(0)|` as a running sum.
    pub fn ball(&self, r: u32) -> u64 {
        self.by_weight.iter().take(r as usize + 1).sum()
    }

    pub fn sphere(&self, ideal: &Ideal) -> u64 {
        self.by_ideal.get(ideal.counts()).copied().unwrap_or(0)
    }
}

pub fn weight_census(space: &Space, budget: u64) -> Result<CensusReport> {
    let pomset = space.pomset();
    let mut by_weight = vec![0u64; space.max_weight() as usize + 1];
    let mut by_ideal = BTreeMap::new();
    let mut weights = vec![0u32; space.block_count()];
    let mut total = 0u64;
    space.for_each_vector(budget, |v| {
        space.block_weights_into(v, &mut weights);
        let generated = pomset.generated_counts(&weights);
        let w: u32 = generated.iter().sum();
        by_weight[w as usize] += 1;
        *by_ideal.entry(generated).or_insert(0) += 1;
        total += 1;
    })?;
    Ok(CensusReport { total, by_weight, by_ideal })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Identity,
    Separation,
    Symmetry,
    Triangle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricViolation {
    pub axiom: Axiom,
    pub vectors: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricReport {
    pub exhaustive: bool,
    pub triples: u64,
    pub violation: Option<MetricViolation>,
}

impl MetricReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the metric axioms of the `(P,pi)`-distance.
pub fn verify_metric(space: &Space, triple_budget: u64, seed: u64) -> MetricReport {
    verify_metric_with(space, triple_budget, seed, |s, u, v| {
        s.distance(u, v).expect("vectors come from the space")
    })
}

/// Checks the metric axioms of an arbitrary distance function on the space.
pub fn verify_metric_with<D>(space: &Space, triple_budget: u64, seed: u64, dist: D) -> MetricReport
where
    D: Fn(&Space, &[u32], &[u32]) -> u32,
{
    let size = space.size().unwrap_or(u64::MAX);
    let exhaustive = size
        .checked_mul(size)
        .and_then(|s2| s2.checked_mul(size))
        .is_some_and(|s3| s3 <= triple_budget);

    let check = |x: &Vector, y: &Vector, z: &Vector| -> Option<MetricViolation> {
        let fail = |axiom, vs: &[&Vector]| {
            Some(MetricViolation { axiom, vectors: vs.iter().map(|v| (*v).clone()).collect() })
        };
        if dist(space, x, x) != 0 {
            return fail(Axiom::Identity, &[x]);
        }
        let xy = dist(space, x, y);
        if x != y && xy == 0 {
            return fail(Axiom::Separation, &[x, y]);
        }
        if xy != dist(space, y, x) {
            return fail(Axiom::Symmetry, &[x, y]);
        }
        if dist(space, x, z) > xy + dist(space, y, z) {
            return fail(Axiom::Triangle, &[x, y, z]);
        }
        None
    };

    let mut triples = 0u64;
    if exhaustive {
        let all = space.all_vectors(size).expect("size within budget");
        for x in &all {
            for y in &all {
                for z in &all {
                    triples += 1;
                    if let Some(v) = check(x, y, z) {
                        return MetricReport { exhaustive, triples, violation: Some(v) };
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = space.modulus();
        let n = space.length();
        let draw = |rng: &mut ChaCha8Rng| {
            let coords: Vec<i64> = (0..n).map(|_| rng.random_range(0..m) as i64).collect();
            space.vector(&coords).expect("length matches")
        };
        for _ in 0..triple_budget {
            let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            triples += 1;
            if let Some(v) = check(&x, &y, &z) {
                return MetricReport { exhaustive, triples, violation: Some(v) };
            }
        }
    }
    MetricReport { exhaustive, triples, violation: None }
}

/// The closed forms a formula suite certifies. Swapping in a broken
/// implementation is how the suite itself gets tested.
pub trait BallFormulas {
    fn i_ball(&self, space: &Space, ideal: &Ideal) -> Result<u64>;
    fn i_sphere(&self, space: &Space, ideal: &Ideal) -> Result<u64>;
    fn r_ball(&self, space: &Space, r: u32) -> Result<u64>;
    fn partition(&self, space: &Space, ideal: &Ideal, budget: u64) -> Result<Vec<Vector>>;
}

/// The library's own closed forms.
pub struct ClosedForms;

impl BallFormulas for ClosedForms {
    fn i_ball(&self, space: &Space, ideal: &Ideal) -> Result<u64> {
        balls::i_ball_cardinality(space, ideal)
    }

    fn i_sphere(&self, space: &Space, ideal: &Ideal) -> Result<u64> {
        balls::i_sphere_cardinality(space, ideal)
    }

    fn r_ball(&self, space: &Space, r: u32) -> Result<u64> {
        balls::r_ball_cardinality(space, r)
    }

    fn partition(&self, space: &Space, ideal: &Ideal, budget: u64) -> Result<Vec<Vector>> {
        balls::partition_centers(space, ideal, budget)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
    /// Set when some check ran out of budget and was skipped.
    pub partial: bool,
    pub skipped: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteBudgets {
    pub scan: u64,
    pub annihilator: u64,
}

impl Default for SuiteBudgets {
    fn default() -> Self {
        Self { scan: balls::DEFAULT_SCAN_BUDGET, annihilator: codes::DEFAULT_ANNIHILATOR_BUDGET }
    }
}

pub fn verify_formula_suite(space: &Space) -> Result<SuiteReport> {
    verify_formula_suite_with(space, &ClosedForms, SuiteBudgets::default())
}

struct Check {
    name: &'static str,
    checked: u64,
    witness: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, witness: None }
    }

    /// Records a comparison; keeps the first failure as the witness.
    fn expect<F: FnOnce() -> String>(&mut self, ok: bool, witness: F) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.into(),
            passed: self.witness.is_none(),
            checked: self.checked,
            witness: self.witness,
        }
    }
}

/// Runs every closed form in `formulas` against enumeration over `space`:
/// I-spheres and I-balls for all ideals, r-balls for all radii, the sphere
/// partition of the space, `B_r` as a union of I-balls, submodule closure and
/// annihilator duality of full-count I-balls, and partition tilings.
/// The census itself must fit the scan budget; later checks that do not are
/// skipped and the report is flagged partial.
pub fn verify_formula_suite_with<F: BallFormulas>(
    space: &Space,
    formulas: &F,
    budgets: SuiteBudgets,
) -> Result<SuiteReport> {
    let census = weight_census(space, budgets.scan)?;
    let ideals = space.pomset().all_ideals();
    let mut report = SuiteReport::default();
    let push = |report: &mut SuiteReport, name: &'static str, r: Result<CheckOutcome>| match r {
        Ok(c) => report.checks.push(c),
        Err(Error::BudgetExceeded { .. }) => {
            report.partial = true;
            report.skipped.push(name.into());
        }
        Err(e) => report.checks.push(CheckOutcome {
            name: name.into(),
            passed: false,
            checked: 0,
            witness: Some(format!("error: {e}")),
        }),
    };

    let spheres = (|| {
        let mut c = Check::new("i-sphere");
        for i in &ideals {
            let closed = formulas.i_sphere(space, i)?;
            let counted = census.sphere(i);
            c.expect(closed == counted, || format!("{i}: closed form {closed}, enumerated {counted}"));
        }
        Ok(c.finish())
    })();
    push(&mut report, "i-sphere", spheres);

    let sphere_partition = (|| {
        let mut c = Check::new("sphere-partition");
        let mut sum = 0u64;
        for i in &ideals {
            sum = sum.saturating_add(formulas.i_sphere(space, i)?);
        }
        c.expect(sum == census.total, || format!("sum of |S_I| = {sum}, m^n = {}", census.total));
        Ok(c.finish())
    })();
    push(&mut report, "sphere-partition", sphere_partition);

    let i_balls = (|| {
        let mut c = Check::new("i-ball");
        let zero = space.zero();
        for i in &ideals {
            let closed = formulas.i_ball(space, i)?;
            let mut members = Vec::new();
            space.for_each_vector(budgets.scan, |v| {
                if space.support(v).and_then(|s| s.is_submset(i.as_mset())).unwrap_or(false) {
                    members.push(Vector::from_reduced(v.to_vec()));
                }
            })?;
            let counted = members.len() as u64;
            c.expect(closed == counted, || format!("{i}: closed form {closed}, enumerated {counted}"));
            let listed = balls::enumerate_i_ball(space, &zero, i, budgets.scan)?;
            c.expect(listed == members, || format!("{i}: enumerated ball differs from scan"));
        }
        Ok(c.finish())
    })();
    push(&mut report, "i-ball", i_balls);

    let r_balls = (|| {
        let mut c = Check::new("r-ball");
        for r in 0..=space.max_weight() {
            let closed = formulas.r_ball(space, r)?;
            let counted = census.ball(r);
            c.expect(closed == counted, || format!("r = {r}: closed form {closed}, enumerated {counted}"));
        }
        Ok(c.finish())
    })();
    push(&mut report, "r-ball", r_balls);

    // v is in some B_I with |I| = r iff <supp v> sits inside such an ideal.
    let r_ball_union = (|| {
        let mut c = Check::new("r-ball-union");
        for r in 0..=space.max_weight() {
            let of_size: Vec<&Ideal> = ideals.iter().filter(|i| i.cardinality() == r).collect();
            let mut covered = 0u64;
            for (gen, count) in &census.by_ideal {
                let inside = of_size
                    .iter()
                    .any(|i| gen.iter().zip(i.counts()).all(|(a, b)| a <= b));
                if inside {
                    covered += count;
                }
            }
            let ball = census.ball(r);
            c.expect(covered == ball, || format!("r = {r}: union covers {covered}, |B_r| = {ball}"));
        }
        Ok(c.finish())
    })();
    push(&mut report, "r-ball-union", r_ball_union);

    // B_I is a submodule iff it equals the span of its members with a single
    // nonzero coordinate.
    let closure = (|| {
        let mut c = Check::new("submodule");
        let zero = space.zero();
        for i in ideals.iter().filter(|i| i.has_full_count()) {
            let ball = balls::enumerate_i_ball(space, &zero, i, budgets.scan)?;
            let units: Vec<&Vector> =
                ball.iter().filter(|v| v.iter().filter(|&&x| x != 0).count() == 1).collect();
            let mut span = BTreeSet::new();
            span.insert(zero.clone());
            let mut frontier = vec![zero.clone()];
            while let Some(v) = frontier.pop() {
                for g in &units {
                    let next = space.add(&v, g)?;
                    if span.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
                if span.len() > ball.len() {
                    break;
                }
            }
            let same = span.len() == ball.len() && span.iter().zip(&ball).all(|(a, b)| a == b);
            c.expect(same, || format!("{i}: ball has {} vectors, its span {}", ball.len(), span.len()));
        }
        Ok(c.finish())
    })();
    push(&mut report, "submodule", closure);

    let duality = (|| {
        let mut c = Check::new("ball-duality");
        let zero = space.zero();
        let dual_space = space.dual();
        for i in ideals.iter().filter(|i| i.has_full_count()) {
            let ball = balls::enumerate_i_ball(space, &zero, i, budgets.scan)?;
            // The submodule check shows the ball is spanned by these.
            let units: Vec<Vec<u32>> = ball
                .iter()
                .filter(|v| v.iter().filter(|&&x| x != 0).count() == 1)
                .map(|v| v.to_vec())
                .collect();
            let annihilator = codes::annihilator(space, &units, budgets.annihilator)?;
            let complement = space.pomset().ideal_complement(i)?;
            let dual_ball = balls::enumerate_i_ball(&dual_space, &dual_space.zero(), &complement, budgets.scan)?;
            c.expect(annihilator.codewords() == dual_ball.as_slice(), || {
                format!(
                    "{i}: annihilator has {} vectors, dual ball {complement} has {}",
                    annihilator.len(),
                    dual_ball.len()
                )
            });
        }
        Ok(c.finish())
    })();
    push(&mut report, "ball-duality", duality);

    let tiling = (|| {
        let mut c = Check::new("partition-tiling");
        let size = space.size()?;
        for i in &ideals {
            let centers = match formulas.partition(space, i, budgets.scan) {
                Ok(centers) => centers,
                Err(Error::PartitionImpossible { .. }) => continue,
                Err(e) => return Err(e),
            };
            let expected = formulas.i_ball(space, i)?;
            c.expect(expected.checked_mul(centers.len() as u64) == Some(size), || {
                format!("{i}: {} centers of balls of size {expected} for {size} vectors", centers.len())
            });
            let code = Code::new(space.clone(), centers)?;
            let outcome = codes::is_i_perfect(&code, i, budgets.scan)?;
            c.expect(outcome.is_perfect(), || match outcome {
                Tiling::Overlap(o) => format!("{i}: {} shared by {} and {}", o.vector, o.centers[0], o.centers[1]),
                Tiling::Uncovered(v) => format!("{i}: {v} uncovered"),
                Tiling::Perfect => String::new(),
            });
        }
        Ok(c.finish())
    })();
    push(&mut report, "partition-tiling", tiling);

    Ok(report)
}
