//! Theorem checks shared by the theorem tests and the acceptance harness.
//! Each returns `Err` with a description of the first counterexample.

use pomset_core::codes::{self, Code, EqualBlockParams};
use pomset_core::{Error, Ideal, Pomset, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BUDGET: u64 = 10_000_000;

pub type Check = Result<(), String>;

fn fail<T>(name: &str, msg: String) -> Result<T, String> {
    Err(format!("{name}: {msg}"))
}

pub fn full_ideals(space: &Space, roots: usize) -> Vec<Ideal> {
    let p = space.pomset();
    p.enumerate_root_downsets(roots)
        .unwrap()
        .into_iter()
        .map(|d| {
            let mut c = vec![0; p.ground_size()];
            for i in d {
                c[i] = space.height();
            }
            Ideal::from_counts(p, &c).unwrap()
        })
        .collect()
}

pub fn equal_dims(space: &Space) -> Option<usize> {
    let t = space.labeling()[0];
    space.labeling().iter().all(|&k| k == t).then_some(t)
}

fn perfect(code: &Code, ideal: &Ideal) -> bool {
    codes::is_i_perfect(code, ideal, BUDGET).unwrap().is_perfect()
}

/// MDS iff I-perfect for some full-count ideal with
/// `floor((d-1)/floor(m/2))` roots, for codes of size `m^k`.
pub fn mds_iff_some_full_perfect(name: &str, code: &Code) -> Check {
    if code.len() < 2 || code.exact_dimension().is_none() {
        return Ok(());
    }
    let mds = codes::is_mds(code).unwrap();
    let d = codes::min_distance(code).unwrap();
    let roots = ((d - 1) / code.space().height()) as usize;
    let witness = full_ideals(code.space(), roots).into_iter().find(|i| perfect(code, i));
    if mds != witness.is_some() {
        return fail(name, format!("MDS = {mds} but perfect full-count ideal = {witness:?}"));
    }
    if mds {
        for (ideal, ok) in codes::singleton_ideal_sweep(code, BUDGET).unwrap() {
            if !ok {
                return fail(name, format!("MDS but not perfect for maximizer {ideal}"));
            }
        }
    }
    Ok(())
}

/// For linear codes and full-count I: C is I-perfect iff the dual code is
/// I^c-perfect over the dual pomset.
pub fn dual_perfectness(name: &str, code: &Code) -> Check {
    if !code.is_linear() {
        return Ok(());
    }
    let s = code.space();
    let dual_space = s.dual();
    let dual = codes::dual_code(code, BUDGET).unwrap().with_space(dual_space).unwrap();
    for roots in 0..=s.block_count() {
        for i in full_ideals(s, roots) {
            let comp = s.pomset().ideal_complement(&i).unwrap();
            let a = perfect(code, &i);
            let b = perfect(&dual, &comp);
            if a != b {
                return fail(name, format!("{i}-perfect = {a}, dual {comp}-perfect = {b}"));
            }
        }
    }
    Ok(())
}

/// Both r-error-correction theorems, for every radius.
pub fn error_correction(name: &str, code: &Code) -> Check {
    let s = code.space();
    let h = s.height();
    for r in 0..=s.max_weight() {
        let ec = codes::is_r_error_correcting(code, r, BUDGET).unwrap().is_none();
        if ec && r % h == 0 {
            if let Some(w) = codes::sum_ball_witness(code, r, true).unwrap() {
                return fail(name, format!("{r}-error-correcting yet {w:?}"));
            }
        }
        if !ec && codes::sum_ball_witness(code, r, false).unwrap().is_none() {
            return fail(name, format!("no sum-ball witness at r = {r} yet not error-correcting"));
        }
    }
    Ok(())
}

/// All strict partial orders on `s` points, as relation lists.
pub fn all_posets(s: usize, height: u32) -> Vec<Pomset> {
    let pairs: Vec<(usize, usize)> =
        (0..s).flat_map(|a| (0..s).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let rel: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p).collect();
        if let Ok(p) = Pomset::new(s, height, &rel) {
            if p.relations() == rel {
                out.push(p);
            }
        }
    }
    out
}

/// MDS codes with equal block dimensions stay MDS under every finer pomset.
pub fn finer_monotonicity(name: &str, code: &Code) -> Check {
    let s = code.space();
    if equal_dims(s).is_none() || code.len() < 2 || !codes::is_mds(code).unwrap() {
        return Ok(());
    }
    for p2 in all_posets(s.block_count(), s.height()) {
        if !s.pomset().is_finer(&p2).unwrap() {
            continue;
        }
        let moved = code.with_space(s.with_pomset(p2.clone()).unwrap()).unwrap();
        if !codes::is_mds(&moved).unwrap() {
            return fail(name, format!("not MDS under finer order {:?}", p2.relations()));
        }
    }
    Ok(())
}

/// Sufficient conditions for MDS with equal block dimensions: perfectness
/// for every ideal of the critical size, the critical r-perfectness, any
/// I-perfectness over a chain when `t | ceil(log_m K)`, and the
/// partial-count criterion.
pub fn mds_sufficient_conditions(name: &str, code: &Code) -> Check {
    let s = code.space();
    let Some(t) = equal_dims(s) else { return Ok(()) };
    if code.len() < 2 {
        return Ok(());
    }
    let mds = codes::is_mds(code).unwrap();
    let n = s.length();
    let logk = code.log_size_ceil() as usize;
    let h = s.height();
    if (n - logk) % t == 0 {
        let critical = ((n - logk) / t) as u32 * h;
        let ideals = s.pomset().enumerate_ideals(critical).unwrap();
        if ideals.iter().all(|i| perfect(code, i)) && !mds {
            return fail(name, format!("perfect for every ideal of size {critical} but not MDS"));
        }
        if code.exact_dimension().is_some()
            && codes::is_r_perfect(code, critical, BUDGET).unwrap().is_perfect()
            && !mds
        {
            return fail(name, format!("{critical}-perfect but not MDS"));
        }
    }
    let chain = s.pomset().is_chain() && logk % t == 0;
    for i in s.pomset().all_ideals() {
        if !perfect(code, &i) {
            continue;
        }
        if chain && !mds {
            return fail(name, format!("chain code {i}-perfect but not MDS"));
        }
        if codes::partial_criterion_applies(code, &i).unwrap() && !mds {
            return fail(name, format!("partial criterion applies for {i} but not MDS"));
        }
    }
    Ok(())
}

/// The duality conditions for linear codes with equal dimensions,
/// `K = m^k` and `t | k`: the implications that hold in general, plus
/// MDS iff the dual is MDS.
pub fn duality_chain(name: &str, code: &Code) -> Check {
    if !code.is_linear() {
        return Ok(());
    }
    match codes::duality_report(code, BUDGET) {
        Ok(r) if r.consistent() && r.mds == r.dual_mds => Ok(()),
        Ok(r) => fail(name, format!("{r:?} for {} codewords over {:?}", code.len(), code.space())),
        Err(Error::InvalidParameters(_)) => Ok(()),
        Err(e) => fail(name, format!("{e}")),
    }
}

/// Closed forms for MDS linear chain codes: weight distribution and
/// `|B_I ∩ C|` for every ideal.
pub fn chain_closed_forms(name: &str, code: &Code) -> Check {
    let s = code.space();
    let params = EqualBlockParams::of_code(code).map_err(|e| format!("{name}: {e}"))?;
    let closed = codes::mds_chain_weight_distribution_for(code).map_err(|e| format!("{name}: {e}"))?;
    let census = codes::weight_distribution(code);
    if closed != census {
        return fail(name, format!("closed form {:?}, census {:?}", closed.0, census.0));
    }
    let zero = s.zero();
    for i in s.pomset().all_ideals() {
        let counted = codes::ball_code_intersection(code, &i, &zero).unwrap();
        let predicted = codes::mds_chain_ball_intersection(&params, i.cardinality()).unwrap();
        if counted != predicted {
            return fail(name, format!("|B_I ∩ C| for {i}: counted {counted}, predicted {predicted}"));
        }
    }
    Ok(())
}

/// A random code over `space`: either the span of one or two random rows
/// or a random set of up to 12 vectors.
pub fn random_code(space: &Space, rng: &mut ChaCha8Rng) -> Code {
    let m = space.modulus();
    let n = space.length();
    let row = |rng: &mut ChaCha8Rng| (0..n).map(|_| rng.random_range(0..m) as i64).collect::<Vec<i64>>();
    if rng.random_bool(0.5) {
        let rows: Vec<Vec<i64>> = (0..rng.random_range(1..=2)).map(|_| row(rng)).collect();
        Code::span_generator(space.clone(), &rows, BUDGET).unwrap()
    } else {
        let rows: Vec<Vec<i64>> = (0..rng.random_range(2..=12)).map(|_| row(rng)).collect();
        Code::from_rows(space.clone(), &rows).unwrap()
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The bound `n - ceil(log_m K) >= rhs` over `count` random codes spread
/// over `spaces`. Returns the number of codes with `K >= 2` checked.
pub fn singleton_never_violated(spaces: &[Space], count: usize, seed: u64) -> Result<usize, String> {
    let mut rng = rng(seed);
    let mut checked = 0;
    let mut i = 0;
    while checked < count {
        let s = &spaces[i % spaces.len()];
        i += 1;
        let code = random_code(s, &mut rng);
        if code.len() < 2 {
            continue;
        }
        match codes::is_mds(&code) {
            Ok(_) => checked += 1,
            Err(e) => return Err(format!("{:?}: {e}", code.codewords())),
        }
    }
    Ok(checked)
}
