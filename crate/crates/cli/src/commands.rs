use clap::Subcommand;
use pomset_core::codes::{self, Code, Tiling};
use pomset_core::oracle::{self, ClosedForms, SuiteBudgets};
use pomset_core::{balls, Error, Ideal, Space, DEFAULT_ANNIHILATOR_BUDGET};

use crate::problem::Problem;
use crate::report::{bracket, join, Outcome, Report};
use crate::CliError;

type Res = Result<Report, CliError>;

/// Flags shared by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub budget: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Pomset weight of a vector.
    Weight {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        vector: Vec<i64>,
    },
    /// Pomset distance between two vectors.
    Distance {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        v: Vec<i64>,
    },
    /// Ideals of a given cardinality.
    Ideals {
        #[arg(long)]
        cardinality: u32,
    },
    /// Down-sets of the underlying order with a given number of elements.
    Downsets {
        #[arg(long)]
        size: usize,
    },
    /// Size of an I-ball or r-ball.
    BallSize {
        #[arg(long, value_delimiter = ',', conflicts_with = "radius")]
        ideal: Option<Vec<u32>>,
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Size of an I-sphere.
    SphereSize {
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<u32>>,
    },
    /// Centres of the I-balls partitioning the space.
    Partition {
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<u32>>,
    },
    /// Whether the code is I-perfect or r-perfect.
    CheckPerfect {
        #[arg(long, value_delimiter = ',', conflicts_with = "radius")]
        ideal: Option<Vec<u32>>,
        #[arg(long)]
        radius: Option<u32>,
        /// Report the balls containing this vector.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Option<Vec<i64>>,
    },
    /// Whether the code corrects r errors.
    CheckErrorCorrecting {
        #[arg(long)]
        radius: Option<u32>,
    },
    /// Whether the code meets the Singleton bound.
    CheckMds,
    /// Both sides of the Singleton bound.
    Singleton,
    /// The dual code over the dual order.
    Dual,
    /// Weight distribution of the code.
    WeightDist {
        /// Compare with the closed form for MDS codes over a chain.
        #[arg(long)]
        closed_form: bool,
    },
    /// Number of codewords in an I-ball.
    Intersect {
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        center: Vec<i64>,
    },
    /// Smallest down-set whose parity-check blocks are dependent.
    BlockThreshold,
    /// The problem file in canonical form.
    Canonical,
    /// Closed forms checked against enumeration.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum OracleCommand {
    /// Vectors counted by weight and by support ideal.
    Census,
    /// The metric axioms, exhaustively or on sampled triples.
    Metric {
        #[arg(long, default_value_t = oracle::DEFAULT_TRIPLE_BUDGET)]
        triples: u64,
    },
    /// Every ball formula against enumeration.
    Suite,
}

pub fn run(command: &Command, problem: &Problem, opts: Options) -> Res {
    let s = &problem.space;
    let mut r = Report::default();
    match command {
        Command::Weight { vector } => {
            let v = s.vector(vector)?;
            let supp = s.support(&v)?;
            let gen = s.pomset().ideal_generated(&supp)?;
            let w = s.weight(&v)?;
            r.say(format!("w({v}) = {w}, <supp> = {gen}"));
            r.set("vector", &v).set("weight", w).set("ideal", &gen).set("counts", bracket(gen.counts()));
        }
        Command::Distance { u, v } => {
            let (u, v) = (s.vector(u)?, s.vector(v)?);
            let d = s.distance(&u, &v)?;
            r.say(format!("d({u}, {v}) = {d}"));
            r.set("distance", d);
        }
        Command::Ideals { cardinality } => {
            let ideals = s.pomset().enumerate_ideals(*cardinality)?;
            r.say(format!("{} ideals of cardinality {cardinality}", ideals.len()));
            r.set("count", ideals.len());
            for (i, ideal) in ideals.iter().enumerate() {
                r.say(format!("{ideal} {}", bracket(ideal.counts())));
                r.set(&format!("ideal.{i}"), ideal).set(&format!("counts.{i}"), bracket(ideal.counts()));
            }
        }
        Command::Downsets { size } => {
            let sets = s.pomset().enumerate_root_downsets(*size)?;
            r.say(format!("{} down-sets with {size} elements", sets.len()));
            r.set("count", sets.len());
            for (i, d) in sets.iter().enumerate() {
                let d: Vec<usize> = d.iter().map(|x| x + 1).collect();
                r.set(&format!("downset.{i}"), bracket(&d));
            }
        }
        Command::BallSize { ideal, radius } => match ball_shape(problem, ideal, radius)? {
            Shape::Ideal(i) => {
                let n = balls::i_ball_cardinality(s, &i)?;
                r.say(format!("|B_{i}| = {n}"));
                r.set("ideal", &i).set("cardinality", n);
            }
            Shape::Radius(rad) => {
                let n = balls::r_ball_cardinality(s, rad)?;
                r.say(format!("|B_{rad}| = {n}"));
                r.set("radius", rad).set("cardinality", n);
            }
        },
        Command::SphereSize { ideal } => {
            let i = pick_ideal(problem, ideal)?;
            let n = balls::i_sphere_cardinality(s, &i)?;
            r.say(format!("|S_{i}| = {n}"));
            r.set("ideal", &i).set("cardinality", n);
        }
        Command::Partition { ideal } => {
            let i = pick_ideal(problem, ideal)?;
            let centers = balls::partition_centers(s, &i, opts.budget)?;
            r.say(format!("{} translates of B_{i} partition the space", centers.len()));
            r.set("ideal", &i).set("count", centers.len()).set("centers", join(&centers));
        }
        Command::CheckPerfect { ideal, radius, at } => {
            let code = need_code(problem)?;
            let shape = ball_shape(problem, ideal, radius)?;
            check_perfect(&mut r, code, &shape, at.as_deref(), opts)?;
        }
        Command::CheckErrorCorrecting { radius } => {
            let code = need_code(problem)?;
            let rad = radius.or(problem.radius).ok_or_else(|| missing("--radius"))?;
            match codes::is_r_error_correcting(code, rad, opts.budget)? {
                None => {
                    r.say(format!("{rad}-error-correcting: true"));
                    r.set("error_correcting", true);
                }
                Some(o) => {
                    r.say(format!("{rad}-error-correcting: false, {} lies in two balls", o.vector));
                    r.fail()
                        .set("error_correcting", false)
                        .set("witness", &o.vector)
                        .set("centers", join(&o.centers));
                }
            }
            r.set("radius", rad);
        }
        Command::CheckMds => {
            let code = need_code(problem)?;
            let rep = codes::singleton(code)?;
            let mds = rep.is_mds();
            r.say(format!("MDS: {mds}, d={}, rhs={}", rep.distance, rep.rhs));
            if !mds {
                r.say(format!("n - ceil(log_m K) = {} > {}", rep.lhs, rep.rhs));
                r.fail();
            }
            r.set("mds", mds).set("d", rep.distance).set("lhs", rep.lhs).set("rhs", rep.rhs);
        }
        Command::Singleton => {
            let code = need_code(problem)?;
            let rep = codes::singleton(code)?;
            r.say(format!(
                "n - ceil(log_m K) = {} >= {} (d = {}, {} roots)",
                rep.lhs, rep.rhs, rep.distance, rep.root_size
            ));
            r.set("d", rep.distance)
                .set("root_size", rep.root_size)
                .set("lhs", rep.lhs)
                .set("rhs", rep.rhs)
                .set("mds", rep.is_mds());
            let maxi: Vec<String> =
                rep.maximizers.iter().map(|d| bracket(&d.iter().map(|x| x + 1).collect::<Vec<_>>())).collect();
            r.set("maximizers", join(&maxi));
        }
        Command::Dual => {
            let code = need_code(problem)?;
            dual(&mut r, code, opts)?;
        }
        Command::WeightDist { closed_form } => {
            let code = need_code(problem)?;
            let census = codes::weight_distribution(code);
            r.say(format!("weight distribution of {} codewords", census.total()));
            r.set("distribution", bracket(census.as_slice()));
            if *closed_form {
                let closed = codes::mds_chain_weight_distribution_for(code)?;
                let agree = closed == census;
                r.say(format!("closed form {}", if agree { "agrees" } else { "disagrees" }));
                r.set("closed_form", bracket(closed.as_slice())).set("agree", agree);
                if !agree {
                    let w = (0..census.as_slice().len().max(closed.as_slice().len()) as u32)
                        .find(|&w| census.get(w) != closed.get(w))
                        .expect("distributions differ");
                    r.fail().set("witness", w);
                }
            }
        }
        Command::Intersect { ideal, center } => {
            let code = need_code(problem)?;
            let i = pick_ideal(problem, ideal)?;
            let x = s.vector(center)?;
            let n = codes::ball_code_intersection(code, &i, &x)?;
            r.say(format!("|B_{i}({x}) ∩ C| = {n}"));
            r.set("ideal", &i).set("center", &x).set("count", n);
        }
        Command::BlockThreshold => {
            let code = need_code(problem)?;
            let t = codes::block_dependency_threshold(code)?;
            r.say(format!("threshold {} (codeword minimum {})", t.threshold, t.codeword_minimum));
            let wit: Vec<String> =
                t.witnesses.iter().map(|d| bracket(&d.iter().map(|x| x + 1).collect::<Vec<_>>())).collect();
            let rows: Vec<String> = t.parity_check.iter().map(|row| bracket(row)).collect();
            r.set("threshold", t.threshold)
                .set("codeword_minimum", t.codeword_minimum)
                .set("witnesses", join(&wit))
                .set("parity_check", join(&rows));
        }
        Command::Canonical => {
            let json = serde_json::to_string(&problem.to_file()).expect("plain data serializes");
            r.say("canonical problem file");
            r.set("problem", json);
        }
        Command::Oracle(o) => oracle_cmd(&mut r, s, o, opts)?,
    }
    Ok(r)
}

enum Shape {
    Ideal(Ideal),
    Radius(u32),
}

fn missing(what: &str) -> CliError {
    CliError::Input(format!("{what} not given and absent from the problem file"))
}

fn need_code(problem: &Problem) -> Result<&Code, CliError> {
    problem.code.as_ref().ok_or_else(|| CliError::Input("the problem file has no code".into()))
}

fn pick_ideal(problem: &Problem, flag: &Option<Vec<u32>>) -> Result<Ideal, CliError> {
    match flag {
        Some(counts) => Ok(Ideal::from_counts(problem.space.pomset(), counts)?),
        None => problem.ideal.clone().ok_or_else(|| missing("--ideal")),
    }
}

fn ball_shape(problem: &Problem, ideal: &Option<Vec<u32>>, radius: &Option<u32>) -> Result<Shape, CliError> {
    match (ideal, radius) {
        (Some(_), _) => Ok(Shape::Ideal(pick_ideal(problem, ideal)?)),
        (None, Some(r)) => Ok(Shape::Radius(*r)),
        (None, None) => match (&problem.ideal, problem.radius) {
            (Some(i), _) => Ok(Shape::Ideal(i.clone())),
            (None, Some(r)) => Ok(Shape::Radius(r)),
            _ => Err(missing("--ideal or --radius")),
        },
    }
}

fn check_perfect(r: &mut Report, code: &Code, shape: &Shape, at: Option<&[i64]>, opts: Options) -> Result<(), CliError> {
    let s = code.space();
    let (label, tiling) = match shape {
        Shape::Ideal(i) => (i.to_string(), codes::is_i_perfect(code, i, opts.budget)?),
        Shape::Radius(rad) => (rad.to_string(), codes::is_r_perfect(code, *rad, opts.budget)?),
    };
    let at_centers = match at {
        None => None,
        Some(coords) => {
            let v = s.vector(coords)?;
            let centers = match shape {
                Shape::Ideal(i) => {
                    let mut out = Vec::new();
                    for c in code.codewords() {
                        if balls::in_i_ball(s, &v, c, i.as_mset())? {
                            out.push(c.clone());
                        }
                    }
                    out
                }
                Shape::Radius(rad) => code.centers_within(&v, *rad)?,
            };
            Some((v, centers))
        }
    };
    let perfect = tiling.is_perfect();
    r.say(format!("{label}-perfect: {perfect}"));
    r.set("perfect", perfect);
    // A vector given with --at that breaks the tiling becomes the witness.
    let at_witness = at_centers.as_ref().filter(|(_, c)| c.len() != 1);
    match (&tiling, at_witness) {
        (Tiling::Perfect, _) => {}
        (_, Some((v, centers))) => {
            r.fail();
            if centers.is_empty() {
                r.say(format!("witness {v} lies in no ball"));
                r.set("witness", v).set("kind", "uncovered");
            } else {
                r.say(format!("witness {v} lies in {} balls", centers.len()));
                r.set("witness", v).set("kind", "overlap").set("centers", join(centers));
            }
        }
        (Tiling::Overlap(o), None) => {
            r.fail();
            r.say(format!("witness {} lies in the balls around {} and {}", o.vector, o.centers[0], o.centers[1]));
            r.set("witness", &o.vector).set("kind", "overlap").set("centers", join(&o.centers));
        }
        (Tiling::Uncovered(v), None) => {
            r.fail();
            r.say(format!("witness {v} lies in no ball"));
            r.set("witness", v).set("kind", "uncovered");
        }
    }
    if let Some((v, centers)) = &at_centers {
        r.set("at", v).set("at_count", centers.len()).set("at_centers", join(centers));
    }
    Ok(())
}

fn dual(r: &mut Report, code: &Code, opts: Options) -> Result<(), CliError> {
    let s = code.space();
    let dual_space = s.dual();
    let d = codes::dual_code(code, opts.budget)?.with_space(dual_space.clone())?;
    r.say(format!("dual code: {} codewords over the dual order", d.len()));
    let rel: Vec<String> = dual_space
        .pomset()
        .covering_relations()
        .into_iter()
        .map(|(a, b)| format!("[{},{}]", a + 1, b + 1))
        .collect();
    r.set("size", d.len()).set("relations", join(&rel)).set("codewords", join(d.codewords()));
    if d.len() >= 2 {
        let rep = codes::singleton(&d)?;
        r.set("dual_d", rep.distance).set("dual_mds", rep.is_mds());
    }
    match codes::duality_report(code, opts.budget) {
        Ok(rep) => {
            r.say(format!(
                "mds={} perfect={} dual_perfect={} dual_mds={} intersections={}",
                rep.mds, rep.perfect, rep.dual_perfect, rep.dual_mds, rep.intersections
            ));
            r.set("duality.mds", rep.mds)
                .set("duality.perfect", rep.perfect)
                .set("duality.dual_perfect", rep.dual_perfect)
                .set("duality.dual_mds", rep.dual_mds)
                .set("duality.intersections", rep.intersections)
                .set("duality.all_agree", rep.all_agree());
        }
        Err(Error::InvalidParameters(why)) => {
            r.say(format!("duality conditions not applicable: {why}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn oracle_cmd(r: &mut Report, s: &Space, cmd: &OracleCommand, opts: Options) -> Result<(), CliError> {
    match cmd {
        OracleCommand::Census => {
            let c = oracle::weight_census(s, opts.budget)?;
            r.say(format!("{} vectors enumerated", c.total));
            r.set("total", c.total).set("by_weight", bracket(&c.by_weight));
            for (counts, n) in &c.by_ideal {
                let ideal = Ideal::from_counts(s.pomset(), counts)?;
                r.set(&format!("sphere.{}", bracket(counts)), n);
                r.say(format!("|S_{ideal}| = {n}"));
            }
        }
        OracleCommand::Metric { triples } => {
            let m = oracle::verify_metric(s, *triples, opts.seed);
            let how = if m.exhaustive { "exhaustive" } else { "sampled" };
            r.say(format!("metric axioms on {} triples ({how}): {}", m.triples, m.passed()));
            r.set("passed", m.passed()).set("exhaustive", m.exhaustive).set("triples", m.triples);
            if let Some(v) = m.violation {
                r.fail().set("axiom", format!("{:?}", v.axiom)).set("witness", join(&v.vectors));
            }
        }
        OracleCommand::Suite => {
            let budgets = SuiteBudgets { scan: opts.budget, annihilator: DEFAULT_ANNIHILATOR_BUDGET.min(opts.budget) };
            let rep = oracle::verify_formula_suite_with(s, &ClosedForms, budgets)?;
            for c in &rep.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                r.say(format!("{status} {} ({} comparisons)", c.name, c.checked));
                r.set(&format!("check.{}", c.name), c.passed);
                if let Some(w) = &c.witness {
                    r.say(format!("  {w}"));
                    r.set(&format!("witness.{}", c.name), w);
                }
            }
            for name in &rep.skipped {
                r.say(format!("skipped {name}: budget exceeded"));
            }
            r.set("passed", rep.passed()).set("partial", rep.partial).set("skipped", join(&rep.skipped));
            if !rep.passed() {
                r.fail();
            } else if rep.partial {
                r.outcome = Outcome::Budget;
            }
        }
    }
    Ok(())
}
