#![allow(dead_code)]

pub mod checks;

use pomset_core::codes::Code;
use pomset_core::{Ideal, Pomset, Space, Vector};

pub fn space(m: u32, rel: &[(usize, usize)], lab: &[usize]) -> Space {
    Space::with_order(m, rel, lab.to_vec()).unwrap()
}

pub fn ideal(s: &Space, counts: &[u32]) -> Ideal {
    Ideal::from_counts(s.pomset(), counts).unwrap()
}

pub fn vector(s: &Space, coords: &[i64]) -> Vector {
    s.vector(coords).unwrap()
}

pub fn explicit(s: &Space, rows: &[&[i64]]) -> Code {
    Code::from_rows(s.clone(), &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn generated(s: &Space, rows: &[&[i64]]) -> Code {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    Code::span_generator(s.clone(), &rows, 1_000_000).unwrap()
}

/// Height-2 pomset with 1 < 2 and 1 < 3.
pub fn v_shape() -> Pomset {
    Pomset::new(3, 2, &[(0, 1), (0, 2)]).unwrap()
}

pub struct Fixture {
    pub name: &'static str,
    pub code: Code,
}

/// Z_5^2, antichain, the 1-perfect Lee code.
pub fn lee_z5() -> Code {
    let s = space(5, &[], &[1, 1]);
    explicit(&s, &[&[0, 0], &[1, 2], &[2, 4], &[3, 1], &[4, 3]])
}

/// Z_6^3, antichain, blocks (2,1).
pub fn pr_antichain() -> Code {
    let s = space(6, &[], &[2, 1]);
    explicit(&s, &[&[0, 0, 0], &[3, 0, 0], &[0, 3, 0], &[3, 3, 0]])
}

/// The same code over the chain 2 < 1.
pub fn pr_chain() -> Code {
    pr_antichain().with_space(space(6, &[(1, 0)], &[2, 1])).unwrap()
}

/// Z_5^6, 1 < 2 and 3 < 4, blocks (1,2,1,2).
pub fn mds_z5_6() -> Code {
    let s = space(5, &[(0, 1), (2, 3)], &[1, 2, 1, 2]);
    generated(&s, &[&[1, 0, 2, 2, 0, 1], &[0, 2, 4, 1, 1, 0]])
}

/// Z_5^3, 2 < 1, blocks (2,1).
pub fn mds_z5_3() -> Code {
    let s = space(5, &[(1, 0)], &[2, 1]);
    generated(&s, &[&[0, 1, 3], &[1, 2, 0]])
}

/// Z_6^3, antichain, blocks (1,2).
pub fn example_big_d() -> Code {
    let s = space(6, &[], &[1, 2]);
    explicit(&s, &[&[0, 0, 0], &[0, 3, 0], &[0, 0, 3], &[0, 3, 3]])
}

/// Z_6^2, chain 1 < 2.
pub fn example_small_d() -> Code {
    let s = space(6, &[(0, 1)], &[1, 1]);
    explicit(&s, &[&[0, 0], &[1, 3]])
}

/// Z_5^6, 1 < 2 and 3 < 2, blocks (2,2,2).
pub fn duality_z5_6() -> Code {
    let s = space(5, &[(0, 1), (2, 1)], &[2, 2, 2]);
    generated(&s, &[&[0, 1, 1, 2, 2, 3], &[1, 0, 0, 2, 2, 3]])
}

pub fn z9_c() -> Code {
    let s = space(9, &[], &[1, 1]);
    explicit(&s, &[&[0, 0], &[0, 3], &[0, 6]])
}

pub fn z9_c_prime() -> Code {
    let s = space(9, &[], &[1, 1]);
    explicit(&s, &[&[0, 0], &[2, 3], &[4, 6]])
}

/// MDS linear codes over chains with equal block dimensions.
pub fn chain_mds() -> Vec<Fixture> {
    let z5 = space(5, &[(0, 1)], &[1, 1]);
    let z5_t2 = space(5, &[(0, 1)], &[2, 2]);
    let z6 = space(6, &[(0, 1), (1, 2)], &[1, 1, 1]);
    let z7 = space(7, &[(0, 1), (1, 2)], &[1, 1, 1]);
    vec![
        Fixture { name: "z5 chain t=1", code: generated(&z5, &[&[0, 1]]) },
        Fixture { name: "z5 chain t=2", code: generated(&z5_t2, &[&[1, 3, 1, 0], &[2, 1, 0, 1]]) },
        Fixture { name: "z6 chain t=1", code: generated(&z6, &[&[2, 3, 1]]) },
        Fixture { name: "z7 chain t=1", code: generated(&z7, &[&[1, 1, 0], &[2, 0, 1]]) },
    ]
}

/// Every code from the worked examples.
pub fn all_examples() -> Vec<Fixture> {
    vec![
        Fixture { name: "lee z5", code: lee_z5() },
        Fixture { name: "pr antichain", code: pr_antichain() },
        Fixture { name: "pr chain", code: pr_chain() },
        Fixture { name: "mds z5^6", code: mds_z5_6() },
        Fixture { name: "mds z5^3", code: mds_z5_3() },
        Fixture { name: "example D", code: example_big_d() },
        Fixture { name: "example d", code: example_small_d() },
        Fixture { name: "duality z5^6", code: duality_z5_6() },
        Fixture { name: "z9 C", code: z9_c() },
        Fixture { name: "z9 C'", code: z9_c_prime() },
    ]
}

/// Fixture spaces plus a few extra shapes, for formula certification.
pub fn all_spaces() -> Vec<Space> {
    let mut out: Vec<Space> = all_examples().into_iter().map(|f| f.code.space().clone()).collect();
    out.extend(chain_mds().into_iter().map(|f| f.code.space().clone()));
    out.push(Space::new(5, v_shape(), vec![1, 1, 1]).unwrap());
    out.push(Space::new(4, v_shape(), vec![1, 2, 1]).unwrap());
    out.push(space(8, &[], &[2]));
    out.push(space(6, &[(0, 1)], &[2, 2]));
    out.push(space(4, &[(0, 2), (1, 2)], &[1, 2, 2]));
    out.sort_by_key(|s| (s.modulus(), s.length(), s.labeling().to_vec(), s.pomset().relations()));
    out.dedup();
    out
}
