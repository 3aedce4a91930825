//! Row reduction over the prime field `Z_p`.

use alloc::vec::Vec;

fn inverse(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn is_prime(m: u32) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<u32>>, cols: usize, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let p64 = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inverse(rows[r][c], p) as u64;
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv % p64) as u32;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c] as u64;
            for j in 0..cols {
                let sub = f * rows[r][j] as u64 % p64;
                rows[i][j] = ((rows[i][j] as u64 + p64 - sub) % p64) as u32;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub(crate) fn rank(rows: Vec<Vec<u32>>, cols: usize, p: u32) -> usize {
    rref(rows, cols, p).1.len()
}

/// Basis of `{ x : row . x = 0 for every row }`.
pub(crate) fn nullspace(rows: Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<Vec<u32>> {
    let (reduced, pivots) = rref(rows, cols, p);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut x = alloc::vec![0u32; cols];
        x[free] = 1;
        for (row, &pc) in reduced.iter().zip(&pivots) {
            x[pc] = (p - row[free] % p) % p;
        }
        basis.push(x);
    }
    basis
}
