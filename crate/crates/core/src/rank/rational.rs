//! Exact rank of the rigidity matrix over the rationals at a random integer
//! embedding, via fraction-free (Bareiss) elimination in arbitrary
//! precision. Independent of the prime-field path; serves as the oracle the
//! modular results are checked against. Capped to tiny instances.

use num_bigint::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed};

/// Size cap: `n * d` must not exceed this (entry growth is exponential in
/// the elimination depth).
pub const EXACT_RANK_MAX_CELLS: usize = 64;

const COORD_RANGE: i64 = 1_000_000;

/// Rank over Q of the rigidity matrix at a random integer embedding with
/// coordinates in [1, 10^6]; deterministic in `seed`.
pub fn exact_rational_rank(g: &Graph, d: usize, seed: u64) -> Result<usize> {
    if d == 0 {
        return Err(Error::Parameter("dimension d must be >= 1".into()));
    }
    if g.n() * d > EXACT_RANK_MAX_CELLS {
        return Err(Error::Capacity(format!(
            "exact rank supports n * d <= {EXACT_RANK_MAX_CELLS}; got {}",
            g.n() * d
        )));
    }
    let mut rng = rng_from_seed(derive_seed(seed, &[0x7261]));
    let coords: Vec<Vec<i64>> = (0..g.n())
        .map(|_| (0..d).map(|_| rng.gen_range(1..=COORD_RANGE)).collect())
        .collect();

    let cols = g.n() * d;
    let mut m: Vec<Vec<BigInt>> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut row = vec![BigInt::from(0); cols];
            for i in 0..d {
                let diff = coords[u][i] - coords[v][i];
                row[u * d + i] = BigInt::from(diff);
                row[v * d + i] = BigInt::from(-diff);
            }
            row
        })
        .collect();

    Ok(bareiss_rank(&mut m))
}

/// Fraction-free Gaussian elimination with row pivoting; all divisions by
/// the previous pivot are exact.
fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let zero = BigInt::from(0);
    let mut prev = BigInt::from(1);
    let mut rank = 0usize;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| m[r][col] != zero) else {
            continue;
        };
        m.swap(rank, pivot_row);
        for r in (rank + 1)..rows {
            for c in (col + 1)..cols {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                debug_assert_eq!(&num % &prev, zero);
                m[r][c] = num / &prev;
            }
            m[r][col] = zero.clone();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
