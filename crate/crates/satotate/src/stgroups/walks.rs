//! USp(2g) trace moments as counts of lattice walks confined to a Weyl
//! chamber: `M_n` is the number of closed `n`-step walks of `g`
//! non-intersecting particles started at `(g, g-1, ..., 1)` where each
//! step moves exactly one particle by `+-1` and all coordinates stay
//! positive. Equivalent to the reflection-principle determinant, computed
//! here by direct dynamic programming over particle configurations.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;

pub const WALK_MAX_GENUS: u32 = 8;
pub const WALK_MAX_MOMENT: usize = 30;

/// Exact `M_0..M_nmax` for USp(2g).
pub fn walk_moments_usp(genus: u32, nmax: usize) -> Result<Vec<BigInt>> {
    if genus == 0 || genus > WALK_MAX_GENUS {
        return Err(Error::Capacity(format!(
            "genus must be in 1..={WALK_MAX_GENUS}, got {genus}"
        )));
    }
    if nmax > WALK_MAX_MOMENT {
        return Err(Error::Capacity(format!(
            "moment order capped at {WALK_MAX_MOMENT}, got {nmax}"
        )));
    }
    let g = genus as usize;
    let start: Vec<u32> = (1..=g as u32).rev().collect();
    let mut state: HashMap<Vec<u32>, BigInt> = HashMap::new();
    state.insert(start.clone(), BigInt::one());
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(BigInt::one());
    for _ in 1..=nmax {
        let mut next: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (pos, ways) in &state {
            for i in 0..g {
                for delta in [-1i64, 1] {
                    let v = pos[i] as i64 + delta;
                    if v < 1 {
                        continue;
                    }
                    let v = v as u32;
                    // strictly decreasing coordinates keep particles distinct
                    if (i > 0 && v >= pos[i - 1]) || (i + 1 < g && v <= pos[i + 1]) {
                        continue;
                    }
                    let mut np = pos.clone();
                    np[i] = v;
                    *next.entry(np).or_insert_with(BigInt::zero) += ways;
                }
            }
        }
        out.push(next.get(&start).cloned().unwrap_or_else(BigInt::zero));
        state = next;
    }
    Ok(out)
}
