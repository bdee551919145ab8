//! Four-point Gromov hyperbolicity.
//!
//! For a quadruple `x, y, z, w` let `S1 >= S2 >= S3` be the three sums
//! `d(x,y)+d(z,w)`, `d(x,z)+d(y,w)` and `d(x,w)+d(y,z)`. The hyperbolicity is
//! the largest `(S1 - S2) / 2` over all quadruples, so its doubled value is an
//! integer.
//!
//! The search fixes the pair carrying the largest sum. With pairs visited in
//! decreasing distance order, `S1 - S2 <= 2 * min(d(x,y), d(z,w))`, so once the
//! current pair is no longer than half the running maximum no later pair can
//! improve it.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, HalfInteger};

pub const DEFAULT_DELTA_VERTEX_CAP: usize = 512;

pub fn four_point_delta(d: &DistanceMatrix) -> Result<HalfInteger> {
    four_point_delta_with_cap(d, DEFAULT_DELTA_VERTEX_CAP)
}

pub fn four_point_delta_with_cap(d: &DistanceMatrix, vertex_cap: usize) -> Result<HalfInteger> {
    let n = d.vertex_count();
    if n > vertex_cap {
        return Err(Error::CapExceeded {
            what: "vertex count for four-point hyperbolicity",
            cap: vertex_cap as u64,
        });
    }
    let mut pairs: Vec<(u32, u32, u32)> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (d.get(x, y), x as u32, y as u32)))
        .collect();
    pairs.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let best = AtomicU64::new(0);
    pairs.par_iter().enumerate().for_each(|(i, &(dxy, x, y))| {
        if 2 * u64::from(dxy) <= best.load(Ordering::Relaxed) {
            return;
        }
        let (x, y) = (x as usize, y as usize);
        let mut local = 0u64;
        for &(dzw, z, w) in &pairs[..i] {
            let (z, w) = (z as usize, w as usize);
            let s1 = dxy + dzw;
            let s2 = d.get(x, z) + d.get(y, w);
            let s3 = d.get(x, w) + d.get(y, z);
            let other = s2.max(s3);
            if s1 > other {
                local = local.max(u64::from(s1 - other));
            }
        }
        best.fetch_max(local, Ordering::Relaxed);
    });
    Ok(HalfInteger::from_doubled(best.into_inner()))
}
