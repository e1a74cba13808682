//! From layers to a tiled interval.
//!
//! Two nice layers `L1`, `L2` of coprime sizes `n1`, `n2` (after dividing by
//! `d`) can be stacked in any combination `α·n1 + β·n2 = s`. Every
//! `s ≥ (n1 − 1)(n2 − 1)` has such a combination, so for `r` above the
//! threshold the flattened stack tiles
//!
//! ```text
//! T(s) = ⋃_{j ∈ [l]} (d·[s] + (j − 1)·r)
//! ```
//!
//! by `(p, q, r)`-sets. Writing `r = d·m + r'`, the `d` translates
//! `T(m + 1) + i` for `i ∈ [1, r']` and `T(m) + i` for `i ∈ [r' + 1, d]`
//! interleave into the interval `[d + 1, l·r + d]`.
//!
//! Two layer pairs are used: `X1`, `X2` with `d = 1` when `q ≥ 2p`, and
//! `Y1`, `Y2` built for `(p/d, q/d)` with `d = gcd(p, q)` when `q ≤ 2p`.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::blocks::{lcm_heights, S_HEIGHT};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::flatten::{flatten_blocks_with, FamilyCase, LayerStack};
use crate::layers::{layer_x1, layer_x2, layer_y1, layer_y2, Layer};
use crate::tiling::{verify_tiling, GapSequence, Part, Tiling, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `X` layers, `q ≥ 2p`.
    Big,
    /// `Y` layers, `p ≤ q ≤ 2p`.
    Small,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Big => "big",
            Branch::Small => "small",
        })
    }
}

fn ordered(p: i64, q: i64) -> (i64, i64) {
    (p.min(q), p.max(q))
}

fn saturate(x: i128) -> i64 {
    i64::try_from(x).unwrap_or(i64::MAX)
}

/// Threshold of one branch, or `None` if the branch does not apply to `(p, q)`.
pub fn branch_threshold(p: i64, q: i64, branch: Branch) -> Option<i64> {
    let (p, q) = ordered(p, q);
    if p < 1 {
        return None;
    }
    let (p, q) = (i128::from(p), i128::from(q));
    match branch {
        Branch::Big if q >= 2 * p => Some(saturate(4 * q * (4 * q - 1))),
        Branch::Small if q <= 2 * p => {
            let d = p.gcd(&q);
            Some(saturate((5 * p + 4 * q - d) * (4 * p + 3 * q - d) / d))
        }
        _ => None,
    }
}

/// The branch `tile` uses for `(p, q)`: the applicable one with the smaller
/// threshold, preferring `Big` on ties.
pub fn preferred_branch(p: i64, q: i64) -> Option<(Branch, i64)> {
    [Branch::Big, Branch::Small]
        .into_iter()
        .filter_map(|b| branch_threshold(p, q, b).map(|t| (b, t)))
        .min_by_key(|&(_, t)| t)
}

/// Smallest `r` from which [`tile`] succeeds for `(p, q)` (order irrelevant).
///
/// # Panics
///
/// If `p` or `q` is not positive.
pub fn threshold(p: i64, q: i64) -> i64 {
    assert!(p >= 1 && q >= 1, "threshold needs positive p and q, got ({p}, {q})");
    preferred_branch(p, q)
        .map(|(_, t)| t)
        .expect("one branch always applies")
}

/// Writes `s = count_a·n1 + count_b·n2` with nonnegative counts, using the
/// smallest possible `count_b`.
pub fn decompose_good(s: i64, n1: i64, n2: i64) -> Result<(i64, i64)> {
    if n1 < 1 || n2 < 1 || s < 0 {
        return Err(Error::Precondition(format!("cannot decompose {s} over ({n1}, {n2})")));
    }
    (0..n1)
        .take_while(|b| b * n2 <= s)
        .find(|b| (s - b * n2) % n1 == 0)
        .map(|b| ((s - b * n2) / n1, b))
        .ok_or_else(|| Error::Precondition(format!("{s} is not a nonnegative combination of {n1} and {n2}")))
}

/// Everything about a construction that is fixed by `(p, q, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanParameters {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub branch: Branch,
    /// Multiplier `d`; also the number of shifted copies.
    pub d: i64,
    /// Layer sizes before dividing by `d`.
    pub r1: i64,
    pub r2: i64,
    pub n1: i64,
    pub n2: i64,
    /// Common layer height `l`.
    pub height: i64,
    /// Least good integer, `(n1 − 1)(n2 − 1)`.
    pub s_lo: i64,
    /// `r mod d`.
    pub r_rem: i64,
}

impl PlanParameters {
    /// Parameters on the preferred branch; `(p, q)` may come in either order.
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self> {
        let (p, q) = ordered(p, q);
        if p < 1 || r < 1 {
            return Err(Error::InvalidInput(format!(
                "gaps must be positive, got ({p}, {q}, {r})"
            )));
        }
        let (branch, threshold) = preferred_branch(p, q).expect("one branch always applies");
        if r < threshold {
            return Err(Error::Unsupported { p, q, r, threshold });
        }
        Self::for_branch(p, q, r, branch)
    }

    /// Parameters on a given branch, failing if the branch does not apply or
    /// `r` is below its threshold.
    pub fn for_branch(p: i64, q: i64, r: i64, branch: Branch) -> Result<Self> {
        let (p, q) = ordered(p, q);
        let threshold = branch_threshold(p, q, branch)
            .ok_or_else(|| Error::Precondition(format!("the {branch} branch does not apply to p={p}, q={q}")))?;
        if r < threshold {
            return Err(Error::Unsupported { p, q, r, threshold });
        }
        let (d, r1, r2, height) = match branch {
            Branch::Big => (1, 4 * q, 4 * q + 1, S_HEIGHT),
            Branch::Small => (p.gcd(&q), 5 * p + 4 * q, 4 * p + 3 * q, 4),
        };
        if r1.gcd(&r2) != d {
            return Err(Error::Internal(format!("gcd({r1}, {r2}) != {d}")));
        }
        let (n1, n2) = (r1 / d, r2 / d);
        Ok(PlanParameters {
            p,
            q,
            r,
            branch,
            d,
            r1,
            r2,
            n1,
            n2,
            height,
            s_lo: (n1 - 1) * (n2 - 1),
            r_rem: r % d,
        })
    }

    /// `s` is good if `(n1 − 1)(n2 − 1) ≤ s ≤ (r − 1 + d)/d`.
    pub fn is_good(&self, s: i64) -> bool {
        s >= self.s_lo && self.d * s <= self.r - 1 + self.d
    }

    /// `(shift, s)` for each of the `d` copies of `T(s)`.
    pub fn shifts(&self) -> Vec<(i64, i64)> {
        let m = self.r / self.d;
        (1..=self.d)
            .map(|i| (i, if i <= self.r_rem { m + 1 } else { m }))
            .collect()
    }

    /// Endpoints of the tiled interval, `[d + 1, l·r + d]`.
    pub fn interval(&self) -> (i64, i64) {
        (self.d + 1, self.height * self.r + self.d)
    }

    pub fn gaps(&self) -> GapSequence {
        GapSequence::new(vec![self.p, self.q, self.r]).expect("gaps are positive")
    }
}

/// A construction ready to run: parameters plus the two layers.
#[derive(Debug, Clone)]
pub struct Plan {
    params: PlanParameters,
    first: Arc<Layer>,
    second: Arc<Layer>,
    case: FamilyCase,
    /// `e1` steps of the layer coverings, `(p/d, q/d)`.
    steps: (i64, i64),
}

impl Plan {
    pub fn new(p: i64, q: i64, r: i64) -> Result<Plan> {
        Self::from_params(PlanParameters::new(p, q, r)?)
    }

    pub fn from_params(params: PlanParameters) -> Result<Plan> {
        let (p, q, d) = (params.p / params.d, params.q / params.d, params.d);
        let (first, second, case) = match params.branch {
            Branch::Big => (layer_x1(p, q)?, layer_x2(p, q)?, FamilyCase::Axis),
            Branch::Small => (layer_y1(p, q)?, layer_y2(p, q)?, FamilyCase::Skew),
        };
        if (first.shape.size(), second.shape.size()) != (params.n1, params.n2) {
            return Err(Error::Internal(format!(
                "layer sizes ({}, {}) do not match ({}, {})",
                first.shape.size(),
                second.shape.size(),
                params.n1,
                params.n2
            )));
        }
        let l = lcm_heights([first.covering.height(), second.covering.height()]);
        if l != params.height {
            return Err(Error::Internal(format!("layer height {l} != {}", params.height)));
        }
        debug_assert_eq!(d * p, params.p);
        Ok(Plan {
            params,
            first: Arc::new(first),
            second: Arc::new(second),
            case,
            steps: (p, q),
        })
    }

    pub fn params(&self) -> &PlanParameters {
        &self.params
    }

    /// The two layers `L1`, `L2`.
    pub fn layers(&self) -> (&Layer, &Layer) {
        (&self.first, &self.second)
    }

    /// Stack of `count_a` copies of `L1` followed by `count_b` copies of `L2`.
    pub fn stack(&self, s: i64) -> Result<LayerStack> {
        if !self.params.is_good(s) {
            return Err(Error::Precondition(format!(
                "s = {s} is not good: need {} <= s <= ({} - 1 + {})/{}",
                self.params.s_lo, self.params.r, self.params.d, self.params.d
            )));
        }
        let (count_a, count_b) = decompose_good(s, self.params.n1, self.params.n2)?;
        let layers = std::iter::repeat_with(|| Arc::clone(&self.first))
            .take(count_a as usize)
            .chain(std::iter::repeat_with(|| Arc::clone(&self.second)).take(count_b as usize))
            .collect();
        LayerStack::new(layers, self.params.d, self.case)
    }

    /// Partition of `T(s) + shift` into `(p, q, r)`-sets.
    pub fn build_t(&self, s: i64, shift: i64) -> Result<Vec<Part>> {
        self.build_t_with(s, shift, Exec::default())
    }

    pub fn build_t_with(&self, s: i64, shift: i64, exec: Exec) -> Result<Vec<Part>> {
        let stack = self.stack(s)?;
        let parts = flatten_blocks_with(&stack, self.params.r, self.steps.0, self.steps.1, exec)?;
        Ok(if shift == 0 {
            parts
        } else {
            parts.iter().map(|p| p.shifted(shift)).collect()
        })
    }

    pub fn tile(&self) -> Result<Tiling> {
        self.tile_with(Exec::default())
    }

    /// Builds, glues and verifies the tiling.
    pub fn tile_with(&self, exec: Exec) -> Result<Tiling> {
        let shifts = self.params.shifts();
        for &(_, s) in &shifts {
            if !self.params.is_good(s) {
                return Err(Error::Internal(format!("copy size {s} is not good")));
            }
        }
        let parts = exec.try_flat_map(&shifts, |&(shift, s)| self.build_t_with(s, shift, Exec::Sequential))?;
        let (lo, hi) = self.params.interval();
        let tiling = Tiling::new(lo, hi, parts);
        match verify_tiling(&tiling, &self.params.gaps()) {
            Verdict::Accept => Ok(tiling),
            Verdict::Reject(why) => Err(Error::Internal(format!(
                "constructed tiling for {} does not verify: {why}",
                self.params.gaps()
            ))),
        }
    }
}

/// Tiles an interval by 4-sets with gap multiset `{p, q, r}`.
///
/// `p` and `q` may come in either order; `r` must be at least
/// [`threshold`]`(p, q)`. The result has been verified.
pub fn tile(p: i64, q: i64, r: i64) -> Result<Tiling> {
    Plan::new(p, q, r)?.tile()
}

pub fn tile_with(p: i64, q: i64, r: i64, exec: Exec) -> Result<Tiling> {
    Plan::new(p, q, r)?.tile_with(exec)
}
