//! Flattening stacked layer coverings onto the integers.
//!
//! A stack of `a`-nice layers `S_1, …, S_n`, each covered at common height
//! `l`, has `s = Σ|S_i|` cells per level. The map
//!
//! ```text
//! φ(i, x, y, z) = d·k + (z − 1)·r
//! ```
//!
//! where `k ∈ [1, s]` is the rank of `(i, y, x)` in lexicographic order, sends
//! the cells bijectively onto `⋃_{j ∈ [l]} (d·[s] + (j − 1)·r)` as long as
//! `r ≥ 1 − d + d·s`. Steps of the blocks become integer gaps: `w·e1` in a row
//! becomes `d·w`, `e2` becomes `d·a` (the lower row is always full), `e2 − w·e1`
//! becomes `d·(a − w)`, and `e3` becomes `r`.

use std::sync::Arc;

use crate::blocks::{lcm_heights, Point3};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::layers::Layer;
use crate::tiling::{gap_multiset, Part};

/// Which block family the stacked coverings use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyCase {
    /// `(p·e1, e2, e3)`.
    Axis,
    /// `(p·e1, e2 − p·e1, e3)` and `(q·e1, e2 − q·e1, e3)`.
    Skew,
}

/// A cell of a stack: layer index (0-based) and a point of that layer's prism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StackCell {
    pub layer: usize,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

#[derive(Debug, Clone)]
pub struct LayerStack {
    layers: Vec<Arc<Layer>>,
    /// `offsets[i]` = number of cells in layers before `i`.
    offsets: Vec<i64>,
    width: i64,
    height: i64,
    multiplier: i64,
    case: FamilyCase,
}

impl LayerStack {
    /// Stacks `layers` in order, lifting every covering to the lcm of their heights.
    ///
    /// Layers that share an `Arc` are lifted once.
    pub fn new(layers: Vec<Arc<Layer>>, multiplier: i64, case: FamilyCase) -> Result<Self> {
        let Some(first) = layers.first() else {
            return Err(Error::InvalidInput("a stack needs at least one layer".into()));
        };
        if multiplier < 1 {
            return Err(Error::InvalidInput(format!("multiplier {multiplier} is not positive")));
        }
        let width = first.shape.a();
        if let Some(l) = layers.iter().find(|l| l.shape.a() != width) {
            return Err(Error::InvalidInput(format!(
                "layers of widths {width} and {} cannot be stacked",
                l.shape.a()
            )));
        }
        let height = lcm_heights(layers.iter().map(|l| l.covering.height()));

        let mut lifted: Vec<(*const Layer, Arc<Layer>)> = Vec::new();
        let mut out = Vec::with_capacity(layers.len());
        for layer in layers {
            if layer.covering.height() == height {
                out.push(layer);
                continue;
            }
            let key = Arc::as_ptr(&layer);
            let l = match lifted.iter().find(|(k, _)| *k == key) {
                Some((_, l)) => Arc::clone(l),
                None => {
                    let l = Arc::new(layer.replicated(height)?);
                    lifted.push((key, Arc::clone(&l)));
                    l
                }
            };
            out.push(l);
        }

        let offsets = out
            .iter()
            .scan(0, |acc, l| {
                let o = *acc;
                *acc += l.shape.size();
                Some(o)
            })
            .collect();
        Ok(LayerStack {
            layers: out,
            offsets,
            width,
            height,
            multiplier,
            case,
        })
    }

    pub fn layers(&self) -> &[Arc<Layer>] {
        &self.layers
    }

    /// Common row width `a`.
    pub fn width(&self) -> i64 {
        self.width
    }

    /// Common height `l`.
    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn multiplier(&self) -> i64 {
        self.multiplier
    }

    pub fn case(&self) -> FamilyCase {
        self.case
    }

    /// Cells per level, `s`.
    pub fn slice_size(&self) -> i64 {
        self.offsets.last().copied().unwrap_or(0) + self.layers.last().map_or(0, |l| l.shape.size())
    }

    /// Smallest `r` for which φ is injective.
    pub fn min_r(&self) -> i64 {
        1 - self.multiplier + self.multiplier * self.slice_size()
    }

    fn check_r(&self, r: i64) -> Result<()> {
        if r < self.min_r() {
            return Err(Error::Precondition(format!(
                "r = {r} is below 1 - d + d*s = {}",
                self.min_r()
            )));
        }
        Ok(())
    }

    fn value(&self, layer: usize, p: Point3, r: i64) -> i64 {
        let k = self.offsets[layer] + self.layers[layer].shape.rank(p.cell());
        self.multiplier * k + (p.z - 1) * r
    }

    /// The flattening map.
    pub fn phi(&self, cell: StackCell, r: i64) -> Result<i64> {
        self.check_r(r)?;
        let layer = self
            .layers
            .get(cell.layer)
            .ok_or_else(|| Error::InvalidInput(format!("no layer {}", cell.layer)))?;
        if !layer.contains((cell.x, cell.y)) || cell.z < 1 || cell.z > self.height {
            return Err(Error::InvalidInput(format!("{cell:?} is not a cell of the stack")));
        }
        Ok(self.value(cell.layer, Point3::new(cell.x, cell.y, cell.z), r))
    }

    /// All cells, in no particular order.
    pub fn cells(&self) -> impl Iterator<Item = StackCell> + '_ {
        self.layers.iter().enumerate().flat_map(move |(i, l)| {
            (1..=self.height).flat_map(move |z| {
                l.covering
                    .cells()
                    .iter()
                    .map(move |&(x, y)| StackCell { layer: i, x, y, z })
            })
        })
    }

    /// `⋃_{j ∈ [l]} (d·[s] + (j − 1)·r)`, ascending.
    pub fn target_image(&self, r: i64) -> Vec<i64> {
        let (d, s) = (self.multiplier, self.slice_size());
        (1..=self.height)
            .flat_map(|j| (1..=s).map(move |k| d * k + (j - 1) * r))
            .collect()
    }

    /// Sorted gap multisets a flattened block may have.
    pub fn expected_gaps(&self, r: i64, p: i64, q: i64) -> Vec<Vec<i64>> {
        let (d, a) = (self.multiplier, self.width);
        let sets = match self.case {
            FamilyCase::Axis => vec![vec![d * p, d * a, r]],
            FamilyCase::Skew => vec![vec![d * p, d * (a - p), r], vec![d * q, d * (a - q), r]],
        };
        sets.into_iter()
            .map(|mut g| {
                g.sort_unstable();
                g
            })
            .collect()
    }
}

/// Flattens every block of the stack into a 4-set; see [`flatten_blocks_with`].
pub fn flatten_blocks(stack: &LayerStack, r: i64, p: i64, q: i64) -> Result<Vec<Part>> {
    flatten_blocks_with(stack, r, p, q, Exec::default())
}

/// Maps every block through φ and checks each image against the gap
/// multisets expected for the stack's family (`p`, `q` are the `e1` steps
/// in layer units). Parts come out grouped by layer, in block order.
pub fn flatten_blocks_with(stack: &LayerStack, r: i64, p: i64, q: i64, exec: Exec) -> Result<Vec<Part>> {
    stack.check_r(r)?;
    let expected = stack.expected_gaps(r, p, q);
    let indices: Vec<usize> = (0..stack.layers.len()).collect();
    exec.try_flat_map(&indices, |&i| {
        stack.layers[i]
            .covering
            .blocks()
            .iter()
            .map(|b| {
                let xs = b.points.map(|pt| stack.value(i, pt, r));
                let part = Part::new(xs.to_vec())
                    .map_err(|e| Error::Internal(format!("block {:?} of layer {i}: {e}", b.points)))?;
                let gaps = gap_multiset(&part)?;
                if !expected.contains(&gaps) {
                    return Err(Error::Internal(format!(
                        "block {:?} of layer {i} flattens to {:?} with gaps {gaps:?}, expected one of {expected:?}",
                        b.points,
                        part.elements()
                    )));
                }
                Ok(part)
            })
            .collect()
    })
}
