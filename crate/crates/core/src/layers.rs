//! Nice layers and their coverings.
//!
//! An `a`-nice layer is `([a] × [b]) ∪ ([c] × {b + 1})`: full rows of width
//! `a` plus a partial top row. Four layers are built here:
//!
//! * `X1 = [q] × [4]` and `X2 = X1 ∪ {(q + 1, 4)}`, covered by
//!   `(p·e1, e2, e3)`-blocks when `q ≥ 2p`;
//! * `Y1 = ([p + q] × [4]) ∪ ([p] × {5})` and `Y2 = ([p + q] × [3]) ∪ ([p] × {4})`,
//!   covered by `(p·e1, e2 − p·e1, e3)`- and `(q·e1, e2 − q·e1, e3)`-blocks
//!   when `p ≤ q ≤ 2p`.
//!
//! Each layer is cut into translates of base coverings stretched along `e1`.
//! `X2` is not literally of the nice form; see [`Layer`] for why it still
//! behaves like the `(q, 4, 1)` layer.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::blocks::{
    base_covering, compose, covering_s4, covering_s7, replicate_height, stretch_e1, translate, BaseId, Cell, Covering,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NiceLayer {
    a: i64,
    b: i64,
    c: i64,
}

impl NiceLayer {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 1 || b < 0 || c < 0 || c > a {
            return Err(Error::InvalidInput(format!("({a}, {b}, {c}) is not a nice layer")));
        }
        Ok(NiceLayer { a, b, c })
    }

    /// Row width.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// Number of full rows.
    pub fn b(&self) -> i64 {
        self.b
    }

    /// Width of the partial top row.
    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn size(&self) -> i64 {
        self.a * self.b + self.c
    }

    pub fn contains(&self, (x, y): Cell) -> bool {
        x >= 1 && y >= 1 && (y <= self.b && x <= self.a || y == self.b + 1 && x <= self.c)
    }

    /// `(y − 1)·a + x`: the 1-based position of a cell when the layer is
    /// read row by row, bottom to top, left to right.
    ///
    /// The map is affine, so a step `(dx, dy)` always changes the rank by
    /// `dx + a·dy`, whether or not the cells lie in the canonical shape.
    pub fn rank(&self, (x, y): Cell) -> i64 {
        (y - 1) * self.a + x
    }

    pub fn cells(&self) -> BTreeSet<Cell> {
        let full = (1..=self.b).flat_map(|y| (1..=self.a).map(move |x| (x, y)));
        let top = (1..=self.c).map(|x| (x, self.b + 1));
        full.chain(top).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayerKind {
    X1,
    X2,
    Y1,
    Y2,
}

impl fmt::Display for LayerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LayerKind::X1 => "X1",
            LayerKind::X2 => "X2",
            LayerKind::Y1 => "Y1",
            LayerKind::Y2 => "Y2",
        })
    }
}

impl FromStr for LayerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "X1" => Ok(LayerKind::X1),
            "X2" => Ok(LayerKind::X2),
            "Y1" => Ok(LayerKind::Y1),
            "Y2" => Ok(LayerKind::Y2),
            _ => Err(Error::InvalidInput(format!("unknown layer {s:?}"))),
        }
    }
}

/// A verified covering whose cells rank onto `[1, shape.size()]`.
///
/// The cells are usually exactly `shape.cells()`. `X2` is the exception:
/// its extra cell `(q + 1, 4)` sits at the end of row 4 instead of at
/// `(1, 5)`, but it has the same rank `4q + 1`, which is all the flattening
/// map looks at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub shape: NiceLayer,
    pub covering: Covering,
}

impl Layer {
    fn new(shape: NiceLayer, covering: Covering, what: &str) -> Result<Layer> {
        let ranks: BTreeSet<i64> = covering.cells().iter().map(|&c| shape.rank(c)).collect();
        let expected = 1..=shape.size();
        if covering.cells().len() as i64 != shape.size() || !ranks.iter().copied().eq(expected) {
            return Err(Error::Internal(format!(
                "{what} cells do not rank onto [1, {}]",
                shape.size()
            )));
        }
        let covering = covering.checked(what)?;
        Ok(Layer { shape, covering })
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.covering.cells().contains(&cell)
    }

    /// Same layer with its covering stacked to `height`.
    pub fn replicated(&self, height: i64) -> Result<Layer> {
        Ok(Layer {
            shape: self.shape,
            covering: replicate_height(&self.covering, height)?,
        })
    }
}

/// Builds the named layer for `(p, q)`.
pub fn layer(kind: LayerKind, p: i64, q: i64) -> Result<Layer> {
    match kind {
        LayerKind::X1 => layer_x1(p, q),
        LayerKind::X2 => layer_x2(p, q),
        LayerKind::Y1 => layer_y1(p, q),
        LayerKind::Y2 => layer_y2(p, q),
    }
}

/// Stretches by `w` along `e1`, keeping column 1 in place: `x ↦ 1 + (x − 1)·w`.
fn spread(c: &Covering, w: i64) -> Result<Covering> {
    Ok(translate(&stretch_e1(c, w)?, 1 - w, 0))
}

fn check_x(p: i64, q: i64) -> Result<()> {
    if p < 1 || q < 2 * p {
        return Err(Error::Precondition(format!(
            "X layers need 1 <= p and q >= 2p, got p={p}, q={q}"
        )));
    }
    Ok(())
}

/// Offsets `0..p` split into `[0, b)` for the wide copies, `b` for the
/// middle copy and `(b, p)` for the narrow copies, where `q = a·p + b`.
fn x_layer(p: i64, q: i64, with_extra: bool) -> Result<Covering> {
    let a = q / p;
    let b = q - a * p;
    let wide = spread(&covering_s4(a + 1)?, p)?;
    let narrow = spread(&covering_s4(a)?, p)?;
    let middle = if with_extra {
        spread(&covering_s7(a)?, p)?
    } else {
        narrow.clone()
    };

    let mut parts: Vec<Covering> = (0..b).map(|i| translate(&wide, i, 0)).collect();
    parts.push(translate(&middle, b, 0));
    parts.extend((b + 1..p).map(|i| translate(&narrow, i, 0)));
    compose(&parts)
}

/// `[q] × [4]` covered by `(p·e1, e2, e3)`-blocks at height 20.
pub fn layer_x1(p: i64, q: i64) -> Result<Layer> {
    check_x(p, q)?;
    Layer::new(NiceLayer::new(q, 4, 0)?, x_layer(p, q, false)?, "X1")
}

/// `([q] × [4]) ∪ {(q + 1, 4)}` covered by `(p·e1, e2, e3)`-blocks at height 20.
pub fn layer_x2(p: i64, q: i64) -> Result<Layer> {
    check_x(p, q)?;
    Layer::new(NiceLayer::new(q, 4, 1)?, x_layer(p, q, true)?, "X2")
}

fn check_y(p: i64, q: i64) -> Result<()> {
    if p < 1 || q < p || q > 2 * p {
        return Err(Error::Precondition(format!(
            "Y layers need 1 <= p <= q <= 2p, got p={p}, q={q}"
        )));
    }
    Ok(())
}

/// The T coverings stretched by `p` (T1..T5) and T1 stretched by `q`, all at height 4.
struct YPieces {
    t: [Covering; 5],
    q1: Covering,
}

impl YPieces {
    fn new(p: i64, q: i64) -> Result<Self> {
        let piece = |id: BaseId, w: i64| -> Result<Covering> { replicate_height(&spread(&base_covering(id)?, w)?, 4) };
        Ok(YPieces {
            t: [
                piece(BaseId::T1, p)?,
                piece(BaseId::T2, p)?,
                piece(BaseId::T3, p)?,
                piece(BaseId::T4, p)?,
                piece(BaseId::T5, p)?,
            ],
            q1: piece(BaseId::T1, q)?,
        })
    }

    fn copies(c: &Covering, range: std::ops::Range<i64>, dy: i64) -> impl Iterator<Item = Covering> + '_ {
        range.map(move |i| translate(c, i, dy))
    }
}

/// `([p + q] × [4]) ∪ ([p] × {5})` at height 4.
pub fn layer_y1(p: i64, q: i64) -> Result<Layer> {
    check_y(p, q)?;
    let t = q - p;
    let pc = YPieces::new(p, q)?;
    let parts: Vec<Covering> = YPieces::copies(&pc.t[0], t..p, 0)
        .chain(YPieces::copies(&pc.t[1], t..p, 1))
        .chain(YPieces::copies(&pc.t[2], p..p + t, 1))
        .chain(YPieces::copies(&pc.t[4], 0..t, 0))
        .chain(YPieces::copies(&pc.q1, 0..p, 3))
        .collect();
    Layer::new(NiceLayer::new(p + q, 4, p)?, compose(&parts)?, "Y1")
}

/// `([p + q] × [3]) ∪ ([p] × {4})` at height 4.
pub fn layer_y2(p: i64, q: i64) -> Result<Layer> {
    check_y(p, q)?;
    let t = q - p;
    let pc = YPieces::new(p, q)?;
    let parts: Vec<Covering> = YPieces::copies(&pc.t[0], 0..t, 0)
        .chain(YPieces::copies(&pc.t[2], p..p + t, 0))
        .chain(YPieces::copies(&pc.t[3], t..p, 0))
        .chain(YPieces::copies(&pc.q1, 0..p, 2))
        .collect();
    Layer::new(NiceLayer::new(p + q, 3, p)?, compose(&parts)?, "Y2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::{verify_covering, Family, Vec3};
    use num_integer::Integer;

    #[test]
    fn nice_layer_basics() {
        let l = NiceLayer::new(3, 2, 1).unwrap();
        assert_eq!(l.size(), 7);
        assert_eq!(l.cells().len(), 7);
        assert_eq!(l.rank((1, 1)), 1);
        assert_eq!(l.rank((3, 2)), 6);
        assert_eq!(l.rank((1, 3)), 7);
        assert!(l.contains((1, 3)) && !l.contains((2, 3)));
        assert!(NiceLayer::new(3, 2, 4).is_err());
        assert!(NiceLayer::new(0, 2, 0).is_err());
    }

    #[test]
    fn x1_examples() {
        let l = layer_x1(1, 2).unwrap();
        assert_eq!(l.shape.cells().len(), 8);
        assert_eq!(l.covering.height(), 20);
        assert!(verify_covering(&l.covering, &Family::axis(1)).is_accept());

        // a = 2, b = 1: one wide (3 columns) and one narrow (2 columns) copy.
        let l = layer_x1(2, 5).unwrap();
        assert_eq!(l.shape, NiceLayer::new(5, 4, 0).unwrap());
        assert!(verify_covering(&l.covering, &Family::axis(2)).is_accept());

        let l = layer_x1(3, 6).unwrap();
        assert!(verify_covering(&l.covering, &Family::axis(3)).is_accept());
    }

    #[test]
    fn x2_examples() {
        let l = layer_x2(1, 2).unwrap();
        assert!(l.covering.cells().contains(&(3, 4)));
        let l = layer_x2(2, 5).unwrap();
        assert!(l.covering.cells().contains(&(6, 4)));
        assert_eq!(l.shape.size(), 21);
        let l = layer_x2(1, 4).unwrap();
        assert_eq!(l.covering, covering_s7(4).unwrap());
    }

    #[test]
    fn y_examples() {
        let l = layer_y1(1, 1).unwrap();
        assert_eq!(l.shape.size(), 9);
        assert_eq!(l.covering.cells(), &l.shape.cells());
        assert!(l.covering.cells().contains(&(1, 5)));
        assert_eq!(layer_y1(2, 3).unwrap().shape.size(), 22);
        assert_eq!(layer_y1(3, 6).unwrap().shape.size(), 39);

        let l = layer_y2(1, 1).unwrap();
        assert_eq!(l.shape.size(), 7);
        assert!(l.covering.cells().contains(&(1, 4)));
        assert_eq!(layer_y2(2, 4).unwrap().shape.size(), 20);
        assert_eq!(layer_y2(5, 7).unwrap().shape.size(), 41);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(layer_x1(2, 3), Err(Error::Precondition(_))));
        assert!(matches!(layer_x2(0, 3), Err(Error::Precondition(_))));
        assert!(matches!(layer_y1(2, 5), Err(Error::Precondition(_))));
        assert!(matches!(layer_y2(3, 2), Err(Error::Precondition(_))));
        // q = 2p is admitted by both constructions.
        assert!(layer_x1(2, 4).is_ok() && layer_y1(2, 4).is_ok());
    }

    fn e1_magnitudes(c: &Covering) -> BTreeSet<i64> {
        c.family()
            .members()
            .iter()
            .flat_map(|t| t.iter().filter(|v| v.dz == 0 && v.dy == 0).map(|v| v.dx))
            .collect()
    }

    #[test]
    fn x_layers_sweep() {
        for p in 1..=16 {
            for q in 2 * p..=(2 * p + 6).min(32) {
                let x1 = layer_x1(p, q).unwrap();
                let x2 = layer_x2(p, q).unwrap();
                assert_eq!(x1.covering.cells(), &x1.shape.cells());
                let mut cells: BTreeSet<Cell> = x1.shape.cells();
                cells.insert((q + 1, 4));
                assert_eq!(x2.covering.cells(), &cells);
                assert_eq!(x2.shape, NiceLayer::new(q, 4, 1).unwrap());
                for l in [x1, x2] {
                    assert_eq!(e1_magnitudes(&l.covering), BTreeSet::from([p]));
                    assert!(verify_covering(&l.covering, &Family::axis(p)).is_accept());
                }
            }
        }
    }

    #[test]
    fn y_layers_sweep() {
        for p in 1..=8 {
            for q in p..=2 * p {
                let y1 = layer_y1(p, q).unwrap();
                let y2 = layer_y2(p, q).unwrap();
                assert_eq!(y1.shape.size(), 5 * p + 4 * q);
                assert_eq!(y2.shape.size(), 4 * p + 3 * q);
                assert_eq!(y1.shape.size().gcd(&y2.shape.size()), p.gcd(&q));
                let fam = Family::skew(p).union(&Family::skew(q));
                for l in [y1, y2] {
                    assert!(verify_covering(&l.covering, &fam).is_accept());
                    for t in l.covering.family().members() {
                        let w = t[0].dx;
                        assert!(w == p || w == q);
                        assert_eq!(t[1], Vec3::E2 - t[0]);
                    }
                }
            }
        }
    }
}
