//! Blocks in Z³, coverings of prisms `S × [h]` by blocks, and the covering
//! algebra used to assemble larger coverings from small hand-made ones.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::{Add, Sub};

use itertools::Itertools;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiling::Verdict;

/// A point of Z².
pub type Cell = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct Point3 {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct Vec3 {
    pub dx: i64,
    pub dy: i64,
    pub dz: i64,
}

impl Point3 {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Point3 { x, y, z }
    }

    pub fn cell(self) -> Cell {
        (self.x, self.y)
    }
}

impl Vec3 {
    pub const fn new(dx: i64, dy: i64, dz: i64) -> Self {
        Vec3 { dx, dy, dz }
    }

    pub const E1: Vec3 = Vec3::new(1, 0, 0);
    pub const E2: Vec3 = Vec3::new(0, 1, 0);
    pub const E3: Vec3 = Vec3::new(0, 0, 1);

    fn stretch_e1(self, w: i64) -> Vec3 {
        Vec3::new(self.dx * w, self.dy, self.dz)
    }
}

impl From<[i64; 3]> for Point3 {
    fn from([x, y, z]: [i64; 3]) -> Self {
        Point3 { x, y, z }
    }
}

impl From<Point3> for [i64; 3] {
    fn from(p: Point3) -> Self {
        [p.x, p.y, p.z]
    }
}

impl From<[i64; 3]> for Vec3 {
    fn from([dx, dy, dz]: [i64; 3]) -> Self {
        Vec3 { dx, dy, dz }
    }
}

impl From<Vec3> for [i64; 3] {
    fn from(v: Vec3) -> Self {
        [v.dx, v.dy, v.dz]
    }
}

impl Sub for Point3 {
    type Output = Vec3;

    fn sub(self, rhs: Point3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Add<Vec3> for Point3 {
    type Output = Point3;

    fn add(self, v: Vec3) -> Point3 {
        Point3::new(self.x + v.dx, self.y + v.dy, self.z + v.dz)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;

    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.dx - rhs.dx, self.dy - rhs.dy, self.dz - rhs.dz)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// The difference vectors a block realizes, in some order.
pub type Triple = [Vec3; 3];

/// A set of admissible difference triples. The constructions only use one-
/// and two-member families.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    members: Vec<Triple>,
}

impl Family {
    pub fn new(members: Vec<Triple>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidInput("a family needs at least one triple".into()));
        }
        let mut members = members;
        members.dedup();
        Ok(Family { members })
    }

    /// `(w·e1, e2, e3)`.
    pub fn axis(w: i64) -> Self {
        Family {
            members: vec![[Vec3::E1.stretch_e1(w), Vec3::E2, Vec3::E3]],
        }
    }

    /// `(w·e1, e2 − w·e1, e3)`.
    pub fn skew(w: i64) -> Self {
        let e1 = Vec3::E1.stretch_e1(w);
        Family {
            members: vec![[e1, Vec3::E2 - e1, Vec3::E3]],
        }
    }

    pub fn members(&self) -> &[Triple] {
        &self.members
    }

    pub fn stretch_e1(&self, w: i64) -> Family {
        Family {
            members: self.members.iter().map(|t| t.map(|v| v.stretch_e1(w))).collect(),
        }
    }

    /// Members of both families, without repeats, in first-seen order.
    pub fn union(&self, other: &Family) -> Family {
        let mut members = self.members.clone();
        for t in &other.members {
            if !members.contains(t) {
                members.push(*t);
            }
        }
        Family { members }
    }
}

/// Four points of Z³, kept in the order they were listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Block {
    pub points: [Point3; 4],
}

impl Block {
    pub fn new(points: [Point3; 4]) -> Self {
        Block { points }
    }

    fn from_coords(coords: [[i64; 3]; 4]) -> Self {
        Block {
            points: coords.map(Point3::from),
        }
    }

    fn map(&self, f: impl Fn(Point3) -> Point3) -> Block {
        Block {
            points: self.points.map(f),
        }
    }
}

fn same_multiset(a: [Vec3; 3], b: &Triple) -> bool {
    let mut a = a;
    let mut b = *b;
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Finds an ordering `v1..v4` of `points` whose consecutive differences
/// `v2 − v1, v3 − v2, v4 − v3` are a permutation of `triple`.
///
/// Differences are matched as vectors; a negated vector does not match.
/// Orderings are tried in lexicographic order of positions in `points`, so
/// an already well-ordered input is returned unchanged.
pub fn is_block(points: &[Point3], triple: &Triple) -> Result<Option<[Point3; 4]>> {
    if points.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "a block has 4 points, got {}",
            points.len()
        )));
    }
    if points.iter().duplicates().next().is_some() {
        return Err(Error::InvalidInput("block points are not distinct".into()));
    }
    for order in (0..4).permutations(4) {
        let v = [points[order[0]], points[order[1]], points[order[2]], points[order[3]]];
        if same_multiset([v[1] - v[0], v[2] - v[1], v[3] - v[2]], triple) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// A shape `cells`, a height, and a list of blocks meant to partition
/// `cells × [1, height]`.
///
/// [`Covering::from_parts`] does not check anything; use [`verify_covering`]
/// or the checked constructors of this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covering {
    cells: BTreeSet<Cell>,
    height: i64,
    family: Family,
    blocks: Vec<Block>,
}

impl Covering {
    pub fn from_parts(cells: impl IntoIterator<Item = Cell>, height: i64, family: Family, blocks: Vec<Block>) -> Self {
        Covering {
            cells: cells.into_iter().collect(),
            height,
            family,
            blocks,
        }
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Checks this covering against its own family.
    pub fn verify(&self) -> Verdict<CoveringRejection> {
        verify_covering(self, &self.family)
    }

    /// Returns `self` if it verifies, an internal error naming `what` otherwise.
    pub(crate) fn checked(self, what: &str) -> Result<Covering> {
        match self.verify() {
            Verdict::Accept => Ok(self),
            Verdict::Reject(r) => Err(Error::Internal(format!("{what} does not verify: {r}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoveringViolation {
    /// A block is not a translate of any member of the family.
    NotABlock,
    /// A point lies outside `cells × [1, height]`.
    OutsidePrism,
    /// A point is used by two blocks.
    Overlap,
    /// A point of the prism is not used.
    Uncovered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringRejection {
    pub violation: CoveringViolation,
    pub witness: Point3,
    pub block: Option<usize>,
}

impl fmt::Display for CoveringRejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.violation {
            CoveringViolation::NotABlock => "not a family block",
            CoveringViolation::OutsidePrism => "point outside the prism",
            CoveringViolation::Overlap => "point covered twice",
            CoveringViolation::Uncovered => "point not covered",
        };
        write!(f, "{what} at {}", self.witness)?;
        if let Some(b) = self.block {
            write!(f, " (block #{b})")?;
        }
        Ok(())
    }
}

/// Checks that every block of `covering` is a `family` block and that the
/// blocks partition `cells × [1, height]`.
pub fn verify_covering(covering: &Covering, family: &Family) -> Verdict<CoveringRejection> {
    let reject = |violation, witness, block| {
        Verdict::Reject(CoveringRejection {
            violation,
            witness,
            block,
        })
    };

    for (i, block) in covering.blocks.iter().enumerate() {
        let ok = family
            .members()
            .iter()
            .any(|t| matches!(is_block(&block.points, t), Ok(Some(_))));
        if !ok {
            return reject(CoveringViolation::NotABlock, block.points[0], Some(i));
        }
    }

    let mut seen = HashSet::with_capacity(covering.blocks.len() * 4);
    for (i, block) in covering.blocks.iter().enumerate() {
        for &pt in &block.points {
            if pt.z < 1 || pt.z > covering.height || !covering.cells.contains(&pt.cell()) {
                return reject(CoveringViolation::OutsidePrism, pt, Some(i));
            }
            if !seen.insert(pt) {
                return reject(CoveringViolation::Overlap, pt, Some(i));
            }
        }
    }

    let target = covering.cells.len() as u64 * covering.height.max(0) as u64;
    if seen.len() as u64 != target || covering.height < 1 {
        let missing = (1..=covering.height.max(1))
            .flat_map(|z| covering.cells.iter().map(move |&(x, y)| Point3::new(x, y, z)))
            .find(|pt| !seen.contains(pt))
            .unwrap_or(Point3::new(0, 0, 0));
        return reject(CoveringViolation::Uncovered, missing, None);
    }
    Verdict::Accept
}

/// The hand-made coverings everything else is assembled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseId {
    S1,
    S2,
    /// `[2] × [4]` at height 5.
    S4x2,
    S5,
    S6,
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl BaseId {
    pub const ALL: [BaseId; 10] = [
        BaseId::S1,
        BaseId::S2,
        BaseId::S4x2,
        BaseId::S5,
        BaseId::S6,
        BaseId::T1,
        BaseId::T2,
        BaseId::T3,
        BaseId::T4,
        BaseId::T5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseId::S1 => "S1",
            BaseId::S2 => "S2",
            BaseId::S4x2 => "S4_2x4",
            BaseId::S5 => "S5",
            BaseId::S6 => "S6",
            BaseId::T1 => "T1",
            BaseId::T2 => "T2",
            BaseId::T3 => "T3",
            BaseId::T4 => "T4",
            BaseId::T5 => "T5",
        }
    }

    pub fn height(self) -> i64 {
        match self {
            BaseId::S4x2 => 5,
            BaseId::T3 | BaseId::T4 | BaseId::T5 => 2,
            _ => 4,
        }
    }

    pub fn family(self) -> Family {
        match self {
            BaseId::S1 | BaseId::S2 | BaseId::S4x2 | BaseId::S5 | BaseId::S6 => Family::axis(1),
            _ => Family::skew(1),
        }
    }

    pub fn cells(self) -> Vec<Cell> {
        match self {
            BaseId::S1 => vec![(1, 1), (1, 2), (2, 2)],
            BaseId::S2 => vec![(1, 1), (2, 1), (2, 2)],
            BaseId::S4x2 => rect(2, 4),
            BaseId::S5 => [rect(2, 4), vec![(3, 1), (3, 2)]].concat(),
            BaseId::S6 => [rect(2, 4), vec![(3, 4)]].concat(),
            BaseId::T1 => vec![(1, 1), (1, 2), (2, 1)],
            BaseId::T2 => vec![(1, 2), (2, 1), (2, 2)],
            BaseId::T3 => vec![(1, 2), (1, 3), (2, 1), (2, 2)],
            BaseId::T4 => rect(2, 2),
            BaseId::T5 => vec![(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (3, 1)],
        }
    }

    fn block_list(self) -> &'static [[[i64; 3]; 4]] {
        match self {
            BaseId::S1 => &[
                [[1, 1, 1], [1, 2, 1], [2, 2, 1], [2, 2, 2]],
                [[1, 1, 2], [1, 2, 2], [1, 2, 3], [2, 2, 3]],
                [[1, 1, 3], [1, 1, 4], [1, 2, 4], [2, 2, 4]],
            ],
            BaseId::S2 => &[
                [[1, 1, 1], [2, 1, 1], [2, 2, 1], [2, 2, 2]],
                [[1, 1, 2], [2, 1, 2], [2, 1, 3], [2, 2, 3]],
                [[1, 1, 3], [1, 1, 4], [2, 1, 4], [2, 2, 4]],
            ],
            BaseId::S4x2 => &[
                [[1, 1, 1], [2, 1, 1], [2, 1, 2], [2, 2, 2]],
                [[1, 2, 1], [2, 2, 1], [2, 3, 1], [2, 3, 2]],
                [[1, 3, 1], [1, 4, 1], [2, 4, 1], [2, 4, 2]],
                [[1, 1, 2], [1, 2, 2], [1, 2, 3], [2, 2, 3]],
                [[1, 3, 2], [1, 4, 2], [1, 4, 3], [2, 4, 3]],
                [[1, 1, 3], [2, 1, 3], [2, 1, 4], [2, 2, 4]],
                [[1, 3, 3], [2, 3, 3], [2, 3, 4], [2, 4, 4]],
                [[1, 1, 4], [1, 1, 5], [2, 1, 5], [2, 2, 5]],
                [[1, 2, 4], [1, 2, 5], [1, 3, 5], [2, 3, 5]],
                [[1, 3, 4], [1, 4, 4], [1, 4, 5], [2, 4, 5]],
            ],
            BaseId::S5 => &[
                [[1, 1, 1], [1, 1, 2], [1, 2, 2], [2, 2, 2]],
                [[1, 2, 1], [2, 2, 1], [2, 3, 1], [2, 3, 2]],
                [[2, 1, 1], [3, 1, 1], [3, 2, 1], [3, 2, 2]],
                [[1, 3, 1], [1, 4, 1], [2, 4, 1], [2, 4, 2]],
                [[2, 1, 2], [3, 1, 2], [3, 1, 3], [3, 2, 3]],
                [[1, 3, 2], [1, 4, 2], [1, 4, 3], [2, 4, 3]],
                [[1, 1, 3], [1, 1, 4], [1, 2, 4], [2, 2, 4]],
                [[1, 2, 3], [2, 2, 3], [2, 3, 3], [2, 3, 4]],
                [[2, 1, 3], [2, 1, 4], [3, 1, 4], [3, 2, 4]],
                [[1, 3, 3], [1, 3, 4], [1, 4, 4], [2, 4, 4]],
            ],
            BaseId::S6 => &[
                [[1, 1, 1], [2, 1, 1], [2, 2, 1], [2, 2, 2]],
                [[1, 2, 1], [1, 2, 2], [1, 3, 2], [2, 3, 2]],
                [[1, 3, 1], [1, 4, 1], [1, 4, 2], [2, 4, 2]],
                [[2, 3, 1], [2, 4, 1], [3, 4, 1], [3, 4, 2]],
                [[1, 1, 2], [2, 1, 2], [2, 1, 3], [2, 2, 3]],
                [[1, 1, 3], [1, 1, 4], [2, 1, 4], [2, 2, 4]],
                [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]],
                [[1, 3, 3], [1, 4, 3], [1, 4, 4], [2, 4, 4]],
                [[2, 3, 3], [2, 4, 3], [3, 4, 3], [3, 4, 4]],
            ],
            BaseId::T1 => &[
                [[1, 1, 1], [2, 1, 1], [1, 2, 1], [1, 2, 2]],
                [[1, 1, 2], [2, 1, 2], [2, 1, 3], [1, 2, 3]],
                [[1, 1, 3], [1, 1, 4], [2, 1, 4], [1, 2, 4]],
            ],
            BaseId::T2 => &[
                [[2, 1, 1], [1, 2, 1], [2, 2, 1], [2, 2, 2]],
                [[2, 1, 2], [1, 2, 2], [1, 2, 3], [2, 2, 3]],
                [[2, 1, 3], [2, 1, 4], [1, 2, 4], [2, 2, 4]],
            ],
            BaseId::T3 => &[
                [[2, 1, 1], [2, 1, 2], [1, 2, 2], [2, 2, 2]],
                [[1, 2, 1], [2, 2, 1], [1, 3, 1], [1, 3, 2]],
            ],
            BaseId::T4 => &[
                [[1, 1, 1], [1, 1, 2], [2, 1, 2], [1, 2, 2]],
                [[2, 1, 1], [1, 2, 1], [2, 2, 1], [2, 2, 2]],
            ],
            BaseId::T5 => &[
                [[1, 1, 1], [1, 1, 2], [2, 1, 2], [1, 2, 2]],
                [[2, 1, 1], [3, 1, 1], [3, 1, 2], [2, 2, 2]],
                [[1, 2, 1], [2, 2, 1], [1, 3, 1], [1, 3, 2]],
            ],
        }
    }
}

impl std::str::FromStr for BaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaseId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown base covering {s:?}")))
    }
}

/// `[1, w] × [1, h]`, row by row.
pub(crate) fn rect(w: i64, h: i64) -> Vec<Cell> {
    (1..=h).flat_map(|y| (1..=w).map(move |x| (x, y))).collect()
}

/// One of the hand-made coverings, exactly as listed.
pub fn base_covering(id: BaseId) -> Result<Covering> {
    let blocks = id.block_list().iter().map(|&b| Block::from_coords(b)).collect();
    Covering::from_parts(id.cells(), id.height(), id.family(), blocks).checked(id.name())
}

/// Shifts every cell and block point by `(dx, dy, 0)`.
pub fn translate(c: &Covering, dx: i64, dy: i64) -> Covering {
    Covering {
        cells: c.cells.iter().map(|&(x, y)| (x + dx, y + dy)).collect(),
        height: c.height,
        family: c.family.clone(),
        blocks: c
            .blocks
            .iter()
            .map(|b| b.map(|p| Point3::new(p.x + dx, p.y + dy, p.z)))
            .collect(),
    }
}

/// Maps every point `(x, y, z)` to `(w·x, y, z)`; the family is stretched alike.
pub fn stretch_e1(c: &Covering, w: i64) -> Result<Covering> {
    if w < 1 {
        return Err(Error::InvalidInput(format!("stretch factor {w} is not positive")));
    }
    Ok(Covering {
        cells: c.cells.iter().map(|&(x, y)| (w * x, y)).collect(),
        height: c.height,
        family: c.family.stretch_e1(w),
        blocks: c
            .blocks
            .iter()
            .map(|b| b.map(|p| Point3::new(w * p.x, p.y, p.z)))
            .collect(),
    })
}

/// Stacks copies of `c` to reach height `height`.
pub fn replicate_height(c: &Covering, height: i64) -> Result<Covering> {
    if c.height < 1 || height < 1 || height % c.height != 0 {
        return Err(Error::InvalidInput(format!(
            "height {} does not divide {height}",
            c.height
        )));
    }
    let copies = height / c.height;
    let blocks = (0..copies)
        .flat_map(|k| {
            let dz = k * c.height;
            c.blocks.iter().map(move |b| b.map(|p| Point3::new(p.x, p.y, p.z + dz)))
        })
        .collect();
    Ok(Covering {
        cells: c.cells.clone(),
        height,
        family: c.family.clone(),
        blocks,
    })
}

/// Disjoint union of coverings of equal height.
pub fn compose(coverings: &[Covering]) -> Result<Covering> {
    let Some(first) = coverings.first() else {
        return Err(Error::InvalidInput("nothing to compose".into()));
    };
    for (j, c) in coverings.iter().enumerate().skip(1) {
        if c.height != first.height {
            return Err(Error::Composition {
                first: 0,
                second: j,
                reason: format!("heights {} and {} differ", first.height, c.height),
            });
        }
    }
    for (i, j) in (0..coverings.len()).tuple_combinations() {
        if let Some(cell) = coverings[i].cells.intersection(&coverings[j].cells).next() {
            return Err(Error::Composition {
                first: i,
                second: j,
                reason: format!("both contain cell {cell:?}"),
            });
        }
    }
    let mut out = first.clone();
    for c in &coverings[1..] {
        out.cells.extend(c.cells.iter().copied());
        out.family = out.family.union(&c.family);
        out.blocks.extend_from_slice(&c.blocks);
    }
    out.checked("composed covering")
}

/// Height shared by all composed S-coverings.
pub const S_HEIGHT: i64 = 20;

/// `[3] × [2]` at height 4.
pub fn covering_s3() -> Result<Covering> {
    compose(&[base_covering(BaseId::S1)?, translate(&base_covering(BaseId::S2)?, 1, 0)])
}

/// `count` side-by-side copies of the `[2] × [4]` covering, the first at
/// columns `first_col, first_col + 1`, lifted to height 20.
fn two_wide_columns(first_col: i64, count: i64) -> Result<Vec<Covering>> {
    let unit = replicate_height(&base_covering(BaseId::S4x2)?, S_HEIGHT)?;
    Ok((0..count).map(|i| translate(&unit, first_col - 1 + 2 * i, 0)).collect())
}

/// `[k] × [4]` at height 20.
pub fn covering_s4(k: i64) -> Result<Covering> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("S4 needs k >= 2, got {k}")));
    }
    let mut parts = Vec::new();
    let mut next_col = 1;
    if k % 2 == 1 {
        let s3 = covering_s3()?;
        let tall = compose(&[s3.clone(), translate(&s3, 0, 2)])?;
        parts.push(replicate_height(&tall, S_HEIGHT)?);
        next_col = 4;
    }
    parts.extend(two_wide_columns(next_col, (k - next_col + 1) / 2)?);
    compose(&parts)
}

/// `([k] × [4]) ∪ {(k + 1, 4)}` at height 20.
pub fn covering_s7(k: i64) -> Result<Covering> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("S7 needs k >= 2, got {k}")));
    }
    let mut parts = if k % 2 == 0 {
        vec![translate(&base_covering(BaseId::S6)?, k - 2, 0)]
    } else {
        vec![
            translate(&base_covering(BaseId::S5)?, k - 3, 0),
            translate(&base_covering(BaseId::S1)?, k - 1, 2),
        ]
    };
    parts = parts
        .iter()
        .map(|c| replicate_height(c, S_HEIGHT))
        .collect::<Result<_>>()?;
    let filler_cols = if k % 2 == 0 { k - 2 } else { k - 3 };
    parts.extend(two_wide_columns(1, filler_cols / 2)?);
    compose(&parts)
}

/// Least common multiple of a list of heights.
pub fn lcm_heights(heights: impl IntoIterator<Item = i64>) -> i64 {
    heights.into_iter().fold(1, |acc, h| acc.lcm(&h))
}
