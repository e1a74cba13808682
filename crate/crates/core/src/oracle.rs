//! Brute-force exact-cover searches used as an independent cross-check.
//!
//! Both solvers always cover the least uncovered element, which then has to
//! be the least element of the piece covering it. That pins each candidate
//! piece to an anchor and keeps the branching factor at the number of
//! distinct piece orientations. Neither solver shares code with the
//! constructive path; successes are passed through the verifiers before
//! being returned.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::blocks::{verify_covering, Block, Cell, Covering, Family, Point3, Vec3};
use crate::error::{Error, Result};
use crate::tiling::{verify_tiling, GapSequence, Part, Tiling, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    max_nodes: u64,
}

impl SearchBudget {
    pub fn new(max_nodes: u64) -> Result<Self> {
        if max_nodes < 1 {
            return Err(Error::InvalidInput("search budget must be at least 1 node".into()));
        }
        Ok(SearchBudget { max_nodes })
    }

    pub fn max_nodes(&self) -> u64 {
        self.max_nodes
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 10_000_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole search space was explored without success.
    Infeasible,
    BudgetExhausted,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

enum Step {
    Done,
    Dead,
    OutOfBudget,
}

struct Counter {
    nodes: u64,
    max: u64,
}

impl Counter {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.max
    }
}

/// Cumulative offsets `0, g_σ(1), g_σ(1) + g_σ(2), …` for every distinct ordering of the gaps.
fn placements(gaps: &GapSequence) -> Vec<Vec<usize>> {
    gaps.gaps()
        .iter()
        .permutations(gaps.gaps().len())
        .unique()
        .map(|perm| {
            std::iter::once(0)
                .chain(perm.into_iter().scan(0usize, |acc, &g| {
                    *acc += g as usize;
                    Some(*acc)
                }))
                .collect()
        })
        .collect()
}

fn interval_search(
    covered: &mut [bool],
    from: usize,
    shapes: &[Vec<usize>],
    chosen: &mut Vec<(usize, usize)>,
    counter: &mut Counter,
) -> Step {
    let Some(anchor) = (from..covered.len()).find(|&i| !covered[i]) else {
        return Step::Done;
    };
    if !counter.tick() {
        return Step::OutOfBudget;
    }
    for (k, shape) in shapes.iter().enumerate() {
        let fits = shape
            .iter()
            .all(|&o| anchor + o < covered.len() && !covered[anchor + o]);
        if !fits {
            continue;
        }
        for &o in shape {
            covered[anchor + o] = true;
        }
        chosen.push((anchor, k));
        match interval_search(covered, anchor + 1, shapes, chosen, counter) {
            Step::Dead => {}
            done_or_out => return done_or_out,
        }
        chosen.pop();
        for &o in shape {
            covered[anchor + o] = false;
        }
    }
    Step::Dead
}

/// Searches for a partition of `[1, n]` into parts with gap multiset `gaps`.
pub fn solve_interval(gaps: &GapSequence, n: usize, budget: SearchBudget) -> SearchOutcome<Tiling> {
    if n == 0 || !n.is_multiple_of(gaps.part_size()) {
        return SearchOutcome::Infeasible;
    }
    let shapes = placements(gaps);
    let mut covered = vec![false; n];
    let mut chosen = Vec::with_capacity(n / gaps.part_size());
    let mut counter = Counter {
        nodes: 0,
        max: budget.max_nodes,
    };
    match interval_search(&mut covered, 0, &shapes, &mut chosen, &mut counter) {
        Step::Dead => SearchOutcome::Infeasible,
        Step::OutOfBudget => SearchOutcome::BudgetExhausted,
        Step::Done => {
            let parts = chosen
                .iter()
                .map(|&(anchor, k)| {
                    Part::new(shapes[k].iter().map(|&o| (anchor + o + 1) as i64).collect::<Vec<_>>())
                        .expect("offsets are distinct")
                })
                .collect();
            let tiling = Tiling::new(1, n as i64, parts);
            match verify_tiling(&tiling, gaps) {
                Verdict::Accept => SearchOutcome::Found(tiling),
                Verdict::Reject(why) => panic!("interval search produced an invalid tiling: {why}"),
            }
        }
    }
}

/// Smallest `n ≤ n_max` (a multiple of the part size) for which `[1, n]` can be tiled.
///
/// The budget applies to each `n` separately. If no `n` succeeds and some
/// search ran out of budget, the result is `BudgetExhausted`.
pub fn min_interval(gaps: &GapSequence, n_max: usize, budget: SearchBudget) -> SearchOutcome<(usize, Tiling)> {
    let mut exhausted = false;
    for n in (gaps.part_size()..=n_max).step_by(gaps.part_size()) {
        match solve_interval(gaps, n, budget) {
            SearchOutcome::Found(t) => return SearchOutcome::Found((n, t)),
            SearchOutcome::BudgetExhausted => exhausted = true,
            SearchOutcome::Infeasible => {}
        }
    }
    if exhausted {
        SearchOutcome::BudgetExhausted
    } else {
        SearchOutcome::Infeasible
    }
}

/// Every block shape of the family, as offsets from its least point
/// (in `(x, y, z)` order), without repeats.
fn anchored_shapes(family: &Family) -> Vec<[Vec3; 4]> {
    let mut shapes = BTreeSet::new();
    for triple in family.members() {
        for perm in triple.iter().permutations(3) {
            let mut pts = [Point3::new(0, 0, 0); 4];
            for (i, v) in perm.into_iter().enumerate() {
                pts[i + 1] = pts[i] + *v;
            }
            if pts.iter().duplicates().next().is_some() {
                continue;
            }
            let least = *pts.iter().min().expect("four points");
            let mut offsets = pts.map(|p| p - least);
            offsets.sort_unstable();
            shapes.insert(offsets);
        }
    }
    shapes.into_iter().collect()
}

fn covering_search(
    covered: &mut BTreeMap<Point3, bool>,
    shapes: &[[Vec3; 4]],
    chosen: &mut Vec<Block>,
    counter: &mut Counter,
) -> Step {
    let Some(anchor) = covered.iter().find(|(_, &c)| !c).map(|(&p, _)| p) else {
        return Step::Done;
    };
    if !counter.tick() {
        return Step::OutOfBudget;
    }
    for shape in shapes {
        let pts = shape.map(|o| anchor + o);
        if !pts.iter().all(|p| covered.get(p) == Some(&false)) {
            continue;
        }
        for p in &pts {
            covered.insert(*p, true);
        }
        chosen.push(Block::new(pts));
        match covering_search(covered, shapes, chosen, counter) {
            Step::Dead => {}
            done_or_out => return done_or_out,
        }
        chosen.pop();
        for p in &pts {
            covered.insert(*p, false);
        }
    }
    Step::Dead
}

/// Searches for a partition of `cells × [1, height]` into `family` blocks.
pub fn solve_covering(
    cells: &BTreeSet<Cell>,
    height: i64,
    family: &Family,
    budget: SearchBudget,
) -> SearchOutcome<Covering> {
    if height < 1 || (cells.len() as i64 * height) % 4 != 0 {
        return SearchOutcome::Infeasible;
    }
    let mut covered: BTreeMap<Point3, bool> = cells
        .iter()
        .flat_map(|&(x, y)| (1..=height).map(move |z| (Point3::new(x, y, z), false)))
        .collect();
    let shapes = anchored_shapes(family);
    let mut chosen = Vec::new();
    let mut counter = Counter {
        nodes: 0,
        max: budget.max_nodes,
    };
    match covering_search(&mut covered, &shapes, &mut chosen, &mut counter) {
        Step::Dead => SearchOutcome::Infeasible,
        Step::OutOfBudget => SearchOutcome::BudgetExhausted,
        Step::Done => {
            let covering = Covering::from_parts(cells.iter().copied(), height, family.clone(), chosen);
            match verify_covering(&covering, family) {
                Verdict::Accept => SearchOutcome::Found(covering),
                Verdict::Reject(why) => panic!("covering search produced an invalid covering: {why}"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::BaseId;

    fn gaps(xs: &[i64]) -> GapSequence {
        GapSequence::new(xs.to_vec()).unwrap()
    }

    /// Every exact cover of `[1, n]` by parts with the given gaps, found by
    /// listing all placements and trying all subsets of disjoint ones.
    fn count_by_enumeration(g: &GapSequence, n: i64) -> usize {
        let mut placements: Vec<u64> = Vec::new();
        for perm in g.gaps().iter().permutations(g.gaps().len()).unique() {
            for start in 1..=n {
                let mut x = start;
                let mut mask = 1u64 << (x - 1);
                let mut ok = true;
                for &&d in &perm {
                    x += d;
                    if x > n {
                        ok = false;
                        break;
                    }
                    mask |= 1 << (x - 1);
                }
                if ok {
                    placements.push(mask);
                }
            }
        }
        placements.sort_unstable();
        placements.dedup();
        fn go(full: u64, used: u64, from: usize, ps: &[u64]) -> usize {
            if used == full {
                return 1;
            }
            (from..ps.len())
                .filter(|&i| ps[i] & used == 0)
                .map(|i| go(full, used | ps[i], i + 1, ps))
                .sum()
        }
        go((1u64 << n) - 1, 0, 0, &placements)
    }

    #[test]
    fn interval_examples() {
        let g = gaps(&[1, 1, 1]);
        let t = solve_interval(&g, 4, SearchBudget::default()).found().unwrap();
        assert_eq!(t.parts, vec![Part::new(vec![1, 2, 3, 4]).unwrap()]);
        assert_eq!(
            solve_interval(&g, 6, SearchBudget::default()),
            SearchOutcome::Infeasible
        );
        assert_eq!(
            solve_interval(&g, 0, SearchBudget::default()),
            SearchOutcome::Infeasible
        );
    }

    #[test]
    fn interval_123() {
        let g = gaps(&[1, 2, 3]);
        match solve_interval(&g, 24, SearchBudget::default()) {
            SearchOutcome::Found(t) => assert!(verify_tiling(&t, &g).is_accept()),
            SearchOutcome::Infeasible => {}
            SearchOutcome::BudgetExhausted => panic!("budget too small"),
        }
    }

    #[test]
    fn interval_search_is_complete_on_small_cases() {
        let cases: &[&[i64]] = &[
            &[1, 1],
            &[1, 2],
            &[1, 3],
            &[2, 3],
            &[1, 1, 1],
            &[1, 1, 2],
            &[1, 2, 3],
            &[1, 2, 4],
            &[2, 2, 3],
        ];
        for g in cases {
            let g = gaps(g);
            for n in 1..=16 {
                let exists = count_by_enumeration(&g, n) > 0;
                let got = solve_interval(&g, n as usize, SearchBudget::default());
                assert_ne!(got, SearchOutcome::BudgetExhausted);
                assert_eq!(matches!(got, SearchOutcome::Found(_)), exists, "g={g} n={n}");
            }
        }
    }

    #[test]
    fn min_interval_examples() {
        let (n, t) = min_interval(&gaps(&[1, 1, 1]), 40, SearchBudget::default())
            .found()
            .unwrap();
        assert_eq!((n, t.parts.len()), (4, 1));
        let (n, t) = min_interval(&gaps(&[1, 1]), 40, SearchBudget::default())
            .found()
            .unwrap();
        assert_eq!(n, 3);
        assert_eq!(t.parts, vec![Part::new(vec![1, 2, 3]).unwrap()]);
        assert_eq!(
            min_interval(&gaps(&[1, 1, 1]), 3, SearchBudget::default()),
            SearchOutcome::Infeasible
        );
    }

    #[test]
    fn budget_is_reported() {
        let tiny = SearchBudget::new(1).unwrap();
        assert_eq!(
            solve_interval(&gaps(&[1, 2, 56]), 200, tiny),
            SearchOutcome::BudgetExhausted
        );
        assert!(SearchBudget::new(0).is_err());
    }

    #[test]
    fn anchored_shape_counts() {
        // Three distinct vectors give six orderings, all distinct as point sets.
        assert_eq!(anchored_shapes(&Family::axis(1)).len(), 6);
        assert_eq!(anchored_shapes(&Family::skew(1)).len(), 6);
        assert_eq!(anchored_shapes(&Family::skew(1).union(&Family::skew(2))).len(), 12);
    }

    #[test]
    fn covering_examples() {
        let budget = SearchBudget::default();
        for id in [BaseId::S1, BaseId::T4] {
            let cells: BTreeSet<Cell> = id.cells().into_iter().collect();
            let c = solve_covering(&cells, id.height(), &id.family(), budget)
                .found()
                .unwrap();
            assert!(verify_covering(&c, &id.family()).is_accept());
        }
        let s1: BTreeSet<Cell> = BaseId::S1.cells().into_iter().collect();
        assert_eq!(
            solve_covering(&s1, 1, &Family::axis(1), budget),
            SearchOutcome::Infeasible
        );
    }

    #[test]
    fn searches_are_deterministic() {
        let g = gaps(&[1, 2, 3]);
        let a = min_interval(&g, 40, SearchBudget::default());
        let b = min_interval(&g, 40, SearchBudget::default());
        assert_eq!(a, b);
    }
}
