//! ASCII rendering of coverings, one grid per level.

use std::collections::HashMap;
use std::fmt::Write;

use crate::blocks::{Covering, Point3};

/// Draws each level `z = 1..=height` as a grid with the top row first.
///
/// Every point shows the 1-based index of the block that contains it; grid
/// positions outside the shape, or not covered, show `.`. Each level is a
/// header line followed by one line per row of the bounding box.
pub fn render_covering(c: &Covering) -> String {
    let mut owner: HashMap<Point3, usize> = HashMap::new();
    for (i, b) in c.blocks().iter().enumerate() {
        for &p in &b.points {
            owner.insert(p, i + 1);
        }
    }
    let xs = c.cells().iter().map(|&(x, _)| x);
    let ys = c.cells().iter().map(|&(_, y)| y);
    let (Some(x0), Some(x1)) = (xs.clone().min(), xs.max()) else {
        return String::new();
    };
    let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    let width = c.blocks().len().to_string().len();

    let mut out = String::new();
    for z in 1..=c.height() {
        writeln!(out, "z = {z}").unwrap();
        for y in (y0..=y1).rev() {
            let row: Vec<String> = (x0..=x1)
                .map(|x| match owner.get(&Point3::new(x, y, z)) {
                    Some(i) if c.cells().contains(&(x, y)) => format!("{i:>width$}"),
                    _ => format!("{:>width$}", "."),
                })
                .collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
    }
    out
}
