//! JSON documents exchanged with the command line.
//!
//! Tiling: `{"gaps":[g1,g2,g3], "interval":[lo,hi], "parts":[[a,b,c,d],...]}`
//! with parts sorted by least element, plus an optional `meta` object
//! describing how the tiling was built.
//!
//! Covering: `{"cells":[[x,y],...], "height":h, "family":[[dx,dy,dz],...],
//! "blocks":[[[x,y,z],[x,y,z],[x,y,z],[x,y,z]],...]}`, where `family` lists
//! three vectors per member triple.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::assemble::PlanParameters;
use crate::blocks::{Block, Covering, Family, Vec3};
use crate::error::{Error, Result};
use crate::tiling::{verify_tiling, GapSequence, Part, Tiling, TilingRejection, TilingViolation, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingMeta {
    pub branch: String,
    /// Number of interleaved copies, and the offset of the interval: it starts at `d + 1`.
    pub d: i64,
    /// Common layer height `l`; the interval has length `l·r`.
    pub height: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingDocument {
    pub gaps: Vec<i64>,
    pub interval: [i64; 2],
    pub parts: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<TilingMeta>,
}

impl TilingDocument {
    pub fn new(tiling: &Tiling, gaps: &GapSequence) -> Self {
        let mut parts: Vec<Vec<i64>> = tiling.parts.iter().map(|p| p.elements().to_vec()).collect();
        parts.sort_by_key(|p| p.first().copied());
        TilingDocument {
            gaps: gaps.gaps().to_vec(),
            interval: [tiling.lo, tiling.hi],
            parts,
            meta: None,
        }
    }

    pub fn with_plan(mut self, params: &PlanParameters) -> Self {
        self.meta = Some(TilingMeta {
            branch: params.branch.to_string(),
            d: params.d,
            height: params.height,
        });
        self
    }

    /// Verifies the document as a tiling of its interval.
    ///
    /// A part that repeats an element is reported as a disjointness
    /// violation; only an unusable gap list is an error.
    pub fn verify(&self) -> Result<Verdict<TilingRejection>> {
        let gaps = GapSequence::new(self.gaps.clone())?;
        let mut parts = Vec::with_capacity(self.parts.len());
        for raw in &self.parts {
            match Part::new(raw.clone()) {
                Ok(p) => parts.push(p),
                Err(_) => {
                    let mut sorted = raw.clone();
                    sorted.sort_unstable();
                    let w = sorted.windows(2).find(|w| w[0] == w[1]).map_or(0, |w| w[0]);
                    return Ok(Verdict::Reject(TilingRejection {
                        violation: TilingViolation::Disjointness,
                        witness: w,
                        detail: format!("{w} appears twice in one part"),
                    }));
                }
            }
        }
        let tiling = Tiling::new(self.interval[0], self.interval[1], parts);
        Ok(verify_tiling(&tiling, &gaps))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct CoveringDocument {
    cells: Vec<[i64; 2]>,
    height: i64,
    family: Vec<Vec3>,
    blocks: Vec<Block>,
}

impl From<&Covering> for CoveringDocument {
    fn from(c: &Covering) -> Self {
        CoveringDocument {
            cells: c.cells().iter().map(|&(x, y)| [x, y]).collect(),
            height: c.height(),
            family: c.family().members().iter().flatten().copied().collect(),
            blocks: c.blocks().to_vec(),
        }
    }
}

impl TryFrom<CoveringDocument> for Covering {
    type Error = Error;

    fn try_from(doc: CoveringDocument) -> Result<Covering> {
        if doc.family.is_empty() || !doc.family.len().is_multiple_of(3) {
            return Err(Error::InvalidInput(format!(
                "family must list 3 vectors per member, got {}",
                doc.family.len()
            )));
        }
        let members = doc.family.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        Ok(Covering::from_parts(
            doc.cells.into_iter().map(|[x, y]| (x, y)),
            doc.height,
            Family::new(members)?,
            doc.blocks,
        ))
    }
}

impl Serialize for Covering {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CoveringDocument::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Covering {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = CoveringDocument::deserialize(deserializer)?;
        Covering::try_from(doc).map_err(serde::de::Error::custom)
    }
}
