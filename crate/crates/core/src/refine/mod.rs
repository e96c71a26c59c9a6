//! Edge cleanup after thinning: short branch removal, protruding pixel
//! repair and staircase balancing.

pub mod chain;
pub mod clean;
pub mod protrude;
pub mod waving;

pub use chain::{
    decompose_runs, is_branch, m_adjacent, m_degree, m_neighbors, trace_chains, Chain, ChainEnd,
    Run,
};
pub use clean::clean_short_branches;
pub use protrude::remove_protruding_pixels;
pub use waving::{
    junction_move_limit, reduce_waving, reduce_waving_detailed, Junction, JunctionOrientation,
    WavingReport,
};

use crate::edge::mask::EdgeMask;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CleaningConfig {
    /// Segments shorter than this are deleted.
    pub l_min: usize,
    /// Junction budget slope.
    pub l1: usize,
    /// Junction budget offset.
    pub l2: usize,
    /// Maximum number of waving sweeps.
    pub n_w: usize,
}

impl Default for CleaningConfig {
    fn default() -> Self {
        Self {
            l_min: 4,
            l1: 3,
            l2: 1,
            n_w: 50,
        }
    }
}

impl CleaningConfig {
    pub fn validate(&self) -> Result<()> {
        if self.l_min < 2 {
            return Err(Error::InvalidParameter(format!(
                "l_min must be >= 2, got {}",
                self.l_min
            )));
        }
        if self.n_w < 1 {
            return Err(Error::InvalidParameter("n_w must be >= 1".into()));
        }
        Ok(())
    }
}

/// Masks produced by each cleanup step.
#[derive(Debug, Clone)]
pub struct RefinedEdges {
    pub cleaned: EdgeMask,
    pub straightened: EdgeMask,
    pub balanced: EdgeMask,
    pub waving: WavingReport,
}

pub fn refine_edges(thinned: &EdgeMask, cfg: &CleaningConfig) -> Result<RefinedEdges> {
    cfg.validate()?;
    let cleaned = clean_short_branches(thinned, cfg.l_min);
    let straightened = remove_protruding_pixels(&cleaned);
    let (balanced, waving) = reduce_waving_detailed(&straightened, cfg);
    Ok(RefinedEdges {
        cleaned,
        straightened,
        balanced,
        waving,
    })
}
