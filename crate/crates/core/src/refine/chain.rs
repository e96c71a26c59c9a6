//! Edge pixel graph and chain tracing.
//!
//! Edge pixels are linked with mixed ("m") adjacency: 4-neighbors always
//! link, diagonal neighbors link only when neither shared 4-neighbor is an
//! edge pixel. This removes the redundant diagonal links that make every
//! pixel near a corner look like a branch under plain 8-adjacency. A branch
//! pixel has more than two linked neighbors.

use crate::edge::mask::{EdgeMask, NEIGHBORS8};
use crate::raster::PixelCoord;

pub fn m_adjacent(mask: &EdgeMask, p: PixelCoord, q: PixelCoord) -> bool {
    if !mask.at(p) || !mask.at(q) || !p.is_8_adjacent(q) {
        return false;
    }
    if p.is_4_adjacent(q) {
        return true;
    }
    !mask.at(PixelCoord::new(p.x, q.y)) && !mask.at(PixelCoord::new(q.x, p.y))
}

/// Linked neighbors of `p`, clockwise from north.
pub fn m_neighbors(mask: &EdgeMask, p: PixelCoord) -> impl Iterator<Item = PixelCoord> + '_ {
    NEIGHBORS8
        .iter()
        .map(move |&(dx, dy)| PixelCoord::new(p.x + dx, p.y + dy))
        .filter(move |&q| m_adjacent(mask, p, q))
}

pub fn m_degree(mask: &EdgeMask, p: PixelCoord) -> usize {
    m_neighbors(mask, p).count()
}

/// An edge pixel joining three or more branches.
pub fn is_branch(mask: &EdgeMask, p: PixelCoord) -> bool {
    mask.at(p) && m_degree(mask, p) > 2
}

/// What lies beyond a chain end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainEnd {
    /// Line end with no further edge pixel.
    Free,
    /// The end touches a branch pixel.
    Branch,
    /// The chain is a closed loop.
    Loop,
}

/// A maximal run of pixels along one axis inside a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Run {
    pub start: PixelCoord,
    pub len: usize,
    /// Unit 4-step between consecutive pixels; `None` for single pixels.
    pub dir: Option<(i64, i64)>,
}

impl Run {
    pub fn end(&self) -> PixelCoord {
        match self.dir {
            Some((dx, dy)) => {
                let k = self.len as i64 - 1;
                PixelCoord::new(self.start.x + k * dx, self.start.y + k * dy)
            }
            None => self.start,
        }
    }

    pub fn pixels(&self) -> impl Iterator<Item = PixelCoord> + '_ {
        let (dx, dy) = self.dir.unwrap_or((0, 0));
        (0..self.len as i64)
            .map(move |k| PixelCoord::new(self.start.x + k * dx, self.start.y + k * dy))
    }

    pub fn is_horizontal(&self) -> bool {
        matches!(self.dir, Some((_, 0)))
    }

    pub fn is_vertical(&self) -> bool {
        matches!(self.dir, Some((0, _)))
    }
}

/// Ordered simple path of edge pixels, consecutive entries linked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub pixels: Vec<PixelCoord>,
    pub head: ChainEnd,
    pub tail: ChainEnd,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.head == ChainEnd::Loop
    }

    /// Splits the pixel list into maximal axis-aligned runs. A new run
    /// starts at every diagonal step and at every 4-step whose direction
    /// differs from the current run's.
    pub fn runs(&self) -> Vec<Run> {
        decompose_runs(&self.pixels)
    }
}

pub fn decompose_runs(pixels: &[PixelCoord]) -> Vec<Run> {
    let mut runs: Vec<Run> = Vec::new();
    let Some(&first) = pixels.first() else {
        return runs;
    };
    let mut cur = Run {
        start: first,
        len: 1,
        dir: None,
    };
    for pair in pixels.windows(2) {
        let step = (pair[1].x - pair[0].x, pair[1].y - pair[0].y);
        let is_4 = step.0.abs() + step.1.abs() == 1;
        if is_4 && (cur.dir.is_none() || cur.dir == Some(step)) {
            cur.dir = Some(step);
            cur.len += 1;
        } else {
            runs.push(cur);
            cur = Run {
                start: pair[1],
                len: 1,
                dir: None,
            };
        }
    }
    runs.push(cur);
    runs
}

/// Traces every non-branch edge pixel into exactly one chain.
///
/// Pixels are visited in raster order. An unassigned pixel that is a path
/// end starts its chain directly; otherwise the tracer first walks to one
/// end of the path (or around its loop) and records the chain from there.
pub fn trace_chains(mask: &EdgeMask) -> Vec<Chain> {
    let w = mask.width();
    let node = |p: PixelCoord| mask.at(p) && !is_branch(mask, p);
    let links = |p: PixelCoord| m_neighbors(mask, p).filter(move |&q| node(q));
    let mut used = vec![false; w * mask.height()];
    let idx = |p: PixelCoord| p.y as usize * w + p.x as usize;
    let mut chains = Vec::new();

    for seed in mask.pixels() {
        if used[idx(seed)] || !node(seed) {
            continue;
        }
        // walk to an end, or all the way around a loop
        let mut prev: Option<PixelCoord> = None;
        let mut cur = seed;
        let mut closed = false;
        while links(seed).nth(1).is_some() {
            let next = links(cur).find(|&q| Some(q) != prev);
            match next {
                Some(n) if n == seed => {
                    closed = true;
                    break;
                }
                Some(n) => {
                    prev = Some(cur);
                    cur = n;
                }
                None => break,
            }
        }
        let start = if closed { seed } else { cur };
        let mut pixels = vec![start];
        used[idx(start)] = true;
        let mut prev: Option<PixelCoord> = None;
        let mut cur = start;
        while let Some(n) = links(cur).find(|&q| Some(q) != prev && !used[idx(q)]) {
            used[idx(n)] = true;
            pixels.push(n);
            prev = Some(cur);
            cur = n;
        }
        let end_kind = |p: PixelCoord| {
            if m_neighbors(mask, p).any(|q| is_branch(mask, q)) {
                ChainEnd::Branch
            } else {
                ChainEnd::Free
            }
        };
        let (head, tail) = if closed {
            (ChainEnd::Loop, ChainEnd::Loop)
        } else {
            (end_kind(pixels[0]), end_kind(*pixels.last().unwrap()))
        };
        chains.push(Chain { pixels, head, tail });
    }
    chains
}
