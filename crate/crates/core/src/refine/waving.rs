//! Staircase balancing on traced edge chains.
//!
//! A digitized straight edge is a staircase of axis-aligned runs. Where a
//! long run meets a single-pixel run the step is lopsided, and the edge
//! looks wavy after filtering. Such junctions are shifted one pixel at a
//! time, moving a pixel from the longer run into the shorter one, until the
//! two runs differ by at most one pixel or the junction has used its move
//! budget `l_max`.

use std::fmt::Write as _;

use super::chain::{trace_chains, Run};
use super::CleaningConfig;
use crate::edge::mask::EdgeMask;
use crate::raster::PixelCoord;

/// Move budget of a junction whose runs have lengths `s1` and `s2`.
pub fn junction_move_limit(s1: usize, s2: usize, l1: usize, l2: usize) -> usize {
    s1.max(s2).min(l1 * s1.min(s2) + l2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JunctionOrientation {
    Horizontal,
    Vertical,
    Unclassified,
}

impl JunctionOrientation {
    fn label(self) -> &'static str {
        match self {
            JunctionOrientation::Horizontal => "horizontal",
            JunctionOrientation::Vertical => "vertical",
            JunctionOrientation::Unclassified => "unclassified",
        }
    }
}

/// Corner between run `index` and run `index + 1` of chain `chain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Junction {
    pub chain: usize,
    pub index: usize,
    /// Grid corner shared by the two pixels on either side, in corner
    /// coordinates (pixel `(x, y)` spans `[x, x + 1] x [y, y + 1]`).
    pub corner: PixelCoord,
    pub s1: usize,
    pub s2: usize,
    pub orientation: JunctionOrientation,
    pub l_max: usize,
    pub moved: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WavingReport {
    /// Sweeps run, including the final one that changed nothing.
    pub sweeps: usize,
    /// Every junction, with its state after the last sweep.
    pub junctions: Vec<Junction>,
}

impl WavingReport {
    /// One line per junction:
    /// `junction chain=<c> index=<i> corner=<x>,<y> s1=.. s2=.. orientation=.. l_max=.. moved=..`
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for j in &self.junctions {
            let _ = writeln!(
                out,
                "junction chain={} index={} corner={},{} s1={} s2={} orientation={} l_max={} moved={}",
                j.chain,
                j.index,
                j.corner.x,
                j.corner.y,
                j.s1,
                j.s2,
                j.orientation.label(),
                j.l_max,
                j.moved
            );
        }
        out
    }
}

fn corner_between(a: PixelCoord, b: PixelCoord) -> PixelCoord {
    PixelCoord::new((a.x + b.x + 1).div_euclid(2), (a.y + b.y + 1).div_euclid(2))
}

fn offset(p: PixelCoord, d: (i64, i64), k: i64) -> PixelCoord {
    PixelCoord::new(p.x + k * d.0, p.y + k * d.1)
}

struct State {
    chain: usize,
    index: usize,
    orientation: JunctionOrientation,
    dir: (i64, i64),
    l_max: usize,
    moved: usize,
}

/// Classifies the junction between runs `a` and `b`. Movable junctions
/// join a single pixel to a longer axis run, and the step between the runs
/// goes sideways by one pixel without going backwards along the run axis.
fn classify(a: &Run, b: &Run) -> Option<(JunctionOrientation, (i64, i64))> {
    let long = match (a.len, b.len) {
        (1, 1) => return None,
        (1, _) => b,
        (_, 1) => a,
        _ => return None,
    };
    let d = long.dir?;
    let (sx, sy) = (b.start.x - a.end().x, b.start.y - a.end().y);
    let (along, across) = if d.1 == 0 {
        (sx * d.0, sy)
    } else {
        (sy * d.1, sx)
    };
    if !(along == 0 || along == 1) || across.abs() != 1 {
        return None;
    }
    let orientation = if d.1 == 0 {
        JunctionOrientation::Horizontal
    } else {
        JunctionOrientation::Vertical
    };
    Some((orientation, d))
}

/// Tries one move at the junction after `runs[j]`. Returns true when a
/// pixel was moved.
fn try_move(mask: &mut EdgeMask, runs: &mut [Run], j: usize, d: (i64, i64)) -> bool {
    let (a, b) = (runs[j], runs[j + 1]);
    let a_longer = a.len > b.len;
    // the two pixels the moved pixel stays linked to
    let (old, new, anchors) = if a_longer {
        if b.dir.is_some_and(|bd| bd != d) {
            return false;
        }
        (
            a.end(),
            offset(b.start, d, -1),
            [offset(a.end(), d, -1), b.start],
        )
    } else {
        if a.dir.is_some_and(|ad| ad != d) {
            return false;
        }
        (
            b.start,
            offset(a.end(), d, 1),
            [a.end(), offset(b.start, d, 1)],
        )
    };
    if !mask.contains(new) || mask.at(new) {
        return false;
    }
    if !anchors.iter().all(|&q| q.is_8_adjacent(new)) {
        return false;
    }
    if !mask.neighbors8(old).all(|q| anchors.contains(&q)) {
        return false;
    }
    if !mask
        .neighbors8(new)
        .all(|q| q == old || anchors.contains(&q))
    {
        return false;
    }
    mask.set_at(old, false);
    mask.set_at(new, true);
    if a_longer {
        runs[j].len -= 1;
        runs[j + 1] = Run {
            start: new,
            len: b.len + 1,
            dir: Some(d),
        };
    } else {
        runs[j] = Run {
            start: a.start,
            len: a.len + 1,
            dir: Some(d),
        };
        runs[j + 1] = Run {
            start: offset(b.start, d, 1),
            len: b.len - 1,
            dir: b.dir,
        };
    }
    true
}

pub fn reduce_waving(mask: &EdgeMask, cfg: &CleaningConfig) -> EdgeMask {
    reduce_waving_detailed(mask, cfg).0
}

/// Balances staircase junctions and reports every junction's final state.
///
/// Junctions are found and classified once, and each movable junction gets
/// its budget from the initial run lengths. Sweeps then visit junctions in
/// chain order and position along the chain; a junction moves one pixel
/// per sweep while its runs differ by more than one and it has budget left.
/// A move that would touch any other edge pixel is skipped. Sweeps stop
/// after one that changes nothing, or after `cfg.n_w` sweeps.
pub fn reduce_waving_detailed(mask: &EdgeMask, cfg: &CleaningConfig) -> (EdgeMask, WavingReport) {
    let mut out = mask.clone();
    let mut runs: Vec<Vec<Run>> = trace_chains(mask).iter().map(|c| c.runs()).collect();

    let mut states = Vec::new();
    for (c, rs) in runs.iter().enumerate() {
        for j in 0..rs.len().saturating_sub(1) {
            let (orientation, dir) =
                classify(&rs[j], &rs[j + 1]).unwrap_or((JunctionOrientation::Unclassified, (0, 0)));
            let l_max = match orientation {
                JunctionOrientation::Unclassified => 0,
                _ => junction_move_limit(rs[j].len, rs[j + 1].len, cfg.l1, cfg.l2),
            };
            states.push(State {
                chain: c,
                index: j,
                orientation,
                dir,
                l_max,
                moved: 0,
            });
        }
    }

    let mut sweeps = 0;
    while sweeps < cfg.n_w {
        sweeps += 1;
        let mut changed = false;
        for st in states.iter_mut() {
            if st.orientation == JunctionOrientation::Unclassified || st.moved >= st.l_max {
                continue;
            }
            let rs = &mut runs[st.chain];
            let (s1, s2) = (rs[st.index].len, rs[st.index + 1].len);
            if s1.abs_diff(s2) <= 1 {
                continue;
            }
            if try_move(&mut out, rs, st.index, st.dir) {
                st.moved += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let junctions = states
        .iter()
        .map(|st| {
            let (a, b) = (runs[st.chain][st.index], runs[st.chain][st.index + 1]);
            Junction {
                chain: st.chain,
                index: st.index,
                corner: corner_between(a.end(), b.start),
                s1: a.len,
                s2: b.len,
                orientation: st.orientation,
                l_max: st.l_max,
                moved: st.moved,
            }
        })
        .collect();
    (out, WavingReport { sweeps, junctions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> CleaningConfig {
        CleaningConfig::default()
    }

    #[test]
    fn move_limit_examples() {
        assert_eq!(junction_move_limit(5, 1, 3, 1), 4);
        assert_eq!(junction_move_limit(1, 5, 3, 1), 4);
        assert_eq!(junction_move_limit(3, 3, 3, 1), 3);
        assert_eq!(junction_move_limit(1, 1, 3, 1), 1);
    }

    #[test]
    fn five_one_balances_to_three_three() {
        let m = EdgeMask::from_ascii(&[
            "#####...", //
            ".....#..", "........",
        ]);
        let (out, rep) = reduce_waving_detailed(&m, &cfg());
        assert_eq!(out.to_ascii(), vec!["###.....", "...###..", "........"]);
        assert_eq!(rep.junctions.len(), 1);
        let j = &rep.junctions[0];
        assert_eq!((j.s1, j.s2, j.moved, j.l_max), (3, 3, 2, 4));
        assert_eq!(j.orientation, JunctionOrientation::Horizontal);
        assert_eq!(j.corner, PixelCoord::new(3, 1));
        assert_eq!(rep.sweeps, 3);
    }

    #[test]
    fn two_one_is_stable() {
        let m = EdgeMask::from_ascii(&["##..", "..#.", "...."]);
        let (out, rep) = reduce_waving_detailed(&m, &cfg());
        assert_eq!(out, m);
        assert_eq!(rep.junctions[0].moved, 0);
        assert_eq!(rep.sweeps, 1);
    }

    #[test]
    fn balanced_staircase_unchanged() {
        let m = EdgeMask::from_ascii(&[
            "###.........",
            "...###......",
            "......###...",
            ".........###",
        ]);
        let (out, rep) = reduce_waving_detailed(&m, &cfg());
        assert_eq!(out, m);
        assert_eq!(rep.sweeps, 1);
        assert!(rep
            .junctions
            .iter()
            .all(|j| j.orientation == JunctionOrientation::Unclassified));
    }

    #[test]
    fn vertical_junction_moves() {
        let m = EdgeMask::from_ascii(&["#.", "#.", "#.", "#.", "#.", ".#"]);
        let (out, rep) = reduce_waving_detailed(&m, &cfg());
        assert_eq!(out.count(), m.count());
        assert_eq!(rep.junctions[0].orientation, JunctionOrientation::Vertical);
        assert_eq!((rep.junctions[0].s1, rep.junctions[0].s2), (3, 3));
        assert_eq!(out.to_ascii(), vec!["#.", "#.", "#.", ".#", ".#", ".#"]);
    }

    #[test]
    fn blocked_move_is_skipped() {
        // a stray pixel under the target position blocks the move
        let m = EdgeMask::from_ascii(&["#####...", ".....#..", "...#...."]);
        let (out, rep) = reduce_waving_detailed(&m, &cfg());
        assert_eq!(out, m);
        assert!(rep.junctions.iter().all(|j| j.moved == 0));
    }

    #[test]
    fn budget_is_respected() {
        let m = EdgeMask::from_ascii(&["############...", "............#.."]);
        let (out, rep) = reduce_waving_detailed(&m, &cfg());
        let j = &rep.junctions[0];
        assert_eq!(j.l_max, 4);
        assert_eq!(j.moved, 4);
        assert_eq!((j.s1, j.s2), (8, 5));
        assert_eq!(out.count(), m.count());
    }

    #[test]
    fn dump_has_one_line_per_junction() {
        let m = EdgeMask::from_ascii(&["#####...", ".....#..", "........"]);
        let (_, rep) = reduce_waving_detailed(&m, &cfg());
        let d = rep.dump();
        assert_eq!(d.lines().count(), 1);
        assert!(d.starts_with(
            "junction chain=0 index=0 corner=3,1 s1=3 s2=3 orientation=horizontal l_max=4 moved=2"
        ));
    }
}
