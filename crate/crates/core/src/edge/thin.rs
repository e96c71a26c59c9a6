//! Two-subiteration thinning to 8-connected, one pixel wide curves.
//!
//! Each subiteration marks boundary pixels on one pair of sides (south/east,
//! then north/west) like Zhang-Suen, but the removal test is the exact
//! 8-connectivity simple-point test instead of the crossing number, and
//! marked pixels are removed one at a time in raster order with the test
//! repeated against the current mask. Removing only simple points keeps the
//! number of 8-connected components and holes unchanged; requiring two or
//! more neighbors keeps line ends in place.

use std::sync::OnceLock;

use super::mask::{EdgeMask, NEIGHBORS8};
use crate::raster::PixelCoord;

/// 8-bit neighborhood code, bit `k` set when `NEIGHBORS8[k]` is an edge.
fn neighborhood(mask: &EdgeMask, p: PixelCoord) -> u8 {
    NEIGHBORS8
        .iter()
        .enumerate()
        .fold(0u8, |acc, (k, &(dx, dy))| {
            if mask.at(PixelCoord::new(p.x + dx, p.y + dy)) {
                acc | (1 << k)
            } else {
                acc
            }
        })
}

/// Whether removing the center of neighborhood `code` preserves the local
/// topology: exactly one 8-component of edge neighbors and exactly one
/// 4-component of background neighbors touching a 4-neighbor.
fn compute_simple(code: u8) -> bool {
    let set = |k: usize| code & (1 << k) != 0;
    let pos = |k: usize| NEIGHBORS8[k];
    let adj8 = |a: usize, b: usize| {
        let (pa, pb) = (pos(a), pos(b));
        (pa.0 - pb.0).abs() <= 1 && (pa.1 - pb.1).abs() <= 1
    };
    let adj4 = |a: usize, b: usize| {
        let (pa, pb) = (pos(a), pos(b));
        (pa.0 - pb.0).abs() + (pa.1 - pb.1).abs() == 1
    };
    let components = |members: &[usize], adj: &dyn Fn(usize, usize) -> bool| -> Vec<Vec<usize>> {
        let mut seen = [false; 8];
        let mut out = Vec::new();
        for &start in members {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < comp.len() {
                let cur = comp[i];
                for &m in members {
                    if !seen[m] && adj(cur, m) {
                        seen[m] = true;
                        comp.push(m);
                    }
                }
                i += 1;
            }
            out.push(comp);
        }
        out
    };
    let fg: Vec<usize> = (0..8).filter(|&k| set(k)).collect();
    let bg: Vec<usize> = (0..8).filter(|&k| !set(k)).collect();
    let t8 = components(&fg, &adj8).len();
    // even ring indices are the 4-neighbors of the center
    let t4 = components(&bg, &adj4)
        .iter()
        .filter(|c| c.iter().any(|k| k % 2 == 0))
        .count();
    t8 == 1 && t4 == 1
}

fn simple_table() -> &'static [bool; 256] {
    static TABLE: OnceLock<[bool; 256]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [false; 256];
        for (code, slot) in t.iter_mut().enumerate() {
            *slot = compute_simple(code as u8);
        }
        t
    })
}

/// True when `p` can be removed without changing 8-connectivity.
pub fn is_simple(mask: &EdgeMask, p: PixelCoord) -> bool {
    simple_table()[neighborhood(mask, p) as usize]
}

const N: u8 = 1 << 0;
const E: u8 = 1 << 2;
const S: u8 = 1 << 4;
const W: u8 = 1 << 6;

fn removable(mask: &EdgeMask, p: PixelCoord, first: bool) -> bool {
    let code = neighborhood(mask, p);
    if code.count_ones() < 2 || !simple_table()[code as usize] {
        return false;
    }
    let all = |bits: u8| code & bits == bits;
    if first {
        !all(N | E | S) && !all(E | S | W)
    } else {
        !all(N | E | W) && !all(N | S | W)
    }
}

pub fn thin(mask: &EdgeMask) -> EdgeMask {
    let mut out = mask.clone();
    loop {
        let mut changed = false;
        for first in [true, false] {
            let marked: Vec<PixelCoord> = out
                .pixels()
                .filter(|&p| removable(&out, p, first))
                .collect();
            for p in marked {
                if removable(&out, p, first) {
                    out.set_at(p, false);
                    changed = true;
                }
            }
        }
        if !changed {
            return out;
        }
    }
}
