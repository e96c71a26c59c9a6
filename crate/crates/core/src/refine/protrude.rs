use super::chain::m_neighbors;
use crate::edge::mask::EdgeMask;
use crate::raster::PixelCoord;

/// Puts single protruding pixels back onto their edge.
///
/// Two patterns are handled, both only at pixels with exactly two linked
/// (m-adjacent) neighbors:
///
/// * corner jog: the two neighbors touch diagonally, so the pixel is the
///   right-angle corner of a three pixel triangle and is dropped;
/// * one-pixel bump: the neighbors sit in the same row (or column) two
///   pixels apart and one row (column) away, so the pixel moves into the gap
///   between them, provided nothing else touches the gap.
///
/// Passes repeat until nothing changes, so the result is a fixed point.
pub fn remove_protruding_pixels(mask: &EdgeMask) -> EdgeMask {
    let mut out = mask.clone();
    // each pass removes a pixel or straightens a bump; bound the loop anyway
    let max_passes = mask.count() + 1;
    for _ in 0..max_passes {
        let mut changed = false;
        let pixels: Vec<PixelCoord> = out.pixels().collect();
        for p in pixels {
            if !out.at(p) {
                continue;
            }
            let nb: Vec<PixelCoord> = m_neighbors(&out, p).collect();
            if nb.len() != 2 {
                continue;
            }
            let (a, b) = (nb[0], nb[1]);
            let (dx, dy) = ((a.x - b.x).abs(), (a.y - b.y).abs());
            if dx == 1 && dy == 1 {
                out.set_at(p, false);
                changed = true;
            } else if let Some(target) = bump_target(p, a, b) {
                if out.contains(target)
                    && !out.at(target)
                    && out.neighbors8(target).all(|q| q == p || q == a || q == b)
                {
                    out.set_at(p, false);
                    out.set_at(target, true);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    out
}

fn bump_target(p: PixelCoord, a: PixelCoord, b: PixelCoord) -> Option<PixelCoord> {
    if a.y == b.y && (a.x - b.x).abs() == 2 && (a.y - p.y).abs() == 1 && p.x == (a.x + b.x) / 2 {
        Some(PixelCoord::new(p.x, a.y))
    } else if a.x == b.x
        && (a.y - b.y).abs() == 2
        && (a.x - p.x).abs() == 1
        && p.y == (a.y + b.y) / 2
    {
        Some(PixelCoord::new(a.x, p.y))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn straight_run_unchanged() {
        let m = EdgeMask::from_ascii(&[".....", "#####", "....."]);
        assert_eq!(remove_protruding_pixels(&m), m);
    }

    #[test]
    fn corner_jog_removed() {
        let m = EdgeMask::from_ascii(&["##.", ".#.", "..."]);
        let out = remove_protruding_pixels(&m);
        assert_eq!(out.to_ascii(), vec!["#..", ".#.", "..."]);
    }

    #[test]
    fn jog_inside_a_line() {
        let m = EdgeMask::from_ascii(&["###....", "..####."]);
        let out = remove_protruding_pixels(&m);
        assert_eq!(out.to_ascii(), vec!["##.....", "..####."]);
    }

    #[test]
    fn bump_moved_back() {
        let m = EdgeMask::from_ascii(&[".......", "...#...", "###.###", "......."]);
        let out = remove_protruding_pixels(&m);
        assert_eq!(
            out.to_ascii(),
            vec![".......", ".......", "#######", "......."]
        );
    }

    #[test]
    fn vertical_bump_moved_back() {
        let m = EdgeMask::from_ascii(&[".#.", ".#.", "#..", ".#.", ".#."]);
        let out = remove_protruding_pixels(&m);
        assert_eq!(out.to_ascii(), vec![".#.", ".#.", ".#.", ".#.", ".#."]);
    }
}
