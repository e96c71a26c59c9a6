use super::chain::trace_chains;
use crate::edge::mask::EdgeMask;

/// Deletes short edge segments, shortest first.
///
/// Segments are the chains between line ends and branch pixels. For
/// `k = 1 .. l_min - 1` every segment of at most `k` pixels is deleted, and
/// the segments are re-measured after each deletion round until none of
/// length `<= k` is left. Deleting small side branches first lets the edge
/// they were attached to merge back into one long segment before its own
/// length is judged.
pub fn clean_short_branches(mask: &EdgeMask, l_min: usize) -> EdgeMask {
    let mut out = mask.clone();
    for k in 1..l_min {
        loop {
            let victims: Vec<_> = trace_chains(&out)
                .into_iter()
                .filter(|c| c.len() <= k)
                .collect();
            if victims.is_empty() {
                break;
            }
            for c in victims {
                for p in c.pixels {
                    out.set_at(p, false);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::chain::{is_branch, trace_chains};

    #[test]
    fn side_branch_removed() {
        let m = EdgeMask::from_ascii(&[
            "............",
            ".##########.",
            "......#.....",
            "............",
        ]);
        let out = clean_short_branches(&m, 4);
        assert_eq!(
            out.to_ascii(),
            vec![
                "............",
                ".##########.",
                "............",
                "............"
            ]
        );
    }

    #[test]
    fn isolated_pixel_removed() {
        let m = EdgeMask::from_ascii(&["...", ".#.", "..."]);
        assert_eq!(clean_short_branches(&m, 4).count(), 0);
    }

    #[test]
    fn long_branchless_edge_unchanged() {
        let m = EdgeMask::from_ascii(&["####################"]);
        assert_eq!(clean_short_branches(&m, 4), m);
    }

    #[test]
    fn short_middle_segment_survives_after_branches_go() {
        // two 2-pixel spurs delimit a 3-pixel middle piece; removing the
        // spurs first merges the middle back into the long edge
        let m = EdgeMask::from_ascii(&[
            "..............",
            ".############.",
            ".....#...#....",
            ".....#...#....",
            "..............",
        ]);
        let out = clean_short_branches(&m, 4);
        assert_eq!(out.count(), 12);
        for x in 1..13 {
            assert!(out.get(x, 1));
        }
    }

    #[test]
    fn no_short_segment_remains() {
        let m = EdgeMask::from_ascii(&[
            "#.......#......",
            ".#.....#.......",
            "..#...#........",
            "...#.#.........",
            "....#..........",
            "....#######....",
            "....#......#...",
            "...#........#..",
        ]);
        let out = clean_short_branches(&m, 4);
        for c in trace_chains(&out) {
            let touches_branch = c
                .pixels
                .iter()
                .any(|p| crate::refine::chain::m_neighbors(&out, *p).any(|q| is_branch(&out, q)));
            if touches_branch {
                assert!(c.len() >= 4);
            }
        }
    }
}
