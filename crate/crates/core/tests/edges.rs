use dealias_core::edge::{detect_edges, thin, EdgeMask, PeakinessConfig, SOBEL_NORM};
use dealias_core::raster::PixelCoord;
use dealias_core::refine::{
    clean_short_branches, is_branch, m_neighbors, reduce_waving, refine_edges,
    remove_protruding_pixels, trace_chains,
};
use dealias_core::{
    generate_synthetic, CleaningConfig, Image, ScaleFactor, SyntheticSpec, Upsampler,
};
use proptest::prelude::*;

/// 8-connected component labels by flood fill.
fn components(mask: &EdgeMask) -> Vec<Vec<PixelCoord>> {
    let mut seen = EdgeMask::new(mask.width(), mask.height());
    let mut out = Vec::new();
    for p in mask.pixels() {
        if seen.at(p) {
            continue;
        }
        seen.set_at(p, true);
        let mut comp = vec![p];
        let mut i = 0;
        while i < comp.len() {
            let q = comp[i];
            for n in mask.neighbors8(q) {
                if !seen.at(n) {
                    seen.set_at(n, true);
                    comp.push(n);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

fn mask_strategy(max: usize) -> impl Strategy<Value = EdgeMask> {
    (4..max, 4..max).prop_flat_map(|(w, h)| {
        proptest::collection::vec(proptest::bool::weighted(0.45), w * h)
            .prop_map(move |bits| EdgeMask::from_bits(w, h, bits).unwrap())
    })
}

fn thin_curve_strategy() -> impl Strategy<Value = EdgeMask> {
    proptest::collection::vec(0usize..8, 10..120).prop_map(|steps| {
        const DIRS: [(i64, i64); 8] = [
            (1, 0),
            (1, 1),
            (0, 1),
            (1, -1),
            (1, 0),
            (1, 1),
            (0, 1),
            (1, 1),
        ];
        let mut p = PixelCoord::new(1, 40);
        let mut px = vec![p];
        for s in steps {
            p = PixelCoord::new(p.x + DIRS[s].0, (p.y + DIRS[s].1).clamp(1, 78));
            px.push(p);
        }
        thin(&EdgeMask::from_pixels(130, 80, px))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn thinning_keeps_components_and_is_idempotent(m in mask_strategy(24)) {
        let t = thin(&m);
        prop_assert!(t.pixels().all(|p| m.at(p)));
        prop_assert_eq!(components(&t).len(), components(&m).len());
        prop_assert_eq!(thin(&t), t);
    }

    #[test]
    fn protruding_fix_is_idempotent_and_keeps_components(m in thin_curve_strategy()) {
        let once = remove_protruding_pixels(&m);
        prop_assert_eq!(remove_protruding_pixels(&once), once.clone());
        prop_assert_eq!(components(&once).len(), components(&m).len());
    }

    #[test]
    fn cleaning_leaves_no_short_attached_segment(m in thin_curve_strategy()) {
        let out = clean_short_branches(&m, 4);
        for c in trace_chains(&out) {
            let attached = c.pixels.iter().any(|&p| m_neighbors(&out, p).any(|q| is_branch(&out, q)));
            if attached {
                prop_assert!(c.len() >= 4);
            }
        }
    }

    #[test]
    fn waving_keeps_pixel_count_and_components(m in thin_curve_strategy()) {
        let out = reduce_waving(&m, &CleaningConfig::default());
        prop_assert_eq!(out.count(), m.count());
        prop_assert_eq!(components(&out).len(), components(&m).len());
    }
}

#[test]
fn detected_edge_follows_the_synthetic_line() {
    let spec = SyntheticSpec::default();
    let (low, line) = generate_synthetic(&spec).unwrap();
    let up = Upsampler::CatmullRom
        .apply(&low, ScaleFactor::new(4).unwrap())
        .unwrap();
    let det = detect_edges(&up, &PeakinessConfig::default(), SOBEL_NORM).unwrap();
    let line = line.scaled(4.0);
    let edges = refine_edges(&det.thinned, &CleaningConfig::default())
        .unwrap()
        .balanced;
    assert!(edges.count() > 200);
    // every cleaned edge pixel center lies within about a pixel of the true edge
    for p in edges.pixels() {
        let d = line.distance(p.x as f64 + 0.5, p.y as f64 + 0.5);
        assert!(d < 1.5, "{p:?} is {d} from the edge");
    }
    assert_eq!(trace_chains(&edges).len(), 1);
}

#[test]
fn mirrored_angles_find_the_same_edge() {
    let (low, _) = generate_synthetic(&SyntheticSpec {
        dx: 1.0,
        dy: 3.0,
        ..SyntheticSpec::default()
    })
    .unwrap();
    let up = Upsampler::CatmullRom
        .apply(&low, ScaleFactor::new(2).unwrap())
        .unwrap();
    let plain = detect_edges(&up, &PeakinessConfig::default(), SOBEL_NORM).unwrap();
    let cfg = PeakinessConfig {
        mirror_angles: true,
        e_min: 12,
        ..PeakinessConfig::default()
    };
    let mirrored = detect_edges(&up, &cfg, SOBEL_NORM).unwrap();
    assert!(plain.thinned.count() > 50);
    assert!(mirrored.thinned.count() > 50);
}

#[test]
fn flat_image_has_no_edges() {
    let img = Image::filled(32, 32, 3, 0.5).unwrap();
    let det = detect_edges(&img, &PeakinessConfig::default(), SOBEL_NORM).unwrap();
    assert_eq!(det.raw.count(), 0);
    assert!(det.peakiness.counts.iter().all(|&c| c == 0));
}
