//! Values computed by independent reference implementations (scikit-image
//! and a separate NumPy HoG) and frozen here.

use glyphcast::eval::{ssim, SsimConfig};
use glyphcast::features::{hog, HogConfig};
use glyphcast::Tile;

mod common;
use common::{pattern_a, pattern_b, pattern_c, SSIM_A_B, SSIM_A_C};

#[test]
fn ssim_matches_reference_on_fixed_patterns() {
    let cfg = SsimConfig::default();
    let c = pattern_c();
    let ab = ssim(&pattern_a(), &pattern_b(), &cfg).unwrap();
    let ac = ssim(&pattern_a(), &c, &cfg).unwrap();
    assert!((ab - SSIM_A_B).abs() < 1e-6, "{ab}");
    assert!((ac - SSIM_A_C).abs() < 1e-6, "{ac}");
    let ba = ssim(&pattern_b(), &pattern_a(), &cfg).unwrap();
    assert!((ab - ba).abs() < 1e-12);
}

#[test]
fn hog_of_vertical_step_matches_reference() {
    let step = Tile::new(
        10,
        (0..100)
            .map(|i| if i % 10 >= 5 { 1.0 } else { 0.0 })
            .collect(),
    )
    .unwrap();
    let h = hog(&step, &HogConfig::for_tile(10)).unwrap();
    assert_eq!(h.len(), 36);
    // Reference (scikit-image, eps 1e-5): 0.99999999875 in bin 0 of each cell.
    for (i, v) in h.iter().enumerate() {
        let want = if i % 9 == 0 { 0.99999999875 } else { 0.0 };
        assert!((v - want).abs() < 1e-8, "{i}: {v}");
    }
}

#[test]
fn hog_interpolation_matches_reference() {
    let tile = Tile::new(
        10,
        (0..100)
            .map(|i| ((i % 10 * 3 + i / 10 * 7) % 10) as f64 / 9.0)
            .collect(),
    )
    .unwrap();
    #[rustfmt::skip]
    let want = [
        0.5348359799121815, 0.0, 0.0, 0.0, 0.2663188162400269, 0.2663188162400269, 0.5348359799121815, 0.5348359799121815, 0.0,
        0.5241866168401192, 0.0, 0.0, 0.0, 0.29638249962696883, 0.29638249962696883, 0.5241866168401192, 0.5241866168401192, 0.0,
        0.5218825934764177, 0.0, 0.0, 0.0, 0.3024199694730618, 0.3024199694730618, 0.5218825934764177, 0.5218825934764177, 0.0,
        0.5252659832462603, 0.0, 0.0, 0.0, 0.2918144351368113, 0.2918144351368113, 0.5262054340887143, 0.5262054340887143, 0.0,
    ];
    let h = hog(&tile, &HogConfig::for_tile(10)).unwrap();
    for (i, (a, b)) in h.iter().zip(want).enumerate() {
        assert!((a - b).abs() < 1e-12, "{i}: {a} vs {b}");
    }
}
