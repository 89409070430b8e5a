//! Procedural line-art images standing in for an evaluation corpus: dark
//! strokes on a light background, sized to a multiple of common tile sizes.

use std::f64::consts::PI;

use crate::types::GrayImage;

pub const FIXTURE_NAMES: [&str; 4] = ["rings", "house", "waves", "star"];

type Segment = ((f64, f64), (f64, f64));

fn polyline(points: &[(f64, f64)], closed: bool) -> Vec<Segment> {
    let mut segs: Vec<Segment> = points.windows(2).map(|w| (w[0], w[1])).collect();
    if closed && points.len() > 2 {
        segs.push((points[points.len() - 1], points[0]));
    }
    segs
}

fn circle(cx: f64, cy: f64, r: f64) -> Vec<Segment> {
    let pts: Vec<(f64, f64)> = (0..96)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / 96.0;
            (cx + r * a.cos(), cy + r * a.sin())
        })
        .collect();
    polyline(&pts, true)
}

fn distance(p: (f64, f64), (a, b): Segment) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt()
}

fn draw(width: usize, height: usize, segs: &[Segment], half_width: f64) -> GrayImage {
    GrayImage::from_fn(width, height, |x, y| {
        let p = (x as f64 + 0.5, y as f64 + 0.5);
        if segs.iter().any(|&s| distance(p, s) <= half_width) {
            0
        } else {
            255
        }
    })
    .expect("fixture dimensions are nonzero")
}

/// Renders the named fixture, or `None` for an unknown name.
pub fn fixture(name: &str) -> Option<GrayImage> {
    let (w, h) = (160usize, 120usize);
    let segs = match name {
        "rings" => {
            let mut s = circle(80.0, 60.0, 45.0);
            s.extend(circle(80.0, 60.0, 22.0));
            s.extend(polyline(&[(20.0, 60.0), (140.0, 60.0)], false));
            s
        }
        "house" => {
            let mut s = polyline(
                &[(40.0, 105.0), (40.0, 55.0), (120.0, 55.0), (120.0, 105.0)],
                true,
            );
            s.extend(polyline(
                &[(30.0, 60.0), (80.0, 15.0), (130.0, 60.0)],
                false,
            ));
            s.extend(polyline(
                &[(70.0, 105.0), (70.0, 75.0), (90.0, 75.0), (90.0, 105.0)],
                false,
            ));
            s
        }
        "waves" => (0..3)
            .flat_map(|k| {
                let pts: Vec<(f64, f64)> = (0..=80)
                    .map(|i| {
                        let x = 5.0 + 150.0 * i as f64 / 80.0;
                        (
                            x,
                            25.0 + 35.0 * k as f64 + 10.0 * (x / 18.0 + k as f64).sin(),
                        )
                    })
                    .collect();
                polyline(&pts, false)
            })
            .collect(),
        "star" => {
            let pts: Vec<(f64, f64)> = (0..10)
                .map(|i| {
                    let a = -PI / 2.0 + PI * i as f64 / 5.0;
                    let r = if i % 2 == 0 { 52.0 } else { 22.0 };
                    (80.0 + r * a.cos(), 62.0 + r * a.sin())
                })
                .collect();
            polyline(&pts, true)
        }
        _ => return None,
    };
    Some(draw(w, h, &segs, 1.0))
}

pub fn all() -> Vec<(String, GrayImage)> {
    FIXTURE_NAMES
        .iter()
        .map(|&n| (n.to_string(), fixture(n).expect("known fixture")))
        .collect()
}
