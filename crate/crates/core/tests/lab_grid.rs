use std::time::Instant;

use edgerec::imgcore::{rgb_to_lab8, LabConstants, RgbImage};

#[test]
fn lab8_matches_high_precision_grid() {
    let csv = include_str!("data/lab_grid.csv");
    let start = Instant::now();
    let mut rows = Vec::new();
    for line in csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let n = |i: usize| f[i].parse::<u8>().unwrap();
        rows.push(([n(0), n(1), n(2)], [n(3), n(4), n(5)]));
    }
    assert_eq!(rows.len(), 17 * 17 * 17);
    let img = RgbImage::new(1, rows.len(), rows.iter().flat_map(|r| r.0).collect()).unwrap();
    let lab = rgb_to_lab8(&img, &LabConstants::default());
    let mut worst = 0;
    for (i, (rgb, expected)) in rows.iter().enumerate() {
        let got = lab.pixel(0, i);
        for c in 0..3 {
            let d = (i32::from(got[c]) - i32::from(expected[c])).abs();
            assert!(d <= 1, "{rgb:?}: got {got:?}, oracle {expected:?}");
            worst = worst.max(d);
        }
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
    eprintln!("max 8-bit deviation {worst}");
}
