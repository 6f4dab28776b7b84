use beamtrack_demo::{curve_view, drop_view, pattern_samples};

#[test]
fn pattern_has_main_lobe_around_zero() {
    let g = pattern_samples(30.0, 0.01, 360).unwrap();
    assert_eq!(g.len(), 360);
    // Sample 180 is offset 0; sample 0 is offset -π.
    assert!(g[180] > 10.0);
    assert!((g[0] - 0.01).abs() < 1e-12);
    let main = g.iter().filter(|&&x| x > 1.0).count();
    assert!((29..=31).contains(&main), "{main} samples in main lobe");
}

#[test]
fn pattern_rejects_bad_side_lobe() {
    assert!(pattern_samples(30.0, 1.5, 16).is_err());
}

#[test]
fn drop_view_is_deterministic_and_complete() {
    let a = serde_json::to_string(&drop_view(7, 10, 10.0, 28.0, 3.0).unwrap()).unwrap();
    let b = serde_json::to_string(&drop_view(7, 10, 10.0, 28.0, 3.0).unwrap()).unwrap();
    assert_eq!(a, b);

    let v = drop_view(7, 10, 10.0, 28.0, 3.0).unwrap();
    assert_eq!(v.ues.len(), 10);
    assert_eq!(v.decisions.len(), 4);
    let labels: Vec<_> = v.decisions.iter().map(|d| d.mechanism).collect();
    assert_eq!(labels, ["TRBT", "WoBT", "MNBT", "MTBT"]);
    for d in &v.decisions {
        assert!((0.0..=1.0).contains(&d.handoff_prob));
        if d.mechanism != "WoBT" {
            assert_eq!(d.window.len(), d.covered);
        }
    }
    let trbt = &v.decisions[0];
    assert!(v.decisions.iter().all(|d| d.tr <= trbt.tr + 1e-9));
}

#[test]
fn drop_view_rejects_invalid_inputs() {
    assert!(drop_view(1, 0, 10.0, 28.0, 3.0).is_err());
    assert!(drop_view(1, 5, -10.0, 28.0, 3.0).is_err());
}

#[test]
fn curve_view_shapes() {
    let c = curve_view(28.0, 10.0, 20, 3).unwrap();
    assert_eq!(c.m, [1, 5, 10, 15, 20, 25, 30]);
    assert_eq!(c.series.len(), 4);
    for (_, ys) in &c.series {
        assert_eq!(ys.len(), c.m.len());
        assert!(ys.iter().all(|y| y.is_finite() && *y >= 0.0));
    }
}
