use num_complex::Complex64;

use twg_core::hyperbolic::{
    angle_along_twist, twist, Axis, GeometricEngine, Holonomy, HolonomyConfig, Kind, Mobius,
};
use twg_core::words::{enumerate_undirected, parse_letters, CyclicWord};
use twg_core::{Error, LinComb, UndirectedClass};

fn u(s: &str) -> UndirectedClass {
    s.parse().unwrap()
}

fn cyc(s: &str) -> CyclicWord {
    s.parse().unwrap()
}

fn ev(h: &Holonomy, s: &str) -> Mobius {
    h.evaluate(&parse_letters(s).unwrap())
}

fn lin(terms: &[(&str, i64)]) -> LinComb<UndirectedClass> {
    terms.iter().map(|&(s, c)| (u(s), c)).collect()
}

#[test]
fn evaluation() {
    let h = Holonomy::punctured_torus();
    assert_eq!(ev(&h, ""), Mobius::IDENTITY);
    assert!((ev(&h, "a").trace() - 3.0).abs() < 1e-12);
    assert!((ev(&h, "abAB").trace() + 2.0).abs() < 1e-9);
}

#[test]
fn translation_lengths() {
    let m = Mobius::new(1.0, 1.0, 1.0, 2.0).unwrap();
    let l = m.translation_length().unwrap();
    assert!((l - 2.0 * 1.5f64.acosh()).abs() < 1e-12);
    assert!((l - 1.9248473).abs() < 1e-7);
    assert!(Mobius::new(1.0, 1.0, 0.0, 1.0).unwrap().translation_length().is_err());
    assert!(Mobius::new(-1.0, 1.0, 0.0, -1.0).unwrap().translation_length().is_err());
    for k in 1..=6 {
        let lk = m.pow(k).translation_length().unwrap();
        assert!((lk - k as f64 * l).abs() < 1e-9, "k={k}");
    }
}

#[test]
fn axes() {
    let ax = Mobius::diagonal(3.0).axis().unwrap();
    assert_eq!(ax.repelling, 0.0);
    assert!(ax.attracting.is_infinite());
    let ax = |p: f64, q: f64| Axis {
        repelling: p,
        attracting: q,
        length: 1.0,
    };
    assert!(ax(0.0, f64::INFINITY).crosses(&ax(-1.0, 1.0)).unwrap());
    assert!(!ax(0.0, 1.0).crosses(&ax(2.0, 3.0)).unwrap());
    assert!(!ax(0.0, 3.0).crosses(&ax(1.0, 2.0)).unwrap());
}

#[test]
fn crossing_counts() {
    let p = GeometricEngine::new(Holonomy::pants());
    assert_eq!(p.crossings(&cyc("aab"), &cyc("aB")).unwrap().crossings.len(), 2);
    assert_eq!(p.crossings(&cyc("a"), &cyc("b")).unwrap().crossings.len(), 0);
    let t = GeometricEngine::new(Holonomy::punctured_torus());
    assert_eq!(t.crossings(&cyc("abAb"), &cyc("aB")).unwrap().crossings.len(), 2);
    for c in t.crossings(&cyc("abAb"), &cyc("aB")).unwrap().crossings {
        assert!(c.phi > 1e-6 && c.phi < std::f64::consts::PI - 1e-6);
        let lx = ev(t.holonomy(), "abAb").translation_length().unwrap();
        assert!(c.s >= 0.0 && c.s < lx);
    }
}

#[test]
fn geometric_brackets() {
    let p = GeometricEngine::new(Holonomy::pants());
    assert_eq!(p.twg(&u("aab"), &u("aB")).unwrap(), lin(&[("baaBa", 1), ("Baaba", -1)]));
    let t = GeometricEngine::new(Holonomy::punctured_torus());
    assert_eq!(
        t.twg(&u("abAb"), &u("aB")).unwrap(),
        lin(&[("aBBB", 1), ("ABaBAb", -1), ("AB", -1), ("aBABaB", 1)])
    );
    for x in enumerate_undirected(2, 4).into_iter().filter(|c| !c.is_trivial()) {
        assert!(t.goldman(&x.lift(), &x.lift()).unwrap().is_zero(), "{x}");
        assert!(p.goldman(&x.lift(), &x.lift()).unwrap().is_zero(), "{x}");
    }
}

#[test]
fn cosh_identities_on_examples() {
    let cases = [
        (Holonomy::pants(), "aab", "aB"),
        (Holonomy::pants(), "aaB", "aB"),
        (Holonomy::punctured_torus(), "abAb", "aB"),
    ];
    for (rho, x, y) in cases {
        let g = GeometricEngine::new(rho);
        for c in g.crossings(&cyc(x), &cyc(y)).unwrap().crossings {
            let (r0, ri) = g.cosh_residuals(&cyc(x), &cyc(y), &c).unwrap();
            assert!(r0 < 1e-8 && ri < 1e-8, "{x} {y}: {r0} {ri}");
        }
    }
    let base = Holonomy::punctured_torus();
    for t in [-1.0, 0.5, 2.0] {
        let g = GeometricEngine::new(twist(&base, t).unwrap());
        for c in g.crossings(&cyc("abAb"), &cyc("aB")).unwrap().crossings {
            let (r0, ri) = g.cosh_residuals(&cyc("abAb"), &cyc("aB"), &c).unwrap();
            assert!(r0 < 1e-8 && ri < 1e-8, "t={t}: {r0} {ri}");
        }
    }
}

#[test]
fn right_angle_gives_equal_smoothings() {
    // Axes (0, inf) and (-1, 1) are orthogonal; traces 3 and 3.
    let lam = (3.0 + 5f64.sqrt()) / 2.0;
    let cfg = HolonomyConfig {
        surface: "torus1".into(),
        matrices: [
            ("a".to_string(), [[lam, 0.0], [0.0, 1.0 / lam]]),
            ("b".to_string(), [[1.5, 1.25f64.sqrt()], [1.25f64.sqrt(), 1.5]]),
        ]
        .into_iter()
        .collect(),
        peripheral_checks: Vec::new(),
    };
    let g = GeometricEngine::new(Holonomy::from_config(&cfg).unwrap());
    let cs = g.crossings(&cyc("a"), &cyc("b")).unwrap().crossings;
    assert_eq!(cs.len(), 1);
    assert!((cs[0].phi - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    let zero = ev(g.holonomy(), "ab").trace().abs();
    let inf = ev(g.holonomy(), "aB").trace().abs();
    assert!((zero - inf).abs() < 1e-9);
    let (r0, ri) = g.cosh_residuals(&cyc("a"), &cyc("b"), &cs[0]).unwrap();
    assert!(r0 < 1e-12 && ri < 1e-12);
}

#[test]
fn twist_invariances() {
    let rho = Holonomy::punctured_torus();
    let same = twist(&rho, 0.0).unwrap();
    for (m, n) in same.generators().iter().zip(rho.generators()) {
        for (x, y) in m.rows().iter().flatten().zip(n.rows().iter().flatten()) {
            assert!((x - y).abs() < 1e-12);
        }
    }
    let la = ev(&rho, "a").translation_length().unwrap();
    let mut lbs = Vec::new();
    for t in [-2.0, -1.0, 0.3, 1.0, 5.0] {
        let r = twist(&rho, t).unwrap();
        assert!((ev(&r, "a").translation_length().unwrap() - la).abs() < 1e-9);
        assert!((ev(&r, "abAB").trace() + 2.0).abs() < 1e-9, "t={t}");
        lbs.push(ev(&r, "b").translation_length().unwrap());
    }
    assert!(lbs.windows(2).all(|w| (w[0] - w[1]).abs() > 1e-3));
    assert!(matches!(twist(&Holonomy::pants(), 1.0), Err(Error::Unsupported(_))));
}

#[test]
fn angles_along_twist() {
    let rho = Holonomy::punctured_torus();
    let g = GeometricEngine::new(rho.clone());
    let c = &g.crossings(&cyc("a"), &cyc("b")).unwrap().crossings[0];
    let angles = angle_along_twist(&rho, &cyc("b"), &c.witness, &[-1.0, 0.0, 1.0, 2.0]).unwrap();
    assert!(angles.windows(2).all(|w| w[1] < w[0]), "{angles:?}");
    let flat = angle_along_twist(&rho, &cyc("b"), &c.witness, &[0.7, 0.7, 0.7]).unwrap();
    assert!(flat.iter().all(|a| (a - flat[0]).abs() < 1e-12));

    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let cs = g.crossings(&cyc("a"), &cyc("abAb")).unwrap().crossings;
    assert_eq!(cs.len(), 2);
    let p = angle_along_twist(&rho, &cyc("abAb"), &cs[0].witness, &grid).unwrap();
    let q = angle_along_twist(&rho, &cyc("abAb"), &cs[1].witness, &grid).unwrap();
    let sums: Vec<f64> = p.iter().zip(&q).map(|(a, b)| a + b).collect();
    assert!(sums.windows(2).any(|w| (w[1] - w[0]).abs() > 1e-3), "{sums:?}");
}

#[test]
fn intersection_and_self_crossings() {
    let p = GeometricEngine::new(Holonomy::pants());
    assert_eq!(p.self_crossings(&u("aab")).unwrap(), 1);
    assert_eq!(p.intersection_number(&u("aab"), &u("aB")).unwrap(), 2);
    let t = GeometricEngine::new(Holonomy::punctured_torus());
    assert_eq!(t.intersection_number(&u("a"), &u("b")).unwrap(), 1);
    assert_eq!(t.intersection_number(&u("aa"), &u("bbb")).unwrap(), 6);
    assert_eq!(t.self_crossings(&u("aB")).unwrap(), 0);
}

#[test]
fn crossing_sets_are_stable() {
    let t = GeometricEngine::new(Holonomy::punctured_torus());
    for x in ["a", "abAb", "aab", "abb"] {
        for y in ["b", "aB", "abAb"] {
            let set = t.crossings_certified(&cyc(x), &cyc(y)).unwrap();
            let wider = t.clone().with_extra_radius(4).crossings(&cyc(x), &cyc(y)).unwrap();
            assert_eq!(set.crossings.len(), wider.crossings.len(), "{x} {y}");
        }
    }
}

#[test]
fn puncture_has_no_geodesic() {
    let t = GeometricEngine::new(Holonomy::punctured_torus());
    assert_eq!(ev(t.holonomy(), "abAB").kind(), Kind::Parabolic);
    assert!(t.twg(&u("abAB"), &u("aab")).unwrap().is_zero());
}

#[test]
fn holonomy_config_file() {
    let cfg: HolonomyConfig = serde_json::from_str(
        r#"{"surface": "torus1",
            "matrices": {"a": [[1, 1], [1, 2]], "b": [[1, -1], [-1, 2]]},
            "peripheral_checks": [{"word": "abAB", "type": "parabolic", "trace": -2}]}"#,
    )
    .unwrap();
    let h = Holonomy::from_config(&cfg).unwrap();
    let g = GeometricEngine::new(h);
    assert_eq!(g.twg(&u("abAb"), &u("aB")).unwrap().multiplicity(), 4);

    let bad: HolonomyConfig = serde_json::from_str(
        r#"{"surface": "torus1",
            "matrices": {"a": [[2, 1], [1, 1]], "b": [[2, 1], [1, 1]]},
            "peripheral_checks": [{"word": "abAB", "type": "parabolic", "trace": null}]}"#,
    )
    .unwrap();
    assert!(Holonomy::from_config(&bad).is_err());
}

#[test]
fn points_lie_on_both_axes() {
    let g = GeometricEngine::new(Holonomy::punctured_torus());
    for c in g.crossings(&cyc("abAb"), &cyc("aB")).unwrap().crossings {
        let mx = ev(g.holonomy(), "abAb");
        let moved = mx.apply(c.point);
        let d = twg_core::hyperbolic::mobius::distance(c.point, moved);
        assert!((d - mx.translation_length().unwrap()).abs() < 1e-8);
        assert!(c.point.im > 0.0 && c.point != Complex64::new(0.0, 0.0));
    }
}
