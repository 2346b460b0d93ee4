use blowup_calculus::*;
use graph_core::rational::{int, rat};
use graph_core::{is_isomorphic, validate_graph, DecoratedGraph, Edge, Rational, ShiftMode, Vertex, VertexId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_geometry::{polygon_chop, polygon_to_graph, DelzantPolygon};

fn s2s2() -> DecoratedGraph {
    DecoratedGraph::new(
        vec![
            Vertex::point("a", int(-3)),
            Vertex::point("b", int(-1)),
            Vertex::point("c", int(1)),
            Vertex::point("d", int(3)),
        ],
        vec![Edge::new("a", "c", 2), Edge::new("b", "d", 2)],
    )
    .unwrap()
}

fn tent() -> DecoratedGraph {
    DecoratedGraph::new(
        vec![
            Vertex::point("min", int(0)),
            Vertex::point("v1", int(1)),
            Vertex::point("v3", int(3)),
            Vertex::point("max", int(4)),
        ],
        vec![],
    )
    .unwrap()
}

/// Surface minimum of area `s`, interior point at `r`, maximum at `r + n s`.
fn hirzebruch(r: i64, s: i64, n: u64) -> DecoratedGraph {
    let mut edges = vec![];
    if n >= 2 {
        edges.push(Edge::new("p", "q", n));
    }
    DecoratedGraph::new(
        vec![
            Vertex::surface("s", int(0), int(s), 0),
            Vertex::point("p", int(r)),
            Vertex::point("q", int(r + n as i64 * s)),
        ],
        edges,
    )
    .unwrap()
}

fn ruled(a: i64, b: i64, h: i64) -> DecoratedGraph {
    DecoratedGraph::new(
        vec![Vertex::surface("lo", int(0), int(a), 0), Vertex::surface("hi", int(h), int(b), 0)],
        vec![],
    )
    .unwrap()
}

fn site(g: &DecoratedGraph, id: &str) -> BlowupSite {
    blowup_sites(g).into_iter().find(|s| s.vertex.as_str() == id).unwrap()
}

fn poly(v: &[(i64, i64)]) -> DelzantPolygon {
    DelzantPolygon::from_ints(v).unwrap()
}

fn moment(g: &DecoratedGraph, id: &str) -> Rational {
    g.moment(&VertexId::from(id)).unwrap().clone()
}

#[test]
fn site_tags() {
    let tags: Vec<BlowupCase> = blowup_sites(&s2s2()).into_iter().map(|s| s.case).collect();
    assert_eq!(
        tags,
        vec![
            BlowupCase::IsolatedMinDistinct,
            BlowupCase::Interior,
            BlowupCase::Interior,
            BlowupCase::IsolatedMaxDistinct
        ]
    );
    assert_eq!(site(&tent(), "min").case, BlowupCase::IsolatedMin11);
    assert_eq!(site(&tent(), "max").case, BlowupCase::IsolatedMax11);
    let tags: Vec<BlowupCase> = blowup_sites(&ruled(1, 1, 1)).into_iter().map(|s| s.case).collect();
    assert_eq!(tags, vec![BlowupCase::SurfaceMin, BlowupCase::SurfaceMax]);
    let wrong = BlowupSite { vertex: "a".into(), case: BlowupCase::Interior };
    assert!(matches!(blowup_symbolic(&s2s2(), &wrong), Err(BlowupError::TagMismatch { .. })));
}

#[test]
fn interior_blowup_example() {
    let g = s2s2();
    let h = blowup(&g, &site(&g, "c"), &rat(1, 2)).unwrap();
    assert_eq!(moment(&h, "c"), int(0));
    assert_eq!(moment(&h, "c.1"), rat(3, 2));
    let ks: Vec<(String, String, u64)> =
        h.edges().iter().map(|e| (e.a.to_string(), e.b.to_string(), e.weight)).collect();
    assert!(ks.contains(&("c".into(), "c.1".into(), 3)));
    assert!(ks.contains(&("a".into(), "c".into(), 2)));
    assert!(validate_graph(&h).is_valid());
    assert!(is_consistent(&h));
}

#[test]
fn extremal_blowup_examples() {
    let g = tent();
    let h = blowup(&g, &site(&g, "min"), &rat(1, 2)).unwrap();
    let v = h.vertex(&"min".into()).unwrap();
    assert_eq!(v.moment, rat(1, 2));
    assert_eq!(v.area(), Some(&rat(1, 2)));
    assert_eq!(v.genus(), Some(0));

    let g = hirzebruch(2, 1, 2);
    assert!(is_consistent(&g));
    let h = blowup(&g, &site(&g, "s"), &rat(1, 3)).unwrap();
    assert_eq!(h.vertex(&"s".into()).unwrap().area(), Some(&rat(2, 3)));
    assert_eq!(moment(&h, "s.1"), rat(1, 3));

    // An isolated maximum with weights {1, 2}.
    let h = blowup(&g, &site(&g, "q"), &rat(1, 2)).unwrap();
    assert_eq!(moment(&h, "q"), rat(7, 2));
    assert_eq!(moment(&h, "q.1"), int(3));
    assert_eq!(h.edges(), &[Edge::new("p", "q.1", 2)]);
    assert!(is_consistent(&h));
}

#[test]
fn monotonicity_examples() {
    let g = hirzebruch(2, 1, 2);
    let sb = blowup_symbolic(&g, &site(&g, "p")).unwrap();
    assert!(monotone_check(&sb, &rat(3, 4)));
    assert!(!monotone_check(&sb, &int(1)));
    assert!(!monotone_check(&sb, &int(0)));
    assert!(matches!(instantiate(&sb, &int(0)), Err(BlowupError::NonPositiveSize(_))));

    // Below vertices it is not comparable to.
    let x = polygon_to_graph(&poly(&[(0, 0), (1, 0), (2, 1), (9, 15), (1, 3), (0, 1)]));
    let min = x.min_vertex().unwrap().id.clone();
    let sb = blowup_symbolic(&x, &site(&x, min.as_str())).unwrap();
    assert!(monotone_check(&sb, &rat(1, 2)));
}

#[test]
fn max_size_examples() {
    let g = hirzebruch(2, 1, 2);
    for id in ["s", "p", "q"] {
        assert_eq!(max_size(&g, &site(&g, id)).unwrap(), MaxSize { supremum: Some(int(1)), attainable: false }, "{id}");
    }
    let g = s2s2();
    assert_eq!(max_size(&g, &site(&g, "c")).unwrap().supremum, Some(int(2)));
    let g = ruled(1, 1, 1);
    assert_eq!(max_size(&g, &site(&g, "lo")).unwrap(), MaxSize { supremum: Some(int(1)), attainable: false });
}

#[test]
fn blowdown_examples() {
    let g = s2s2();
    let h = blowup(&g, &site(&g, "c"), &rat(1, 2)).unwrap();
    let sites = blowdown_sites(&h);
    let a: Vec<&BlowdownSite> = sites.iter().filter(|s| s.pattern == Pattern::A).collect();
    assert_eq!(a.len(), 1);
    assert_eq!(a[0].lambda, rat(1, 2));
    assert_eq!(blowdown(&h, a[0]).unwrap(), g);

    let chopped = polygon_to_graph(&poly(&[(0, 0), (6, 0), (6, 5), (2, 5), (0, 3)]));
    let b: Vec<BlowdownSite> = blowdown_sites(&chopped).into_iter().filter(|s| s.pattern == Pattern::B).collect();
    assert_eq!(b.len(), 2);
    let to_max = b.iter().find(|s| s.side == Some(Side::Max)).unwrap();
    let to_min = b.iter().find(|s| s.side == Some(Side::Min)).unwrap();
    assert_eq!(to_max.lambda, int(2));
    assert_eq!(to_min.lambda, int(3));
    let rect = polygon_to_graph(&poly(&[(0, 0), (6, 0), (6, 5), (0, 5)]));
    let trap = polygon_to_graph(&poly(&[(0, 0), (9, 0), (9, 5), (5, 5)]));
    assert!(is_isomorphic(&blowdown(&chopped, to_max).unwrap(), &rect, ShiftMode::Exact).unwrap());
    assert!(is_isomorphic(&blowdown(&chopped, to_min).unwrap(), &trap, ShiftMode::Exact).unwrap());

    assert!(blowdown_sites(&tent()).is_empty());
    assert!(blowdown_sites(&s2s2()).is_empty());
    let bogus = BlowdownSite { pattern: Pattern::D, side: Some(Side::Min), vertices: vec!["a".into()], lambda: int(1) };
    assert!(matches!(blowdown(&s2s2(), &bogus), Err(BlowupError::NotASite(_))));
}

#[test]
fn reduction_examples() {
    let chopped = polygon_to_graph(&poly(&[(0, 0), (6, 0), (6, 5), (2, 5), (0, 3)]));
    let r = reduce_to_minimal(&chopped).unwrap();
    assert_eq!(r.steps.len(), 1);
    // smaller λ wins: toward the maximum
    assert_eq!(r.steps[0].side, Some(Side::Max));
    assert_eq!(r.minimal.interior().count(), 0);

    let r = reduce_to_minimal(&s2s2()).unwrap();
    assert!(r.steps.is_empty());

    // Two interior blow-ups; the product of spheres blown up once is also the
    // plane blown up twice, so the longest reduction has three steps.
    let g = s2s2();
    let h = blowup(&g, &site(&g, "c"), &rat(1, 2)).unwrap();
    let h = blowup(&h, &site(&h, "b"), &rat(1, 2)).unwrap();
    let r = reduce_to_minimal(&h).unwrap();
    assert_eq!(r.steps.len(), 3);
    assert_eq!(r.minimal.vertices().len(), 3);
    assert!(blowdown_sites(&r.minimal).is_empty());
}

#[test]
fn reduction_handles_mixed_site_kinds() {
    // The plane blown up at its minimum offers a surface blow-down next to point ones.
    let plane = DecoratedGraph::new(
        vec![Vertex::point("a", int(0)), Vertex::point("b", int(1)), Vertex::point("c", int(2))],
        vec![Edge::new("a", "c", 2)],
    )
    .unwrap();
    assert!(is_consistent(&plane));
    let mut graphs = vec![];
    for s in blowup_sites(&plane) {
        let h = blowup(&plane, &s, &rat(1, 4)).unwrap();
        for t in blowup_sites(&h) {
            let sup = max_size(&h, &t).unwrap().supremum.unwrap_or_else(|| int(1));
            graphs.push(blowup(&h, &t, &(sup / int(3))).unwrap());
        }
        graphs.push(h);
    }
    for g in &graphs {
        assert!(is_consistent(g), "{g:?}");
    }
    for g in graphs {
        let r = reduce_to_minimal(&g).unwrap();
        assert!(!r.steps.is_empty());
        assert!(blowdown_sites(&r.minimal).is_empty() || r.minimal.interior().count() == 0);
    }
}

fn random_graph(rng: &mut ChaCha8Rng) -> DecoratedGraph {
    let r = rng.gen_range(1..6);
    let s = rng.gen_range(1..5);
    let n = rng.gen_range(0..3);
    let mut p = match rng.gen_range(0..2) {
        0 => poly(&[(0, 0), (r, 0), (0, r)]),
        _ => poly(&[(0, 0), (r + n * s, 0), (r, s), (0, s)]),
    };
    if rng.gen_bool(0.5) {
        // a shear, usually leaving no horizontal edge
        let t = int(rng.gen_range(1..3));
        p = DelzantPolygon::new(p.vertices().iter().map(|(x, y)| (x.clone(), y + x * &t)).collect()).unwrap();
    }
    for _ in 0..rng.gen_range(0..3) {
        let i = rng.gen_range(0..p.len());
        let room = p.edge_length(i).min(p.edge_length((i + p.len() - 1) % p.len()));
        p = polygon_chop(&p, i, &(room * rat(rng.gen_range(1..4), 4))).unwrap();
    }
    polygon_to_graph(&p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn blowup_then_blowdown_recovers(seed in any::<u64>(), frac in 1i64..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng);
        prop_assume!(is_consistent(&g));
        let sites = blowup_sites(&g);
        let s = &sites[rng.gen_range(0..sites.len())];
        let sup = max_size(&g, s).unwrap().supremum.unwrap();
        let lambda = sup * rat(frac, 8);
        let sb = blowup_symbolic(&g, s).unwrap();
        prop_assert!(monotone_check(&sb, &lambda));
        let h = instantiate(&sb, &lambda).unwrap();
        prop_assert!(validate_graph(&h).is_valid(), "{}", validate_graph(&h));
        prop_assert!(is_consistent(&h));
        let back = blowdown_sites(&h).into_iter().filter(|d| d.lambda == lambda).any(|d| {
            blowdown(&h, &d).is_ok_and(|k| is_isomorphic(&k, &g, ShiftMode::Exact).unwrap_or(false))
        });
        prop_assert!(back, "no blow-down recovers the graph from {s} at {lambda}");
    }

    #[test]
    fn monotone_region_is_an_interval(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng);
        prop_assume!(is_consistent(&g));
        for s in blowup_sites(&g) {
            let sb = blowup_symbolic(&g, &s).unwrap();
            let size = max_size(&g, &s).unwrap();
            let sup = size.supremum.clone().unwrap();
            for k in 1..12 {
                let lambda = &sup * rat(k, 6);
                prop_assert_eq!(monotone_check(&sb, &lambda), k < 6, "{} at {}", s, lambda);
            }
            prop_assert!(!size.attainable);
        }
    }

    #[test]
    fn chopping_commutes_with_blowing_up(seed in any::<u64>(), frac in 1i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(2..6);
        let s = rng.gen_range(2..5);
        let mut p = poly(&[(0, 0), (r, 0), (r + s, s), (0, s)]);
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..p.len());
            p = polygon_chop(&p, i, &rat(1, 2)).unwrap();
        }
        let i = rng.gen_range(0..p.len());
        let room = p.edge_length(i).min(p.edge_length((i + p.len() - 1) % p.len()));
        let t = room * rat(frac, 4);
        let chopped = polygon_to_graph(&polygon_chop(&p, i, &t).unwrap());
        let g = polygon_to_graph(&p);
        let n = p.len();
        let id = if p.direction(i).b == 0.into() {
            format!("e{i}")
        } else if p.direction((i + n - 1) % n).b == 0.into() {
            format!("e{}", (i + n - 1) % n)
        } else {
            format!("v{i}")
        };
        let sb = blowup_symbolic(&g, &site(&g, &id)).unwrap();
        prop_assert!(monotone_check(&sb, &t));
        let h = instantiate(&sb, &t).unwrap();
        prop_assert!(is_isomorphic(&h, &chopped, ShiftMode::Exact).unwrap());
    }
}
