use blowup_calculus::{blowup, blowup_sites, max_size, reduce_to_minimal};
use classify::*;
use dh_measure::{density_literal, extremal_self_intersections};
use graph_core::rational::{int, rat};
use graph_core::{is_isomorphic, validate_graph, DecoratedGraph, Edge, Rational, ShiftMode, Vertex};
use proptest::prelude::*;
use toric_geometry::{polygon_affine_equivalent, polygon_to_graph, validate_delzant, DelzantPolygon};

fn poly(v: &[(i64, i64)]) -> DelzantPolygon {
    DelzantPolygon::from_ints(v).unwrap()
}

fn iso(a: &DecoratedGraph, b: &DecoratedGraph) -> bool {
    is_isomorphic(a, b, ShiftMode::Exact).unwrap()
}

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

/// `(x, y) -> (c x + d y, a x + b y)` with `bc - ad = -1`, so the circle is `(a, b)`.
fn circle(p: &DelzantPolygon, a: i64, b: i64) -> Option<DelzantPolygon> {
    let (c, d) = (-2i64..=2).flat_map(|c| (-2i64..=2).map(move |d| (c, d))).find(|&(c, d)| c * b - d * a == 1)?;
    let pts = p.vertices().iter().map(|(x, y)| (x * int(c) + y * int(d), x * int(a) + y * int(b))).collect();
    DelzantPolygon::new(pts).ok()
}

fn directions() -> Vec<(i64, i64)> {
    let mut out = vec![];
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            if num_integer::gcd(a, b) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

#[test]
fn family_examples() {
    let g = minimal_graph(&MinimalFamily::cp2(1, 2, int(0), int(1))).unwrap();
    let want = DecoratedGraph::new(
        vec![Vertex::point("min", int(-2)), Vertex::point("p", int(0)), Vertex::point("max", int(1))],
        vec![Edge::new("min", "max", 3), Edge::new("min", "p", 2)],
    )
    .unwrap();
    assert_eq!(g, want);

    let g = minimal_graph(&MinimalFamily::ruled(1, 0, int(1), int(1), int(0))).unwrap();
    let want = DecoratedGraph::new(
        vec![Vertex::surface("min", int(0), int(1), 1), Vertex::surface("max", int(1), int(1), 1)],
        vec![],
    )
    .unwrap();
    assert_eq!(g, want);

    let g = minimal_graph(&MinimalFamily::new(Family::CP2Surface { alpha: int(0), lambda: int(1) })).unwrap();
    assert_eq!(g.max_vertex().unwrap().moment, int(1));
    assert_eq!(g.min_vertex().unwrap().area(), Some(&int(1)));

    let g = minimal_graph(&MinimalFamily::new(Family::Hirzebruch {
        variant: HirzebruchVariant::Right,
        n: 2,
        c: 1,
        d: 1,
        r: int(2),
        s: int(1),
        alpha: int(0),
    }))
    .unwrap();
    assert_eq!(g.max_vertex().unwrap().moment, int(4));
    assert_eq!(g.edges(), &[Edge::new("p", "max", 2)]);

    assert!(minimal_graph(&MinimalFamily::cp2(2, 4, int(0), int(1))).is_err());
    assert!(minimal_graph(&MinimalFamily::ruled(0, 0, int(1), int(-1), int(0))).is_err());
}

#[test]
fn every_circle_in_a_minimal_toric_surface_is_recognized() {
    let mut polys = vec![poly(&[(0, 0), (2, 0), (0, 2)]), poly(&[(0, 0), (3, 0), (0, 3)])];
    for (r, n, s) in [(2, 0, 1), (3, 1, 1), (1, 1, 2), (3, 2, 1), (5, 3, 1), (2, 1, 3)] {
        polys.push(poly(&[(0, 0), (r, 0), (r + n * s, s), (0, s)]));
    }
    let mut seen = std::collections::BTreeSet::new();
    for p in &polys {
        for (a, b) in directions() {
            let Some(q) = circle(p, a, b) else { continue };
            let g = polygon_to_graph(&q);
            let f = recognize_minimal(&g).unwrap_or_else(|| panic!("not recognized: {g:?}"));
            assert!(iso(&minimal_graph(&f).unwrap(), &g));
            seen.insert(format!("{:?}", std::mem::discriminant(&f.family)));
            if let Family::Hirzebruch { variant, .. } = f.family {
                seen.insert(format!("{variant:?}"));
            }
        }
    }
    // both projective-plane families, Hirzebruch graphs, and ruled products
    assert!(seen.len() >= 6, "{seen:?}");
}

#[test]
fn blown_up_graphs_are_not_minimal() {
    let g = s2s2();
    let site = blowup_sites(&g).remove(1);
    let h = blowup(&g, &site, &rat(1, 2)).unwrap();
    assert!(recognize_minimal(&g).is_some());
    assert!(recognize_minimal(&h).is_none());
}

#[test]
fn toric_extendability() {
    let out = enumerate(&EnumerationConfig::new(vec![MinimalFamily::cp2(1, 2, int(0), int(1))], 2)).unwrap();
    assert!(out.iter().all(|e| is_toric_extendable(&e.graph)));
    let ruled = minimal_graph(&MinimalFamily::ruled(1, 0, int(1), int(1), int(0))).unwrap();
    assert!(!is_toric_extendable(&ruled));

    // three fixed points on one level
    let crowded = DecoratedGraph::new(
        vec![
            Vertex::surface("min", int(0), int(1), 0),
            Vertex::point("p", int(1)),
            Vertex::point("q", int(1)),
            Vertex::point("r", int(1)),
            Vertex::surface("max", int(2), int(2), 0),
        ],
        vec![],
    )
    .unwrap();
    assert!(validate_graph(&crowded).is_valid());
    assert!(!is_toric_extendable(&crowded));
    assert_eq!(level_counts(&crowded).iter().map(|c| c.1).max(), Some(3));
}

#[test]
fn isolated_classification_examples() {
    let g = minimal_graph(&MinimalFamily::cp2(1, 1, int(0), int(1))).unwrap();
    let p = classify_isolated(&g).unwrap();
    // normals (1,0), (1,1), (-2,-1)
    assert!(polygon_affine_equivalent(&p, &poly(&[(0, -1), (0, 0), (-1, 1)])));

    let p = classify_isolated(&s2s2()).unwrap();
    let fig = poly(&[(0, 3), (0, 1), (2, -3), (2, -1)]);
    assert!(polygon_affine_equivalent(&p, &fig));
    assert!(iso(&polygon_to_graph(&p), &s2s2()));

    let surf = minimal_graph(&MinimalFamily::new(Family::CP2Surface { alpha: int(0), lambda: int(1) })).unwrap();
    assert!(matches!(classify_isolated(&surf), Err(ClassifyError::NotIsolated(_))));
}

#[test]
fn enumeration_examples() {
    let seed = MinimalFamily::cp2(1, 1, int(0), int(1));
    let out = enumerate(&EnumerationConfig::new(vec![seed.clone()], 1)).unwrap();
    // brute force: the seed and one midpoint blow-up per site, merged pairwise
    let g = minimal_graph(&seed).unwrap();
    let mut classes = vec![g.clone()];
    for site in blowup_sites(&g) {
        let lambda = max_size(&g, &site).unwrap().supremum.unwrap() / int(2);
        let h = blowup(&g, &site, &lambda).unwrap();
        if !classes.iter().any(|c| iso(c, &h)) {
            classes.push(h);
        }
    }
    assert_eq!(out.len(), classes.len());
    assert_eq!(out.len(), 4);

    let out = enumerate(&EnumerationConfig::new(vec![MinimalFamily::ruled(0, 0, int(1), int(1), int(0))], 0)).unwrap();
    assert_eq!(out.len(), 1);

    let config = EnumerationConfig::new(vec![MinimalFamily::cp2(1, 2, int(0), int(1))], 2);
    let out = enumerate(&config).unwrap();
    assert_eq!(out, enumerate(&config).unwrap());
    for e in &out {
        assert!(validate_graph(&e.graph).is_valid());
        let r = reduce_to_minimal(&e.graph).unwrap();
        assert!(r.steps.len() <= 2);
        assert!(recognize_minimal(&r.minimal).is_some());
        let levels_ok = level_counts(&e.graph).iter().all(|c| c.1 <= 2);
        assert_eq!(is_toric_extendable(&e.graph), levels_ok);
        let p = classify_isolated(&e.graph).unwrap();
        assert!(validate_delzant(&p).is_valid());
        assert!(iso(&polygon_to_graph(&p), &e.graph));
    }

    let grid = EnumerationConfig {
        rule: LambdaRule::Grid(vec![rat(1, 4), rat(1, 2)]),
        ..EnumerationConfig::new(vec![MinimalFamily::cp2(1, 1, int(0), int(1))], 1)
    };
    assert_eq!(enumerate(&grid).unwrap().len(), 7);
}

fn chopped_square() -> DecoratedGraph {
    polygon_to_graph(&poly(&[(0, 0), (6, 0), (6, 5), (2, 5), (0, 3)]))
}

#[test]
fn label_examples() {
    let empty = Skeleton { genus: 0, points: vec![], edges: vec![] };
    let y = Moments { y_min: int(0), y_max: int(2), points: Default::default() };
    assert!(assign_labels(&empty, &y, &int(3), &int(3), (0, 0)).is_ok());
    assert!(assign_labels(&empty, &y, &int(3), &int(2), (0, 0)).is_err());

    let g = chopped_square();
    let s = Skeleton::from_graph(&g).unwrap();
    let y = Moments::of_graph(&g).unwrap();
    assert_eq!(y.points.values().next(), Some(&int(3)));
    // the minimal surface keeps its width, the maximal one loses a corner
    assert_eq!(label_offset(&s, &y, (0, -1)).unwrap(), int(2));
    let h = assign_labels(&s, &y, &int(6), &int(4), (0, -1)).unwrap();
    assert!(iso(&h, &g));
    assert!(matches!(assign_labels(&s, &y, &int(6), &int(4), (-1, 0)), Err(ClassifyError::Labels(_))));
    assert!(assign_labels(&s, &y, &int(1), &int(4), (-1, 0)).is_ok());
    assert!(assign_labels(&s, &y, &int(6), &int(4), (0, 0)).is_err());
}

fn two_surface_graph(seed: u64) -> DecoratedGraph {
    let out = enumerate(&EnumerationConfig::new(
        vec![MinimalFamily::ruled(0, (seed % 3) as i64 - 1, int(2), int(1), int(0))],
        2,
    ))
    .unwrap();
    out[(seed as usize / 3) % out.len()].graph.clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabelling_keeps_the_density_supported(seed in 0u64..200, lift in 1i64..5, stretch in 1i64..4) {
        let g = two_surface_graph(seed);
        let s = Skeleton::from_graph(&g).unwrap();
        let y0 = Moments::of_graph(&g).unwrap();
        // an increasing change of heights keeps every edge increasing
        let f = |v: &Rational| v * int(stretch) + int(lift);
        let y = Moments {
            y_min: f(&y0.y_min),
            y_max: f(&y0.y_max),
            points: y0.points.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        };
        let ex = extremal_self_intersections(&g).unwrap();
        let e = (graph_core::rational::to_i64(&ex.e_min).unwrap(), graph_core::rational::to_i64(&ex.e_max).unwrap());
        let b = label_offset(&s, &y, e).unwrap();
        let a_max = int(10) + int(stretch);
        let a_min = &a_max + &b;
        prop_assume!(a_min > int(0));
        let h = assign_labels(&s, &y, &a_min, &a_max, e);
        prop_assume!(h.is_ok());
        let h = h.unwrap();
        for k in 1..4 {
            prop_assert_eq!(density_literal(&h, &(&y.y_max + int(k))).unwrap(), int(0));
            prop_assert_eq!(density_literal(&h, &(&y.y_min - int(k))).unwrap(), int(0));
        }
    }

    #[test]
    fn families_round_trip(m in 1u64..6, n in 1u64..6, c in 1u64..5, d in 1u64..5, k in 0u64..4, flip in any::<bool>()) {
        let r = int(7);
        let s = rat(1, 2);
        let fams = vec![
            Family::CP2 { m, n, alpha: int(1), beta: rat(1, 3) },
            Family::CP2Surface { alpha: int(0), lambda: r.clone() },
            Family::Hirzebruch { variant: HirzebruchVariant::Left, n: k, c, d, r: r.clone(), s: s.clone(), alpha: int(0) },
            Family::Hirzebruch { variant: HirzebruchVariant::Middle, n: k, c, d, r: r.clone(), s: s.clone(), alpha: int(0) },
            Family::Hirzebruch { variant: HirzebruchVariant::Right, n: k, c, d, r: r.clone(), s: s.clone(), alpha: int(0) },
            Family::Ruled { genus: 2, n: k as i64 - 2, r: r.clone(), s: s.clone(), alpha: int(0) },
        ];
        for fam in fams {
            let f = if flip { MinimalFamily::flipped(fam) } else { MinimalFamily::new(fam) };
            let Ok(g) = minimal_graph(&f) else { continue };
            prop_assert!(validate_graph(&g).is_valid(), "{}: {}", f, validate_graph(&g));
            prop_assert!(extremal_self_intersections(&g).is_ok(), "{}", f);
            let back = recognize_minimal(&g);
            prop_assert!(back.is_some(), "{}", f);
            prop_assert!(iso(&minimal_graph(&back.unwrap()).unwrap(), &g));
        }
    }
}
