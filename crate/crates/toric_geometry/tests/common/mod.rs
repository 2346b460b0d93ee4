//! Polygons appearing as worked examples, shared by the test files.

#![allow(dead_code)]

use toric_geometry::DelzantPolygon;

pub fn poly(v: &[(i64, i64)]) -> DelzantPolygon {
    DelzantPolygon::from_ints(v).unwrap()
}

pub fn square() -> DelzantPolygon {
    poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])
}

/// Three drawings of the same product of spheres.
pub fn polys2s2() -> Vec<DelzantPolygon> {
    vec![
        poly(&[(0, 6), (0, 4), (2, 0), (2, 2)]),
        poly(&[(2, 6), (2, 4), (0, 0), (0, 2)]),
        poly(&[(4, 6), (2, 4), (0, 0), (2, 2)]),
    ]
}

/// Five polygons of a figure comparing circle actions.
pub fn figure_polygons() -> Vec<DelzantPolygon> {
    vec![
        poly(&[(0, 0), (0, 3), (1, 4), (1, 1)]),
        poly(&[(0, 1), (0, 3), (1, 4), (1, 0)]),
        poly(&[(0, 0), (0, 1), (1, 3), (2, 4), (2, 3), (1, 1)]),
        poly(&[(0, 2), (0, 4), (2, 4), (2, 0)]),
        poly(&[(0, 0), (2, 4), (2, 2)]),
    ]
}

/// A rectangle blown up at the minimum in three ways.
pub fn blow_min() -> Vec<DelzantPolygon> {
    vec![
        poly(&[(0, 0), (6, 0), (6, 5), (2, 5), (0, 3)]),
        poly(&[(2, 0), (6, 0), (6, 5), (2, 5), (0, 3), (0, 2)]),
        poly(&[(0, 0), (4, 0), (6, 2), (6, 5), (2, 5), (0, 3)]),
    ]
}

pub fn chopped_square() -> DelzantPolygon {
    poly(&[(0, 0), (6, 0), (6, 5), (2, 5), (0, 3)])
}

/// Two ruled manifolds that chop to [`chopped_square`].
pub fn rectangle() -> DelzantPolygon {
    poly(&[(0, 0), (6, 0), (6, 5), (0, 5)])
}

pub fn trapezoid() -> DelzantPolygon {
    poly(&[(0, 0), (9, 0), (9, 5), (5, 5)])
}

/// The trapezoid with its bottom left corner chopped.
pub fn chopped_trapezoid() -> DelzantPolygon {
    poly(&[(3, 0), (9, 0), (9, 5), (5, 5), (3, 3)])
}

pub fn ex_x() -> DelzantPolygon {
    poly(&[(0, 0), (1, 0), (2, 1), (9, 15), (1, 3), (0, 1)])
}

pub fn triangle(r: i64) -> DelzantPolygon {
    poly(&[(0, 0), (r, 0), (0, r)])
}

pub fn hirzebruch(r: i64, n: i64, s: i64) -> DelzantPolygon {
    poly(&[(0, 0), (r, 0), (r + n * s, s), (0, s)])
}

pub fn all() -> Vec<DelzantPolygon> {
    let mut out = vec![square(), rectangle(), trapezoid(), chopped_trapezoid(), ex_x()];
    out.extend(polys2s2());
    out.extend(figure_polygons());
    out.extend(blow_min());
    for r in 1..4 {
        out.push(triangle(r));
        for n in 0..3 {
            out.push(hirzebruch(r + n, n, r));
        }
    }
    out
}

/// A random Delzant polygon: a minimal one with up to `chops` corners cut.
pub fn random_polygon(rng: &mut impl rand::Rng, chops: usize) -> DelzantPolygon {
    use graph_core::rational::rat;
    let r = rng.gen_range(1..6);
    let mut p = if rng.gen_bool(0.3) {
        triangle(r)
    } else {
        let s = rng.gen_range(1..5);
        hirzebruch(r, rng.gen_range(0..3), s)
    };
    for _ in 0..rng.gen_range(0..=chops) {
        let i = rng.gen_range(0..p.len());
        let room = p.edge_length(i).min(p.edge_length((i + p.len() - 1) % p.len()));
        let t = room * rat(rng.gen_range(1..8), 8);
        p = toric_geometry::polygon_chop(&p, i, &t).unwrap();
    }
    p
}
