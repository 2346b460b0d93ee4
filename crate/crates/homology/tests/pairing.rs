use blowup_calculus::{blowup, blowup_sites, max_size, BlowupCase, BlowupSite};
use classify::{enumerate, minimal_graph, EnumerationConfig, MinimalFamily};
use dh_measure::{density, extremal_self_intersections, total_mass};
use graph_core::rational::{int, rat};
use graph_core::{DecoratedGraph, Rational, Vertex};
use homology::*;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ruled(a: i64, h: i64) -> DecoratedGraph {
    DecoratedGraph::new(
        vec![Vertex::surface("lo", int(0), int(a), 0), Vertex::surface("hi", int(h), int(a), 0)],
        vec![],
    )
    .unwrap()
}

fn site(g: &DecoratedGraph, case: BlowupCase) -> BlowupSite {
    blowup_sites(g).into_iter().find(|s| s.case == case).unwrap()
}

fn once(lambda: &Rational) -> DecoratedGraph {
    let g = ruled(1, 1);
    blowup(&g, &site(&g, BlowupCase::SurfaceMin), lambda).unwrap()
}

fn e(chain: usize, position: usize) -> Curve {
    Curve::E { chain, position }
}

fn value(vs: &ClassValues, c: &Curve) -> Rational {
    vs.iter().find(|(x, _)| x == c).unwrap().1.clone()
}

fn corpus() -> Vec<DecoratedGraph> {
    let mut seeds: Vec<MinimalFamily> = (-2..=2).map(|n| MinimalFamily::ruled(0, n, int(2), int(1), int(0))).collect();
    seeds.push(MinimalFamily::ruled(1, 1, int(1), int(2), int(0)));
    enumerate(&EnumerationConfig::new(seeds, 3)).unwrap().into_iter().map(|e| e.graph).collect()
}

/// Determinant by fraction-free elimination.
fn det(m: &[Vec<i64>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return int(0) };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

#[test]
fn pairing_examples() {
    let d = intersection_matrix(&ruled(1, 1)).unwrap();
    let names: Vec<Curve> = d.basis.iter().map(|&i| d.curves[i].clone()).collect();
    assert_eq!(names, vec![Curve::Bmax, Curve::F]);
    let sub: Vec<Vec<i64>> = d.basis.iter().map(|&i| d.basis.iter().map(|&j| d.matrix[i][j]).collect()).collect();
    assert_eq!(sub, vec![vec![0, 1], vec![1, 0]]);

    let d = intersection_matrix(&once(&rat(1, 3))).unwrap();
    assert_eq!(d.pairing(&e(1, 1), &e(1, 1)), Some(-1));
    assert_eq!(d.pairing(&e(1, 2), &e(1, 2)), Some(-1));
    assert_eq!(d.pairing(&e(1, 1), &e(1, 2)), Some(1));
    assert_eq!(d.pairing(&Curve::F, &e(1, 2)), Some(0));

    // blowing up the point splits it into a chain 1, 2, 1
    let g = once(&rat(1, 3));
    let h = blowup(&g, &site(&g, BlowupCase::Interior), &rat(1, 6)).unwrap();
    let d = intersection_matrix(&h).unwrap();
    let diag: Vec<i64> = (1..=3).map(|i| d.pairing(&e(1, i), &e(1, i)).unwrap()).collect();
    assert_eq!(diag, vec![-2, -1, -2]);
    let vs = class_values(&h).unwrap();
    // poles at 1/6 and 1/2
    assert_eq!(value(&vs, &e(1, 2)), rat(1, 6));
    let json: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
    assert_eq!(json["basis"].as_array().unwrap().len(), 4);

    let cp2 = minimal_graph(&MinimalFamily::cp2(1, 1, int(0), int(1))).unwrap();
    assert_eq!(intersection_matrix(&cp2), Err(HomologyError::NotTwoSurface));
}

#[test]
fn value_examples() {
    let lambda = rat(1, 4);
    let vs = class_values(&once(&lambda)).unwrap();
    let want = vec![
        (Curve::Bmin, int(1) - &lambda),
        (Curve::Bmax, int(1)),
        (Curve::F, int(1)),
        (e(1, 1), lambda.clone()),
        (e(1, 2), int(1) - &lambda),
    ];
    assert_eq!(vs, want);
    let vs = class_values(&ruled(3, 2)).unwrap();
    assert_eq!(vs, vec![(Curve::Bmin, int(3)), (Curve::Bmax, int(3)), (Curve::F, int(2))]);
}

#[test]
fn positivity_examples() {
    let g = ruled(1, 1);
    let s = site(&g, BlowupCase::SurfaceMin);
    assert!(positivity_equiv(&g, &s, &[rat(1, 3), int(1), rat(3, 2)]).unwrap());
    assert!(blowup_calculus::monotone_check(&blowup_calculus::blowup_symbolic(&g, &s).unwrap(), &rat(1, 3)));
    assert!(positivity_equiv(&g, &s, &[]).unwrap());
}

#[test]
fn transform_examples() {
    let g = once(&rat(1, 3));
    let vs = class_values(&g).unwrap();
    let lambda = rat(1, 6);
    let s = site(&g, BlowupCase::Interior);
    let t = blowup_class_transform(&g, &vs, &s, &lambda).unwrap();
    let h = blowup(&g, &s, &lambda).unwrap();
    assert_eq!(t, class_values(&h).unwrap());
    // the exceptional sphere, the spheres through the point, curves away from it
    assert_eq!(value(&t, &e(1, 2)), lambda);
    assert_eq!(value(&t, &e(1, 1)), value(&vs, &e(1, 1)) - &lambda);
    assert_eq!(value(&t, &Curve::F), value(&vs, &Curve::F));
    assert_eq!(value(&t, &Curve::Bmin), value(&vs, &Curve::Bmin));

    let s = site(&g, BlowupCase::SurfaceMax);
    let t = blowup_class_transform(&g, &vs, &s, &lambda).unwrap();
    assert_eq!(value(&t, &Curve::Bmax), value(&vs, &Curve::Bmax) - &lambda);
}

#[test]
fn decomposition_examples() {
    let g = once(&rat(1, 3));
    let d = intersection_matrix(&g).unwrap();
    let f: Vec<Rational> = d.curves.iter().map(|c| int(d.pairing(&Curve::F, c).unwrap())).collect();
    let r = decompose_positive(&g, &f).unwrap();
    assert_eq!(r.coefficients, vec![int(0), int(1), int(0)]);

    let class = intersections_of(&d, &[int(1), int(1), int(0)]);
    let r = decompose_positive(&g, &class).unwrap();
    assert_eq!(r.coefficients, vec![int(1), int(1), int(0)]);

    let mut bad = class.clone();
    let i = d.index(&e(1, 1)).unwrap();
    bad[i] = int(-1);
    assert!(matches!(decompose_positive(&g, &bad), Err(HomologyError::Negative(_))));
}

#[test]
fn corpus_identities() {
    for g in corpus() {
        let d = intersection_matrix(&g).unwrap();
        let n = d.curves.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d.matrix[i][j], d.matrix[j][i]);
            }
        }
        // each chain is homologous to the fiber: F - Σ k_i E_i pairs to zero
        let chains: std::collections::BTreeSet<usize> =
            d.spheres.iter().map(|s| if let Curve::E { chain, .. } = s.curve { chain } else { 0 }).collect();
        for c in chains {
            for x in 0..n {
                let mut v = d.matrix[2][x];
                for s in d.spheres.iter().filter(|s| matches!(s.curve, Curve::E { chain, .. } if chain == c)) {
                    v -= s.k as i64 * d.matrix[d.index(&s.curve).unwrap()][x];
                }
                assert_eq!(v, 0, "chain {c} against {}", d.curves[x]);
            }
        }
        let sub: Vec<Vec<i64>> = d.basis.iter().map(|&i| d.basis.iter().map(|&j| d.matrix[i][j]).collect()).collect();
        assert_eq!(det(&sub).abs(), int(1), "basis is not unimodular");

        // B_min written in the basis has self-intersection e_min
        let bmin: Vec<Rational> = d.curves.iter().map(|c| int(d.pairing(&Curve::Bmin, c).unwrap())).collect();
        let rhs: Vec<Rational> = d.basis.iter().map(|&x| bmin[x].clone()).collect();
        let coeffs = solve_in_basis(&d, &rhs);
        assert_eq!(intersections_of(&d, &coeffs), bmin);
        let self_int: Rational = d.basis.iter().zip(&coeffs).map(|(&b, c)| c * &bmin[b]).sum();
        assert_eq!(self_int, extremal_self_intersections(&g).unwrap().e_min);

        // total mass is half the square of the class of the form
        let vs = class_values(&g).unwrap();
        assert!(vs.iter().all(|(_, v)| v > &int(0)));
        let rhs: Vec<Rational> = d.basis.iter().map(|&x| vs[x].1.clone()).collect();
        let omega = solve_in_basis(&d, &rhs);
        let square: Rational = omega.iter().zip(&rhs).map(|(a, b)| a * b).sum();
        assert_eq!(total_mass(&density(&g).unwrap()) * int(2), square);
    }
}

fn solve_in_basis(d: &IntersectionData, rhs: &[Rational]) -> Vec<Rational> {
    // coefficients β with Σ β_b (b · x) = rhs_x over basis x; the basis is unimodular so brute elimination is fine
    let n = rhs.len();
    let mut a: Vec<Vec<Rational>> =
        d.basis.iter().map(|&x| d.basis.iter().map(|&b| int(d.matrix[b][x])).collect()).collect();
    let mut r = rhs.to_vec();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).unwrap();
        a.swap(c, p);
        r.swap(c, p);
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for k in 0..n {
                    let t = &f * &a[c][k];
                    a[i][k] -= t;
                }
                let t = &f * &r[c];
                r[i] -= t;
            }
        }
    }
    (0..n).map(|i| &r[i] / &a[i][i]).collect()
}

#[test]
fn transform_commutes_with_blowing_up() {
    for g in corpus().into_iter().take(150) {
        let vs = class_values(&g).unwrap();
        for s in blowup_sites(&g) {
            let sup = max_size(&g, &s).unwrap().supremum.unwrap();
            let lambda = sup / int(3);
            let t = blowup_class_transform(&g, &vs, &s, &lambda).unwrap();
            let h = blowup(&g, &s, &lambda).unwrap();
            assert_eq!(t, class_values(&h).unwrap(), "{s}");
        }
    }
}

#[test]
fn positivity_matches_monotonicity_on_random_samples() {
    let graphs = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let sites = blowup_sites(g);
        let s = &sites[rng.gen_range(0..sites.len())];
        let sup = max_size(g, s).unwrap().supremum.unwrap();
        let lambdas: Vec<Rational> = (0..6).map(|_| &sup * rat(rng.gen_range(1..24), 12)).collect();
        assert!(positivity_equiv(g, s, &lambdas).unwrap());
    }
}

#[test]
fn random_positive_classes_decompose() {
    let graphs: Vec<DecoratedGraph> = {
        let g = ruled(2, 1);
        let mut out = vec![];
        for s in blowup_sites(&g) {
            let h = blowup(&g, &s, &rat(1, 3)).unwrap();
            for t in blowup_sites(&h) {
                if let Ok(k) = blowup(&h, &t, &rat(1, 5)) {
                    out.push(k);
                }
            }
            out.push(h);
        }
        out
    };
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut found = 0;
    while found < 50 {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let d = intersection_matrix(g).unwrap();
        let alpha: Vec<Rational> = d.basis.iter().map(|_| int(rng.gen_range(0..6))).collect();
        let class = intersections_of(&d, &alpha);
        if class.iter().any(|c| c < &int(0)) {
            continue;
        }
        found += 1;
        let r = decompose_positive(g, &class).unwrap();
        assert!(r.coefficients.iter().all(|c| c >= &int(0)));
        assert_eq!(intersections_of(&d, &r.coefficients), class);
    }
}
