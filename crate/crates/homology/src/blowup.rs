//! Areas before and after a blow-up.

use blowup_calculus::{
    blowup, blowup_symbolic, max_size, monotone_check, Affine, BlowupCase, BlowupSite, SymbolicKind,
};
use graph_core::rational::int;
use graph_core::{DecoratedGraph, Rational, VertexId};
use num_traits::Signed;

use crate::curves::{chains, require_two_surfaces, ClassValues, Curve, End, Sphere};
use crate::HomologyError;

fn exceptional(case: BlowupCase, v: &VertexId, fresh: &VertexId) -> Option<(End, End)> {
    let p = |id: &VertexId| End::Point(id.clone());
    match case {
        BlowupCase::Interior => Some((p(v), p(fresh))),
        BlowupCase::SurfaceMin => Some((End::Min, p(fresh))),
        BlowupCase::SurfaceMax => Some((p(fresh), End::Max)),
        _ => None,
    }
}

fn meets(a: &Sphere, e: &(End, End)) -> bool {
    [&a.south, &a.north].iter().any(|x| matches!(x, End::Point(_)) && (*x == &e.0 || *x == &e.1))
}

/// Values on the blown-up spanning set: `Ω(C) - λ (C̃ · Ẽ_p)` for proper
/// transforms and `λ` on the exceptional sphere.
pub fn blowup_class_transform(
    g: &DecoratedGraph,
    values: &ClassValues,
    site: &BlowupSite,
    lambda: &Rational,
) -> Result<ClassValues, HomologyError> {
    require_two_surfaces(g)?;
    let sb = blowup_symbolic(g, site).map_err(|e| HomologyError::Incidence(e.to_string()))?;
    let fresh = sb.created.first().ok_or_else(|| HomologyError::Incidence(site.to_string()))?;
    let ex = exceptional(site.case, &site.vertex, fresh).ok_or_else(|| HomologyError::Incidence(site.to_string()))?;
    let h = blowup(g, site, lambda).map_err(|e| HomologyError::Incidence(e.to_string()))?;
    let value_of = |c: &Curve| {
        values
            .iter()
            .find(|(x, _)| x == c)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| HomologyError::Length { expected: values.len() + 1, got: values.len() })
    };
    let old = chains(g)?;
    let mut out = vec![
        (
            Curve::Bmin,
            value_of(&Curve::Bmin)? - if site.case == BlowupCase::SurfaceMin { lambda.clone() } else { int(0) },
        ),
        (
            Curve::Bmax,
            value_of(&Curve::Bmax)? - if site.case == BlowupCase::SurfaceMax { lambda.clone() } else { int(0) },
        ),
        (Curve::F, value_of(&Curve::F)?),
    ];
    let rename = |e: &End| match e {
        End::Point(id) if id == fresh && site.case == BlowupCase::Interior => End::Point(site.vertex.clone()),
        e => e.clone(),
    };
    for s in chains(&h)? {
        if (s.south.clone(), s.north.clone()) == ex {
            out.push((s.curve, lambda.clone()));
            continue;
        }
        let through_fresh = [&s.south, &s.north].contains(&&End::Point(fresh.clone()));
        let before = if through_fresh && site.case != BlowupCase::Interior {
            value_of(&Curve::F)?
        } else {
            let (a, b) = (rename(&s.south), rename(&s.north));
            let o = old
                .iter()
                .find(|o| o.south == a && o.north == b)
                .ok_or_else(|| HomologyError::Incidence(format!("no sphere before the blow-up for {}", s.curve)))?;
            value_of(&o.curve)?
        };
        let drop = if meets(&s, &ex) { lambda.clone() } else { int(0) };
        out.push((s.curve, before - drop));
    }
    Ok(out)
}

fn affine_of(sb: &blowup_calculus::SymbolicBlowup, min: &VertexId, max: &VertexId, e: &End) -> Affine {
    let id = match e {
        End::Min => min,
        End::Max => max,
        End::Point(id) => id,
    };
    sb.vertices.iter().find(|v| &v.id == id).expect("known vertex").moment.clone()
}

/// Whether, at every sampled size, all areas of the blown-up graph are
/// positive exactly when the blow-up is monotone.
///
/// The chains are read at a small admissible size and the areas are followed
/// as affine functions of `λ`.
pub fn positivity_equiv(g: &DecoratedGraph, site: &BlowupSite, lambdas: &[Rational]) -> Result<bool, HomologyError> {
    require_two_surfaces(g)?;
    let sb = blowup_symbolic(g, site).map_err(|e| HomologyError::Incidence(e.to_string()))?;
    let sup = max_size(g, site).map_err(|e| HomologyError::Incidence(e.to_string()))?.supremum;
    let small = sup.map(|s| s / int(2)).unwrap_or_else(|| int(1));
    let h = blowup(g, site, &small).map_err(|e| HomologyError::Incidence(e.to_string()))?;
    let (min, max) =
        (h.min_vertex().expect("two surfaces").id.clone(), h.max_vertex().expect("two surfaces").id.clone());
    let mut forms: Vec<Affine> = sb
        .vertices
        .iter()
        .filter_map(|v| match &v.kind {
            SymbolicKind::Surface { area, .. } => Some(area.clone()),
            SymbolicKind::Point => None,
        })
        .collect();
    forms.push(affine_of(&sb, &min, &max, &End::Max).sub(&affine_of(&sb, &min, &max, &End::Min)));
    for s in chains(&h)? {
        let d = affine_of(&sb, &min, &max, &s.north).sub(&affine_of(&sb, &min, &max, &s.south));
        let k = int(s.k as i64);
        forms.push(Affine { c0: d.c0 / &k, c1: d.c1 / &k });
    }
    Ok(lambdas.iter().all(|l| {
        let positive = l.is_positive() && forms.iter().all(|f| f.eval(l).is_positive());
        positive == monotone_check(&sb, l)
    }))
}
