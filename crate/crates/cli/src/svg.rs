//! SVG pictures of 2-faces.

use std::fmt::Write;

use anyhow::{bail, Result};
use mv_core::bz::{self, BzDatum};
use mv_core::RootSystem;

/// Which 2-face to draw: the one at `μ_w` spanned by the directions `i`, `j`.
#[derive(Debug, Clone, Copy)]
pub struct Face {
    pub w: usize,
    pub i: usize,
    pub j: usize,
}

struct Outline {
    /// Corners in cycle order, in plane coordinates.
    points: Vec<(f64, f64)>,
    labels: Vec<String>,
}

fn word_label(sys: &RootSystem, v: usize) -> String {
    let word = &sys.weyl().element(v).word;
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|i| (i + 1).to_string()).collect()
    }
}

/// Images of `α_i^∨` and `α_j^∨` in the plane.
fn basis(sys: &RootSystem, i: usize, j: usize) -> ((f64, f64), (f64, f64)) {
    let (aij, aji) = (sys.cartan().a(i, j) as f64, sys.cartan().a(j, i) as f64);
    if aij == 0.0 {
        return ((1.0, 0.0), (0.0, 1.0));
    }
    let cos = -(aij * aji).sqrt() / 2.0;
    let theta = cos.acos();
    let ratio = (aij / aji).sqrt();
    ((ratio, 0.0), (theta.cos(), theta.sin()))
}

fn outline(sys: &RootSystem, m: &BzDatum, face: Face) -> Result<Outline> {
    let weyl = sys.weyl();
    let verts = bz::vertices(sys, m)?;
    let base = &verts[face.w];
    let inv = weyl.inverse(face.w);
    let (ei, ej) = basis(sys, face.i, face.j);
    let steps = 2 * sys.cartan().braid_order(face.i, face.j);
    let mut v = face.w;
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for k in 0..steps {
        let d: Vec<i64> = verts[v].0.iter().zip(&base.0).map(|(a, b)| a - b).collect();
        let local = weyl.act_coweight(inv, &d);
        let (x, y) = (local[face.i] as f64, local[face.j] as f64);
        points.push((x * ei.0 + y * ej.0, x * ei.1 + y * ej.1));
        labels.push(word_label(sys, v));
        v = weyl.mul_simple(v, if k % 2 == 0 { face.i } else { face.j });
    }
    Ok(Outline { points, labels })
}

/// Draws the selected face of each polytope side by side.
pub fn draw(sys: &RootSystem, polys: &[BzDatum], face: Face, unit: f64) -> Result<String> {
    let r = sys.rank();
    if face.i >= r || face.j >= r || face.i == face.j {
        bail!("face directions must be two distinct simple indices");
    }
    if face.w >= sys.weyl().order() {
        bail!("vertex index out of range");
    }
    let outlines: Vec<Outline> = polys.iter().map(|m| outline(sys, m, face)).collect::<Result<_>>()?;
    let margin = 2.0 * unit;
    let mut boxes = Vec::new();
    let mut offset = 0.0;
    for o in &outlines {
        let xs = o.points.iter().map(|p| p.0);
        let ys = o.points.iter().map(|p| p.1);
        let (x0, x1) = (xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
        let y1 = ys.fold(f64::NEG_INFINITY, f64::max);
        boxes.push((offset - x0 * unit + margin, y1 * unit + margin));
        offset += (x1 - x0) * unit + 2.0 * margin;
    }
    let height = outlines
        .iter()
        .map(|o| {
            let ys = o.points.iter().map(|p| p.1);
            (ys.clone().fold(f64::NEG_INFINITY, f64::max) - ys.fold(f64::INFINITY, f64::min)) * unit
        })
        .fold(0.0, f64::max)
        + 2.0 * margin;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.0} {:.0}">"#,
        offset.max(margin),
        height,
        offset.max(margin),
        height
    )?;
    for (o, &(dx, dy)) in outlines.iter().zip(&boxes) {
        let at = |p: (f64, f64)| (dx + p.0 * unit, dy - p.1 * unit);
        let path: Vec<String> = o
            .points
            .iter()
            .map(|&p| {
                let (x, y) = at(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            out,
            r##"  <polygon points="{}" fill="#e8eef7" stroke="#1f3b73" stroke-width="2"/>"##,
            path.join(" ")
        )?;
        let mut corners: Vec<((f64, f64), String)> = Vec::new();
        for (&p, label) in o.points.iter().zip(&o.labels) {
            match corners.iter_mut().find(|(q, _)| (q.0 - p.0).abs() + (q.1 - p.1).abs() < 1e-9) {
                Some((_, l)) => {
                    l.push('=');
                    l.push_str(label);
                }
                None => corners.push((p, label.clone())),
            }
        }
        for (p, label) in &corners {
            let (x, y) = at(*p);
            writeln!(out, r##"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#1f3b73"/>"##)?;
            writeln!(
                out,
                r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{label}</text>"#,
                x + 5.0,
                y - 5.0
            )?;
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        let a2 = RootSystem::from_label("A2").unwrap();
        let (e1, e2) = basis(&a2, 0, 1);
        assert!((e1.0 * e2.0 + e1.1 * e2.1 + 0.5).abs() < 1e-12);
        let b2 = RootSystem::from_label("B2").unwrap();
        let (e1, e2) = basis(&b2, 0, 1);
        let cos = (e1.0 * e2.0 + e1.1 * e2.1) / ((e1.0 * e1.0 + e1.1 * e1.1).sqrt());
        assert!((cos + 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn point_polytope_is_one_dot() {
        let a2 = RootSystem::from_label("A2").unwrap();
        let svg = draw(&a2, &[BzDatum::zero(&a2)], Face { w: 0, i: 0, j: 1 }, 40.0).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("e=1=12"));
    }
}
