//! Slit-tori translation surfaces and an empirical count of saddle connections.
//!
//! Three flat tori are slit along a common short segment `t` and reglued
//! cyclically, producing a genus-three surface with two cone points of angle
//! `6π`. Saddle connections are enumerated by developing triangle wedges out
//! of every corner, and connections between the two cone points are grouped by
//! holonomy to estimate the Siegel–Veech constants by multiplicity.
//!
//! Everything here is double precision; the rest of the crate is exact.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactq::lambda_of;
use crate::prototypes::TripleProto;

/// A planar vector `(x, y)`.
pub type Vec2 = [f64; 2];

fn add(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn neg(a: Vec2) -> Vec2 {
    [-a[0], -a[1]]
}

fn scale(a: Vec2, k: f64) -> Vec2 {
    [a[0] * k, a[1] * k]
}

fn cross(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: Vec2) -> f64 {
    a[0].hypot(a[1])
}

/// Distance from the origin to the segment `[p, q]`.
fn dist_to_segment(p: Vec2, q: Vec2) -> f64 {
    let d = sub(q, p);
    let len2 = dot(d, d);
    if len2 == 0.0 {
        return norm(p);
    }
    let s = (-dot(p, d) / len2).clamp(0.0, 1.0);
    norm(add(p, scale(d, s)))
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlatError {
    #[error("slit {0:?} does not fit inside a reduced fundamental domain")]
    SlitTooLong(Vec2),
    #[error("slit direction {0:?} is parallel to a short lattice vector")]
    DegenerateDirection(Vec2),
    #[error("holonomies {0:?} and {1:?} are too close to group unambiguously")]
    AmbiguousGrouping(Vec2, Vec2),
    #[error("{size} saddle connections share holonomy {holonomy:?}; at most 3 are possible")]
    OversizedFamily { size: usize, holonomy: Vec2 },
    #[error("invalid prototype {0}")]
    InvalidPrototype(String),
}

/// Half-edge address: `(triangle, side)`.
pub type HalfEdge = (usize, usize);

/// A cone point with its total angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePoint {
    pub id: usize,
    /// Total angle divided by `π`.
    pub angle_pi: f64,
}

/// A triangulated translation surface.
///
/// Triangle `i` has corners `P₀, P₁, P₂` in counter-clockwise order and side
/// `k` is the vector `P_{k+1} − P_k`. `corner_vertex[i][k]` is the cone point at `P_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatSurface {
    pub triangles: Vec<[Vec2; 3]>,
    pub gluing: Vec<[HalfEdge; 3]>,
    pub corner_vertex: Vec<[usize; 3]>,
    pub cone_points: Vec<ConePoint>,
    pub area: f64,
}

/// Which surface invariants hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantReport {
    pub edge_sums: bool,
    pub gluing_opposite: bool,
    pub angles: bool,
    pub gauss_bonnet: bool,
    pub genus_three: bool,
}

impl InvariantReport {
    pub fn all(&self) -> bool {
        self.edge_sums
            && self.gluing_opposite
            && self.angles
            && self.gauss_bonnet
            && self.genus_three
    }
}

fn corner_angle(tri: &[Vec2; 3], k: usize) -> f64 {
    let out = tri[k];
    let back = neg(tri[(k + 2) % 3]);
    cross(out, back).atan2(dot(out, back))
}

impl FlatSurface {
    /// Largest edge length, used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.triangles
            .iter()
            .flatten()
            .map(|v| norm(*v))
            .fold(0.0, f64::max)
    }

    pub fn edge_count(&self) -> usize {
        self.triangles.len() * 3 / 2
    }

    /// Genus from Euler's formula on the triangulation.
    pub fn genus(&self) -> i64 {
        let chi =
            self.cone_points.len() as i64 - self.edge_count() as i64 + self.triangles.len() as i64;
        (2 - chi) / 2
    }

    /// `Σ (θ − 2π)` over cone points.
    pub fn angle_excess(&self) -> f64 {
        self.cone_points
            .iter()
            .map(|c| (c.angle_pi - 2.0) * PI)
            .sum()
    }

    pub fn check_invariants(&self) -> InvariantReport {
        let tol = 1e-12 * self.scale().max(1.0);
        let edge_sums = self.triangles.iter().all(|t| {
            let s = add(add(t[0], t[1]), t[2]);
            s[0].abs() <= tol && s[1].abs() <= tol
        });
        let gluing_opposite = self.gluing.iter().enumerate().all(|(i, sides)| {
            sides.iter().enumerate().all(|(k, &(j, m))| {
                let back = self.gluing[j][m] == (i, k);
                let s = add(self.triangles[i][k], self.triangles[j][m]);
                back && (i, k) != (j, m) && s[0].abs() <= tol && s[1].abs() <= tol
            })
        });
        let angles = self.cone_points.len() == 2
            && self
                .cone_points
                .iter()
                .all(|c| (c.angle_pi - 6.0).abs() < 1e-9);
        let gauss_bonnet = (self.angle_excess() - 8.0 * PI).abs() < 1e-9;
        InvariantReport {
            edge_sums,
            gluing_opposite,
            angles,
            gauss_bonnet,
            genus_three: self.genus() == 3,
        }
    }

    /// Replace side `k` of triangle `i` by the other diagonal of the quadrilateral
    /// it bounds. Returns `false` (and does nothing) if the quadrilateral is not
    /// strictly convex or the side is glued to the same triangle.
    pub fn flip(&mut self, i: usize, k: usize) -> bool {
        let (j, m) = self.gluing[i][k];
        if j == i {
            return false;
        }
        let t = self.triangles[i];
        let u = self.triangles[j];
        // Frame with P_k of triangle i at the origin.
        let pk = [0.0, 0.0];
        let pk1 = t[k];
        let x = add(t[k], t[(k + 1) % 3]);
        let y = u[(m + 1) % 3];
        // Quadrilateral P_k, Y, P_{k+1}, X must be strictly convex.
        let quad = [pk, y, pk1, x];
        let convex = (0..4).all(|n| {
            let a = quad[n];
            let b = quad[(n + 1) % 4];
            let c = quad[(n + 2) % 4];
            cross(sub(b, a), sub(c, b)) > 0.0
        });
        if !convex {
            return false;
        }
        let vi = self.corner_vertex[i];
        let vj = self.corner_vertex[j];
        let (vk, vk1, vx, vy) = (vi[k], vi[(k + 1) % 3], vi[(k + 2) % 3], vj[(m + 2) % 3]);
        // Outer half-edges, in the order they appear in the new triangles.
        let outer_old = [
            (j, (m + 2) % 3),
            (i, (k + 1) % 3),
            (i, (k + 2) % 3),
            (j, (m + 1) % 3),
        ];
        let outer_new = [(i, 0), (i, 1), (j, 0), (j, 1)];
        let partners: Vec<HalfEdge> = outer_old.iter().map(|&(a, b)| self.gluing[a][b]).collect();
        // New triangle i = (Y, P_{k+1}, X), new triangle j = (X, P_k, Y).
        self.triangles[i] = [sub(pk1, y), sub(x, pk1), sub(y, x)];
        self.triangles[j] = [sub(pk, x), sub(y, pk), sub(x, y)];
        self.corner_vertex[i] = [vy, vk1, vx];
        self.corner_vertex[j] = [vx, vk, vy];
        self.gluing[i][2] = (j, 2);
        self.gluing[j][2] = (i, 2);
        for (n, &(ti, si)) in outer_new.iter().enumerate() {
            let partner = match outer_old.iter().position(|&h| h == partners[n]) {
                Some(p) => outer_new[p],
                None => partners[n],
            };
            self.gluing[ti][si] = partner;
            self.gluing[partner.0][partner.1] = (ti, si);
        }
        true
    }

    /// Flip to a Delaunay triangulation. Returns the number of flips performed.
    pub fn make_delaunay(&mut self) -> usize {
        let mut flips = 0;
        let limit = 1000 * self.triangles.len().max(1);
        loop {
            let mut changed = false;
            for i in 0..self.triangles.len() {
                for k in 0..3 {
                    let (j, m) = self.gluing[i][k];
                    let alpha = corner_angle(&self.triangles[i], (k + 2) % 3);
                    let beta = corner_angle(&self.triangles[j], (m + 2) % 3);
                    if alpha + beta > PI + 1e-10 && self.flip(i, k) {
                        flips += 1;
                        changed = true;
                    }
                }
            }
            if !changed || flips >= limit {
                return flips;
            }
        }
    }
}

/// Union-find over triangle corners, keyed by `3·triangle + corner`.
fn vertex_classes(gluing: &[[HalfEdge; 3]]) -> Vec<usize> {
    let n = gluing.len() * 3;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for (i, sides) in gluing.iter().enumerate() {
        for (k, &(j, m)) in sides.iter().enumerate() {
            union(3 * i + k, 3 * j + (m + 1) % 3);
            union(3 * i + (k + 1) % 3, 3 * j + m);
        }
    }
    (0..n).map(|x| find(&mut parent, x)).collect()
}

/// Gauss-reduced basis of the lattice spanned by `u`, `v`.
fn reduce_basis(mut u: Vec2, mut v: Vec2) -> (Vec2, Vec2) {
    loop {
        if dot(u, u) > dot(v, v) {
            std::mem::swap(&mut u, &mut v);
        }
        let mu = (dot(u, v) / dot(u, u)).round();
        if mu == 0.0 {
            return (u, v);
        }
        v = sub(v, scale(u, mu));
    }
}

/// Shortest nonzero vector length of the lattice spanned by `u`, `v`.
pub fn systole(u: Vec2, v: Vec2) -> f64 {
    let (u, _) = reduce_basis(u, v);
    norm(u)
}

/// The four triangles of a torus fan around the interior point `t`.
///
/// Returns basis vectors `u`, `v` with `t = αu + βv`, `α, β ∈ (0, 1)`, and `u × v > 0`.
fn torus_frame(u0: Vec2, v0: Vec2, t: Vec2) -> Result<(Vec2, Vec2), FlatError> {
    let (mut u, mut v) = reduce_basis(u0, v0);
    if cross(u, v) < 0.0 {
        v = neg(v);
    }
    let det = cross(u, v);
    let mut alpha = cross(t, v) / det;
    let mut beta = cross(u, t) / det;
    // Sign flips keep the basis positively oriented while moving t into the
    // positive quadrant: negating both vectors, or rotating by a quarter turn.
    if alpha < 0.0 && beta < 0.0 {
        u = neg(u);
        v = neg(v);
    } else if alpha < 0.0 {
        // t in the quadrant of (−u, v): use (v, −u).
        let nu = v;
        v = neg(u);
        u = nu;
    } else if beta < 0.0 {
        // t in the quadrant of (u, −v): use (−v, u).
        let nu = neg(v);
        v = u;
        u = nu;
    }
    let det = cross(u, v);
    alpha = cross(t, v) / det;
    beta = cross(u, t) / det;
    let eps = 1e-9;
    if alpha.abs() < eps || beta.abs() < eps {
        return Err(FlatError::DegenerateDirection(t));
    }
    if alpha >= 1.0 || beta >= 1.0 || alpha <= 0.0 || beta <= 0.0 {
        return Err(FlatError::SlitTooLong(t));
    }
    // A direction parallel to a short lattice vector makes the surface
    // non-generic in a way the counting cannot see.
    for mi in -8i32..=8 {
        for ni in -8i32..=8 {
            if (mi, ni) == (0, 0) {
                continue;
            }
            let w = add(scale(u, mi as f64), scale(v, ni as f64));
            if cross(w, t).abs() <= 1e-12 * norm(w) * norm(t) {
                return Err(FlatError::DegenerateDirection(t));
            }
        }
    }
    Ok((u, v))
}

/// Three tori `C/λ(Z + iZ)`, `C/(aZ + (b + id)Z)` twice, slit from the marked
/// point along `t` and reglued cyclically.
pub fn build_slit_triple(p: &TripleProto, t: Vec2) -> Result<FlatSurface, FlatError> {
    if !p.is_valid() {
        return Err(FlatError::InvalidPrototype(p.csv_row()));
    }
    let lam = lambda_of(p.disc, p.e).to_f64();
    let lattices = [
        ([lam, 0.0], [0.0, lam]),
        ([p.a as f64, 0.0], [p.b as f64, p.d as f64]),
        ([p.a as f64, 0.0], [p.b as f64, p.d as f64]),
    ];
    let mut triangles = Vec::with_capacity(12);
    let mut area = 0.0;
    for &(u0, v0) in &lattices {
        let (u, v) = torus_frame(u0, v0, t)?;
        area += cross(u, v);
        let uv = add(u, v);
        // Fan (0, u, t), (u, u+v, t), (u+v, v, t), (v, 0, t).
        triangles.push([u, sub(t, u), neg(t)]);
        triangles.push([v, sub(t, uv), sub(u, t)]);
        triangles.push([neg(u), sub(t, v), sub(uv, t)]);
        triangles.push([neg(v), t, sub(v, t)]);
    }
    let mut gluing = vec![[(0, 0); 3]; 12];
    let mut glue = |a: HalfEdge, b: HalfEdge| {
        gluing[a.0][a.1] = b;
        gluing[b.0][b.1] = a;
    };
    for j in 0..3 {
        let (ta, tb, tc, td) = (4 * j, 4 * j + 1, 4 * j + 2, 4 * j + 3);
        glue((ta, 0), (tc, 0));
        glue((ta, 1), (tb, 2));
        glue((tb, 0), (td, 0));
        glue((tb, 1), (tc, 2));
        glue((tc, 1), (td, 2));
        // The slit: one side goes to the next torus.
        glue((td, 1), (4 * ((j + 1) % 3), 2));
    }
    let classes = vertex_classes(&gluing);
    // Class of the lattice corner is the first zero, class of t the second.
    let minus_root = classes[0];
    let plus_root = classes[2];
    let mut corner_vertex = vec![[0usize; 3]; 12];
    let mut angles = [0.0f64; 2];
    for (i, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let root = classes[3 * i + k];
            let id = if root == minus_root {
                0
            } else if root == plus_root {
                1
            } else {
                unreachable!("the construction has exactly two vertices")
            };
            corner_vertex[i][k] = id;
            angles[id] += corner_angle(tri, k);
        }
    }
    let cone_points = angles
        .iter()
        .enumerate()
        .map(|(id, a)| ConePoint {
            id,
            angle_pi: a / PI,
        })
        .collect();
    Ok(FlatSurface {
        triangles,
        gluing,
        corner_vertex,
        cone_points,
        area,
    })
}

/// Default slit: direction `(1/π, 1/e)` with length `0.05` times the smallest systole.
pub fn default_slit(p: &TripleProto) -> Vec2 {
    let lam = lambda_of(p.disc, p.e).to_f64();
    let sys =
        systole([lam, 0.0], [0.0, lam]).min(systole([p.a as f64, 0.0], [p.b as f64, p.d as f64]));
    let dir = [1.0 / PI, 1.0 / std::f64::consts::E];
    scale(dir, 0.05 * sys / norm(dir))
}

/// A saddle connection, oriented from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleConnection {
    pub start: usize,
    pub end: usize,
    pub holonomy: Vec2,
}

impl SaddleConnection {
    pub fn length(&self) -> f64 {
        norm(self.holonomy)
    }

    pub fn angle(&self) -> f64 {
        self.holonomy[1].atan2(self.holonomy[0])
    }

    pub fn reversed(&self) -> Self {
        Self {
            start: self.end,
            end: self.start,
            holonomy: neg(self.holonomy),
        }
    }
}

/// Relative tolerance for deciding that a vertex sits on a wedge boundary ray.
const RAY_EPS: f64 = 1e-10;

fn strictly_left(r: Vec2, c: Vec2) -> bool {
    cross(r, c) > RAY_EPS * norm(r) * norm(c)
}

/// Where the ray along `w` meets the line through `e` and `s`.
fn ray_hit(w: Vec2, e: Vec2, s: Vec2) -> Vec2 {
    let d = sub(s, e);
    let den = cross(w, d);
    if den.abs() < f64::MIN_POSITIVE {
        return e;
    }
    let k = -cross(w, e) / den;
    add(e, scale(d, k.clamp(0.0, 1.0)))
}

struct Wedge {
    tri: usize,
    side: usize,
    /// Developed position of the start of `side` (counter-clockwise end as seen from the origin).
    s: Vec2,
    /// Developed position of the end of `side` (clockwise end).
    e: Vec2,
    right: Vec2,
    left: Vec2,
}

/// Saddle connections leaving corner `k` of triangle `i` with direction in
/// `[side k, reversed side k+2)`.
fn sc_from_corner(surf: &FlatSurface, i: usize, k: usize, radius: f64) -> Vec<SaddleConnection> {
    let mut out = Vec::new();
    let start = surf.corner_vertex[i][k];
    let tri = &surf.triangles[i];
    if norm(tri[k]) <= radius {
        out.push(SaddleConnection {
            start,
            end: surf.corner_vertex[i][(k + 1) % 3],
            holonomy: tri[k],
        });
    }
    let a = tri[k];
    let b = neg(tri[(k + 2) % 3]);
    let (j, m) = surf.gluing[i][(k + 1) % 3];
    let mut stack = vec![Wedge {
        tri: j,
        side: m,
        s: b,
        e: a,
        right: a,
        left: b,
    }];
    while let Some(w) = stack.pop() {
        if dist_to_segment(ray_hit(w.right, w.e, w.s), ray_hit(w.left, w.e, w.s)) > radius {
            continue;
        }
        let t = &surf.triangles[w.tri];
        let c = add(w.e, t[(w.side + 1) % 3]);
        let next_cw = surf.gluing[w.tri][(w.side + 1) % 3];
        let next_ccw = surf.gluing[w.tri][(w.side + 2) % 3];
        let after_right = strictly_left(w.right, c);
        let before_left = strictly_left(c, w.left);
        match (after_right, before_left) {
            (true, true) => {
                if norm(c) <= radius {
                    out.push(SaddleConnection {
                        start,
                        end: surf.corner_vertex[w.tri][(w.side + 2) % 3],
                        holonomy: c,
                    });
                }
                stack.push(Wedge {
                    tri: next_cw.0,
                    side: next_cw.1,
                    s: c,
                    e: w.e,
                    right: w.right,
                    left: c,
                });
                stack.push(Wedge {
                    tri: next_ccw.0,
                    side: next_ccw.1,
                    s: w.s,
                    e: c,
                    right: c,
                    left: w.left,
                });
            }
            // Third vertex on or clockwise of the right ray: the whole wedge leaves through C→S.
            (false, _) => {
                stack.push(Wedge {
                    tri: next_ccw.0,
                    side: next_ccw.1,
                    s: w.s,
                    e: c,
                    ..w
                });
            }
            // On or counter-clockwise of the left ray: it leaves through E→C.
            (true, false) => {
                stack.push(Wedge {
                    tri: next_cw.0,
                    side: next_cw.1,
                    s: c,
                    e: w.e,
                    ..w
                });
            }
        }
    }
    out
}

fn canonical_order(a: &SaddleConnection, b: &SaddleConnection) -> std::cmp::Ordering {
    a.length()
        .total_cmp(&b.length())
        .then(a.angle().total_cmp(&b.angle()))
        .then(a.start.cmp(&b.start))
        .then(a.end.cmp(&b.end))
}

/// All oriented saddle connections of length at most `radius`, sorted by
/// length, then angle. Each connection appears once per orientation.
pub fn enumerate_sc(surf: &FlatSurface, radius: f64) -> Vec<SaddleConnection> {
    let corners: Vec<(usize, usize)> = (0..surf.triangles.len())
        .flat_map(|i| (0..3).map(move |k| (i, k)))
        .collect();
    let mut all: Vec<SaddleConnection> = corners
        .par_iter()
        .flat_map_iter(|&(i, k)| sc_from_corner(surf, i, k, radius))
        .collect();
    all.sort_by(canonical_order);
    all
}

/// Homologous saddle connections: same endpoints, same holonomy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScFamily {
    pub holonomy: Vec2,
    pub members: usize,
    pub endpoints: (usize, usize),
}

/// Group connections from zero `0` to zero `1` by holonomy.
///
/// Holonomies within `tol` are merged; a pair of distinct holonomies closer than
/// `2·tol` is reported as ambiguous.
pub fn group_families(
    connections: &[SaddleConnection],
    tol: f64,
) -> Result<Vec<ScFamily>, FlatError> {
    let mut hol: Vec<Vec2> = connections
        .iter()
        .filter(|c| c.start == 0 && c.end == 1)
        .map(|c| c.holonomy)
        .collect();
    hol.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    // Union neighbours within tol, scanning a window in x.
    let n = hol.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if hol[j][0] - hol[i][0] > 2.0 * tol {
                break;
            }
            let dist = norm(sub(hol[i], hol[j]));
            if dist <= tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri.max(rj)] = ri.min(rj);
            } else if dist <= 2.0 * tol {
                return Err(FlatError::AmbiguousGrouping(hol[i], hol[j]));
            }
        }
    }
    let mut groups: BTreeMap<usize, (Vec2, usize)> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_insert((hol[r], 0)).1 += 1;
    }
    let mut families = Vec::with_capacity(groups.len());
    for (holonomy, size) in groups.into_values() {
        if size > 3 {
            return Err(FlatError::OversizedFamily { size, holonomy });
        }
        families.push(ScFamily {
            holonomy,
            members: size,
            endpoints: (0, 1),
        });
    }
    families.sort_by(|a, b| {
        norm(a.holonomy).total_cmp(&norm(b.holonomy)).then(
            a.holonomy[1]
                .atan2(a.holonomy[0])
                .total_cmp(&b.holonomy[1].atan2(b.holonomy[0])),
        )
    });
    Ok(families)
}

/// Default grouping tolerance for radius `r`.
pub fn default_tol(radius: f64) -> f64 {
    1e-9 * radius
}

/// Fewest families for which the estimates are considered meaningful.
pub const MIN_FAMILIES: usize = 1000;

/// Counts and normalised estimates `ĉ_k = N_k·Area/(πR²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvEstimate {
    pub radius: f64,
    pub counts: [usize; 3],
    pub estimates: [f64; 3],
}

#[derive(Serialize)]
struct SvEstimateJson {
    #[serde(rename = "R")]
    radius: f64,
    families: BTreeMap<&'static str, usize>,
    estimates: BTreeMap<&'static str, f64>,
}

impl SvEstimate {
    pub fn total_families(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn sum(&self) -> f64 {
        self.estimates.iter().sum()
    }

    pub fn json_string(&self) -> String {
        let json = SvEstimateJson {
            radius: self.radius,
            families: BTreeMap::from([
                ("1", self.counts[0]),
                ("2", self.counts[1]),
                ("3", self.counts[2]),
            ]),
            estimates: BTreeMap::from([
                ("c1", self.estimates[0]),
                ("c2", self.estimates[1]),
                ("c3", self.estimates[2]),
            ]),
        };
        serde_json::to_string(&json).expect("plain struct serialises")
    }
}

/// Tally families by multiplicity.
pub fn estimate_from_families(families: &[ScFamily], area: f64, radius: f64) -> SvEstimate {
    let mut counts = [0usize; 3];
    for f in families {
        counts[f.members - 1] += 1;
    }
    let norm = area / (PI * radius * radius);
    SvEstimate {
        radius,
        counts,
        estimates: counts.map(|n| n as f64 * norm),
    }
}

pub fn estimate_sv(surf: &FlatSurface, radius: f64, tol: f64) -> Result<SvEstimate, FlatError> {
    let families = group_families(&enumerate_sc(surf, radius), tol)?;
    Ok(estimate_from_families(&families, surf.area, radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::Discriminant;
    use proptest::prelude::*;

    fn d8() -> TripleProto {
        TripleProto {
            a: 1,
            b: 0,
            d: 1,
            e: 0,
            disc: Discriminant::new(8).unwrap(),
        }
    }

    const SLIT: Vec2 = [0.11, 0.073];

    /// Order-free comparison key, holonomy rounded to 1e-8.
    fn keyed(sc: &[SaddleConnection]) -> Vec<(usize, usize, i64, i64)> {
        let mut out: Vec<_> = sc
            .iter()
            .map(|c| {
                (
                    c.start,
                    c.end,
                    (c.holonomy[0] * 1e8).round() as i64,
                    (c.holonomy[1] * 1e8).round() as i64,
                )
            })
            .collect();
        out.sort_unstable();
        out
    }

    #[test]
    fn construction_invariants() {
        let s = build_slit_triple(&d8(), SLIT).unwrap();
        assert!((s.area - 4.0).abs() < 1e-12);
        assert_eq!(s.triangles.len(), 12);
        assert_eq!(s.cone_points.len(), 2);
        assert!(s
            .cone_points
            .iter()
            .all(|c| (c.angle_pi - 6.0).abs() < 1e-12));
        assert!((s.angle_excess() - 8.0 * PI).abs() < 1e-12);
        assert!(s.check_invariants().all());
        let tri_area: f64 = s
            .triangles
            .iter()
            .map(|t| cross(t[0], neg(t[2])) / 2.0)
            .sum();
        assert!((tri_area - s.area).abs() < 1e-12);
    }

    #[test]
    fn delaunay_preserves_invariants() {
        let mut s = build_slit_triple(&d8(), SLIT).unwrap();
        let flips = s.make_delaunay();
        assert!(flips > 0);
        assert!(s.check_invariants().all());
        assert_eq!(s.make_delaunay(), 0);
        for i in 0..s.triangles.len() {
            for k in 0..3 {
                let (j, m) = s.gluing[i][k];
                let sum = corner_angle(&s.triangles[i], (k + 2) % 3)
                    + corner_angle(&s.triangles[j], (m + 2) % 3);
                assert!(sum <= PI + 1e-9);
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            build_slit_triple(&d8(), [1.2, 0.7]),
            Err(FlatError::SlitTooLong(_))
        ));
        assert!(matches!(
            build_slit_triple(&d8(), [0.1, 0.0]),
            Err(FlatError::DegenerateDirection(_))
        ));
        assert!(matches!(
            build_slit_triple(&d8(), [0.1, 0.1]),
            Err(FlatError::DegenerateDirection(_))
        ));
        let q = TripleProto {
            a: 2,
            b: 1,
            d: 1,
            e: 1,
            disc: Discriminant::new(17).unwrap(),
        };
        assert!(build_slit_triple(&q, default_slit(&q))
            .unwrap()
            .check_invariants()
            .all());
    }

    #[test]
    fn short_radius_sees_only_the_slit() {
        let s = build_slit_triple(&d8(), SLIT).unwrap();
        let len = norm(SLIT);
        assert!(enumerate_sc(&s, 0.5 * len).is_empty());
        let sc = enumerate_sc(&s, len + 1e-6);
        assert_eq!(sc.len(), 6);
        let fam = group_families(&sc, default_tol(len)).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].members, 3);
        assert!(norm(sub(fam[0].holonomy, SLIT)) < 1e-12);
    }

    #[test]
    fn delaunay_and_fan_agree() {
        let s = build_slit_triple(&d8(), SLIT).unwrap();
        let mut dl = s.clone();
        dl.make_delaunay();
        let a = enumerate_sc(&s, 6.0);
        let b = enumerate_sc(&dl, 6.0);
        assert_eq!(keyed(&a), keyed(&b));
    }

    #[test]
    fn negation_symmetry_and_prefix() {
        let mut s = build_slit_triple(&d8(), SLIT).unwrap();
        s.make_delaunay();
        let big = enumerate_sc(&s, 8.0);
        let small = enumerate_sc(&s, 5.0);
        assert!(small.len() < big.len());
        for (x, y) in small.iter().zip(&big) {
            assert_eq!((x.start, x.end), (y.start, y.end));
            assert!(norm(sub(x.holonomy, y.holonomy)) < 1e-9);
        }
        let rev: Vec<SaddleConnection> = big.iter().map(SaddleConnection::reversed).collect();
        assert_eq!(keyed(&big), keyed(&rev));
    }

    #[test]
    fn grouping() {
        let one = SaddleConnection {
            start: 0,
            end: 1,
            holonomy: [1.0, 2.0],
        };
        let fam = group_families(&[one, one, one], 0.0).unwrap();
        assert_eq!(fam[0].members, 3);
        let single = group_families(&[one], 1e-9).unwrap();
        assert_eq!(single[0].members, 1);
        let near = SaddleConnection {
            holonomy: [1.0 + 1.5e-9, 2.0],
            ..one
        };
        assert!(matches!(
            group_families(&[one, near], 1e-9),
            Err(FlatError::AmbiguousGrouping(..))
        ));
        assert!(matches!(
            group_families(&[one; 4], 1e-9),
            Err(FlatError::OversizedFamily { size: 4, .. })
        ));
        let other = SaddleConnection {
            start: 1,
            end: 0,
            ..one
        };
        assert!(group_families(&[other], 1e-9).unwrap().is_empty());
    }

    #[test]
    fn estimate_json_shape() {
        let e = SvEstimate {
            radius: 30.0,
            counts: [1, 2, 3],
            estimates: [0.5, 0.25, 0.125],
        };
        assert_eq!(
            e.json_string(),
            r#"{"R":30.0,"families":{"1":1,"2":2,"3":3},"estimates":{"c1":0.5,"c2":0.25,"c3":0.125}}"#
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn generic_slits_give_valid_surfaces(x in 0.02f64..0.3, y in 0.02f64..0.3, flip in any::<bool>()) {
            let t = if flip { [-x, y] } else { [x, y] };
            match build_slit_triple(&d8(), t) {
                Ok(mut s) => {
                    prop_assert!(s.check_invariants().all());
                    s.make_delaunay();
                    prop_assert!(s.check_invariants().all());
                    let sc = enumerate_sc(&s, 3.0);
                    let fam = group_families(&sc, default_tol(3.0)).unwrap();
                    prop_assert!(fam.iter().any(|f| f.members == 3));
                }
                Err(FlatError::DegenerateDirection(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }

        #[test]
        fn counting_is_monotone(r1 in 0.5f64..4.0, dr in 0.0f64..2.0) {
            let mut s = build_slit_triple(&d8(), SLIT).unwrap();
            s.make_delaunay();
            prop_assert!(enumerate_sc(&s, r1).len() <= enumerate_sc(&s, r1 + dr).len());
        }
    }
}
