use nalgebra::Vector2;

use crate::error::{GeomError, Result};

pub type Point2 = Vector2<f64>;

/// Planar convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

fn cross(a: Point2, b: Point2) -> f64 {
    a.x * b.y - a.y * b.x
}

impl ConvexPolygon {
    /// Validate a counterclockwise convex vertex list.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(GeomError::Degenerate(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.x.is_finite() || !v.y.is_finite()) {
            return Err(GeomError::InvalidInput("non-finite vertex".into()));
        }
        let scale = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
        let tol = 1e-12 * scale * scale;
        let n = vertices.len();
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if (b - a).norm() <= 1e-14 * scale {
                return Err(GeomError::Degenerate(format!("duplicate adjacent vertex at {i}")));
            }
            if cross(b - a, c - b) < -tol {
                return Err(GeomError::InvalidInput(format!(
                    "vertex sequence is not convex counterclockwise at {}",
                    (i + 1) % n
                )));
            }
        }
        let poly = Self { vertices };
        if poly.area() <= tol {
            return Err(GeomError::Degenerate("polygon has zero area".into()));
        }
        Ok(poly)
    }

    /// Convex hull of arbitrary points; collinear points are dropped.
    pub fn hull(points: &[Point2]) -> Result<Self> {
        let mut pts: Vec<Point2> = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        if pts.len() < 3 {
            return Err(GeomError::Degenerate("hull of fewer than 3 distinct points".into()));
        }
        let mut lower: Vec<Point2> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 1] - lower[lower.len() - 2], p - lower[lower.len() - 1]) <= 0.0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point2> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 1] - upper[upper.len() - 2], p - upper[upper.len() - 1]) <= 0.0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Self::new(lower)
    }

    pub fn from_xy(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(points.iter().map(|&(x, y)| Point2::new(x, y)).collect())
    }

    /// Regular `k`-gon of circumradius `r`, first vertex at angle `phase`.
    pub fn regular(k: usize, r: f64, phase: f64) -> Result<Self> {
        let verts = (0..k)
            .map(|i| {
                let a = phase + std::f64::consts::TAU * i as f64 / k as f64;
                Point2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        Self::new(verts)
    }

    /// Axis-aligned rectangle `[-a, a] × [-b, b]`.
    pub fn rectangle(a: f64, b: f64) -> Result<Self> {
        Self::from_xy(&[(-a, -b), (a, -b), (a, b), (-a, b)])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        0.5 * self.edges().map(|(a, b)| cross(a, b)).sum::<f64>()
    }

    pub fn centroid(&self) -> Point2 {
        let mut c = Point2::zeros();
        let mut a2 = 0.0;
        let o = self.vertices[0];
        for (a, b) in self.edges() {
            let w = cross(a - o, b - o);
            a2 += w;
            c += (a + b - 2.0 * o) * w;
        }
        o + c / (3.0 * a2)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max((a - b).norm());
            }
        }
        d
    }

    pub fn support(&self, w: Point2) -> f64 {
        self.vertices.iter().map(|v| v.dot(&w)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Membership with a relative boundary tolerance.
    pub fn contains(&self, p: Point2) -> bool {
        self.signed_margin(p) >= -1e-12 * self.diameter().max(1.0)
    }

    /// Distance to the nearest edge line, positive inside.
    pub fn signed_margin(&self, p: Point2) -> f64 {
        self.edges()
            .map(|(a, b)| {
                let e = b - a;
                cross(e, p - a) / e.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn translate(&self, d: Point2) -> Self {
        Self { vertices: self.vertices.iter().map(|v| v + d).collect() }
    }

    pub fn scale(&self, s: f64) -> Self {
        assert!(s > 0.0, "scale factor must be positive");
        Self { vertices: self.vertices.iter().map(|v| v * s).collect() }
    }

    /// Apply `diag(sx, sy)`.
    pub fn scale_xy(&self, sx: f64, sy: f64) -> Self {
        assert!(sx > 0.0 && sy > 0.0, "scale factors must be positive");
        Self { vertices: self.vertices.iter().map(|v| Point2::new(v.x * sx, v.y * sy)).collect() }
    }

    /// True when `-K = K` up to `tol·diam`.
    pub fn is_o_symmetric(&self, tol: f64) -> bool {
        let eps = tol * self.diameter().max(1.0);
        self.vertices
            .iter()
            .all(|v| self.vertices.iter().any(|w| (v + w).norm() <= eps))
    }

    fn lowest_index(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.vertices.iter().enumerate() {
            let b = self.vertices[best];
            if v.y < b.y || (v.y == b.y && v.x < b.x) {
                best = i;
            }
        }
        best
    }

    /// Minkowski sum by merging edge sequences in angular order.
    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let (p, q) = (&self.vertices, &other.vertices);
        let (n, m) = (p.len(), q.len());
        let (i0, j0) = (self.lowest_index(), other.lowest_index());
        let mut out = Vec::with_capacity(n + m);
        let (mut i, mut j) = (0, 0);
        while i < n || j < m {
            let a = p[(i0 + i) % n];
            let b = q[(j0 + j) % m];
            out.push(a + b);
            let ea = p[(i0 + i + 1) % n] - a;
            let eb = q[(j0 + j + 1) % m] - b;
            let c = if i >= n {
                -1.0
            } else if j >= m {
                1.0
            } else {
                cross(ea, eb)
            };
            if c > 0.0 {
                i += 1;
            } else if c < 0.0 {
                j += 1;
            } else {
                // parallel edges are summed into one
                i += 1;
                j += 1;
            }
        }
        Self { vertices: cleanup(out) }
    }

    /// `½(K + C)`.
    pub fn midpoint(&self, other: &Self) -> Self {
        self.minkowski_sum(other).scale(0.5)
    }

    /// Intersection by Sutherland–Hodgman clipping; `None` if it has no area.
    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let mut poly: Vec<Point2> = self.vertices.clone();
        for (a, b) in other.edges() {
            if poly.is_empty() {
                break;
            }
            let e = b - a;
            let side = |p: Point2| cross(e, p - a);
            let mut next = Vec::with_capacity(poly.len() + 1);
            for k in 0..poly.len() {
                let cur = poly[k];
                let prev = poly[(k + poly.len() - 1) % poly.len()];
                let (sc, sp) = (side(cur), side(prev));
                if sc >= 0.0 {
                    if sp < 0.0 {
                        next.push(prev + (cur - prev) * (sp / (sp - sc)));
                    }
                    next.push(cur);
                } else if sp >= 0.0 {
                    next.push(prev + (cur - prev) * (sp / (sp - sc)));
                }
            }
            poly = next;
        }
        let poly = cleanup(poly);
        if poly.len() < 3 {
            return None;
        }
        let out = Self { vertices: poly };
        if out.area() <= 1e-15 * self.area().min(other.area()) {
            None
        } else {
            Some(out)
        }
    }

    pub fn intersection_area(&self, other: &Self) -> f64 {
        self.intersection(other).map_or(0.0, |p| p.area())
    }

    pub fn symmetric_difference_area(&self, other: &Self) -> f64 {
        (self.area() + other.area() - 2.0 * self.intersection_area(other)).max(0.0)
    }

    /// Euclidean distance from `p` to the polygon (0 inside).
    pub fn distance_to(&self, p: Point2) -> f64 {
        if self.signed_margin(p) >= 0.0 {
            return 0.0;
        }
        self.edges()
            .map(|(a, b)| {
                let e = b - a;
                let t = ((p - a).dot(&e) / e.norm_squared()).clamp(0.0, 1.0);
                (p - (a + e * t)).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Exact Hausdorff distance; attained at a vertex for convex polygons.
    pub fn hausdorff(&self, other: &Self) -> f64 {
        let d1 = self.vertices.iter().map(|&v| other.distance_to(v)).fold(0.0, f64::max);
        let d2 = other.vertices.iter().map(|&v| self.distance_to(v)).fold(0.0, f64::max);
        d1.max(d2)
    }

    /// Polar body with respect to an interior point `z`.
    pub fn polar(&self, z: Point2) -> Result<Self> {
        let diam = self.diameter();
        if self.signed_margin(z) <= 1e-12 * diam {
            return Err(GeomError::InvalidCenter(format!("({}, {})", z.x, z.y)));
        }
        // each edge line ⟨ν, x⟩ = c of K - z dualizes to the vertex ν / c
        let verts: Vec<Point2> = self
            .edges()
            .map(|(a, b)| {
                let e = b - a;
                let nu = Point2::new(e.y, -e.x);
                let c = nu.dot(&(a - z));
                z + nu / c
            })
            .collect();
        Ok(Self { vertices: cleanup(verts) })
    }

    /// Area of the polar about `z`, without building it. `inf` outside.
    pub fn polar_area(&self, z: Point2) -> f64 {
        let n = self.vertices.len();
        let mut duals = Vec::with_capacity(n);
        for (a, b) in self.edges() {
            let e = b - a;
            let nu = Point2::new(e.y, -e.x);
            let c = nu.dot(&(a - z));
            if c <= 0.0 {
                return f64::INFINITY;
            }
            duals.push(nu / c);
        }
        let mut s = 0.0;
        for k in 0..n {
            s += cross(duals[k], duals[(k + 1) % n]);
        }
        0.5 * s
    }
}

/// Drop near-duplicate and collinear vertices of a closed ccw chain.
fn cleanup(mut pts: Vec<Point2>) -> Vec<Point2> {
    let scale = pts.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
    let eps = 1e-13 * scale;
    let mut changed = true;
    while changed && pts.len() >= 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            let dup = (b - a).norm() <= eps;
            let col = cross(b - a, c - b).abs() <= eps * (c - a).norm() && (b - a).dot(&(c - b)) >= 0.0;
            if dup || col {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::rectangle(1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_clockwise_and_short_inputs() {
        assert!(ConvexPolygon::from_xy(&[(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]).is_err());
        assert!(ConvexPolygon::from_xy(&[(0.0, 0.0), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn square_polar_is_cross_polytope() {
        let p = square().polar(Point2::zeros()).unwrap();
        assert!((p.area() - 2.0).abs() < 1e-14);
        assert!((p.support(Point2::new(1.0, 0.0)) - 1.0).abs() < 1e-14);
        assert!((square().polar_area(Point2::zeros()) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn polar_requires_interior_center() {
        assert!(matches!(
            square().polar(Point2::new(1.0, 0.0)),
            Err(GeomError::InvalidCenter(_))
        ));
    }

    #[test]
    fn disjoint_squares() {
        let a = square();
        let b = a.translate(Point2::new(3.0, 0.0));
        assert_eq!(a.intersection_area(&b), 0.0);
        assert!((a.symmetric_difference_area(&b) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn sum_of_square_and_triangle_supports_add() {
        let a = square();
        let b = ConvexPolygon::from_xy(&[(0.0, 0.0), (2.0, 0.5), (0.3, 1.0)]).unwrap();
        let s = a.minkowski_sum(&b);
        for k in 0..32 {
            let t = k as f64 * 0.2;
            let w = Point2::new(t.cos(), t.sin());
            assert!((s.support(w) - a.support(w) - b.support(w)).abs() < 1e-12);
        }
        // parallel edges merged: square + square is a square
        assert_eq!(a.minkowski_sum(&a).len(), 4);
    }

    #[test]
    fn centroid_of_triangle() {
        let t = ConvexPolygon::from_xy(&[(0.0, 0.0), (4.0, 0.0), (0.0, 2.0)]).unwrap();
        let c = t.centroid();
        assert!((c.x - 4.0 / 3.0).abs() < 1e-14 && (c.y - 2.0 / 3.0).abs() < 1e-14);
    }
}
