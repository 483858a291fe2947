//! Rational polyhedra with both representations kept in canonical form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{dot_iq, is_integral, primitive_of_rat, rref, to_qvec, IVec, Projector, QVec, Rat};
use crate::cone::{echelon_basis, Cone};
use crate::dd::{self, Generators};
use crate::error::{check_dim, Error, Result};

/// `normal·x ≤ rhs` (or `=` when used as an equality).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: IVec,
    pub rhs: Rat,
}

impl Halfspace {
    pub fn new(normal: IVec, rhs: Rat) -> Self {
        Self { normal, rhs }
    }

    /// Convenience constructor from machine integers.
    pub fn le(normal: &[i64], rhs: i64) -> Self {
        Self::new(normal.iter().map(|&x| BigInt::from(x)).collect(), Rat::from_integer(rhs.into()))
    }

    /// `normal·x ≥ rhs`, stored as `-normal·x ≤ -rhs`.
    pub fn ge(normal: &[i64], rhs: i64) -> Self {
        Self::le(&normal.iter().map(|x| -x).collect::<Vec<_>>(), -rhs)
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot_iq(&self.normal, x)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HRep {
    pub inequalities: Vec<Halfspace>,
    pub equalities: Vec<Halfspace>,
}

impl HRep {
    pub fn new(inequalities: Vec<Halfspace>, equalities: Vec<Halfspace>) -> Self {
        Self { inequalities, equalities }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VRep {
    pub vertices: Vec<QVec>,
    pub rays: Vec<IVec>,
    pub lines: Vec<IVec>,
}

impl VRep {
    pub fn new(vertices: Vec<QVec>, rays: Vec<IVec>) -> Self {
        Self { vertices, rays, lines: Vec::new() }
    }

    pub fn from_points(points: &[&[i64]]) -> Self {
        Self::new(points.iter().map(|p| crate::arith::qvec(p)).collect(), Vec::new())
    }
}

/// A nonempty rational polyhedron.
///
/// Vertices are sorted lexicographically. When the polyhedron contains
/// lines, "vertices" are the points of the minimal faces that lie in the
/// orthogonal complement of the lineality space. Inequality normals are
/// primitive and reduced modulo the equalities, which are in reduced
/// echelon form. Equal point sets therefore have equal values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    dim: usize,
    h: HRep,
    v: VRep,
    tail: Cone,
}

impl fmt::Debug for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt = |p: &QVec| format!("({})", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        f.debug_struct("Polyhedron")
            .field("dim", &self.dim)
            .field("vertices", &self.v.vertices.iter().map(pt).collect::<Vec<_>>())
            .field("rays", &self.v.rays)
            .field("lines", &self.v.lines)
            .field("inequalities", &self.h.inequalities.len())
            .field("equalities", &self.h.equalities.len())
            .finish()
    }
}

/// Integer row `(−q·a, p)` for `a·x ≤ p/q`, read as `row·(x, t) ≥ 0`.
fn homogenize(h: &Halfspace) -> IVec {
    let q = h.rhs.denom();
    let mut row: IVec = h.normal.iter().map(|a| -(a * q)).collect();
    row.push(h.rhs.numer().clone());
    row
}

fn scale_row(normal: &[Rat], rhs: &Rat) -> Halfspace {
    let prim = primitive_of_rat(normal).expect("nonzero normal");
    let p = normal.iter().position(|x| !x.is_zero()).expect("nonzero normal");
    let factor = Rat::from_integer(prim[p].clone()) / &normal[p];
    Halfspace::new(prim, rhs * factor)
}

/// Canonical equality rows: echelon form of `[normal | rhs]`.
fn canonical_equalities(rows: &[(QVec, Rat)]) -> Vec<Halfspace> {
    if rows.is_empty() {
        return Vec::new();
    }
    let aug: Vec<QVec> =
        rows.iter().map(|(n, r)| n.iter().cloned().chain(std::iter::once(r.clone())).collect()).collect();
    let (ech, _) = rref(aug);
    ech.into_iter()
        .map(|mut row| {
            let rhs = row.pop().expect("augmented row");
            scale_row(&row, &rhs)
        })
        .collect()
}

/// Reduces `(normal, rhs)` modulo canonical equality rows.
fn reduce_halfspace(normal: &mut QVec, rhs: &mut Rat, eqs: &[Halfspace]) {
    for e in eqs {
        let p = e.normal.iter().position(|x| !x.is_zero()).expect("nonzero equality");
        if normal[p].is_zero() {
            continue;
        }
        let f = &normal[p] / Rat::from_integer(e.normal[p].clone());
        for (o, x) in normal.iter_mut().zip(&e.normal) {
            if !x.is_zero() {
                *o -= &f * x;
            }
        }
        *rhs -= &f * &e.rhs;
    }
}

impl Polyhedron {
    fn finish(dim: usize, gens: Generators, polar: Generators) -> Result<Self> {
        let split = |v: &IVec| (v[..dim].to_vec(), v[dim].clone());

        let lines = echelon_basis(&gens.lines.iter().map(|l| split(l).0).collect::<Vec<_>>());
        let proj = Projector::new(&lines);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for g in &gens.rays {
            let (x, t) = split(g);
            if t.is_positive() {
                let t = Rat::from_integer(t);
                let p: QVec = x.into_iter().map(|c| Rat::from_integer(c) / &t).collect();
                vertices.push(proj.project(&p));
            } else {
                rays.push(primitive_of_rat(&proj.project(&to_qvec(&x)))?);
            }
        }
        if vertices.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        vertices.sort();
        vertices.dedup();
        rays.sort();
        rays.dedup();

        // Polar rows y = (a, c) mean a·x + c ≥ 0, i.e. (−a)·x ≤ c.
        let eq_rows: Vec<(QVec, Rat)> = polar
            .lines
            .iter()
            .map(|y| {
                let (a, c) = split(y);
                (to_qvec(&a), Rat::from_integer(-c))
            })
            .collect();
        let equalities = canonical_equalities(&eq_rows);
        let mut inequalities: Vec<Halfspace> = Vec::new();
        for y in &polar.rays {
            let (a, c) = split(y);
            let mut normal: QVec = a.iter().map(|x| Rat::from_integer(-x)).collect();
            let mut rhs = Rat::from_integer(c);
            reduce_halfspace(&mut normal, &mut rhs, &equalities);
            if normal.iter().all(Zero::is_zero) {
                // The face at infinity, 0 ≤ t.
                continue;
            }
            inequalities.push(scale_row(&normal, &rhs));
        }
        inequalities.sort();
        inequalities.dedup();

        let tail = Cone::from_generators(dim, &rays, &lines)?;
        Ok(Self { dim, h: HRep { inequalities, equalities }, v: VRep { vertices, rays, lines }, tail })
    }

    /// Builds the polyhedron `{x : a·x ≤ b, e·x = f}`.
    pub fn from_h(dim: usize, h: &HRep) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        for hs in h.inequalities.iter().chain(&h.equalities) {
            check_dim(dim, hs.normal.len())?;
        }
        let mut ineqs: Vec<IVec> = h.inequalities.iter().map(homogenize).collect();
        let mut t = vec![BigInt::zero(); dim + 1];
        t[dim] = BigInt::one();
        ineqs.push(t);
        let eqs: Vec<IVec> = h.equalities.iter().map(homogenize).collect();
        let gens = dd::generators(dim + 1, &ineqs, &eqs);
        if !gens.rays.iter().any(|g| g[dim].is_positive()) {
            return Err(Error::EmptyPolyhedron);
        }
        let polar = dd::generators(dim + 1, &gens.rays, &gens.lines);
        Self::finish(dim, gens, polar)
    }

    /// Builds `conv(vertices) + cone(rays) + span(lines)`.
    pub fn from_v(dim: usize, v: &VRep) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if v.vertices.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let mut gens: Vec<IVec> = Vec::with_capacity(v.vertices.len() + v.rays.len());
        for p in &v.vertices {
            check_dim(dim, p.len())?;
            let den = crate::arith::denominator_lcm(p);
            let mut row: IVec = p.iter().map(|x| (x * &den).to_integer()).collect();
            row.push(den);
            gens.push(row);
        }
        let lift = |r: &IVec| -> Result<IVec> {
            check_dim(dim, r.len())?;
            let mut row = r.clone();
            row.push(BigInt::zero());
            Ok(row)
        };
        for r in &v.rays {
            gens.push(lift(r)?);
        }
        let lines = v.lines.iter().map(lift).collect::<Result<Vec<_>>>()?;
        let polar = dd::generators(dim + 1, &gens, &lines);
        let forward = dd::generators(dim + 1, &polar.rays, &polar.lines);
        Self::finish(dim, forward, polar)
    }

    /// Convex hull of integer points.
    pub fn from_points(points: &[&[i64]]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        Self::from_v(dim, &VRep::from_points(points))
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> &HRep {
        &self.h
    }

    pub fn v(&self) -> &VRep {
        &self.v
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.v.vertices
    }

    pub fn rays(&self) -> &[IVec] {
        &self.v.rays
    }

    pub fn lines(&self) -> &[IVec] {
        &self.v.lines
    }

    pub fn inequalities(&self) -> &[Halfspace] {
        &self.h.inequalities
    }

    pub fn equalities(&self) -> &[Halfspace] {
        &self.h.equalities
    }

    /// The recession cone.
    pub fn tail_cone(&self) -> &Cone {
        &self.tail
    }

    /// Dimension of the affine hull.
    pub fn dimension(&self) -> usize {
        self.dim - self.h.equalities.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.h.equalities.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.v.rays.is_empty() && self.v.lines.is_empty()
    }

    /// Whether every vertex is integral (and the polyhedron is pointed).
    pub fn is_lattice(&self) -> bool {
        self.v.lines.is_empty() && self.v.vertices.iter().all(|v| is_integral(v))
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.h.equalities.iter().all(|e| e.eval(x) == e.rhs)
            && self.h.inequalities.iter().all(|h| h.eval(x) <= h.rhs))
    }

    pub fn contains_point(&self, x: &[i64]) -> Result<bool> {
        let q: QVec = x.iter().map(|&c| Rat::from_integer(c.into())).collect();
        self.contains(&q)
    }

    pub fn equals(&self, other: &Polyhedron) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        Ok(self == other)
    }

    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim, other.dim)?;
        let mut vertices = Vec::with_capacity(self.v.vertices.len() * other.v.vertices.len());
        for a in &self.v.vertices {
            for b in &other.v.vertices {
                vertices.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        let rays = self.v.rays.iter().chain(&other.v.rays).cloned().collect();
        let lines = self.v.lines.iter().chain(&other.v.lines).cloned().collect();
        Polyhedron::from_v(self.dim, &VRep { vertices, rays, lines })
    }

    /// `k·Q` for a positive integer `k`.
    pub fn scale(&self, k: u64) -> Result<Polyhedron> {
        if k == 0 {
            return Err(Error::InvalidInput("scale factor must be positive".into()));
        }
        let f = Rat::from_integer(BigInt::from(k));
        let scale_hs = |h: &Halfspace| Halfspace::new(h.normal.clone(), &h.rhs * &f);
        Ok(Polyhedron {
            dim: self.dim,
            h: HRep {
                inequalities: self.h.inequalities.iter().map(scale_hs).collect(),
                equalities: self.h.equalities.iter().map(scale_hs).collect(),
            },
            v: VRep {
                vertices: self.v.vertices.iter().map(|p| p.iter().map(|x| x * &f).collect()).collect(),
                rays: self.v.rays.clone(),
                lines: self.v.lines.clone(),
            },
            tail: self.tail.clone(),
        })
    }

    /// `Q + t`.
    pub fn translate(&self, t: &[BigInt]) -> Result<Polyhedron> {
        check_dim(self.dim, t.len())?;
        let shift = to_qvec(t);
        let vertices = self.v.vertices.iter().map(|p| p.iter().zip(&shift).map(|(x, y)| x + y).collect()).collect();
        Polyhedron::from_v(self.dim, &VRep { vertices, rays: self.v.rays.clone(), lines: self.v.lines.clone() })
    }

    /// Image under the projection onto the first `k` coordinates.
    pub fn project_prefix(&self, k: usize) -> Result<Polyhedron> {
        if k == 0 || k > self.dim {
            return Err(Error::InvalidInput(format!("cannot project to {k} coordinates")));
        }
        let cut = |v: &IVec| v[..k].to_vec();
        let vertices = self.v.vertices.iter().map(|p| p[..k].to_vec()).collect();
        let rays = self.v.rays.iter().map(cut).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let lines = self.v.lines.iter().map(cut).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        Polyhedron::from_v(k, &VRep { vertices, rays, lines })
    }

    /// `Q ∩ R`, failing with `EmptyPolyhedron` when disjoint.
    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim, other.dim)?;
        let mut h = self.h.clone();
        h.inequalities.extend(other.h.inequalities.iter().cloned());
        h.equalities.extend(other.h.equalities.iter().cloned());
        Polyhedron::from_h(self.dim, &h)
    }

    /// `z − Q = {z − y : y ∈ Q}` as an H-representation.
    pub fn reflected_through(&self, z: &[Rat]) -> Result<HRep> {
        check_dim(self.dim, z.len())?;
        let flip = |h: &Halfspace| Halfspace::new(h.normal.iter().map(|x| -x).collect(), &h.rhs - dot_iq(&h.normal, z));
        Ok(HRep {
            inequalities: self.h.inequalities.iter().map(flip).collect(),
            equalities: self.h.equalities.iter().map(flip).collect(),
        })
    }

    /// Maximum of `l·x` over the polyhedron, `None` when unbounded above.
    pub fn max_of(&self, l: &[BigInt]) -> Result<Option<Rat>> {
        check_dim(self.dim, l.len())?;
        let dir = |g: &IVec| crate::arith::dot(l, g);
        if self.v.lines.iter().any(|g| !dir(g).is_zero()) || self.v.rays.iter().any(|g| dir(g).is_positive()) {
            return Ok(None);
        }
        Ok(self.v.vertices.iter().map(|p| dot_iq(l, p)).max())
    }

    /// Least common multiple of the vertex denominators.
    pub fn vertex_denominator(&self) -> BigInt {
        self.v.vertices.iter().flat_map(|p| p.iter()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }
}
