//! Polyhedral cones in canonical form.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{dot, dot_iq, primitive_of_rat, rref, to_qvec, IVec, Projector, QVec, Rat};
use crate::dd::{self, Generators};
use crate::error::{check_dim, Result};

/// A rational polyhedral cone.
///
/// Both descriptions are kept in canonical form, so two cones are equal as
/// point sets iff they compare equal:
/// * `lines` is the integer-scaled reduced echelon basis of the lineality
///   space,
/// * `rays` are the extreme rays projected onto the orthogonal complement of
///   the lineality space, primitive and sorted,
/// * `equalities` is the integer-scaled reduced echelon basis of the
///   orthogonal complement of the linear span,
/// * `facets` are outer normals `a` (meaning `a·x ≤ 0`) reduced modulo
///   `equalities`, primitive and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    rays: Vec<IVec>,
    lines: Vec<IVec>,
    facets: Vec<IVec>,
    equalities: Vec<IVec>,
}

/// Reduced echelon basis of the row space, each row scaled to a primitive
/// integer vector with positive pivot.
pub(crate) fn echelon_basis(rows: &[IVec]) -> Vec<IVec> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, _) = rref(rows.iter().map(|v| to_qvec(v)).collect());
    r.iter().map(|row| primitive_of_rat(row).expect("echelon rows are nonzero")).collect()
}

/// Reduces `v` modulo the span of echelon rows: the result vanishes on every
/// pivot column.
pub(crate) fn reduce_mod(v: &[Rat], basis: &[IVec]) -> QVec {
    let mut out = v.to_vec();
    for row in basis {
        let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        if out[p].is_zero() {
            continue;
        }
        let f = &out[p] / Rat::from_integer(row[p].clone());
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                *o -= &f * x;
            }
        }
    }
    out
}

impl Cone {
    fn canonical(dim: usize, gens: Generators, polar: Generators) -> Self {
        let lines = echelon_basis(&gens.lines);
        let proj = Projector::new(&lines);
        let mut rays: Vec<IVec> = gens
            .rays
            .iter()
            .map(|r| primitive_of_rat(&proj.project(&to_qvec(r))).expect("extreme ray outside lineality"))
            .collect();
        rays.sort();
        rays.dedup();

        let equalities = echelon_basis(&polar.lines);
        let mut facets: Vec<IVec> = polar
            .rays
            .iter()
            .map(|y| {
                let neg: QVec = y.iter().map(|x| Rat::from_integer(-x)).collect();
                primitive_of_rat(&reduce_mod(&neg, &equalities)).expect("facet normal outside equalities")
            })
            .collect();
        facets.sort();
        facets.dedup();
        Self { dim, rays, lines, facets, equalities }
    }

    /// The cone generated by `rays` and the lines spanned by `lines`.
    pub fn from_generators(dim: usize, rays: &[IVec], lines: &[IVec]) -> Result<Self> {
        for v in rays.iter().chain(lines) {
            check_dim(dim, v.len())?;
        }
        let polar = dd::generators(dim, rays, lines);
        let gens = dd::generators(dim, &polar.rays, &polar.lines);
        Ok(Self::canonical(dim, gens, polar))
    }

    /// The cone `{x : a·x ≤ 0 for a in facets, e·x = 0 for e in equalities}`.
    pub fn from_h(dim: usize, facets: &[IVec], equalities: &[IVec]) -> Result<Self> {
        for v in facets.iter().chain(equalities) {
            check_dim(dim, v.len())?;
        }
        let inward: Vec<IVec> = facets.iter().map(|a| a.iter().map(|x| -x).collect()).collect();
        let gens = dd::generators(dim, &inward, equalities);
        let polar = dd::generators(dim, &gens.rays, &gens.lines);
        Ok(Self::canonical(dim, gens, polar))
    }

    pub fn zero(dim: usize) -> Self {
        let eqs: Vec<IVec> = (0..dim).map(|i| (0..dim).map(|j| BigInt::from(i32::from(i == j))).collect()).collect();
        Self { dim, rays: Vec::new(), lines: Vec::new(), facets: Vec::new(), equalities: eqs }
    }

    pub fn full(dim: usize) -> Self {
        let lines: Vec<IVec> = (0..dim).map(|i| (0..dim).map(|j| BigInt::from(i32::from(i == j))).collect()).collect();
        Self { dim, rays: Vec::new(), lines, facets: Vec::new(), equalities: Vec::new() }
    }

    /// The non-negative orthant.
    pub fn orthant(dim: usize) -> Self {
        let rays: Vec<IVec> = (0..dim).map(|i| (0..dim).map(|j| BigInt::from(i32::from(i == j))).collect()).collect();
        Self::from_generators(dim, &rays, &[]).expect("dimensions agree")
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IVec] {
        &self.rays
    }

    pub fn lines(&self) -> &[IVec] {
        &self.lines
    }

    /// Outer facet normals: the cone satisfies `a·x ≤ 0` for each.
    pub fn facets(&self) -> &[IVec] {
        &self.facets
    }

    pub fn equalities(&self) -> &[IVec] {
        &self.equalities
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equalities.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.equalities.iter().all(|e| dot_iq(e, x).is_zero())
            && self.facets.iter().all(|a| !dot_iq(a, x).is_positive()))
    }

    pub fn contains_int(&self, x: &[BigInt]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.equalities.iter().all(|e| dot(e, x).is_zero()) && self.facets.iter().all(|a| !dot(a, x).is_positive()))
    }

    /// Membership in the relative interior: inside, and strictly inside
    /// every facet.
    pub fn relative_interior_contains(&self, x: &[Rat]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.equalities.iter().all(|e| dot_iq(e, x).is_zero())
            && self.facets.iter().all(|a| dot_iq(a, x).is_negative()))
    }

    /// Whether `other ⊆ self`.
    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        let on_hyperplanes = |v: &IVec| self.equalities.iter().all(|e| dot(e, v).is_zero());
        Ok(other.rays.iter().all(|r| on_hyperplanes(r) && self.facets.iter().all(|a| !dot(a, r).is_positive()))
            && other.lines.iter().all(|l| on_hyperplanes(l) && self.facets.iter().all(|a| dot(a, l).is_zero())))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        check_dim(self.dim, other.dim)?;
        let facets: Vec<IVec> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<IVec> = self.equalities.iter().chain(&other.equalities).cloned().collect();
        Cone::from_h(self.dim, &facets, &eqs)
    }

    /// `{l : l·x ≥ 0 for all x in the cone}`.
    pub fn dual(&self) -> Cone {
        let rays: Vec<IVec> = self.facets.iter().map(|a| a.iter().map(|x| -x).collect()).collect();
        Cone::from_generators(self.dim, &rays, &self.equalities).expect("dimensions agree")
    }

    /// `{l : l·x ≤ 0 for all x in the cone}`, the negated dual.
    pub fn polar(&self) -> Cone {
        Cone::from_generators(self.dim, &self.facets, &self.equalities).expect("dimensions agree")
    }

    /// A point of the relative interior: the sum of the extreme rays.
    pub fn interior_point(&self) -> IVec {
        let mut p = vec![BigInt::zero(); self.dim];
        for r in &self.rays {
            p.iter_mut().zip(r).for_each(|(a, b)| *a += b);
        }
        p
    }

    /// Whether `f` is a face of this cone.
    pub fn has_face(&self, f: &Cone) -> Result<bool> {
        if !self.contains_cone(f)? {
            return Ok(false);
        }
        let tight: Vec<IVec> = self
            .facets
            .iter()
            .filter(|a| f.rays.iter().chain(&f.lines).all(|g| dot(a, g).is_zero()))
            .cloned()
            .collect();
        let eqs: Vec<IVec> = self.equalities.iter().chain(&tight).cloned().collect();
        let face = Cone::from_h(self.dim, &self.facets, &eqs)?;
        Ok(&face == f)
    }

    /// Whether the cone lies inside the union of `cover`.
    ///
    /// Repeatedly subtracts each covering cone, splitting the remainder into
    /// closed pieces along the covering cone's half-spaces. Pieces of lower
    /// dimension than `self`, or lying on the splitting hyperplane, are
    /// boundary and get dropped.
    pub fn is_covered_by(&self, cover: &[Cone]) -> Result<bool> {
        let target = self.dimension();
        let mut pieces = vec![self.clone()];
        for k in cover {
            check_dim(self.dim, k.dim)?;
            let halfspaces: Vec<IVec> = k
                .facets
                .iter()
                .cloned()
                .chain(k.equalities.iter().cloned())
                .chain(k.equalities.iter().map(|e| e.iter().map(|x| -x).collect()))
                .collect();
            let mut next = Vec::new();
            for p in pieces {
                let mut below: Vec<IVec> = p.facets.clone();
                for a in &halfspaces {
                    let mut facets = below.clone();
                    facets.push(a.iter().map(|x| -x).collect());
                    let q = Cone::from_h(self.dim, &facets, &p.equalities)?;
                    // Pieces flat against the half-space boundary stay inside k.
                    let leaves = q.rays.iter().chain(&q.lines).any(|g| dot(a, g).is_positive())
                        || q.lines.iter().any(|g| !dot(a, g).is_zero());
                    if q.dimension() == target && leaves {
                        next.push(q);
                    }
                    below.push(a.clone());
                }
            }
            pieces = next;
            if pieces.is_empty() {
                return Ok(true);
            }
        }
        Ok(pieces.is_empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ivec, qvec};

    fn cone(rays: &[&[i64]]) -> Cone {
        let d = rays[0].len();
        Cone::from_generators(d, &rays.iter().map(|r| ivec(r)).collect::<Vec<_>>(), &[]).unwrap()
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = Cone::orthant(2);
        assert_eq!(q.dual(), q);
        assert_eq!(q.facets(), &[ivec(&[-1, 0]), ivec(&[0, -1])]);
    }

    #[test]
    fn zero_and_full_are_dual() {
        assert_eq!(Cone::zero(3).dual(), Cone::full(3));
        assert_eq!(Cone::full(2).dual(), Cone::zero(2));
        assert_eq!(Cone::from_generators(2, &[], &[]).unwrap(), Cone::zero(2));
        assert_eq!(Cone::from_h(2, &[], &[]).unwrap(), Cone::full(2));
    }

    #[test]
    fn dual_of_skew_cone() {
        let c = cone(&[&[1, 0], &[1, 2]]);
        let d = c.dual();
        assert_eq!(d, cone(&[&[0, 1], &[2, -1]]));
        for l in d.rays() {
            for g in c.rays() {
                assert!(!dot(l, g).is_negative());
            }
        }
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = cone(&[&[1, 0], &[1, 1], &[0, 1], &[2, 1]]);
        assert_eq!(c.rays(), &[ivec(&[0, 1]), ivec(&[1, 0])]);
    }

    #[test]
    fn lines_are_canonical() {
        let a = Cone::from_generators(2, &[ivec(&[1, 1])], &[ivec(&[-2, 0])]).unwrap();
        let b = Cone::from_h(2, &[ivec(&[0, -3])], &[]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines(), &[ivec(&[1, 0])]);
        assert_eq!(a.rays(), &[ivec(&[0, 1])]);
        assert!(!a.is_pointed());
    }

    #[test]
    fn relative_interior() {
        let c = cone(&[&[2, 1], &[1, 2]]);
        assert!(c.relative_interior_contains(&qvec(&[1, 1])).unwrap());
        assert!(!c.relative_interior_contains(&qvec(&[2, 1])).unwrap());
        assert!(c.contains(&qvec(&[2, 1])).unwrap());
        let ray = cone(&[&[2, 1]]);
        assert!(ray.relative_interior_contains(&qvec(&[4, 2])).unwrap());
        assert!(!ray.relative_interior_contains(&qvec(&[0, 0])).unwrap());
        assert!(Cone::zero(2).relative_interior_contains(&qvec(&[0, 0])).unwrap());
    }

    #[test]
    fn faces() {
        let q = Cone::orthant(2);
        assert!(q.has_face(&cone(&[&[1, 0]])).unwrap());
        assert!(q.has_face(&Cone::zero(2)).unwrap());
        assert!(q.has_face(&q).unwrap());
        assert!(!q.has_face(&cone(&[&[1, 1]])).unwrap());
        assert!(!q.has_face(&cone(&[&[1, 0], &[1, 1]])).unwrap());
    }

    #[test]
    fn covering() {
        let q = Cone::orthant(2);
        let halves = [cone(&[&[1, 0], &[1, 1]]), cone(&[&[1, 1], &[0, 1]])];
        assert!(q.is_covered_by(&halves).unwrap());
        assert!(!q.is_covered_by(&halves[..1]).unwrap());
        let ray = cone(&[&[1, 1]]);
        assert!(ray.is_covered_by(&halves[1..]).unwrap());
        assert!(!q.is_covered_by(&[ray]).unwrap());
        let plane = Cone::full(2);
        let quads = [
            cone(&[&[1, 0], &[0, 1]]),
            cone(&[&[-1, 0], &[0, 1]]),
            cone(&[&[-1, 0], &[0, -1]]),
            cone(&[&[1, 0], &[0, -1]]),
        ];
        assert!(plane.is_covered_by(&quads).unwrap());
        assert!(!plane.is_covered_by(&quads[1..]).unwrap());
    }

    #[test]
    fn intersection() {
        let a = cone(&[&[1, 0], &[1, 2]]);
        let b = cone(&[&[1, 1], &[0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), cone(&[&[1, 1], &[1, 2]]));
    }
}
