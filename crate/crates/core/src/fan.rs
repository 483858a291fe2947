//! Fans stored by their maximal cones, normal fans, refinement.

use num_traits::Zero;

use crate::arith::{IVec, Rat};
use crate::cone::Cone;
use crate::error::{check_dim, Error, Result};
use crate::polyhedron::Polyhedron;

/// A finite collection of cones, kept as its maximal cones in canonical
/// order. Faces are implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// Collects cones, dropping duplicates and any cone contained in another.
    /// Does not check the fan property; see [`Fan::is_fan`].
    pub fn new(dim: usize, cones: Vec<Cone>) -> Result<Self> {
        for c in &cones {
            check_dim(dim, c.ambient_dim())?;
        }
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        // Larger cones first so containment only needs checking backwards.
        cones.sort_by_key(|c| std::cmp::Reverse(c.dimension()));
        let mut kept: Vec<Cone> = Vec::with_capacity(cones.len());
        for c in cones {
            let mut inside = false;
            for k in &kept {
                if k.contains_cone(&c)? {
                    inside = true;
                    break;
                }
            }
            if !inside {
                kept.push(c);
            }
        }
        kept.sort();
        Ok(Self { dim, cones: kept })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    /// Rays of the fan, i.e. the union of the rays of its maximal cones.
    pub fn rays(&self) -> Vec<IVec> {
        let mut rays: Vec<IVec> = self.cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        rays.sort();
        rays.dedup();
        rays
    }

    pub fn support(&self) -> Support {
        let rays: Vec<IVec> = self.cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        let lines: Vec<IVec> = self.cones.iter().flat_map(|c| c.lines().iter().cloned()).collect();
        let hull = Cone::from_generators(self.dim, &rays, &lines).expect("dimensions agree");
        Support { cones: self.cones.clone(), hull }
    }

    /// Whether the maximal cones pairwise meet in common faces.
    pub fn is_fan(&self) -> Result<bool> {
        is_fan(&self.cones)
    }

    /// Whether every cone of `self` lies in some cone of `other`. Both fans
    /// must have the same support.
    pub fn refines(&self, other: &Fan) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        if !self.support().same_as(&other.support())? {
            return Err(Error::SupportMismatch);
        }
        for c in &self.cones {
            let mut found = false;
            for k in &other.cones {
                if k.contains_cone(c)? {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The fan of pairwise intersections of maximal cones.
    pub fn common_refinement(&self, other: &Fan) -> Result<Fan> {
        check_dim(self.dim, other.dim)?;
        if !self.support().same_as(&other.support())? {
            return Err(Error::SupportMismatch);
        }
        let mut cells = Vec::with_capacity(self.cones.len() * other.cones.len());
        for a in &self.cones {
            for b in &other.cones {
                cells.push(a.intersect(b)?);
            }
        }
        Fan::new(self.dim, cells)
    }

    /// A maximal cone containing `x`, if any.
    pub fn cone_containing(&self, x: &[Rat]) -> Result<Option<&Cone>> {
        for c in &self.cones {
            if c.contains(x)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }
}

/// Whether any two of the cones intersect in a face of each.
pub fn is_fan(cones: &[Cone]) -> Result<bool> {
    for (i, a) in cones.iter().enumerate() {
        for b in &cones[i + 1..] {
            check_dim(a.ambient_dim(), b.ambient_dim())?;
            let meet = a.intersect(b)?;
            if !a.has_face(&meet)? || !b.has_face(&meet)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The union of the cones of a fan, with its conic hull.
#[derive(Clone, Debug)]
pub struct Support {
    cones: Vec<Cone>,
    hull: Cone,
}

impl Support {
    pub fn hull(&self) -> &Cone {
        &self.hull
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        for c in &self.cones {
            if c.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn is_convex(&self) -> Result<bool> {
        self.hull.is_covered_by(&self.cones)
    }

    /// Whether the union equals the cone `c`.
    pub fn equals_cone(&self, c: &Cone) -> Result<bool> {
        Ok(&self.hull == c && self.is_convex()?)
    }

    pub fn same_as(&self, other: &Support) -> Result<bool> {
        if self.hull != other.hull {
            return Ok(false);
        }
        for c in &self.cones {
            if !c.is_covered_by(&other.cones)? {
                return Ok(false);
            }
        }
        for c in &other.cones {
            if !c.is_covered_by(&self.cones)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The normal fan: for each vertex `v`, the cone of linear functionals
/// maximised on `Q` at `v`, generated by the outer normals of the facets
/// through `v` together with the lines along the equality normals.
pub fn normal_fan(q: &Polyhedron) -> Fan {
    let dim = q.ambient_dim();
    let eq_lines: Vec<IVec> = q.equalities().iter().map(|e| e.normal.clone()).collect();
    let cones = q
        .vertices()
        .iter()
        .map(|v| {
            let active: Vec<IVec> =
                q.inequalities().iter().filter(|h| (h.eval(v) - &h.rhs).is_zero()).map(|h| h.normal.clone()).collect();
            Cone::from_generators(dim, &active, &eq_lines).expect("dimensions agree")
        })
        .collect();
    Fan::new(dim, cones).expect("dimensions agree")
}
