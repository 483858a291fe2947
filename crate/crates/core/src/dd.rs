//! Double description conversion for homogeneous cones.
//!
//! The cone is `{z : a·z ≥ 0 for every inequality a, e·z = 0 for every
//! equality e}`. The output is a basis of the lineality space together with
//! one generator per extreme ray modulo lineality. Constraints are inserted
//! in sorted order so the result is deterministic; adjacency is decided by
//! the combinatorial test, which keeps the ray set irredundant throughout.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{dot, primitive, IVec};

#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    pub rays: Vec<IVec>,
    pub lines: Vec<IVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_capacity(bits: usize) -> Self {
        Self(vec![0; bits.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset_of(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: IVec,
    zeros: ZeroSet,
}

fn normalize_rows(rows: &[IVec]) -> Vec<IVec> {
    let mut out: Vec<IVec> = rows.iter().filter_map(|r| primitive(r).ok()).collect();
    out.sort();
    out.dedup();
    out
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> IVec {
    let v: IVec = x.iter().zip(y).map(|(p, q)| a * p - b * q).collect();
    primitive(&v).expect("combination of independent generators is nonzero")
}

/// Generators of `{z ∈ Q^dim : a·z ≥ 0 (a ∈ ineqs), e·z = 0 (e ∈ eqs)}`.
pub(crate) fn generators(dim: usize, ineqs: &[IVec], eqs: &[IVec]) -> Generators {
    let eqs = normalize_rows(eqs);
    let ineqs = normalize_rows(ineqs);
    let nbits = ineqs.len();

    let mut lines: Vec<IVec> = (0..dim).map(|i| (0..dim).map(|j| BigInt::from(i32::from(i == j))).collect()).collect();
    let mut rays: Vec<Ray> = Vec::new();
    // Dimension of the linear span cut out by the equalities seen so far.
    let mut space_dim = dim;

    let constraints = eqs.iter().map(|c| (c, None)).chain(ineqs.iter().enumerate().map(|(i, c)| (c, Some(i))));

    for (c, slot) in constraints {
        let line_vals: Vec<BigInt> = lines.iter().map(|l| dot(c, l)).collect();
        if let Some(p) = line_vals.iter().position(|x| !x.is_zero()) {
            // The constraint cuts the lineality space: pivot on that line.
            let mut pivot = lines.remove(p);
            let mut pv = line_vals[p].clone();
            if pv.is_negative() {
                pivot.iter_mut().for_each(|x| *x = -&*x);
                pv = -pv;
            }
            let rest: Vec<BigInt> =
                line_vals.into_iter().enumerate().filter(|&(i, _)| i != p).map(|(_, v)| v).collect();
            for (l, v) in lines.iter_mut().zip(rest) {
                if !v.is_zero() {
                    *l = combine(&pv, l, &v, &pivot);
                }
            }
            for r in &mut rays {
                let v = dot(c, &r.v);
                if !v.is_zero() {
                    r.v = combine(&pv, &r.v, &v, &pivot);
                }
                if let Some(i) = slot {
                    r.zeros.insert(i);
                }
            }
            if let Some(slot) = slot {
                // Tight on every earlier constraint, strictly inside this one.
                let mut zeros = ZeroSet::with_capacity(nbits);
                for r in 0..slot {
                    zeros.insert(r);
                }
                rays.push(Ray { v: pivot, zeros });
            } else {
                space_dim -= 1;
            }
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() && (slot.is_some() || pos.is_empty()) {
            if let Some(i) = slot {
                for (r, v) in rays.iter_mut().zip(&vals) {
                    if v.is_zero() {
                        r.zeros.insert(i);
                    }
                }
            }
            continue;
        }

        let pointed_dim = space_dim - lines.len();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersect(&rays[n].zeros);
                if pointed_dim >= 2 && common.count() + 2 < pointed_dim {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|o| o == p || o == n || !rays[o].zeros.is_superset_of(&common));
                if !adjacent {
                    continue;
                }
                let v = combine(&vals[p], &rays[n].v, &vals[n], &rays[p].v);
                let mut zeros = common;
                if let Some(i) = slot {
                    zeros.insert(i);
                }
                fresh.push(Ray { v, zeros });
            }
        }

        let keep_positive = slot.is_some();
        let mut next = Vec::with_capacity(rays.len() + fresh.len());
        for (r, v) in rays.into_iter().zip(vals) {
            if v.is_zero() {
                let mut r = r;
                if let Some(i) = slot {
                    r.zeros.insert(i);
                }
                next.push(r);
            } else if v.is_positive() && keep_positive {
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }

    let mut out: Vec<IVec> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Generators { rays: out, lines }
}
