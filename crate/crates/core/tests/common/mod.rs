//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use normloc::arith::{ivec, Rat};
use normloc::{Polyhedron, QVec};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Convex hull of `npts` random points in `[0, max]^d`, retried until it is
/// full-dimensional.
pub fn random_polytope(rng: &mut ChaCha8Rng, d: usize, max: i64, npts: usize) -> Polyhedron {
    loop {
        let pts: Vec<Vec<i64>> = (0..npts).map(|_| (0..d).map(|_| rng.gen_range(0..=max)).collect()).collect();
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        let p = Polyhedron::from_points(&refs).unwrap();
        if p.is_full_dimensional() {
            return p;
        }
    }
}

/// Exact solution of a square system, or `None` when singular.
pub fn solve(a: &[QVec], b: &[Rat]) -> Option<QVec> {
    let n = a.len();
    let mut m: Vec<QVec> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        m[c].iter_mut().for_each(|x| *x = &*x / &piv);
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let row_c = m[c].clone();
                m[r].iter_mut().zip(&row_c).for_each(|(x, y)| *x = &*x - &f * y);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Vertices of a full-dimensional polytope given by `a·x ≤ b`: solve every
/// `d`-subset of constraints as equalities and keep the feasible solutions.
pub fn vertex_oracle(normals: &[Vec<BigInt>], rhs: &[Rat]) -> Vec<QVec> {
    let d = normals[0].len();
    let rows: Vec<QVec> = normals.iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect();
    let mut out = Vec::new();
    for s in subsets(rows.len(), d) {
        let a: Vec<QVec> = s.iter().map(|&i| rows[i].clone()).collect();
        let b: Vec<Rat> = s.iter().map(|&i| rhs[i].clone()).collect();
        let Some(x) = solve(&a, &b) else { continue };
        let feasible = rows.iter().zip(rhs).all(|(r, c)| {
            let lhs: Rat = r.iter().zip(&x).map(|(p, q)| p * q).sum();
            lhs <= *c
        });
        if feasible {
            out.push(x);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Whether `x` is a convex combination of some `d + 1` of the points.
pub fn in_hull_oracle(points: &[QVec], x: &[Rat]) -> bool {
    let d = x.len();
    for s in subsets(points.len(), d + 1) {
        // Barycentric coordinates: Σλ_i p_i = x, Σλ_i = 1.
        let mut a: Vec<QVec> = (0..d).map(|r| s.iter().map(|&i| points[i][r].clone()).collect()).collect();
        a.push(vec![rat(1); d + 1]);
        let mut b: Vec<Rat> = x.to_vec();
        b.push(rat(1));
        if let Some(l) = solve(&a, &b) {
            if l.iter().all(|v| !v.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Twice the area and the number of boundary lattice points of a lattice
/// polygon, from its vertices in any order.
pub fn pick_data(vertices: &[QVec]) -> (BigInt, BigInt) {
    let cx: Rat = vertices.iter().map(|v| v[0].clone()).sum::<Rat>() / rat(vertices.len() as i64);
    let cy: Rat = vertices.iter().map(|v| v[1].clone()).sum::<Rat>() / rat(vertices.len() as i64);
    let mut vs: Vec<(f64, &QVec)> = vertices
        .iter()
        .map(|v| {
            let dx = num_traits::ToPrimitive::to_f64(&(&v[0] - &cx)).unwrap();
            let dy = num_traits::ToPrimitive::to_f64(&(&v[1] - &cy)).unwrap();
            (dy.atan2(dx), v)
        })
        .collect();
    vs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut twice_area = BigInt::zero();
    let mut boundary = BigInt::zero();
    for i in 0..vs.len() {
        let p = vs[i].1;
        let q = vs[(i + 1) % vs.len()].1;
        let (px, py, qx, qy) = (p[0].to_integer(), p[1].to_integer(), q[0].to_integer(), q[1].to_integer());
        twice_area += &px * &qy - &qx * &py;
        boundary += (&qx - &px).gcd(&(&qy - &py));
    }
    (twice_area.abs(), boundary)
}

/// Lattice points of a polytope by scanning its bounding box.
pub fn brute_points(p: &Polyhedron) -> Vec<Vec<i64>> {
    let d = p.ambient_dim();
    let lo: Vec<i64> = (0..d)
        .map(|j| p.vertices().iter().map(|v| v[j].floor().to_integer()).min().unwrap().try_into().unwrap())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|j| p.vertices().iter().map(|v| v[j].ceil().to_integer()).max().unwrap().try_into().unwrap())
        .collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        if p.contains_point(&cur).unwrap() {
            out.push(cur.clone());
        }
        let mut j = d;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if cur[j] < hi[j] {
                cur[j] += 1;
                break;
            }
            cur[j] = lo[j];
        }
    }
}

/// `{a + b}` over explicit point lists.
pub fn brute_sum(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> =
        a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect())).collect();
    out.sort();
    out.dedup();
    out
}

pub fn iv(v: &[i64]) -> Vec<BigInt> {
    ivec(v)
}
