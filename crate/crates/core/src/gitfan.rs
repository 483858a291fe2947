//! Gradings of polynomial rings by lattice maps `π: ℤⁿ → ℤᵐ`, handled
//! combinatorially: monomials of degree `u` are the lattice points of the
//! fiber `P(u) = π⁻¹(u) ∩ ℚⁿ≥0`.
//!
//! Orbit cones are the cones generated by subsets of the weights; the GIT
//! cone `λ(u)` is the intersection of the orbit cones containing `u`.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{canonical_sign, int, kernel_lattice_basis, primitive, rank_int, IMat, IVec, Rat};
use crate::cone::Cone;
use crate::error::{check_dim, Error, Result};
use crate::fan::{normal_fan, Fan};
use crate::lattice::{check_splitting, normally_located, Checked, LocationReport, Point, Window};
use crate::polyhedron::{HRep, Halfspace, Polyhedron};

/// Largest number of distinct weights for which subsets are enumerated.
pub const SUBSET_CAP: usize = 20;

/// A surjective lattice map given by its weight columns `w_i = π(e_i)`.
#[derive(Clone, Debug)]
pub struct GradedProjection {
    weights: Vec<IVec>,
    matrix: IMat,
    simplicial: OnceLock<Vec<Cone>>,
}

impl PartialEq for GradedProjection {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights
    }
}

impl Eq for GradedProjection {}

impl GradedProjection {
    pub fn new(weights: Vec<IVec>) -> Result<Self> {
        let m = weights.first().map_or(0, Vec::len);
        if m == 0 {
            return Err(Error::InvalidInput("need at least one weight of positive dimension".into()));
        }
        for w in &weights {
            check_dim(m, w.len())?;
        }
        let matrix = IMat::from_columns(&weights)?;
        if !crate::arith::is_surjective(&matrix) {
            return Err(Error::NotSurjective);
        }
        Ok(Self { weights, matrix, simplicial: OnceLock::new() })
    }

    pub fn from_i64(weights: &[&[i64]]) -> Result<Self> {
        Self::new(weights.iter().map(|w| crate::arith::ivec(w)).collect())
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.matrix.rows()
    }

    pub fn weights(&self) -> &[IVec] {
        &self.weights
    }

    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    fn distinct_weights(&self) -> Vec<IVec> {
        let set: BTreeSet<&IVec> = self.weights.iter().collect();
        set.into_iter().cloned().collect()
    }

    /// `σ = ker π ∩ ℚⁿ≥0`, the common tail cone of all fibers.
    pub fn kernel_cone(&self) -> Cone {
        let n = self.n();
        let facets: Vec<IVec> =
            (0..n).map(|i| (0..n).map(|j| if i == j { -BigInt::one() } else { BigInt::zero() }).collect()).collect();
        Cone::from_h(n, &facets, &self.matrix.row_vecs()).expect("dimensions agree")
    }

    pub fn fibers_bounded(&self) -> bool {
        self.kernel_cone().is_zero()
    }

    /// Orbit cones spanned by linearly independent sets of weights,
    /// including `{0}`. Every orbit cone containing `u` contains one of
    /// these that also contains `u`, so they suffice for `λ(u)`.
    fn simplicial_cones(&self) -> Result<&[Cone]> {
        let distinct: Vec<IVec> =
            self.distinct_weights().into_iter().filter(|w| w.iter().any(|x| !x.is_zero())).collect();
        if distinct.len() > SUBSET_CAP {
            return Err(Error::SubsetCapExceeded { n: distinct.len(), cap: SUBSET_CAP });
        }
        let m = self.m();
        Ok(self.simplicial.get_or_init(|| {
            let mut out = BTreeSet::new();
            out.insert(Cone::zero(m));
            let mut chosen = Vec::new();
            independent_sets(&distinct, 0, &mut chosen, m, &mut out);
            out.into_iter().collect()
        }))
    }
}

fn independent_sets(ws: &[IVec], from: usize, chosen: &mut Vec<IVec>, m: usize, out: &mut BTreeSet<Cone>) {
    for i in from..ws.len() {
        chosen.push(ws[i].clone());
        if rank_int(chosen) == chosen.len() {
            out.insert(Cone::from_generators(m, chosen, &[]).expect("dimensions agree"));
            if chosen.len() < m {
                independent_sets(ws, i + 1, chosen, m, out);
            }
        }
        chosen.pop();
    }
}

fn scaled(u: &[BigInt], f: u64) -> IVec {
    u.iter().map(|x| x * BigInt::from(f)).collect()
}

fn added(a: &[BigInt], b: &[BigInt]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The cone generated by all weights.
pub fn weight_cone(g: &GradedProjection) -> Cone {
    Cone::from_generators(g.m(), &g.weights, &[]).expect("dimensions agree")
}

/// `u ∈ C` exactly when the fiber over `u` is nonempty, which avoids
/// building `C` itself when there are many weights.
fn check_in_cone(g: &GradedProjection, u: &[BigInt]) -> Result<()> {
    fiber(g, u).map(drop)
}

/// All cones generated by subsets of the distinct weights, `{0}` included,
/// in canonical order.
pub fn orbit_cones(g: &GradedProjection) -> Result<Vec<Cone>> {
    let ws = g.distinct_weights();
    if ws.len() > SUBSET_CAP {
        return Err(Error::SubsetCapExceeded { n: ws.len(), cap: SUBSET_CAP });
    }
    let mut out = BTreeSet::new();
    for mask in 0u32..(1u32 << ws.len()) {
        let gens: Vec<IVec> = (0..ws.len()).filter(|i| mask >> i & 1 == 1).map(|i| ws[i].clone()).collect();
        out.insert(Cone::from_generators(g.m(), &gens, &[])?);
    }
    Ok(out.into_iter().collect())
}

/// `λ(u)`: the intersection of all orbit cones containing `u`.
pub fn git_cone(g: &GradedProjection, u: &[BigInt]) -> Result<Cone> {
    check_in_cone(g, u)?;
    let mut facets = Vec::new();
    let mut eqs = Vec::new();
    for c in g.simplicial_cones()? {
        if c.contains_int(u)? {
            facets.extend_from_slice(c.facets());
            eqs.extend_from_slice(c.equalities());
        }
    }
    Cone::from_h(g.m(), &facets, &eqs)
}

/// `λ(u)` computed from the fiber instead: the intersection of the cones
/// spanned by the weights in the support of each vertex of `P(u)`.
pub fn git_cone_via_fiber(g: &GradedProjection, u: &[BigInt]) -> Result<Cone> {
    let p = fiber(g, u)?;
    let mut facets = Vec::new();
    let mut eqs = Vec::new();
    for v in p.vertices() {
        let gens: Vec<IVec> = (0..g.n()).filter(|&i| !v[i].is_zero()).map(|i| g.weights[i].clone()).collect();
        let c = Cone::from_generators(g.m(), &gens, &[])?;
        facets.extend_from_slice(c.facets());
        eqs.extend_from_slice(c.equalities());
    }
    Cone::from_h(g.m(), &facets, &eqs)
}

/// The GIT fan, stored by its maximal cones.
#[derive(Clone, Debug)]
pub struct GitFan {
    pub weight_cone: Cone,
    pub orbit_cones: Vec<Cone>,
    pub fan: Fan,
    /// Whether the cones passed the fan test and cover the weight cone.
    pub fan_verified: bool,
}

impl GitFan {
    pub fn maximal_cones(&self) -> &[Cone] {
        self.fan.maximal_cones()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Hyperplanes through the origin spanned by `m − 1` weights.
fn weight_hyperplanes(g: &GradedProjection) -> Vec<IVec> {
    let ws = g.distinct_weights();
    let m = g.m();
    if m < 2 {
        return Vec::new();
    }
    let mut out = BTreeSet::new();
    for idx in combinations(ws.len(), m - 1) {
        let rows: Vec<IVec> = idx.iter().map(|&i| ws[i].clone()).collect();
        if rank_int(&rows) != m - 1 {
            continue;
        }
        let kernel = kernel_lattice_basis(&IMat::from_rows(&rows).expect("rows share a length"));
        out.insert(canonical_sign(primitive(&kernel[0]).expect("kernel vector is nonzero")));
    }
    out.into_iter().collect()
}

/// Computes the GIT fan. The weight cone is cut by every hyperplane
/// spanned by weights; each full-dimensional cell lies inside a single
/// GIT cone, and `λ` of an interior point of each cell gives the maximal
/// GIT cones.
pub fn git_fan(g: &GradedProjection) -> Result<GitFan> {
    let orbit = orbit_cones(g)?;
    let c = weight_cone(g);
    let m = g.m();
    let mut cells = vec![c.clone()];
    for h in weight_hyperplanes(g) {
        let neg: IVec = h.iter().map(|x| -x).collect();
        let mut next = Vec::with_capacity(2 * cells.len());
        for cell in &cells {
            for side in [&h, &neg] {
                let mut facets = cell.facets().to_vec();
                facets.push(side.clone());
                let piece = Cone::from_h(m, &facets, cell.equalities())?;
                if piece.dimension() == c.dimension() {
                    next.push(piece);
                }
            }
        }
        cells = next;
    }
    let mut cones = Vec::with_capacity(cells.len());
    for cell in &cells {
        cones.push(git_cone(g, &cell.interior_point())?);
    }
    let fan = Fan::new(m, cones)?;
    let fan_verified = fan.is_fan()? && fan.support().equals_cone(&c)?;
    Ok(GitFan { weight_cone: c, orbit_cones: orbit, fan, fan_verified })
}

/// `P(u) = {x ∈ ℚⁿ : x ≥ 0, π(x) = u}`.
pub fn fiber(g: &GradedProjection, u: &[BigInt]) -> Result<Polyhedron> {
    check_dim(g.m(), u.len())?;
    let n = g.n();
    let inequalities = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = -1;
            Halfspace::le(&e, 0)
        })
        .collect();
    let equalities =
        (0..g.m()).map(|r| Halfspace::new(g.matrix.row(r).to_vec(), Rat::from_integer(u[r].clone()))).collect();
    match Polyhedron::from_h(n, &HRep::new(inequalities, equalities)) {
        Err(Error::EmptyPolyhedron) => Err(Error::WeightOutsideCone),
        other => other,
    }
}

/// (P1): `P(u₁) + P(u₂) = P(u₁ + u₂)`.
pub fn check_p1(g: &GradedProjection, u1: &[BigInt], u2: &[BigInt]) -> Result<bool> {
    let sum = fiber(g, u1)?.minkowski_sum(&fiber(g, u2)?)?;
    Ok(sum == fiber(g, &added(u1, u2))?)
}

/// (P2): every lattice point of `P(u₁ + u₂)` is a sum of lattice points of
/// `P(u₁)` and `P(u₂)`.
pub fn check_p2(g: &GradedProjection, u1: &[BigInt], u2: &[BigInt], window: Option<&Window>) -> Result<LocationReport> {
    let p1 = fiber(g, u1)?;
    let p2 = fiber(g, u2)?;
    check_splitting(&fiber(g, &added(u1, u2))?, &p1, &p2, window)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchVerdict {
    /// Some `k` passed every tested `s`.
    VerifiedUpTo,
    /// No `k ≤ k_max` passed.
    Exhausted,
}

impl SearchVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchVerdict::VerifiedUpTo => "verified_up_to",
            SearchVerdict::Exhausted => "exhausted",
        }
    }
}

/// Result of a search for `k` such that the scaled pair passes at every
/// `s ≤ s_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub verdict: SearchVerdict,
    pub k: Option<u64>,
    pub k_max: u64,
    pub s_max: u64,
    /// The first failing scale `(k, s)` and its witness, for each failed `k`.
    pub failures: Vec<((u64, u64), Point)>,
    pub checked: Checked,
}

impl SearchReport {
    pub fn witness(&self) -> Option<&Point> {
        self.failures.first().map(|(_, w)| w)
    }
}

fn search<F>(k_max: u64, s_max: u64, window: Option<&Window>, mut at: F) -> Result<SearchReport>
where
    F: FnMut(u64) -> Result<LocationReport>,
{
    if k_max == 0 || s_max == 0 {
        return Err(Error::InvalidInput("k_max and s_max must be positive".into()));
    }
    let mut failures = Vec::new();
    let mut checked = Checked { scales: Vec::new(), window: window.cloned() };
    for k in 1..=k_max {
        let mut passed = true;
        for s in 1..=s_max {
            checked.scales.push((k, s));
            let r = at(s * k)?;
            if let Some(w) = r.witness {
                failures.push(((k, s), w));
                passed = false;
                break;
            }
        }
        if passed {
            return Ok(SearchReport {
                verdict: SearchVerdict::VerifiedUpTo,
                k: Some(k),
                k_max,
                s_max,
                failures,
                checked,
            });
        }
    }
    Ok(SearchReport { verdict: SearchVerdict::Exhausted, k: None, k_max, s_max, failures, checked })
}

/// (P3) at finite scale: the least `k ≤ k_max` with (P2) holding for
/// `sk·u₁, sk·u₂` at every `s ≤ s_max`.
pub fn check_p3(
    g: &GradedProjection,
    u1: &[BigInt],
    u2: &[BigInt],
    k_max: u64,
    s_max: u64,
    window: Option<&Window>,
) -> Result<SearchReport> {
    check_in_cone(g, u1)?;
    check_in_cone(g, u2)?;
    search(k_max, s_max, window, |f| check_p2(g, &scaled(u1, f), &scaled(u2, f), window))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generation {
    GeneratingByTheorem,
    NotGeneratingByTheorem,
    IndeterminateBoundary,
}

impl Generation {
    pub fn as_str(self) -> &'static str {
        match self {
            Generation::GeneratingByTheorem => "generating_by_theorem",
            Generation::NotGeneratingByTheorem => "not_generating_by_theorem",
            Generation::IndeterminateBoundary => "indeterminate_boundary",
        }
    }
}

/// Whether some GIT cone contains both weights. Such a cone exists iff
/// `λ(u₁ + u₂)` contains both, since a face containing a sum of two points
/// of a cone contains each of them.
pub fn common_git_cone(g: &GradedProjection, u1: &[BigInt], u2: &[BigInt]) -> Result<Option<Cone>> {
    check_in_cone(g, u1)?;
    check_in_cone(g, u2)?;
    let lam = git_cone(g, &added(u1, u2))?;
    Ok((lam.contains_int(u1)? && lam.contains_int(u2)?).then_some(lam))
}

/// Classifies a pair of weights: generating when one of them lies in the
/// relative interior of a GIT cone containing the other, not generating
/// when no GIT cone contains both, and indeterminate otherwise.
pub fn is_generating_candidate(g: &GradedProjection, u1: &[BigInt], u2: &[BigInt]) -> Result<Generation> {
    if common_git_cone(g, u1, u2)?.is_none() {
        return Ok(Generation::NotGeneratingByTheorem);
    }
    // λ(u) is the GIT cone with u in its relative interior.
    if git_cone(g, u1)?.contains_int(u2)? || git_cone(g, u2)?.contains_int(u1)? {
        return Ok(Generation::GeneratingByTheorem);
    }
    Ok(Generation::IndeterminateBoundary)
}

/// Indices of the zero coordinates.
pub fn zero_support(c: &[Rat]) -> Vec<usize> {
    (0..c.len()).filter(|&i| c[i].is_zero()).collect()
}

/// Two polyhedra realized as fibers `P(u₁)`, `P(u₂)` of one projection,
/// after a common translation into the open positive orthant.
#[derive(Clone, Debug)]
pub struct RealizedPair {
    pub projection: GradedProjection,
    pub u1: IVec,
    pub u2: IVec,
    /// Primitive ray generators of the common refinement of the normal fans.
    pub functionals: Vec<IVec>,
    pub a: IVec,
    pub b: IVec,
    pub translation: IVec,
    pub q1: Polyhedron,
    pub q2: Polyhedron,
}

/// Realizes `Q₁, Q₂` as fibers: with functionals `l_1..l_m` and maxima
/// `a_i` on `Q₁`, `b_i` on `Q₂`, the map `(x, y) ↦ L·x + y` on
/// `ℤ^{d+m}` has `P(a)` projecting onto `Q₁` and `P(b)` onto `Q₂`.
pub fn realize_pair(q1: &Polyhedron, q2: &Polyhedron) -> Result<RealizedPair> {
    let d = q1.ambient_dim();
    check_dim(d, q2.ambient_dim())?;
    if !q1.is_full_dimensional() || !q2.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if q1.tail_cone() != q2.tail_cone() {
        return Err(Error::TailConeMismatch);
    }
    let tail = q1.tail_cone();
    if !tail.is_pointed() || tail.rays().iter().flatten().any(Signed::is_negative) {
        return Err(Error::TailOutsideOrthant);
    }

    let translation: IVec = (0..d)
        .map(|j| {
            let low = q1.vertices().iter().chain(q2.vertices()).map(|v| &v[j]).min().expect("nonempty");
            if low.is_positive() {
                BigInt::zero()
            } else {
                (-low).floor().to_integer() + 1
            }
        })
        .collect();
    let t1 = q1.translate(&translation)?;
    let t2 = q2.translate(&translation)?;

    let mut functionals = normal_fan(&t1).common_refinement(&normal_fan(&t2))?.rays();
    functionals.sort_by(|x, y| y.cmp(x));
    let bound = |q: &Polyhedron, l: &IVec| -> Result<BigInt> {
        let v = q.max_of(l)?.ok_or_else(|| Error::VerificationFailed("functional unbounded above".into()))?;
        if v.is_integer() {
            Ok(v.to_integer())
        } else {
            Err(Error::NotLattice)
        }
    };
    let a = functionals.iter().map(|l| bound(&t1, l)).collect::<Result<IVec>>()?;
    let b = functionals.iter().map(|l| bound(&t2, l)).collect::<Result<IVec>>()?;

    let m = functionals.len();
    let mut weights: Vec<IVec> = (0..d).map(|j| functionals.iter().map(|l| l[j].clone()).collect()).collect();
    weights.extend((0..m).map(|i| (0..m).map(|r| int(i64::from(r == i))).collect()));
    let projection = GradedProjection::new(weights)?;

    let shadow = |u: &[BigInt]| -> Result<Polyhedron> { fiber(&projection, u)?.project_prefix(d) };
    if shadow(&a)? != t1 || shadow(&b)? != t2 || shadow(&added(&a, &b))? != t1.minkowski_sum(&t2)? {
        return Err(Error::VerificationFailed("fibers do not reproduce the polyhedra".into()));
    }
    Ok(RealizedPair { projection, u1: a.clone(), u2: b.clone(), functionals, a, b, translation, q1: t1, q2: t2 })
}

/// Both sides of the criterion relating refinement of normal fans to the
/// position of the realized weights.
#[derive(Clone, Debug)]
pub struct RefinementReport {
    pub pair: RealizedPair,
    /// `N(Q₁)` refines `N(Q₂)`.
    pub refines: bool,
    /// `u₁` lies in the relative interior of a GIT cone containing `u₂`,
    /// decided through zero supports of the vertices of `P(u₁)`.
    pub interior: bool,
    /// The same, decided through `λ(u₁)`; skipped for large projections.
    pub interior_by_git_cone: Option<bool>,
}

impl RefinementReport {
    pub fn agrees(&self) -> bool {
        self.refines == self.interior && self.interior_by_git_cone.is_none_or(|x| x == self.interior)
    }
}

/// Subset count above which the `λ(u₁)` cross-check is skipped.
const CROSS_CHECK_LIMIT: u64 = 20_000;

fn independent_subset_bound(n: usize, m: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for k in 0..=m.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - k) as u64) / (k as u64 + 1);
    }
    total
}

pub fn refinement_iff_interior(q1: &Polyhedron, q2: &Polyhedron) -> Result<RefinementReport> {
    let pair = realize_pair(q1, q2)?;
    let refines = normal_fan(&pair.q1).refines(&normal_fan(&pair.q2))?;
    let g = &pair.projection;
    let p1 = fiber(g, &pair.u1)?;
    let p2 = fiber(g, &pair.u2)?;
    let mut interior = true;
    for v in p1.vertices() {
        let mut h = p2.h().clone();
        for i in zero_support(v) {
            let mut e = vec![0; g.n()];
            e[i] = 1;
            h.equalities.push(Halfspace::le(&e, 0));
        }
        match Polyhedron::from_h(g.n(), &h) {
            Ok(_) => {}
            Err(Error::EmptyPolyhedron) => {
                interior = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let interior_by_git_cone = if independent_subset_bound(g.n(), g.m()) <= CROSS_CHECK_LIMIT {
        Some(git_cone(g, &pair.u1)?.contains_int(&pair.u2)?)
    } else {
        None
    };
    Ok(RefinementReport { pair, refines, interior, interior_by_git_cone })
}

/// The least `k ≤ k_max` with `skQ₁, skQ₂` normally located for all
/// `s ≤ s_max`. Requires `N(Q₁)` to refine `N(Q₂)`.
pub fn mcrit_search(
    q1: &Polyhedron,
    q2: &Polyhedron,
    k_max: u64,
    s_max: u64,
    window: Option<&Window>,
) -> Result<SearchReport> {
    check_dim(q1.ambient_dim(), q2.ambient_dim())?;
    if q1.tail_cone() != q2.tail_cone() {
        return Err(Error::TailConeMismatch);
    }
    if !normal_fan(q1).refines(&normal_fan(q2))? {
        return Err(Error::RefinementRequired);
    }
    search(k_max, s_max, window, |f| normally_located(&q1.scale(f)?, &q2.scale(f)?, window))
}

/// The least `r` with `P(r·u)` a lattice polyhedron.
pub fn lattice_multiple(g: &GradedProjection, u: &[BigInt]) -> Result<BigInt> {
    Ok(fiber(g, u)?.vertex_denominator())
}
