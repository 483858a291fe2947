//! Lattice points of polytopes, lattice sumsets, normal location and
//! normality with witnesses.
//!
//! Point sets are stored by columns: the first `d − 1` coordinates form a
//! prefix and the last coordinate is kept as sorted disjoint runs. Lattice
//! points of a polytope form one run per prefix, and sumsets are computed
//! run by run, so dense sets never get materialised point by point.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::Rat;
use crate::error::{check_dim, Error, Result};
use crate::polyhedron::{HRep, Halfspace, Polyhedron};

pub type Point = Vec<i64>;

/// Inclusive integer runs of the last coordinate.
type Runs = Vec<(i64, i64)>;

fn normalize_runs(runs: &mut Runs) {
    runs.sort_unstable();
    let mut out: Runs = Vec::with_capacity(runs.len());
    for &(lo, hi) in runs.iter() {
        match out.last_mut() {
            Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    *runs = out;
}

/// Least integer of `[lo, hi]` not covered by the normalized `runs`.
fn first_gap(lo: i64, hi: i64, runs: &Runs) -> Option<i64> {
    let mut next = lo;
    for &(a, b) in runs {
        if b < next {
            continue;
        }
        if a > next {
            break;
        }
        if b >= hi {
            return None;
        }
        next = b + 1;
    }
    (next <= hi).then_some(next)
}

/// Integer box `lo ≤ x ≤ hi`, used to probe unbounded polyhedra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: Point,
    pub hi: Point,
}

impl Window {
    pub fn new(lo: Point, hi: Point) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        if lo.is_empty() || lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::InvalidInput("window needs lo ≤ hi in every coordinate".into()));
        }
        Ok(Self { lo, hi })
    }

    /// Parses `"lo..hi,lo..hi,…"`, one range per axis.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("malformed window {s:?}"));
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for axis in s.split(',') {
            let (a, b) = axis.trim().split_once("..").ok_or_else(bad)?;
            lo.push(a.trim().parse().map_err(|_| bad())?);
            hi.push(b.trim().parse().map_err(|_| bad())?);
        }
        Self::new(lo, hi)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (a, b))| a <= v && v <= b)
    }

    fn halfspaces(&self) -> Vec<Halfspace> {
        let d = self.dim();
        let mut out = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 1;
            out.push(Halfspace::le(&e, self.hi[i]));
            out.push(Halfspace::ge(&e, self.lo[i]));
        }
        out
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let axes: Vec<String> = self.lo.iter().zip(&self.hi).map(|(a, b)| format!("{a}..{b}")).collect();
        f.write_str(&axes.join(","))
    }
}

/// A finite set of lattice points, sorted lexicographically.
#[derive(Clone, Debug)]
pub struct LatticePointSet {
    dim: usize,
    columns: BTreeMap<Point, Runs>,
    source: String,
}

impl PartialEq for LatticePointSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.columns == other.columns
    }
}

impl Eq for LatticePointSet {}

impl LatticePointSet {
    pub fn empty(dim: usize) -> Self {
        Self { dim, columns: BTreeMap::new(), source: String::new() }
    }

    pub fn from_points<I: IntoIterator<Item = Point>>(dim: usize, points: I) -> Result<Self> {
        let mut columns: BTreeMap<Point, Runs> = BTreeMap::new();
        for p in points {
            check_dim(dim, p.len())?;
            let (last, prefix) = p.split_last().ok_or(Error::DimensionMismatch { expected: dim, found: 0 })?;
            columns.entry(prefix.to_vec()).or_default().push((*last, *last));
        }
        columns.values_mut().for_each(normalize_runs);
        Ok(Self { dim, columns, source: "explicit points".into() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Description of the region the points were taken from.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> u64 {
        self.columns.values().flatten().map(|&(a, b)| (b - a + 1) as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let Some((last, prefix)) = x.split_last() else { return false };
        x.len() == self.dim
            && self.columns.get(prefix).is_some_and(|runs| runs.iter().any(|&(a, b)| a <= *last && *last <= b))
    }

    pub fn first(&self) -> Option<Point> {
        let (prefix, runs) = self.columns.iter().next()?;
        let mut p = prefix.clone();
        p.push(runs[0].0);
        Some(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.columns.iter().flat_map(|(prefix, runs)| {
            runs.iter().flat_map(move |&(a, b)| {
                (a..=b).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
        })
    }

    pub fn points(&self) -> Vec<Point> {
        self.iter().collect()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.columns.iter().all(|(prefix, runs)| {
                other.columns.get(prefix).is_some_and(|big| runs.iter().all(|&(a, b)| first_gap(a, b, big).is_none()))
            })
    }

    /// Least point of `self` missing from `other`.
    pub fn first_not_in(&self, other: &Self) -> Option<Point> {
        let empty = Runs::new();
        for (prefix, runs) in &self.columns {
            let cover = other.columns.get(prefix).unwrap_or(&empty);
            for &(a, b) in runs {
                if let Some(v) = first_gap(a, b, cover) {
                    let mut p = prefix.clone();
                    p.push(v);
                    return Some(p);
                }
            }
        }
        None
    }
}

/// One linear constraint `coef·x ≤ rhs` (or `=`) in scaled integer form.
struct Row {
    coef: Vec<i128>,
    rhs: i128,
    eq: bool,
}

/// Column-by-column enumeration plan: level `k` bounds coordinate `k` given
/// the earlier coordinates, using an H-representation of the projection of
/// the polytope onto its first `k + 1` coordinates.
struct Plan {
    dim: usize,
    levels: Vec<Vec<Row>>,
}

fn small(x: &BigInt) -> Result<i128> {
    x.to_i64()
        .map(i128::from)
        .ok_or_else(|| Error::InvalidInput("coefficients too large for lattice enumeration".into()))
}

fn row_of(h: &Halfspace, k: usize, eq: bool) -> Result<Option<Row>> {
    if h.normal[k].is_zero() {
        // Already implied by the bounds on the prefix.
        return Ok(None);
    }
    let den = h.rhs.denom();
    let coef = h.normal.iter().map(|a| small(&(a * den))).collect::<Result<Vec<_>>>()?;
    let rhs = small(h.rhs.numer())?;
    Ok(Some(Row { coef, rhs, eq }))
}

fn overflow() -> Error {
    Error::InvalidInput("arithmetic overflow in lattice enumeration".into())
}

impl Plan {
    fn new(p: &Polyhedron) -> Result<Self> {
        if !p.is_bounded() {
            return Err(Error::Unbounded);
        }
        let dim = p.ambient_dim();
        let mut levels = Vec::with_capacity(dim);
        for k in 0..dim {
            let proj = if k + 1 == dim { p.clone() } else { p.project_prefix(k + 1)? };
            let mut rows = Vec::new();
            for h in proj.inequalities() {
                rows.extend(row_of(h, k, false)?);
            }
            for h in proj.equalities() {
                rows.extend(row_of(h, k, true)?);
            }
            levels.push(rows);
        }
        Ok(Self { dim, levels })
    }

    /// Integer range of coordinate `k` above `prefix`, if nonempty.
    fn interval(&self, k: usize, prefix: &[i64]) -> Result<Option<(i64, i64)>> {
        let mut lo = i128::MIN;
        let mut hi = i128::MAX;
        for row in &self.levels[k] {
            let mut r = row.rhs;
            for (c, &x) in row.coef.iter().zip(prefix) {
                r = c.checked_mul(i128::from(x)).and_then(|t| r.checked_sub(t)).ok_or_else(overflow)?;
            }
            let c = row.coef[k];
            if row.eq {
                if r % c != 0 {
                    return Ok(None);
                }
                lo = lo.max(r / c);
                hi = hi.min(r / c);
            } else if c > 0 {
                hi = hi.min(Integer::div_floor(&r, &c));
            } else {
                lo = lo.max(Integer::div_ceil(&r, &c));
            }
        }
        if lo > hi {
            return Ok(None);
        }
        let lo = i64::try_from(lo).map_err(|_| overflow())?;
        let hi = i64::try_from(hi).map_err(|_| overflow())?;
        Ok(Some((lo, hi)))
    }

    /// Calls `f(prefix, lo, hi)` for every nonempty column in lex order.
    fn columns<F>(&self, f: &mut F) -> Result<()>
    where
        F: FnMut(&[i64], i64, i64) -> Result<ControlFlow<()>>,
    {
        let mut prefix = Vec::with_capacity(self.dim);
        self.walk(&mut prefix, f).map(|_| ())
    }

    fn walk<F>(&self, prefix: &mut Vec<i64>, f: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[i64], i64, i64) -> Result<ControlFlow<()>>,
    {
        let k = prefix.len();
        let Some((lo, hi)) = self.interval(k, prefix)? else { return Ok(ControlFlow::Continue(())) };
        if k + 1 == self.dim {
            return f(prefix, lo, hi);
        }
        for t in lo..=hi {
            prefix.push(t);
            let flow = self.walk(prefix, f)?;
            prefix.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// All lattice points of a polytope.
pub fn enumerate(p: &Polyhedron) -> Result<LatticePointSet> {
    let plan = Plan::new(p)?;
    let mut columns = BTreeMap::new();
    plan.columns(&mut |prefix, lo, hi| {
        columns.insert(prefix.to_vec(), vec![(lo, hi)]);
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(LatticePointSet { dim: p.ambient_dim(), columns, source: "polytope".into() })
}

/// Lattice points of `Q` inside the window.
pub fn enumerate_windowed(q: &Polyhedron, window: &Window) -> Result<LatticePointSet> {
    check_dim(q.ambient_dim(), window.dim())?;
    let mut h = q.h().clone();
    h.inequalities.extend(window.halfspaces());
    let source = format!("window {window}");
    match Polyhedron::from_h(q.ambient_dim(), &h) {
        Ok(cut) => Ok(LatticePointSet { source, ..enumerate(&cut)? }),
        Err(Error::EmptyPolyhedron) => Ok(LatticePointSet { source, ..LatticePointSet::empty(q.ambient_dim()) }),
        Err(e) => Err(e),
    }
}

/// Lex-least lattice point of a polytope.
pub fn first_point(p: &Polyhedron) -> Result<Option<Point>> {
    let plan = Plan::new(p)?;
    let mut found = None;
    plan.columns(&mut |prefix, lo, _| {
        let mut x = prefix.to_vec();
        x.push(lo);
        found = Some(x);
        Ok(ControlFlow::Break(()))
    })?;
    Ok(found)
}

/// `{a + b : a ∈ A, b ∈ B}`.
pub fn lattice_sum(a: &LatticePointSet, b: &LatticePointSet) -> Result<LatticePointSet> {
    check_dim(a.dim, b.dim)?;
    let mut columns: BTreeMap<Point, Runs> = BTreeMap::new();
    for (pa, ra) in &a.columns {
        for (pb, rb) in &b.columns {
            let prefix: Point = pa.iter().zip(pb).map(|(x, y)| x + y).collect();
            let runs = columns.entry(prefix).or_default();
            for &(a0, a1) in ra {
                for &(b0, b1) in rb {
                    runs.push((a0 + b0, a1 + b1));
                }
            }
        }
    }
    columns.values_mut().for_each(normalize_runs);
    Ok(LatticePointSet { dim: a.dim, columns, source: "lattice sum".into() })
}

/// A splitting `z = z′ + z″` with `z′ ∈ P`, `z″ ∈ Q` lattice points, taking
/// the lex-least `z′`. Searches all lattice points of `P ∩ (z − Q)`.
pub fn decompose(z: &[i64], p: &Polyhedron, q: &Polyhedron) -> Result<Option<(Point, Point)>> {
    let dim = p.ambient_dim();
    check_dim(dim, q.ambient_dim())?;
    check_dim(dim, z.len())?;
    let zq: Vec<Rat> = z.iter().map(|&c| Rat::from_integer(c.into())).collect();
    let flipped = q.reflected_through(&zq)?;
    let h = HRep::new(
        p.inequalities().iter().chain(&flipped.inequalities).cloned().collect(),
        p.equalities().iter().chain(&flipped.equalities).cloned().collect(),
    );
    let meet = match Polyhedron::from_h(dim, &h) {
        Ok(m) => m,
        Err(Error::EmptyPolyhedron) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(first_point(&meet)?.map(|x| {
        let y = z.iter().zip(&x).map(|(a, b)| a - b).collect();
        (x, y)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Located,
    NotLocated,
    /// No failure found, but only a finite part of the claim was checked.
    VerifiedUpTo,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Located => "located",
            Verdict::NotLocated => "not_located",
            Verdict::VerifiedUpTo => "verified_up_to",
        }
    }
}

/// The claim a witness refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// An exhaustive search of `P ∩ (z − Q)` found no splitting.
    NoDecomposition,
    /// The point is missing from the lattice sumset.
    NotInSum,
    /// A lattice point of `sP` that is not a sum of `s` lattice points of `P`.
    NormalityFailure,
}

impl WitnessKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WitnessKind::NoDecomposition => "no_decomposition",
            WitnessKind::NotInSum => "not_in_sum",
            WitnessKind::NormalityFailure => "normality_failure",
        }
    }
}

/// What a report covered: `(k, s)` scale pairs and, for unbounded inputs,
/// the window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Checked {
    pub scales: Vec<(u64, u64)>,
    pub window: Option<Window>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocationReport {
    pub verdict: Verdict,
    /// A lattice point of the sum with no splitting, when not located.
    pub witness: Option<Point>,
    pub witness_kind: Option<WitnessKind>,
    /// The `(k, s)` scale the witness belongs to.
    pub failed_scale: Option<(u64, u64)>,
    pub checked: Checked,
}

impl LocationReport {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::NotLocated
    }

    fn failure(witness: Point, kind: WitnessKind, scale: (u64, u64), checked: Checked) -> Self {
        Self {
            verdict: Verdict::NotLocated,
            witness: Some(witness),
            witness_kind: Some(kind),
            failed_scale: Some(scale),
            checked,
        }
    }

    fn passed(verdict: Verdict, checked: Checked) -> Self {
        Self { verdict, witness: None, witness_kind: None, failed_scale: None, checked }
    }
}

/// Lex-least lattice point of the polytope `target` that is not a sum of
/// lattice points of `P` and `Q`.
fn sum_gap(target: &Polyhedron, p: &Polyhedron, q: &Polyhedron) -> Result<Option<Point>> {
    let a = enumerate(p)?;
    let b = enumerate(q)?;
    let b_cols: HashMap<&Point, &Runs> = b.columns.iter().collect();
    let plan = Plan::new(target)?;
    let mut witness = None;
    let mut pb: Point = Vec::new();
    let mut cover: Runs = Vec::new();
    plan.columns(&mut |prefix, lo, hi| {
        cover.clear();
        for (pa, ra) in &a.columns {
            pb.clear();
            pb.extend(prefix.iter().zip(pa).map(|(t, x)| t - x));
            if let Some(rb) = b_cols.get(&pb) {
                for &(a0, a1) in ra {
                    for &(b0, b1) in rb.iter() {
                        cover.push((a0 + b0, a1 + b1));
                    }
                }
            }
        }
        normalize_runs(&mut cover);
        if let Some(v) = first_gap(lo, hi, &cover) {
            let mut w = prefix.to_vec();
            w.push(v);
            witness = Some(w);
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(witness)
}

/// Whether every lattice point of `target` is a sum of lattice points of
/// `P` and `Q`. Decided outright when all three are polytopes; otherwise a
/// window is required and each lattice point inside it is split exactly.
pub fn check_splitting(
    target: &Polyhedron,
    p: &Polyhedron,
    q: &Polyhedron,
    window: Option<&Window>,
) -> Result<LocationReport> {
    check_dim(target.ambient_dim(), p.ambient_dim())?;
    check_dim(target.ambient_dim(), q.ambient_dim())?;
    if target.is_bounded() && p.is_bounded() && q.is_bounded() {
        let checked = Checked { scales: vec![(1, 1)], window: None };
        return Ok(match sum_gap(target, p, q)? {
            Some(w) => LocationReport::failure(w, WitnessKind::NotInSum, (1, 1), checked),
            None => LocationReport::passed(Verdict::Located, checked),
        });
    }
    let window = window.ok_or(Error::Unbounded)?;
    let checked = Checked { scales: vec![(1, 1)], window: Some(window.clone()) };
    for z in enumerate_windowed(target, window)?.iter() {
        if decompose(&z, p, q)?.is_none() {
            return Ok(LocationReport::failure(z, WitnessKind::NoDecomposition, (1, 1), checked));
        }
    }
    Ok(LocationReport::passed(Verdict::VerifiedUpTo, checked))
}

/// Whether every lattice point of `P + Q` splits into lattice points of `P`
/// and `Q`. Polytopes are decided outright; polyhedra with a nonzero tail
/// cone need a window and yield at best `verified_up_to`.
pub fn normally_located(p: &Polyhedron, q: &Polyhedron, window: Option<&Window>) -> Result<LocationReport> {
    check_dim(p.ambient_dim(), q.ambient_dim())?;
    if p.tail_cone() != q.tail_cone() {
        return Err(Error::TailConeMismatch);
    }
    check_splitting(&p.minkowski_sum(q)?, p, q, window)
}

/// Checks normality of a lattice polytope up to `s_max`, in the inductive
/// form: `sP ∩ ℤᵈ = ((s−1)P ∩ ℤᵈ) + (P ∩ ℤᵈ)` for `2 ≤ s ≤ s_max`. A failure
/// reports `not_located` with the scale `(1, s)` and the lex-least witness
/// in `sP`.
pub fn is_normal(p: &Polyhedron, s_max: u64) -> Result<LocationReport> {
    if !p.is_lattice() {
        return Err(Error::NotLattice);
    }
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    let mut checked = Checked { scales: vec![(1, 1)], window: None };
    for s in 2..=s_max {
        checked.scales.push((1, s));
        if let Some(w) = sum_gap(&p.scale(s)?, &p.scale(s - 1)?, p)? {
            return Ok(LocationReport::failure(w, WitnessKind::NormalityFailure, (1, s), checked));
        }
    }
    Ok(LocationReport::passed(Verdict::VerifiedUpTo, checked))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polyhedron {
        Polyhedron::from_points(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap()
    }

    fn paper_p() -> Polyhedron {
        Polyhedron::from_points(&[&[165, 0], &[175, 0], &[0, 385]]).unwrap()
    }

    fn paper_q() -> Polyhedron {
        Polyhedron::from_points(&[&[0, 0], &[35, 0], &[0, 77]]).unwrap()
    }

    fn reeve() -> Polyhedron {
        Polyhedron::from_points(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]).unwrap()
    }

    fn quadrant_from(x: i64, y: i64) -> Polyhedron {
        Polyhedron::from_h(2, &HRep::new(vec![Halfspace::ge(&[1, 0], x), Halfspace::ge(&[0, 1], y)], vec![])).unwrap()
    }

    #[test]
    fn runs_and_gaps() {
        let mut r = vec![(5, 6), (0, 2), (3, 3), (9, 9)];
        normalize_runs(&mut r);
        assert_eq!(r, vec![(0, 3), (5, 6), (9, 9)]);
        assert_eq!(first_gap(0, 9, &r), Some(4));
        assert_eq!(first_gap(5, 9, &r), Some(7));
        assert_eq!(first_gap(0, 3, &r), None);
        assert_eq!(first_gap(-2, 0, &r), Some(-2));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate(&square()).unwrap().len(), 4);
        assert_eq!(enumerate(&square().scale(2).unwrap()).unwrap().len(), 9);
        let pts = enumerate(&reeve()).unwrap().points();
        assert_eq!(pts, vec![vec![0, 0, 0], vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 3]]);
    }

    #[test]
    fn enumeration_respects_equalities() {
        let seg = Polyhedron::from_points(&[&[0, 4], &[4, 0]]).unwrap();
        let pts = enumerate(&seg).unwrap().points();
        assert_eq!(pts, vec![vec![0, 4], vec![1, 3], vec![2, 2], vec![3, 1], vec![4, 0]]);
        let thin = Polyhedron::from_points(&[&[0, 0], &[2, 1]]).unwrap();
        assert_eq!(enumerate(&thin).unwrap().points(), vec![vec![0, 0], vec![2, 1]]);
    }

    #[test]
    fn paper_triangle_count() {
        // Area 1925, 100 boundary points.
        assert_eq!(enumerate(&paper_p()).unwrap().len(), 1925 + 50 + 1);
    }

    #[test]
    fn windowed() {
        let w = Window::parse("0..1,0..1").unwrap();
        assert_eq!(enumerate_windowed(&quadrant_from(0, 0), &w).unwrap().len(), 4);
        let w = Window::parse("0..3, 0..3").unwrap();
        assert_eq!(enumerate_windowed(&quadrant_from(1, 1), &w).unwrap().len(), 9);
        let far = Window::parse("-5..-1,0..3").unwrap();
        assert!(enumerate_windowed(&quadrant_from(0, 0), &far).unwrap().is_empty());
        assert_eq!(enumerate(&quadrant_from(0, 0)), Err(Error::Unbounded));
        assert_eq!(w.to_string(), "0..3,0..3");
        assert!(Window::parse("3..0").is_err());
    }

    #[test]
    fn sums() {
        let line = |pts: &[i64]| LatticePointSet::from_points(1, pts.iter().map(|&x| vec![x])).unwrap();
        assert_eq!(lattice_sum(&line(&[0, 1]), &line(&[0, 1])).unwrap(), line(&[0, 1, 2]));
        let sq = enumerate(&square()).unwrap();
        let zero = LatticePointSet::from_points(2, [vec![0, 0]]).unwrap();
        assert_eq!(lattice_sum(&zero, &sq).unwrap(), sq);
        assert!(lattice_sum(&line(&[0]), &sq).is_err());
    }

    #[test]
    fn paper_sumset_misses_the_witness() {
        let sum = lattice_sum(&enumerate(&paper_p()).unwrap(), &enumerate(&paper_q()).unwrap()).unwrap();
        let full = enumerate(&paper_p().minkowski_sum(&paper_q()).unwrap()).unwrap();
        assert!(sum.is_subset_of(&full));
        assert!(!sum.contains(&[1, 383]));
        assert_eq!(full.first_not_in(&sum), Some(vec![1, 383]));
    }

    #[test]
    fn decompositions() {
        assert_eq!(decompose(&[165, 0], &paper_p(), &paper_q()).unwrap(), Some((vec![165, 0], vec![0, 0])));
        assert_eq!(decompose(&[1, 383], &paper_p(), &paper_q()).unwrap(), None);
        assert_eq!(decompose(&[0, 0], &square(), &square()).unwrap(), Some((vec![0, 0], vec![0, 0])));
        assert_eq!(decompose(&[5, 5], &square(), &square()).unwrap(), None);
        let q = quadrant_from(0, 0);
        assert_eq!(decompose(&[2, 3], &quadrant_from(1, 1), &q).unwrap(), Some((vec![1, 1], vec![1, 2])));
    }

    #[test]
    fn location_reports() {
        let r = normally_located(&square(), &square(), None).unwrap();
        assert_eq!(r.verdict, Verdict::Located);
        let r = normally_located(&paper_p(), &paper_q(), None).unwrap();
        assert_eq!(r.verdict, Verdict::NotLocated);
        assert_eq!(r.witness, Some(vec![1, 383]));
        let r = normally_located(&paper_p().scale(3).unwrap(), &paper_q().scale(3).unwrap(), None).unwrap();
        assert_eq!(r.witness, Some(vec![1, 1153]));
    }

    #[test]
    fn unbounded_needs_a_window() {
        let a = quadrant_from(1, 1);
        let b = quadrant_from(0, 2);
        assert_eq!(normally_located(&a, &b, None), Err(Error::Unbounded));
        let w = Window::parse("0..6,0..6").unwrap();
        let r = normally_located(&a, &b, Some(&w)).unwrap();
        assert_eq!(r.verdict, Verdict::VerifiedUpTo);
        assert_eq!(r.checked.window, Some(w));
        assert_eq!(normally_located(&a, &square(), None), Err(Error::TailConeMismatch));
    }

    #[test]
    fn normality() {
        let seg = Polyhedron::from_points(&[&[0], &[1]]).unwrap();
        assert_eq!(is_normal(&seg, 5).unwrap().verdict, Verdict::VerifiedUpTo);
        let simplex = Polyhedron::from_points(&[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
        assert_eq!(is_normal(&simplex, 5).unwrap().verdict, Verdict::VerifiedUpTo);
        let r = is_normal(&reeve(), 2).unwrap();
        assert_eq!(r.verdict, Verdict::NotLocated);
        assert_eq!(r.failed_scale, Some((1, 2)));
        assert_eq!(r.witness, Some(vec![1, 1, 1]));
        let half = Polyhedron::from_points(&[&[0], &[1]]).unwrap().intersect(
            &Polyhedron::from_h(
                1,
                &HRep::new(vec![Halfspace::new(vec![1.into()], Rat::new(1.into(), 2.into()))], vec![]),
            )
            .unwrap(),
        );
        assert_eq!(is_normal(&half.unwrap(), 2), Err(Error::NotLattice));
    }
}
