//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision integers and reduced
//! rationals. Matrices are tiny at desk scale, so the algorithms favour
//! plain exact pivoting over anything clever.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};

/// Reduced rational with positive denominator.
pub type Rat = BigRational;
/// Integer vector.
pub type IVec = Vec<BigInt>;
/// Rational vector.
pub type QVec = Vec<Rat>;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn ivec(v: &[i64]) -> IVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()
}

pub fn to_qvec(v: &[BigInt]) -> QVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn gcd_of(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Result<IVec> {
    let g = gcd_of(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Flips `v` so that its first nonzero coordinate is positive. Only used
/// where a vector stands for a line or a set key, never for directed rays.
pub fn canonical_sign(mut v: IVec) -> IVec {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            v.iter_mut().for_each(|x| *x = -&*x);
        }
    }
    v
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_iq(a: &[BigInt], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += y * x;
        }
    }
    acc
}

pub fn dot_qq(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Common denominator of a rational vector.
pub fn denominator_lcm(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
}

/// The primitive integer vector on the ray through a nonzero rational vector.
pub fn primitive_of_rat(v: &[Rat]) -> Result<IVec> {
    let l = denominator_lcm(v);
    let scaled: IVec = v.iter().map(|x| (x * &l).to_integer()).collect();
    primitive(&scaled)
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Lexicographic order on rational vectors.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    a.iter().cmp(b.iter())
}

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| self.row(r).iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
            .finish()
    }
}

impl IMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("matrix must have positive shape".into()));
        }
        check_dim(rows * cols, data.len())?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[IVec]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim(cols, r.len())?;
            data.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(&rows.iter().map(|r| ivec(r)).collect::<Vec<_>>())
    }

    pub fn from_columns(cols: &[IVec]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        Self { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> IVec {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<IVec> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &IMat) -> Result<IMat> {
        check_dim(self.cols, other.rows)?;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                data.push((0..self.cols).map(|k| self.get(r, k) * other.get(k, c)).sum());
            }
        }
        Ok(IMat { rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<IVec> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn mul_qvec(&self, v: &[Rat]) -> Result<QVec> {
        check_dim(self.cols, v.len())?;
        Ok((0..self.rows).map(|r| dot_iq(self.row(r), v)).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self.data[source * self.cols + c].clone();
            self.data[target * self.cols + c] -= q * s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let x = &mut self.data[r * self.cols + c];
            *x = -&*x;
        }
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        check_dim(self.rows, self.cols)?;
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.data[i * n + j] = v;
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }
}

/// Row Hermite normal form: returns `(H, U)` with `H = U·M`, `U` unimodular,
/// `H` in row echelon form with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. Zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IMat) -> (IMat, IMat) {
    let mut h = m.clone();
    let mut u = IMat::identity(m.rows);
    let mut row = 0;
    for col in 0..h.cols {
        if row == h.rows {
            break;
        }
        loop {
            let pivot = (row..h.rows)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(row, p);
            u.swap_rows(row, p);
            let mut done = true;
            for r in row + 1..h.rows {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = h.get(r, col) / h.get(row, col);
                h.sub_row(r, row, &q);
                u.sub_row(r, row, &q);
                if !h.get(r, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(row, col).is_zero() {
            continue;
        }
        if h.get(row, col).is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        for r in 0..row {
            let q = h.get(r, col).div_floor(h.get(row, col));
            h.sub_row(r, row, &q);
            u.sub_row(r, row, &q);
        }
        row += 1;
    }
    (h, u)
}

fn nonzero_rows(h: &IMat) -> usize {
    (0..h.rows).filter(|&r| !is_zero_vec(h.row(r))).count()
}

/// A Z-basis of the saturated integer kernel `{x ∈ Zⁿ : M·x = 0}`.
pub fn kernel_lattice_basis(m: &IMat) -> Vec<IVec> {
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = nonzero_rows(&h);
    (rank..u.rows).map(|r| u.row(r).to_vec()).collect()
}

/// Some integral `x` with `M·x = u`, if one exists.
pub fn solve_integral(m: &IMat, target: &[BigInt]) -> Option<IVec> {
    if target.len() != m.rows {
        return None;
    }
    // U·Mᵀ = H, so x = Uᵀ·y solves M·x = u iff yᵀ·H = uᵀ.
    let (h, u) = hermite_normal_form(&m.transpose());
    let rank = nonzero_rows(&h);
    let mut residual = target.to_vec();
    let mut y = vec![BigInt::zero(); u.rows];
    for (r, yr) in y.iter_mut().enumerate().take(rank) {
        let row = h.row(r);
        let col = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        let (q, rem) = residual[col].div_rem(&row[col]);
        if !rem.is_zero() {
            return None;
        }
        for (c, x) in row.iter().enumerate() {
            residual[c] -= &q * x;
        }
        *yr = q;
    }
    if !is_zero_vec(&residual) {
        return None;
    }
    let x = (0..u.cols).map(|c| (0..u.rows).map(|r| &y[r] * u.get(r, c)).sum()).collect();
    Some(x)
}

/// Whether the columns of `M` generate `Z^rows`.
pub fn is_surjective(m: &IMat) -> bool {
    let (h, _) = hermite_normal_form(&m.transpose());
    let rank = nonzero_rows(&h);
    if rank != m.rows {
        return false;
    }
    (0..rank).all(|r| {
        let row = h.row(r);
        row.iter().find(|x| !x.is_zero()).is_some_and(One::is_one)
    })
}

/// Reduced row echelon form over Q; returns the nonzero rows and their
/// pivot columns.
pub fn rref(mut rows: Vec<QVec>) -> (Vec<QVec>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        rows[r].iter_mut().for_each(|x| *x *= &inv);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                row[c..].iter_mut().zip(&pivot[c..]).for_each(|(x, y)| *x -= y * &f);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[QVec]) -> usize {
    rref(rows.to_vec()).1.len()
}

pub fn rank_int(rows: &[IVec]) -> usize {
    rank(&rows.iter().map(|r| to_qvec(r)).collect::<Vec<_>>())
}

/// Orthogonal projection onto the complement of a linear subspace, computed
/// with exact Gram-Schmidt.
#[derive(Clone, Debug, Default)]
pub(crate) struct Projector {
    basis: Vec<(QVec, Rat)>,
}

impl Projector {
    pub fn new(span: &[IVec]) -> Self {
        let mut basis: Vec<(QVec, Rat)> = Vec::new();
        for v in span {
            let mut w = to_qvec(v);
            for (q, n) in &basis {
                let f = dot_qq(&w, q) / n;
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= y * &f);
            }
            let n = dot_qq(&w, &w);
            if !n.is_zero() {
                basis.push((w, n));
            }
        }
        Self { basis }
    }

    pub fn project(&self, v: &[Rat]) -> QVec {
        let mut w = v.to_vec();
        for (q, n) in &self.basis {
            let f = dot_qq(v, q) / n;
            if !f.is_zero() {
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= y * &f);
            }
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IMat {
        IMat::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&ivec(&[4, 6])).unwrap(), ivec(&[2, 3]));
        assert_eq!(primitive(&ivec(&[1, 0, 0])).unwrap(), ivec(&[1, 0, 0]));
        assert_eq!(primitive(&ivec(&[-2, 4])).unwrap(), ivec(&[-1, 2]));
        assert_eq!(primitive(&ivec(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn canonical_sign_flips_only_keys() {
        assert_eq!(canonical_sign(ivec(&[0, -1, 2])), ivec(&[0, 1, -2]));
        assert_eq!(canonical_sign(ivec(&[3, -1])), ivec(&[3, -1]));
    }

    #[test]
    fn rationals_format_and_parse() {
        assert_eq!(format_rat(&rat(6, -4)), "-3/2");
        assert_eq!(format_rat(&rat(4, 2)), "2");
        assert_eq!(parse_rat(" -3/2 ").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat("7").unwrap(), rat(7, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn hnf_examples() {
        let (h, u) = hermite_normal_form(&IMat::identity(2));
        assert_eq!(h, IMat::identity(2));
        assert_eq!(u, IMat::identity(2));

        let d = m(&[&[2, 0], &[0, 3]]);
        let (h, u) = hermite_normal_form(&d);
        assert_eq!(h, d);
        assert_eq!(u, IMat::identity(2));

        let swap = m(&[&[0, 1], &[1, 0]]);
        let (h, u) = hermite_normal_form(&swap);
        assert_eq!(h, IMat::identity(2));
        assert_eq!(u.mul(&swap).unwrap(), h);
        assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let a = m(&[&[3, 5, 7], &[2, 4, 9], &[1, 1, 1]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(u.mul(&a).unwrap(), h);
        for r in 0..3 {
            let c = h.row(r).iter().position(|x| !x.is_zero()).unwrap();
            assert!(h.get(r, c).is_positive());
            for above in 0..r {
                assert!(!h.get(above, c).is_negative() && h.get(above, c) < h.get(r, c));
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let basis = kernel_lattice_basis(&m(&[&[1, 1]]));
        assert_eq!(basis.len(), 1);
        assert_eq!(canonical_sign(basis[0].clone()), ivec(&[1, -1]));
        assert!(kernel_lattice_basis(&IMat::identity(3)).is_empty());

        let oldex = m(&[&[4, 2, 1, 1], &[1, 1, 2, 3]]);
        let basis = kernel_lattice_basis(&oldex);
        assert_eq!(basis.len(), 2);
        for b in &basis {
            assert!(is_zero_vec(&oldex.mul_vec(b).unwrap()));
        }
        // A rank-k family in Zⁿ spans a saturated lattice iff, read as a map
        // Zⁿ → Zᵏ, it is onto.
        assert!(is_surjective(&IMat::from_rows(&basis).unwrap()));
    }

    #[test]
    fn solve_examples() {
        let x = solve_integral(&m(&[&[1, 1]]), &ivec(&[3])).unwrap();
        assert_eq!(&x[0] + &x[1], int(3));
        assert_eq!(solve_integral(&m(&[&[2]]), &ivec(&[1])), None);
        let oldex = m(&[&[4, 2, 1, 1], &[1, 1, 2, 3]]);
        let x = solve_integral(&oldex, &ivec(&[4, 1])).unwrap();
        assert_eq!(oldex.mul_vec(&x).unwrap(), ivec(&[4, 1]));
    }

    #[test]
    fn surjectivity() {
        assert!(is_surjective(&m(&[&[2, 3]])));
        assert!(!is_surjective(&m(&[&[2, 4]])));
        assert!(is_surjective(&m(&[&[4, 2, 1, 1], &[1, 1, 2, 3]])));
        assert!(!is_surjective(&m(&[&[1, 1], &[0, 2]])));
        assert!(!is_surjective(&m(&[&[1, 2], &[2, 4]])));
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let a = m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(3·-2 - 4·5) + 1(1·-2 - 0) = -52 - 2 = -54
        assert_eq!(a.determinant().unwrap(), int(-54));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant().unwrap(), int(0));
    }

    #[test]
    fn projector_removes_lineality() {
        let p = Projector::new(&[ivec(&[1, 1, 0])]);
        assert_eq!(p.project(&qvec(&[2, 0, 5])), vec![rat(1, 1), rat(-1, 1), rat(5, 1)]);
    }
}
