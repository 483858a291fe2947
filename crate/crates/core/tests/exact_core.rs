use normloc::arith::{hermite_normal_form, ivec, kernel_lattice_basis, primitive, solve_integral, IMat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IMat> {
    prop::collection::vec(-range..=range, rows * cols)
        .prop_map(move |d| IMat::new(rows, cols, d.into_iter().map(BigInt::from).collect()).unwrap())
}

fn any_matrix() -> impl Strategy<Value = IMat> {
    (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 6))
}

proptest! {
    #[test]
    fn primitive_is_idempotent(v in prop::collection::vec(-50i64..=50, 1..5)) {
        let v = ivec(&v);
        prop_assume!(v.iter().any(|x| !x.is_zero()));
        let p = primitive(&v).unwrap();
        prop_assert_eq!(primitive(&p).unwrap(), p.clone());
        // Same direction: p is a positive rescaling of v.
        let i = v.iter().position(|x| !x.is_zero()).unwrap();
        prop_assert_eq!(p[i].is_positive(), v[i].is_positive());
    }

    #[test]
    fn hnf_is_a_unimodular_row_reduction(m in any_matrix()) {
        let (h, u) = hermite_normal_form(&m);
        prop_assert_eq!(u.mul(&m).unwrap(), h);
        prop_assert!(u.determinant().unwrap().abs().is_one());
    }

    #[test]
    fn kernel_basis_is_saturated(m in any_matrix(), coeffs in prop::collection::vec(-5i64..=5, 4)) {
        let basis = kernel_lattice_basis(&m);
        for b in &basis {
            prop_assert!(m.mul_vec(b).unwrap().iter().all(Zero::is_zero));
        }
        // Rebuild an integral kernel vector, rescale it by its gcd so it is a
        // primitive vector of the kernel lattice, and ask for integral
        // coefficients in the basis.
        prop_assume!(!basis.is_empty());
        let mut x = vec![BigInt::zero(); m.cols()];
        for (b, c) in basis.iter().zip(&coeffs) {
            x.iter_mut().zip(b).for_each(|(xi, bi)| *xi += bi * c);
        }
        prop_assume!(x.iter().any(|v| !v.is_zero()));
        let x = primitive(&x).unwrap();
        let cols = IMat::from_columns(&basis).unwrap();
        prop_assert!(solve_integral(&cols, &x).is_some());
    }

    #[test]
    fn solve_integral_matches_a_box_search(m in (1usize..=2).prop_flat_map(|r| matrix(r, r + 1, 4)),
                                           target in prop::collection::vec(-6i64..=6, 2)) {
        let u = ivec(&target[..m.rows()]);
        match solve_integral(&m, &u) {
            Some(x) => prop_assert_eq!(m.mul_vec(&x).unwrap(), u),
            None => {
                let n = m.cols();
                let r = 10i64;
                let mut found = false;
                let mut cur = vec![-r; n];
                'scan: loop {
                    if m.mul_vec(&ivec(&cur)).unwrap() == u {
                        found = true;
                        break;
                    }
                    let mut j = n;
                    loop {
                        if j == 0 {
                            break 'scan;
                        }
                        j -= 1;
                        if cur[j] < r {
                            cur[j] += 1;
                            break;
                        }
                        cur[j] = -r;
                    }
                }
                prop_assert!(!found);
            }
        }
    }
}

#[test]
fn solve_examples() {
    let m = IMat::from_i64_rows(&[&[1, 1]]).unwrap();
    let x = solve_integral(&m, &ivec(&[3])).unwrap();
    assert_eq!(m.mul_vec(&x).unwrap(), ivec(&[3]));
    assert_eq!(solve_integral(&IMat::from_i64_rows(&[&[2]]).unwrap(), &ivec(&[1])), None);
    let oldex = IMat::from_i64_rows(&[&[4, 2, 1, 1], &[1, 1, 2, 3]]).unwrap();
    let x = solve_integral(&oldex, &ivec(&[4, 1])).unwrap();
    assert_eq!(oldex.mul_vec(&x).unwrap(), ivec(&[4, 1]));
}
