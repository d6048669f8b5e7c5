use std::collections::HashSet;

use linkform::example::{even_weight_vectors, prefix_sum_map};
use linkform::small::{FinAbGroup, Form, GroupElement, IntMatrix};
use linkform::{enumerate_subgroups, smith_normal_form, BigInt, Matrix, QmodZ, Subgroup, SubgroupLattice, DEFAULT_CAP};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |e| Matrix::new(r, c, e).unwrap())
    })
}

fn symmetric_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |upper| {
            let mut m = Matrix::zeros(n, n);
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let v = it.next().unwrap();
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            m
        })
    })
}

/// Exact inverse over ℚ by Gauss–Jordan elimination.
fn rational_inverse(q: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = q.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(BigInt::from(q[(i, j)]))
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in &mut a[c] {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for j in 0..2 * n {
                    let v = &a[c][j] * &f;
                    a[r][j] = &a[r][j] - v;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn frac(x: &BigRational) -> QmodZ<i64> {
    QmodZ::new(x.numer().to_i64().unwrap(), x.denom().to_i64().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn snf_defining_equations(m in matrix_strategy(5, 30)) {
        let m = linkform::IntMatrix::new(m.rows(), m.cols(), m.entries().iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
        prop_assert!(s.left.determinant().unwrap().abs().is_one());
        prop_assert!(s.right.determinant().unwrap().abs().is_one());
        prop_assert!(s.right.mul(&s.right_inverse) == linkform::IntMatrix::identity(m.cols()));
        let nz: Vec<BigInt> = s.diagonal.iter().cloned().take_while(|d| !d.is_zero()).collect();
        prop_assert!(s.diagonal[nz.len()..].iter().all(Zero::is_zero), "zeros must trail");
        prop_assert!(nz.iter().all(Signed::is_positive));
        prop_assert!(nz.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        if m.is_square() {
            prop_assert_eq!(s.diagonal.iter().product::<BigInt>(), m.determinant().unwrap().abs());
        }
    }

    #[test]
    fn snf_diagonal_is_unique(m in matrix_strategy(4, 20)) {
        // Invariant factors from the gcds of k×k minors: d₀⋯d_{k−1} = gcd of all k-minors.
        fn minors_gcd(m: &IntMatrix, k: usize) -> i64 {
            use itertools_free::combinations;
            let mut g = 0i64;
            for rows in combinations(m.rows(), k) {
                for cols in combinations(m.cols(), k) {
                    let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[(i, j)]).collect()).collect();
                    let det = Matrix::from_rows(sub).unwrap().determinant().unwrap();
                    g = num_integer::gcd(g, det);
                }
            }
            g
        }
        let s = smith_normal_form(&m);
        let mut prefix = 1i64;
        for (k, d) in s.diagonal.iter().enumerate() {
            prefix *= d;
            prop_assert_eq!(prefix, minors_gcd(&m, k + 1));
        }
    }

    #[test]
    fn surgery_form_is_q_inverse(q in symmetric_strategy(3, 6)) {
        prop_assume!(q.determinant().unwrap() != 0);
        let f = Form::from_surgery(&q).unwrap();
        prop_assert_eq!(f.group().order(), q.determinant().unwrap().abs());
        prop_assert!(f.is_nonsingular());
        // Original generator i sits at row i of the basis map; the form there
        // must be (q⁻¹)ᵢⱼ mod 1, computed independently over ℚ.
        let p = linkform::group_from_presentation(&q);
        let inv = rational_inverse(&q);
        let n = q.rows();
        let images: Vec<GroupElement> = (0..n)
            .map(|i| p.group.reduce(p.basis_map.row(i)).unwrap())
            .collect();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(f.evaluate(&images[i], &images[j]).unwrap(), frac(&inv[i][j]));
            }
        }
    }

    #[test]
    fn regeneration_is_idempotent(gens in prop::collection::vec(prop::collection::vec(0i64..100, 3), 0..4)) {
        let g = FinAbGroup::new(vec![2, 6, 12]).unwrap();
        let gens: Vec<GroupElement> = gens.iter().map(|r| g.reduce(r).unwrap()).collect();
        let s = Subgroup::generate(&g, &gens, DEFAULT_CAP).unwrap();
        prop_assert!(gens.iter().all(|x| s.contains(x)));
        prop_assert_eq!((g.order() as usize) % s.order(), 0);
        let again = Subgroup::generate(&g, s.elements(), DEFAULT_CAP).unwrap();
        prop_assert_eq!(&again, &s);
        let from_gens = Subgroup::generate(&g, s.generators(), DEFAULT_CAP).unwrap();
        prop_assert_eq!(from_gens, s);
    }

    #[test]
    fn prefix_identity_random(n in 1usize..=20, a in any::<u64>(), b in any::<u64>()) {
        use linkform::BitVector;
        let fix = |m: u64| {
            let v = BitVector::from_mask(n, m);
            if v.is_even() { v } else { v.add(&BitVector::unit(n, 0)) }
        };
        let (v, w) = (fix(a), fix(b));
        prop_assert_eq!(prefix_sum_map(&v).dot(&w) ^ v.dot(&prefix_sum_map(&w)), v.dot(&w));
    }
}

/// Minimal k-subset enumeration, kept local to the test.
mod itertools_free {
    pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
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
}

fn small_forms() -> Vec<Form> {
    let mut forms = vec![
        Form::from_fractions(&[2, 2], &[&[(0, 1), (1, 2)], &[(1, 2), (1, 2)]]).unwrap(),
        Form::from_fractions(&[2, 2], &[&[(0, 1), (1, 2)], &[(1, 2), (0, 1)]]).unwrap(),
        Form::from_fractions(&[4], &[&[(1, 4)]]).unwrap(),
        Form::from_fractions(&[3, 3], &[&[(1, 3), (0, 1)], &[(0, 1), (2, 3)]]).unwrap(),
        Form::from_fractions(&[2, 4], &[&[(1, 2), (0, 1)], &[(0, 1), (3, 4)]]).unwrap(),
        Form::from_fractions(&[9], &[&[(2, 9)]]).unwrap(),
    ];
    for rows in [&[&[2i64, 1][..], &[1, 3]][..], &[&[4, 2], &[2, 4]], &[&[2, 0, 1], &[0, 2, 1], &[1, 1, 2]]] {
        forms.push(Form::from_surgery(&Matrix::from_i64_rows(rows).unwrap()).unwrap());
    }
    forms
}

#[test]
fn bilinear_and_symmetric_exhaustively() {
    for f in small_forms() {
        let all = f.group().elements(DEFAULT_CAP).unwrap();
        for x in &all {
            for y in &all {
                let v = f.evaluate(x, y).unwrap();
                assert_eq!(v, f.evaluate(y, x).unwrap());
                for x2 in all.iter().step_by(3) {
                    let lhs = f.evaluate(&f.group().add(x, x2), y).unwrap();
                    assert_eq!(lhs, &v + &f.evaluate(x2, y).unwrap());
                }
            }
        }
    }
}

#[test]
fn nonsingularity_matches_brute_force() {
    let mut forms = small_forms();
    forms.push(Form::zero(FinAbGroup::new(vec![2, 4]).unwrap()));
    forms.push(Form::from_fractions(&[2, 4], &[&[(0, 1), (1, 2)], &[(1, 2), (1, 2)]]).unwrap());
    forms.push(Form::from_fractions(&[6], &[&[(1, 3)]]).unwrap());
    for f in forms {
        let all = f.group().elements(DEFAULT_CAP).unwrap();
        let radical: Vec<&GroupElement> =
            all.iter().filter(|x| all.iter().all(|y| f.evaluate(x, y).unwrap().is_zero())).collect();
        assert_eq!(f.is_nonsingular(), radical.len() == 1, "{f:?}");
        match f.radical_witness() {
            None => assert_eq!(radical.len(), 1),
            Some(w) => assert!(!w.is_zero() && radical.contains(&&w), "{f:?}: {w:?}"),
        }
    }
}

#[test]
fn alternating_matches_brute_force() {
    let mut forms = small_forms();
    forms.push(Form::from_fractions(&[3, 3], &[&[(0, 1), (1, 3)], &[(1, 3), (0, 1)]]).unwrap());
    forms.push(Form::from_fractions(&[4, 4], &[&[(0, 1), (1, 2)], &[(1, 2), (0, 1)]]).unwrap());
    for f in forms {
        let all = f.group().elements(DEFAULT_CAP).unwrap();
        let brute = all.iter().all(|x| f.self_linking(x).unwrap().is_zero());
        assert_eq!(f.is_alternating(), brute, "{f:?}");
        if let Some(w) = f.alternating_witness() {
            assert!(!f.self_linking(&w).unwrap().is_zero());
        }
    }
}

#[test]
fn complement_duality_and_lagrangian_sizes() {
    for f in small_forms() {
        let n = f.group().order() as usize;
        for s in enumerate_subgroups(f.group(), None, DEFAULT_CAP).unwrap() {
            let perp = f.orthogonal_complement(&s, DEFAULT_CAP).unwrap();
            assert_eq!(s.order() * perp.order(), n);
            assert_eq!(f.orthogonal_complement(&perp, DEFAULT_CAP).unwrap(), s);
        }
        for l in f.lagrangians(DEFAULT_CAP).unwrap() {
            assert_eq!(l.order() * l.order(), n);
        }
    }
}

#[test]
fn classification_implications_on_corpus() {
    for f in small_forms() {
        let r = f.classify(DEFAULT_CAP).unwrap();
        r.check_implications().unwrap();
        if r.metabolic {
            let l = r.lagrangian.as_ref().unwrap();
            assert!(f.is_lagrangian(l, DEFAULT_CAP).unwrap());
        }
        if let Some(w) = &r.split_witness {
            assert!(w.lagrangian.intersect(&w.complement).unwrap().is_trivial());
            assert_eq!(w.lagrangian.order() * w.complement.order(), f.group().order() as usize);
        }
        if let Some(w) = &r.hyperbolic_witness {
            assert!(f.is_isotropic(&w.first).unwrap() && f.is_isotropic(&w.second).unwrap());
            assert_eq!(w.first.sum(&w.second, DEFAULT_CAP).unwrap().order(), f.group().order() as usize);
        }
    }
}

/// Every symmetric Gram matrix with entries in {0, 1/2} on (ℤ/2)^k.
fn all_forms_on_elementary_two_group(k: usize) -> Vec<Form> {
    let g = FinAbGroup::homocyclic(2, k).unwrap();
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    (0..1u32 << slots.len())
        .map(|mask| {
            let mut gram = vec![vec![QmodZ::zero(); k]; k];
            for (b, &(i, j)) in slots.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    gram[i][j] = QmodZ::new(1, 2).unwrap();
                    gram[j][i] = QmodZ::new(1, 2).unwrap();
                }
            }
            Form::new(g.clone(), gram).unwrap()
        })
        .collect()
}

#[test]
fn exponent_two_hyperbolic_forms_are_alternating() {
    let mut checked = 0;
    for k in 0..=4 {
        for f in all_forms_on_elementary_two_group(k).into_iter().filter(Form::is_nonsingular) {
            let r = f.classify(DEFAULT_CAP).unwrap();
            if r.hyperbolic {
                assert!(r.alternating, "{f:?}");
            }
            if !r.alternating {
                assert!(f.exponent_two_obstruction().is_some());
            }
            // For nonsingular forms on elementary 2-groups the converse does hold too.
            assert_eq!(r.hyperbolic, r.alternating, "{f:?}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn isometry_is_an_equivalence() {
    let forms = small_forms();
    let third = Form::from_fractions(&[2], &[&[(1, 2)]]).unwrap();
    for a in &forms {
        assert!(a.is_isometric(a, DEFAULT_CAP).unwrap());
        for b in &forms {
            let ab = a.is_isometric(b, DEFAULT_CAP).unwrap();
            assert_eq!(ab, b.is_isometric(a, DEFAULT_CAP).unwrap());
            if ab {
                let (sa, sb) = (a.orthogonal_sum(&third), b.orthogonal_sum(&third));
                assert!(sa.is_isometric(&sb, DEFAULT_CAP).unwrap());
            }
        }
    }
    // Same group, different forms: the surgery form of [[2,1],[1,3]] on ℤ/5 is 3/5.
    let s = Form::from_surgery(&Matrix::from_i64_rows(&[&[2, 1], &[1, 3]]).unwrap()).unwrap();
    assert!(s.is_isometric(&Form::from_fractions(&[5], &[&[(3, 5)]]).unwrap(), DEFAULT_CAP).unwrap());
    assert!(!s.is_isometric(&Form::from_fractions(&[5], &[&[(1, 5)]]).unwrap(), DEFAULT_CAP).unwrap());
}

#[test]
fn orthogonal_sum_associative_up_to_isometry() {
    let a = Form::from_fractions(&[2], &[&[(1, 2)]]).unwrap();
    let b = Form::from_fractions(&[4], &[&[(1, 4)]]).unwrap();
    let c = Form::from_fractions(&[3], &[&[(1, 3)]]).unwrap();
    let left = a.orthogonal_sum(&b).orthogonal_sum(&c);
    let right = a.orthogonal_sum(&b.orthogonal_sum(&c));
    assert_eq!(left.group().invariant_factors(), &[2, 12]);
    assert!(left.is_isometric(&right, DEFAULT_CAP).unwrap());
}

#[test]
fn sign_convention_is_observable() {
    // +q⁻¹ for q = [[3]] is 1/3; the opposite convention gives 2/3, and the two
    // are not isometric on ℤ/3 because −1 is not a square mod 3.
    let f = Form::from_surgery(&Matrix::from_i64_rows(&[&[3]]).unwrap()).unwrap();
    assert_eq!(f.gram_rows(), vec![vec![QmodZ::new(1, 3).unwrap()]]);
    assert!(!f.is_isometric(&f.negated(), DEFAULT_CAP).unwrap());
    // On (ℤ/2)² the sign is invisible.
    let q = Form::from_surgery(&Matrix::from_i64_rows(&[&[2, 2], &[2, 4]]).unwrap()).unwrap();
    assert_eq!(q.negated(), q);
}

#[test]
fn direct_double_implies_square_order_not_conversely() {
    for shape in [vec![], vec![2, 2], vec![3, 3], vec![2, 2, 4, 4], vec![4], vec![2, 8], vec![9], vec![2, 2, 2, 2]] {
        let g = FinAbGroup::new(shape.clone()).unwrap();
        let square = linkform::scalar::is_perfect_square(&g.order());
        if g.is_direct_double() {
            assert!(square, "{shape:?}");
        }
        // Independent route: every prime-power multiplicity is even.
        let primary_even = g.primary_decomposition().iter().all(|(_, pks)| {
            let mut counts = std::collections::BTreeMap::new();
            for pk in pks {
                *counts.entry(*pk).or_insert(0) += 1;
            }
            counts.values().all(|c| c % 2 == 0)
        });
        assert_eq!(g.is_direct_double(), primary_even, "{shape:?}");
    }
    assert!(!FinAbGroup::new(vec![4]).unwrap().is_direct_double());
}

#[test]
fn lattice_is_duplicate_free_and_closed() {
    for shape in [vec![2, 4], vec![3, 9], vec![2, 2, 2], vec![12]] {
        let g = FinAbGroup::new(shape).unwrap();
        let lat = SubgroupLattice::new(&g, DEFAULT_CAP).unwrap();
        let distinct: HashSet<Vec<GroupElement>> = lat.subgroups().iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(distinct.len(), lat.len());
        for s in lat.subgroups() {
            for a in s.elements() {
                assert!(s.contains(&g.neg(a)));
                for b in s.elements() {
                    assert!(s.contains(&g.add(a, b)));
                }
            }
        }
    }
}

#[test]
fn prefix_identity_exhaustive_small() {
    for n in 1..=8 {
        let h: Vec<_> = even_weight_vectors(n).collect();
        for v in &h {
            for w in &h {
                assert_eq!(prefix_sum_map(v).dot(w) ^ v.dot(&prefix_sum_map(w)), v.dot(w));
            }
        }
    }
}

#[test]
fn bigint_and_i64_agree_on_surgery_forms() {
    let rows: &[&[i64]] = &[&[2, 0, 1], &[0, 2, 1], &[1, 1, 2]];
    let small = Form::from_surgery(&Matrix::from_i64_rows(rows).unwrap()).unwrap();
    let big = linkform::Form::from_surgery(&linkform::IntMatrix::from_i64_rows(rows).unwrap()).unwrap();
    let lift = |x: &QmodZ<i64>| QmodZ::new(BigInt::from(*x.numerator()), BigInt::from(*x.denominator())).unwrap();
    let small_rows: Vec<Vec<_>> = small.gram_rows().iter().map(|r| r.iter().map(lift).collect()).collect();
    assert_eq!(big.gram_rows(), small_rows);
    assert!(big.group().order().is_positive());
}
