use proptest::prelude::*;
use trisym_core::gallery;
use trisym_core::lts::{
    center, direct_product, ideal_closure, quotient, GridConstraint, GridPathSystem, LieTripleSystem, LtsMorphism,
    Subspace,
};
use trisym_core::numerics::{matrix_exp_f64, nullspace, rank};
use trisym_core::period::{subgroup_discreteness, Generators, SubgroupSearchConfig, Verdict};
use trisym_core::symlie::{eigensplit, g_plus, lie_center, triple_from_involution, triple_on_basis, LieAlgebra, SymmetricLieAlgebra};
use trisym_core::sympair::{FixedGroupPolicy, PointedSymmetricSpace};
use trisym_core::{Matrix, Rational, ScalarMode, TolerancePolicy};

fn tol() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn small_matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| Matrix::from_row_major(n, n, v).unwrap())
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    // the last row repeats a combination of the first two, so the rank is ≤ 3
    prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 3).prop_flat_map(|rows| {
        (Just(rows), -2i64..=2, -2i64..=2).prop_map(|(mut rows, a, b)| {
            let extra: Vec<i64> = (0..5).map(|j| a * rows[0][j] + b * rows[1][j]).collect();
            rows.push(extra);
            rows
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_of_negative_is_inverse(x in (2usize..=4).prop_flat_map(small_matrix)) {
        let n = x.rows();
        let e = matrix_exp_f64(&x);
        let f = matrix_exp_f64(&x.scale(&-1.0));
        let p = e.mul(&f).unwrap();
        prop_assert!(p.max_abs_diff(&Matrix::identity(n)) < 1e-12);
    }

    #[test]
    fn nullspace_residual_and_rank_agree(rows in int_matrix()) {
        let a_q = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap();
        let a_f = a_q.to_f64();
        let t = tol();
        prop_assert_eq!(rank(&a_q, &t), rank(&a_f, &t));
        prop_assert_eq!(nullspace(&a_q, &t).len(), nullspace(&a_f, &t).len());
        let scale = a_f.max_abs().max(1.0);
        for v in nullspace(&a_f, &t) {
            let r: f64 = a_f.mul_vec(&v).iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!(r <= 1e-9 * scale * 10.0, "residual {r}");
        }
        for v in nullspace(&a_q, &t) {
            prop_assert!(a_q.mul_vec(&v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn bracket_is_trilinear(
        x in prop::collection::vec(-3.0f64..3.0, 3),
        y in prop::collection::vec(-3.0f64..3.0, 3),
        y2 in prop::collection::vec(-3.0f64..3.0, 3),
        z in prop::collection::vec(-3.0f64..3.0, 3),
        alpha in -2.0f64..2.0,
        which in 0usize..2,
    ) {
        let m: LieTripleSystem<f64> = if which == 0 { gallery::sphere_lts(3) } else { gallery::u_minus_lts(2) };
        let combo: Vec<f64> = y.iter().zip(&y2).map(|(a, b)| alpha * a + b).collect();
        let lhs = m.bracket(&x, &combo, &z).unwrap();
        let r1 = m.bracket(&x, &y, &z).unwrap();
        let r2 = m.bracket(&x, &y2, &z).unwrap();
        for ((l, a), b) in lhs.iter().zip(&r1).zip(&r2) {
            prop_assert!((l - (alpha * a + b)).abs() < 1e-10);
        }
        let lhs = m.bracket(&combo, &x, &z).unwrap();
        let r1 = m.bracket(&y, &x, &z).unwrap();
        let r2 = m.bracket(&y2, &x, &z).unwrap();
        for ((l, a), b) in lhs.iter().zip(&r1).zip(&r2) {
            prop_assert!((l - (alpha * a + b)).abs() < 1e-10);
        }
    }

    #[test]
    fn witnesses_replay(a in 0.1f64..10.0, b in 0.1f64..10.0) {
        let gens = vec![vec![a], vec![b]];
        let cfg = SubgroupSearchConfig::new(1e-4, 10_000, ScalarMode::Float64).unwrap();
        let r = subgroup_discreteness(&Generators::Float(gens.clone()), &cfg).unwrap();
        if r.verdict == Verdict::NonDiscreteWitness {
            let w = r.witness.unwrap();
            prop_assert!(w.norm > 0.0 && w.norm < 1e-4);
            prop_assert!(w.coefficients.iter().all(|c| c.unsigned_abs() <= 10_000));
            let replay = w.replay(&gens);
            prop_assert!((replay[0] - w.vector[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn exp_intertwines_block_embedding(v in prop::collection::vec(-1.5f64..1.5, 3)) {
        // coordinate 0 of u(2) is the o(2) generator; the rest span the minus part
        let x: Vec<f64> = std::iter::once(0.0).chain(v).collect();
        let p2 = gallery::u_pair(2, FixedGroupPolicy::FullFixedGroup);
        let p3 = gallery::u_pair(3, FixedGroupPolicy::FullFixedGroup);
        let embed = |m: &Matrix<f64>, fill: f64| {
            // realified 2×2 blocks into realified 3×3 blocks
            let mut out = Matrix::zeros(6, 6);
            out[(2, 2)] = fill;
            out[(5, 5)] = fill;
            for r in 0..4 {
                for c in 0..4 {
                    out[(r / 2 * 3 + r % 2, c / 2 * 3 + c % 2)] = m[(r, c)];
                }
            }
            out
        };
        let x3 = p3.coordinates(&embed(&p2.element(&x).unwrap(), 0.0)).unwrap();
        let lhs = p3.exp_point(&x3, 1.0).unwrap();
        let rhs = embed(&p2.exp_point(&x, 1.0).unwrap(), 1.0);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn base_point_is_isolated_fixed_point(v in prop::collection::vec(-1.0f64..1.0, 3), s in 1e-3f64..0.5) {
        // the minus part of u(2) has coordinates 1..4
        let pair = gallery::u_pair(2, FixedGroupPolicy::FullFixedGroup);
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let x: Vec<f64> = std::iter::once(0.0).chain(v.iter().map(|a| a * s / n)).collect();
        let p = pair.exp_point(&x, 1.0).unwrap();
        let moved = pair.mul(&pair.base_point(), &p).unwrap();
        prop_assert!(pair.point_residual(&moved, &p).unwrap() > s);
        let expected = pair.exp_point(&x, -1.0).unwrap();
        prop_assert!(pair.point_residual(&moved, &expected).unwrap() < 1e-12);
    }
}

fn ideal_test_system() -> LieTripleSystem<Rational> {
    let m = direct_product(&gallery::sphere_lts(2), &gallery::abelian_lts(1)).unwrap();
    direct_product(&m, &gallery::u_minus_lts(2).without_labels()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn left_closed_subspaces_are_ideals(
        blocks in prop::collection::vec(any::<bool>(), 4),
        extra in prop::option::of(prop::collection::vec(-2i64..=2, 6)),
    ) {
        let m = ideal_test_system();
        let t = tol();
        let e = |i: usize| -> Vec<Rational> { (0..6).map(|j| q((i == j) as i64)).collect() };
        let u_center: Vec<Rational> = [q(0), q(0), q(0)].into_iter().chain(gallery::u_minus_identity_direction::<Rational>(2)).collect();
        let block_vectors = [vec![e(0), e(1)], vec![e(2)], vec![e(3), e(4), e(5)], vec![u_center]];
        let mut vecs: Vec<Vec<Rational>> = blocks
            .iter()
            .zip(&block_vectors)
            .filter(|(on, _)| **on)
            .flat_map(|(_, b)| b.clone())
            .collect();
        if let Some(x) = extra {
            vecs.push(x.into_iter().map(q).collect());
        }
        let n = Subspace::span(6, &vecs, &t).unwrap();
        let c = ideal_closure(&m, &n, &t);
        if c.left {
            prop_assert!(c.middle && c.right, "{c:?}");
        }
    }

    #[test]
    fn quotient_ignores_representatives(
        x in prop::collection::vec(-5i64..=5, 3),
        c in -5i64..=5,
    ) {
        let t = tol();
        let m = gallery::u_minus_lts::<Rational>(2);
        let z = center(&m, &t);
        let quo = quotient(&m, &z, &t).unwrap();
        let xq: Vec<Rational> = x.into_iter().map(q).collect();
        let shifted: Vec<Rational> = xq
            .iter()
            .zip(gallery::u_minus_identity_direction::<Rational>(2))
            .map(|(a, b)| a.clone() + q(c) * b)
            .collect();
        prop_assert_eq!(quo.projection.apply(&xq).unwrap(), quo.projection.apply(&shifted).unwrap());
    }
}

#[test]
fn grid_center_is_lifted_center() {
    let t = tol();
    for m in [gallery::u_minus_lts::<Rational>(2).without_labels(), gallery::sphere_lts(3)] {
        let z = center(&m, &t);
        for grid in 3..=5 {
            for constraint in [GridConstraint::PathZeroAtStart, GridConstraint::LoopZeroAtBothEnds] {
                let g = GridPathSystem::new(m.clone(), grid, constraint).unwrap();
                let lifted = g.lift_subspace(&z, &t).unwrap();
                let direct = center(g.system(), &t);
                assert!(direct.same_as(&lifted), "T={grid} {}", constraint.name());
            }
        }
    }
}

#[test]
fn product_center_is_product_of_centers() {
    let t = tol();
    let fixtures: Vec<LieTripleSystem<Rational>> = vec![
        gallery::sphere_lts(2),
        gallery::abelian_lts(2),
        gallery::u_minus_lts(2).without_labels(),
    ];
    for a in &fixtures {
        for b in &fixtures {
            let p = direct_product(a, b).unwrap();
            let (za, zb) = (center(a, &t), center(b, &t));
            let mut vecs: Vec<Vec<Rational>> = za
                .basis()
                .iter()
                .map(|v| v.iter().cloned().chain((0..b.dim()).map(|_| q(0))).collect())
                .collect();
            vecs.extend(zb.basis().iter().map(|v| (0..a.dim()).map(|_| q(0)).chain(v.iter().cloned()).collect()));
            let expected = Subspace::span(a.dim() + b.dim(), &vecs, &t).unwrap();
            assert!(center(&p, &t).same_as(&expected));
        }
    }
}

#[test]
fn flip_minus_part_is_g_plus() {
    let t = tol();
    let algebras: Vec<LieAlgebra<Rational>> =
        vec![gallery::so3(), gallery::heisenberg(), gallery::u_algebra(2)];
    for g in algebras {
        let d = g.dim();
        let flip = gallery::flip_symmetric(&g, &t).unwrap();
        // basis f_i = (e_i, -e_i) of the (-1)-eigenspace
        let f: Vec<Vec<Rational>> = (0..d)
            .map(|i| (0..2 * d).map(|j| if j == i { q(1) } else if j == i + d { q(-1) } else { q(0) }).collect())
            .collect();
        let minus = Subspace::span(2 * d, &f, &t).unwrap();
        assert!(eigensplit(&flip, &t).unwrap().minus.same_as(&minus));
        let m = triple_on_basis(flip.algebra(), &minus, &t).unwrap();
        let target = g_plus(&g);
        let two = Matrix::identity(d).scale(&q(2));
        let phi = LtsMorphism::new(m, target, two).unwrap().certify(&t);
        assert!(phi.is_certified());
    }
}

#[test]
fn center_minus_part_is_central() {
    let t = tol();
    let mut cases: Vec<SymmetricLieAlgebra<Rational>> = vec![
        gallery::u_symmetric(2),
        gallery::u_symmetric(3),
        gallery::heisenberg_symmetric(),
        gallery::gl_transpose_symmetric(2),
        gallery::su2_symmetric(),
    ];
    cases.push(gallery::flip_symmetric(&gallery::heisenberg(), &t).unwrap());
    for s in cases {
        let split = eigensplit(&s, &t).unwrap();
        let m = triple_from_involution(&s, &t).unwrap();
        let zm = center(&m, &t);
        for v in lie_center(s.algebra(), &t).basis() {
            let tv = s.theta().mul_vec(v);
            let minus: Vec<Rational> = v.iter().zip(&tv).map(|(a, b)| (a.clone() - b.clone()) / q(2)).collect();
            let coords = split.minus.coordinates(&minus).expect("in g₋");
            assert!(zm.contains(&coords));
        }
    }
}

#[test]
fn shrinking_epsilon_keeps_witnesses() {
    let s2 = 2f64.sqrt();
    let inputs = vec![
        vec![vec![1.0], vec![s2]],
        vec![vec![1.0], vec![3f64.sqrt()]],
        vec![vec![1.0], vec![std::f64::consts::PI]],
        vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![s2, 5f64.sqrt()]],
    ];
    for gens in inputs {
        let mut seen_witness = false;
        for eps in [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8] {
            let cfg = SubgroupSearchConfig::new(eps, 1_000_000, ScalarMode::Float64).unwrap();
            let v = subgroup_discreteness(&Generators::Float(gens.clone()), &cfg).unwrap().verdict;
            if seen_witness {
                assert_ne!(v, Verdict::Discrete, "{gens:?} at {eps}");
            }
            seen_witness |= v == Verdict::NonDiscreteWitness;
        }
        assert!(seen_witness, "{gens:?}");
    }
}
