//! Randomized checks of the linear-algebra substrate over Q and F_7:
//! quotient spaces keep their projection/section contract, solving and
//! kernels re-substitute exactly.

use proptest::prelude::*;

use sweedler::field::{FieldSpec, Scalar};
use sweedler::linalg::{
    dense_to_sparse, kernel_basis, solve_linear, Matrix, Reducer, SolveOutcome, QuotientSpace,
};

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::Rationals), Just(FieldSpec::prime(7).unwrap())]
}

fn scalars(field: FieldSpec, n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(-6_i64..=6, n)
        .prop_map(move |vals| vals.into_iter().map(|v| field.from_i64(v)).collect())
}

fn matrices() -> impl Strategy<Value = Matrix> {
    (fields(), 1usize..=5, 1usize..=5).prop_flat_map(|(field, rows, cols)| {
        scalars(field, rows * cols).prop_map(move |vals| {
            let mut m = Matrix::zeros(field, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, vals[i * cols + j].clone());
                }
            }
            m
        })
    })
}

fn quotients() -> impl Strategy<Value = (FieldSpec, Vec<Vec<Scalar>>, QuotientSpace)> {
    (fields(), 1usize..=6, 0usize..=4).prop_flat_map(|(field, ambient, nrel)| {
        scalars(field, nrel * ambient).prop_map(move |vals| {
            let relations: Vec<Vec<Scalar>> =
                vals.chunks(ambient.max(1)).take(nrel).map(|c| c.to_vec()).collect();
            let qs =
                QuotientSpace::new(field, ambient, relations.iter().map(|r| dense_to_sparse(r)));
            (field, relations, qs)
        })
    })
}

fn all_zero(v: &[Scalar]) -> bool {
    v.iter().all(|s| s.is_zero())
}

proptest! {
    #[test]
    fn projection_after_section_is_the_identity((field, _rels, qs) in quotients()) {
        let p = qs.projection_matrix();
        let s = qs.section_matrix();
        prop_assert_eq!(p.mul(&s), Matrix::identity(field, qs.quotient_dim));
    }

    #[test]
    fn projection_annihilates_every_relation((_field, rels, qs) in quotients()) {
        for r in &rels {
            prop_assert!(all_zero(&qs.project(r)));
            prop_assert!(qs.annihilates(r));
        }
    }

    #[test]
    fn quotient_dimension_complements_the_relation_rank((field, rels, qs) in quotients()) {
        let mut red = Reducer::new(field, qs.ambient_dim);
        for r in &rels {
            red.add_sparse(dense_to_sparse(r));
        }
        prop_assert_eq!(qs.quotient_dim, qs.ambient_dim - red.rank());
    }

    #[test]
    fn lifted_classes_project_back((_field, _rels, qs) in quotients(), seed in -6_i64..=6) {
        // Every quotient coordinate vector round-trips through its section.
        for j in 0..qs.quotient_dim {
            let mut q = vec![qs.field.zero(); qs.quotient_dim];
            q[j] = qs.field.from_i64(seed);
            prop_assert_eq!(qs.project(&qs.lift(&q)), q);
        }
    }

    #[test]
    fn solving_a_consistent_system_resubstitutes(m in matrices(), raw in proptest::collection::vec(-6_i64..=6, 5)) {
        let field = m.field;
        let x: Vec<Scalar> = (0..m.cols).map(|j| field.from_i64(raw[j])).collect();
        let rhs = m.apply(&x);
        match solve_linear(&m, &rhs).unwrap() {
            SolveOutcome::Solution { particular, kernel } => {
                prop_assert_eq!(m.apply(&particular), rhs);
                for k in &kernel {
                    prop_assert!(all_zero(&m.apply(k)));
                }
                // The known solution lies in particular + span(kernel).
                let mut red = Reducer::new(field, m.cols);
                for k in &kernel {
                    red.add_sparse(dense_to_sparse(k));
                }
                let diff: Vec<Scalar> =
                    x.iter().zip(&particular).map(|(a, b)| a.sub(b)).collect();
                prop_assert!(red.reduce(dense_to_sparse(&diff)).is_empty());
            }
            SolveOutcome::Infeasible => prop_assert!(false, "consistent system declared infeasible"),
        }
    }

    #[test]
    fn contradictory_rows_are_infeasible(m in matrices()) {
        let field = m.field;
        let mut padded = Matrix::zeros(field, m.rows + 1, m.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                padded.set(i, j, m.at(i, j).clone());
            }
        }
        let mut rhs = vec![field.zero(); m.rows];
        rhs.push(field.one());
        prop_assert!(matches!(solve_linear(&padded, &rhs).unwrap(), SolveOutcome::Infeasible));
    }

    #[test]
    fn kernel_vectors_are_independent_and_complete(m in matrices()) {
        let kernel = kernel_basis(&m);
        let mut red = Reducer::new(m.field, m.cols);
        for k in &kernel {
            prop_assert!(all_zero(&m.apply(k)));
            prop_assert!(red.add_sparse(dense_to_sparse(k)), "dependent kernel vector");
        }
        prop_assert_eq!(kernel.len(), m.cols - m.rank());
    }
}
