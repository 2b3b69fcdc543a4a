use galilei::beta::{assemble_pair, invariance_space, solve_beta4_carrier, solve_beta4_space, verify_conditions};
use galilei::reps::{build, RepLabel, TABLE_LABELS};

fn labels() -> Vec<RepLabel> {
    TABLE_LABELS.iter().map(|&(n, m, l)| RepLabel::vector(n, m, l)).collect()
}

#[test]
fn b2_matches_full_invariance_oracle() {
    for q in labels() {
        let rep = build(q).unwrap();
        let solved = solve_beta4_carrier(&rep).unwrap();
        let oracle = invariance_space(&rep).unwrap();
        assert_eq!(solved.dim(), oracle.dim(), "{q}");
        assert!(solved.is_subspace_of(&oracle) && oracle.is_subspace_of(&solved), "{q}");
    }
}

#[test]
fn every_basis_pair_assembles() {
    for q in labels() {
        for q2 in labels() {
            let space = solve_beta4_space(q, q2).unwrap();
            for (r, e) in space.pairs() {
                let bs = assemble_pair(q, q2, &r, &e).unwrap();
                assert!(verify_conditions(&bs).pass(), "{q} x {q2}");
            }
        }
    }
}

#[test]
fn transposed_pairs_have_equal_dimension() {
    for q in labels() {
        for q2 in labels() {
            let a = solve_beta4_space(q, q2).unwrap().dim();
            let b = solve_beta4_space(q2, q).unwrap().dim();
            assert_eq!(a, b, "{q} x {q2}");
        }
    }
}

fn dim(a: (usize, usize, usize), b: (usize, usize, usize)) -> usize {
    solve_beta4_space(RepLabel::vector(a.0, a.1, a.2), RepLabel::vector(b.0, b.1, b.2)).unwrap().dim()
}

// Printed appendix values. Cells whose printed pattern disagrees with the
// computed space fail here on purpose.
#[test]
fn printed_dim_110_self() {
    assert_eq!(dim((1, 1, 0), (1, 1, 0)), 2);
}

#[test]
fn printed_dim_100_010() {
    assert_eq!(dim((1, 0, 0), (0, 1, 0)), 0);
}

#[test]
fn printed_dim_210_self() {
    assert_eq!(dim((2, 1, 0), (2, 1, 0)), 4);
}

#[test]
fn printed_dim_010_self() {
    assert_eq!(dim((0, 1, 0), (0, 1, 0)), 1);
}
