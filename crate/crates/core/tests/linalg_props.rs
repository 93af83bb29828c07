use invtwist::{Field, LinMap, Scalar};
use proptest::prelude::*;

fn q() -> Field {
    Field::Rationals
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<(i64, i64)>>> {
    prop::collection::vec(prop::collection::vec((-5i64..=5, 1i64..=4), cols), rows)
}

fn to_map(field: Field, entries: &[Vec<(i64, i64)>]) -> LinMap {
    let rows: Vec<Vec<Scalar>> =
        entries.iter().map(|r| r.iter().map(|&(n, d)| field.ratio(n, d).unwrap()).collect()).collect();
    LinMap::from_dense(field, vec![rows[0].len()], vec![rows.len()], &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_is_associative(a in small_matrix(2, 2), b in small_matrix(2, 1), c in small_matrix(1, 2)) {
        let (a, b, c) = (to_map(q(), &a), to_map(q(), &b), to_map(q(), &c));
        let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
        prop_assert!(left.entries_eq(&right));
    }

    #[test]
    fn mixed_product(f in small_matrix(2, 2), g in small_matrix(2, 2), f2 in small_matrix(2, 2), g2 in small_matrix(2, 2)) {
        let (f, g, f2, g2) = (to_map(q(), &f), to_map(q(), &g), to_map(q(), &f2), to_map(q(), &g2));
        let lhs = f.tensor(&g).unwrap().compose(&f2.tensor(&g2).unwrap()).unwrap();
        let rhs = f.compose(&f2).unwrap().tensor(&g.compose(&g2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn composition_order_is_exact(a in small_matrix(3, 3), b in small_matrix(3, 3), c in small_matrix(3, 3)) {
        let (a, b, c) = (to_map(q(), &a), to_map(q(), &b), to_map(q(), &c));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_is_two_sided(m in small_matrix(3, 3), p in prop::sample::select(vec![0u64, 5, 7, 101])) {
        let field = if p == 0 { q() } else { Field::gf(p).unwrap() };
        let f = to_map(field, &m);
        let id = LinMap::id(field, 3);
        match f.invert() {
            Ok(inv) => {
                prop_assert_eq!(inv.compose(&f).unwrap(), id.clone());
                prop_assert_eq!(f.compose(&inv).unwrap(), id);
            }
            Err(invtwist::Error::NotInvertible { rank, size }) => {
                prop_assert!(rank < size);
                prop_assert_eq!(f.rank(), rank);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn solve_reproduces_right_hand_side(m in small_matrix(3, 3), x in prop::collection::vec(-9i64..=9, 3)) {
        let a = to_map(q(), &m);
        let x = invtwist::SparseVec::from_entries(3, x.iter().enumerate().map(|(i, &v)| (i, q().from_i64(v)))).unwrap();
        let b = a.apply(&x).unwrap();
        let sol = invtwist::linmap::solve_linear(&a, &b).unwrap();
        prop_assert_eq!(a.apply(&sol).unwrap(), b);
    }

    #[test]
    fn rational_display_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let s = q().ratio(n, d).unwrap();
        let text = s.to_string();
        prop_assert_eq!(q().parse(&text).unwrap(), s);
        // canonical: reduced with positive denominator
        if let Some((_, den)) = text.split_once('/') {
            prop_assert!(!den.starts_with('-'));
        }
    }

    #[test]
    fn residue_display_roundtrip(n in -100_000i64..100_000, p in prop::sample::select(vec![2u64, 5, 7, 65_537, 2_147_483_647])) {
        let f = Field::gf(p).unwrap();
        let s = f.from_i64(n);
        let text = s.to_string();
        prop_assert!(text.parse::<u64>().unwrap() < p);
        prop_assert_eq!(f.parse(&text).unwrap(), s);
    }
}

#[test]
fn flip_conventions() {
    assert!(LinMap::flip(q(), 1, 3).entries_eq(&LinMap::id(q(), 3)));
    let f = LinMap::flip(q(), 2, 3);
    assert!(LinMap::flip(q(), 3, 2).compose(&f).unwrap().entries_eq(&LinMap::id(q(), 6)));
    // e₀ ⊗ f₁ (index 1) goes to f₁ ⊗ e₀ (index 2)
    let f22 = LinMap::flip(q(), 2, 2);
    assert_eq!(f22.column(1), &invtwist::SparseVec::basis(q(), 4, 2));
}

#[test]
fn singular_systems() {
    let zero = LinMap::zero(q(), vec![2], vec![2]).unwrap();
    assert!(matches!(zero.invert(), Err(invtwist::Error::NotInvertible { rank: 0, size: 2 })));
    let b = invtwist::SparseVec::basis(q(), 2, 0);
    assert!(matches!(invtwist::linmap::solve_linear(&zero, &b), Err(invtwist::Error::Inconsistent)));
    let id = LinMap::id(q(), 2);
    assert_eq!(invtwist::linmap::solve_linear(&id, &b).unwrap(), b);
}
