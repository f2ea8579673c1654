//! Randomized property tests over small windows.

use proptest::prelude::*;

use signedperm::bruhat::{leq_b, rank_b};
use signedperm::diagrams::{board_b, board_c};
use signedperm::essential::{basic_length, basic_signed, essential_set_b, BasicTriple};
use signedperm::perm_core::SignedPermutation;

fn signed_perm() -> impl Strategy<Value = SignedPermutation> {
    (1usize..=5)
        .prop_flat_map(|n| {
            (
                Just((1..=n as i64).collect::<Vec<i64>>()).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(values, signs)| {
            let window = values
                .into_iter()
                .zip(signs)
                .map(|(v, s)| if s { -v } else { v })
                .collect();
            SignedPermutation::new(window).unwrap()
        })
}

fn b_triple() -> impl Strategy<Value = BasicTriple> {
    (1i64..=4, 1i64..=4, -4i64..=4)
        .prop_filter_map("valid B triple", |(k, p, q)| BasicTriple::new_b(k, p, q).ok())
}

proptest! {
    #[test]
    fn display_parse_round_trip(w in signed_perm()) {
        let text = w.to_string();
        prop_assert_eq!(text.parse::<SignedPermutation>().unwrap(), w);
    }

    #[test]
    fn inverse_preserves_length(w in signed_perm()) {
        prop_assert_eq!(w.inverse().length(), w.length());
        prop_assert_eq!(w.iota().inverse(), w.inverse().iota());
    }

    #[test]
    fn longest_element_complements_length(w in signed_perm()) {
        let n = w.n();
        let w0 = SignedPermutation::longest_element(n);
        let flipped = w.compose(&w0);
        prop_assert_eq!(flipped.length(), n * n - w.length());
    }

    #[test]
    fn diagrams_count_length(w in signed_perm()) {
        prop_assert_eq!(board_b(&w).diagram().len(), w.length());
        prop_assert_eq!(board_c(&w).diagram().len(), w.length());
    }

    #[test]
    fn essential_triples_carry_exact_ranks(w in signed_perm()) {
        for t in essential_set_b(&w).triples() {
            prop_assert_eq!(rank_b(&w, t.p(), t.q()).unwrap() as i64, t.k());
        }
    }

    #[test]
    fn bruhat_order_brackets(w in signed_perm()) {
        let n = w.n();
        prop_assert!(leq_b(&w, &w));
        prop_assert!(leq_b(&SignedPermutation::identity(n), &w));
        prop_assert!(leq_b(&w, &SignedPermutation::longest_element(n)));
    }

    #[test]
    fn basic_elements_check_out(t in b_triple()) {
        let w = basic_signed(&t).unwrap();
        prop_assert!(w.is_bigrassmannian());
        prop_assert_eq!(basic_length(&t).unwrap(), w.length() as i64);
        prop_assert_eq!(w.shrink().n() as i64, t.n_min());
        prop_assert_eq!(rank_b(&w, t.p(), t.q()).unwrap() as i64, t.k());
    }
}
