use proptest::prelude::*;

use tautilt::tower::Tower;
use tautilt::{Group, Word};

fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec((0usize..2, prop_oneof![Just(1i64), Just(-1i64)]), 0..12).prop_map(Word::from_runs)
}

proptest! {
    #[test]
    fn inverse_reverses_products(g in word(), h in word()) {
        prop_assert_eq!(g.mul(&h).inv(), h.inv().mul(&g.inv()));
        prop_assert!(g.mul(&g.inv()).is_identity());
        prop_assert!(g.mul(&h).length() <= g.length() + h.length());
    }

    #[test]
    fn rewriting_round_trips(g in word()) {
        let group = Group::free(["u", "v"]).unwrap();
        let tower = Tower::auto(&group, 2).unwrap();
        for s in 0..=2 {
            prop_assert_eq!(tower.expand(&tower.rewrite(&g, s)), g.clone());
        }
    }

    #[test]
    fn coset_keys_name_cosets(g in word(), h in word()) {
        let group = Group::free(["u", "v"]).unwrap();
        let tower = Tower::auto(&group, 2).unwrap();
        for s in 0..=2 {
            let key = tower.coset_key(&g, s);
            // g lies in its representative's coset
            let rep = tower.coset_rep(&key);
            prop_assert!(tower.rewrite(&rep.inv().mul(&g), s).exponents.iter().all(|&r| r == 0));
            // right multiplication by G_s keeps the coset
            let inside = tower.rewrite(&h, s);
            let hs = tower.expand_word(&inside.word);
            prop_assert_eq!(tower.coset_key(&g.mul(&hs), s), key);
        }
    }
}

#[test]
fn automatic_choices() {
    let group = Group::free(["u", "v"]).unwrap();
    let tower = Tower::auto(&group, 2).unwrap();
    assert_eq!(tower.chosen_word(1), Word::generator(0));
    assert_eq!(tower.chosen_word(2), Word::generator(1));
}
