use proptest::prelude::*;

use singlet_core::catalog::{composition_factors, dual, flatten, loewy};
use singlet_core::fusion::{fuse, fuse_indecomposable, grothendieck_product};
use singlet_core::labels::{alpha_coordinate, lowest_weight_of_simple, rbar, weight};
use singlet_core::oracle::Oracle;
use singlet_core::triplet::{derived_triplet_fuse_with, induce, induce_sum, TripletIndec};
use singlet_core::{FormalSum, Indecomposable, KacLabel, Kind, Params};

fn params(p: i64) -> Params {
    Params::new(p).unwrap()
}

/// A simple or projective label for `p`.
fn label(p: i64) -> impl Strategy<Value = Indecomposable> {
    (-6i64..=6, 1..=p, any::<bool>()).prop_map(move |(r, s, proj)| {
        if proj {
            Indecomposable::proj(params(p), r, s).unwrap()
        } else {
            Indecomposable::simple(params(p), r, s).unwrap()
        }
    })
}

fn p_and_labels(k: usize) -> impl Strategy<Value = (i64, Vec<Indecomposable>)> {
    (2i64..=7).prop_flat_map(move |p| (Just(p), prop::collection::vec(label(p), k)))
}

fn small_sum(p: i64) -> impl Strategy<Value = FormalSum> {
    prop::collection::vec((label(p), 1u64..=3), 0..=3).prop_map(FormalSum::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fusion_is_commutative((p, v) in p_and_labels(2)) {
        let pr = params(p);
        prop_assert_eq!(fuse_indecomposable(pr, &v[0], &v[1])?, fuse_indecomposable(pr, &v[1], &v[0])?);
    }

    #[test]
    fn fusion_is_associative((p, v) in p_and_labels(3)) {
        let pr = params(p);
        let (a, b, c) = (FormalSum::single(v[0]), FormalSum::single(v[1]), FormalSum::single(v[2]));
        let left = fuse(pr, &fuse(pr, &a, &b)?, &c)?;
        let right = fuse(pr, &a, &fuse(pr, &b, &c)?)?;
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fusion_is_bilinear((p, a, b, c) in (2i64..=5).prop_flat_map(|p| (Just(p), small_sum(p), small_sum(p), small_sum(p)))) {
        let pr = params(p);
        let lhs = fuse(pr, &(a.clone() + b.clone()), &c)?;
        let rhs = fuse(pr, &a, &c)? + fuse(pr, &b, &c)?;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn oracle_agrees_beyond_the_acceptance_window(p in 2i64..=8, r in -6i64..=6, r2 in -6i64..=6, s in 1i64..=8, s2 in 1i64..=8, proj in 0u8..3) {
        prop_assume!(s <= p && s2 <= p);
        let pr = params(p);
        let o = Oracle::new(pr);
        let (a, b) = match proj {
            0 => (Indecomposable::simple(pr, r, s)?, Indecomposable::simple(pr, r2, s2)?),
            1 => (Indecomposable::proj(pr, r, s)?, Indecomposable::simple(pr, r2, s2)?),
            _ => (Indecomposable::proj(pr, r, s)?, Indecomposable::proj(pr, r2, s2)?),
        };
        prop_assert_eq!(o.fuse_indecomposable(&a, &b)?, fuse_indecomposable(pr, &a, &b)?);
    }

    #[test]
    fn factors_commute_with_fusion((p, v) in p_and_labels(2)) {
        let pr = params(p);
        let (a, b) = (FormalSum::single(v[0]), FormalSum::single(v[1]));
        prop_assert_eq!(flatten(pr, &fuse(pr, &a, &b)?), grothendieck_product(pr, &a, &b)?);
    }

    #[test]
    fn simple_currents_are_invertible((p, v) in p_and_labels(1), r in -6i64..=6) {
        let pr = params(p);
        let j = FormalSum::single(Indecomposable::simple(pr, r, 1)?);
        let jinv = FormalSum::single(Indecomposable::simple(pr, 2 - r, 1)?);
        let x = FormalSum::single(v[0]);
        prop_assert_eq!(fuse(pr, &j, &jinv)?, FormalSum::single(Indecomposable::simple(pr, 1, 1)?));
        prop_assert_eq!(fuse(pr, &jinv, &fuse(pr, &j, &x)?)?, x);
    }

    #[test]
    fn loewy_layers_flatten_to_factors((p, v) in p_and_labels(1)) {
        let pr = params(p);
        let d = loewy(pr, &v[0])?;
        prop_assert_eq!(d.flatten(), composition_factors(pr, &v[0]));
        prop_assert_eq!(d.top(), d.socle());
    }

    #[test]
    fn dual_is_an_involution((p, v) in p_and_labels(1)) {
        let x = v[0];
        let d = dual(&x)?;
        prop_assert_eq!(dual(&d)?, x);
        prop_assert_eq!(d.kind(), x.kind());
        prop_assert_eq!(d == x, x.r() == 1);
        if x.kind() == Kind::SimpleM {
            let pr = params(p);
            prop_assert_eq!(lowest_weight_of_simple(pr, d.label()), lowest_weight_of_simple(pr, x.label()));
        }
    }

    #[test]
    fn label_display_round_trips((p, v) in p_and_labels(1)) {
        prop_assert_eq!(Indecomposable::parse(params(p), &v[0].to_string())?, v[0]);
    }

    #[test]
    fn weights_are_reflection_symmetric(p in 2i64..=9, r in -8i64..=8, s in -3i64..=20) {
        let pr = params(p);
        prop_assert_eq!(weight(pr, KacLabel::extended(r, s)), weight(pr, KacLabel::extended(-r, -s)));
        prop_assert_eq!(
            alpha_coordinate(pr, KacLabel::extended(r + 1, s + p)),
            alpha_coordinate(pr, KacLabel::extended(r, s))
        );
    }

    #[test]
    fn induction_respects_parity((p, v) in p_and_labels(1), shift in -3i64..=3) {
        let pr = params(p);
        let x = v[0];
        let moved = match x.kind() {
            Kind::SimpleM => Indecomposable::simple(pr, x.r() + 2 * shift, x.s())?,
            _ => Indecomposable::proj(pr, x.r() + 2 * shift, x.s())?,
        };
        prop_assert_eq!(induce(pr, &x)?, induce(pr, &moved)?);
        prop_assert_eq!(induce(pr, &x)?.rbar, rbar(x.r()));
    }

    #[test]
    fn induction_is_monoidal((p, v) in p_and_labels(2)) {
        // induce(a ⊠ b) depends only on the parity classes of a and b
        let pr = params(p);
        let prod = induce_sum(pr, &fuse_indecomposable(pr, &v[0], &v[1])?)?;
        let to_triplet = |x: &Indecomposable| -> Result<TripletIndec, singlet_core::Error> { induce(pr, x) };
        let (a, b) = (to_triplet(&v[0])?, to_triplet(&v[1])?);
        prop_assume!(!a.is_extended(pr) && !b.is_extended(pr));
        prop_assert_eq!(prod, derived_triplet_fuse_with(pr, &a, &b, 0, 0)?);
    }
}
