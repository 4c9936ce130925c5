use certkit::families::graph;
use certkit::groups::{ChiContext, Permutation, UqElement};
use certkit::instances::{greedy_labels, make_nice, CnfInstance, KnapsackInstance, SubsetSumInstance};
use certkit::numeric::{decode_base_w, encode_base_w};
use certkit::reduction::{lookup, GuardPolicy, ReductionConfig};
use certkit::{solve, Budget, FieldLayout, ProblemInstance, Witness};
use num_bigint::BigUint;
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = ProblemInstance> {
    prop_oneof![
        (prop::collection::vec(0u64..1000, 0..6), 0u64..3000)
            .prop_map(|(items, t)| SubsetSumInstance::from_u64(&items, t).into()),
        (prop::collection::vec((1u64..50, 1u64..50), 0..5), 0u64..100, 0u64..100)
            .prop_map(|(items, c, d)| KnapsackInstance::from_u64(&items, c, d).into()),
        prop::collection::vec(prop::collection::vec((1i32..5, any::<bool>()), 1..4), 0..5).prop_map(|cs| {
            let clauses = cs
                .into_iter()
                .map(|c| c.into_iter().map(|(v, neg)| if neg { -v } else { v }).collect())
                .collect();
            CnfInstance::new(4, clauses).into()
        }),
    ]
}

fn uq(q: u64) -> impl Strategy<Value = UqElement> {
    (0..q, 0..q, 0u8..2).prop_map(move |(x, y, z)| UqElement::new(x, y, z, q).unwrap())
}

fn cycle(q: u64) -> Permutation {
    Permutation::from_cycles(q as usize, &[(0..q as usize).collect()]).unwrap()
}

proptest! {
    #[test]
    fn json_round_trip(inst in instance()) {
        let back = ProblemInstance::from_json(&inst.to_json()).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn base_w_round_trip(digits in prop::collection::vec(0u64..1_000_000, 0..8), extra in 0u64..1000) {
        let base = BigUint::from(digits.iter().copied().max().unwrap_or(0) + 1 + extra);
        let digits: Vec<BigUint> = digits.into_iter().map(BigUint::from).collect();
        let value = encode_base_w(&digits, &base).unwrap();
        if base > BigUint::from(1u32) {
            prop_assert_eq!(decode_base_w(&value, &base, digits.len()).unwrap(), digits);
        }
    }

    #[test]
    fn witness_hex_round_trip(bits in prop::collection::vec(any::<bool>(), 0..70)) {
        let w = Witness::new(bits);
        prop_assert_eq!(Witness::from_hex(&w.to_hex(), w.len()).unwrap(), w);
    }

    #[test]
    fn field_layout_round_trip(fields in prop::collection::vec((0usize..12, any::<u64>()), 0..6)) {
        let layout = FieldLayout::new(fields.iter().map(|&(w, _)| w).collect());
        let values: Vec<BigUint> = fields.iter().map(|&(w, v)| BigUint::from(v & ((1u64 << w) - 1))).collect();
        let w = layout.encode(&values).unwrap();
        prop_assert_eq!(w.len(), layout.len());
        prop_assert_eq!(layout.decode(&w).unwrap(), values);
    }

    #[test]
    fn uq_is_associative((a, b, c) in (2u64..9).prop_flat_map(|q| (uq(q), uq(q), uq(q)))) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn chi_is_a_homomorphism(q in 2u64..9, xs in prop::collection::vec((0u64..64, 0u64..64, 0u8..2), 2)) {
        let ctx = ChiContext::new(q, &cycle(q)).unwrap();
        let a = UqElement::new(xs[0].0 % q, xs[0].1 % q, xs[0].2, q).unwrap();
        let b = UqElement::new(xs[1].0 % q, xs[1].1 % q, xs[1].2, q).unwrap();
        let lhs = ctx.chi(&a.mul(&b).unwrap()).unwrap();
        let rhs = ctx.chi(&a).unwrap().compose(&ctx.chi(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_inverse_and_order(images in (1usize..9).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())) {
        let p = Permutation::new(images).unwrap();
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.pow(p.order()).is_identity());
    }

    #[test]
    fn greedy_labels_separate_live_vertices(n in 1usize..8, mask in any::<u32>()) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = graph(n, edges);
        let nice = make_nice(g.n, &g.edges, &g.bags).unwrap();
        let width = nice.width();
        let labels = greedy_labels(g.n, &nice.commands, width).unwrap();
        for bag in &nice.bags {
            let mut seen: Vec<usize> = bag.iter().map(|&v| labels[v]).collect();
            prop_assert!(seen.iter().all(|&l| l <= width));
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), bag.len());
        }
    }

    #[test]
    fn synthesized_witness_preserves_yes(items in prop::collection::vec(1u64..40, 1..6), pick in any::<u8>()) {
        // Targets hit by a chosen subset, so every instance is a yes-instance.
        let t: u64 = items.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &p)| p).sum();
        let inst: ProblemInstance = SubsetSumInstance::from_u64(&items, t).into();
        let sol = solve(&inst, &Budget::default()).unwrap().solution.unwrap();
        let cfg = ReductionConfig { guard: GuardPolicy::Off, ..Default::default() };
        for name in ["ss-to-zq", "ss-to-monotone", "ss-to-monotone+monotone-to-zerosum"] {
            let r = lookup(name).unwrap();
            let w = r.synthesize(&inst, &sol, &cfg).unwrap();
            let app = r.apply(&inst, &w, &cfg).unwrap();
            prop_assert!(solve(&app.target, &Budget::default()).unwrap().answer.is_yes(), "{}", name);
            prop_assert!(app.target.parameter() <= app.params.bound);
        }
    }
}
