use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use medial::brauer::{all_permutations, compose_lift, lift, StrandDiagram};
use medial::constructions::{
    catalog, cm_naturality, psi_lift, psi_shape, split, upward_square, LiftArgs,
};
use medial::groups::oracle::image;
use medial::groups::{generator_perms, is_labelled_neighbour_swap, nseq, GeneratorRef};
use medial::sample::{group_alphabet, random_formula, random_group_word, random_term};
use medial::{
    arrows_equal, eval_perm, functor_f, parse_arrow, parse_formula, ArrowTerm, Dialect, Formula,
    Shape,
};

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

fn letters(prefix: &str, n: usize) -> Vec<Formula> {
    (1..=n).map(|k| Formula::letter(format!("{prefix}{k}"))).collect()
}

fn rename(f: &Formula, prefix: &str) -> Formula {
    f.map_letters(&mut |name, _| Formula::letter(format!("{prefix}{name}")))
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => "[a-e][0-9]?".prop_map(Formula::letter),
        1 => Just(Formula::Unit),
    ];
    leaf.prop_recursive(5, 24, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Formula::conj(l, r))
    })
}

fn shape_from(f: &Formula) -> Shape {
    match f {
        Formula::Unit => Shape::Unit,
        Formula::Letter(_) => Shape::Hole,
        Formula::Conj(l, r) => Shape::conj(shape_from(l), shape_from(r)),
    }
}

/// Cm whose four indices are all free of the unit.
fn unit_free_cm(a: &ArrowTerm) -> bool {
    match a {
        ArrowTerm::Cm(a, b, c, d) => [a, b, c, d].iter().all(|x| !x.contains_unit()),
        _ => false,
    }
}

fn is_delta_or_sigma(a: &ArrowTerm) -> bool {
    matches!(
        a,
        ArrowTerm::DeltaFw(_) | ArrowTerm::DeltaBw(_) | ArrowTerm::SigmaFw(_) | ArrowTerm::SigmaBw(_)
    )
}

fn same_perm(f: &ArrowTerm, g: &ArrowTerm) -> bool {
    f.infer_type().unwrap() == g.infer_type().unwrap() && eval_perm(f).unwrap() == eval_perm(g).unwrap()
}

fn dialect(full: bool) -> Dialect {
    if full {
        Dialect::Full
    } else {
        Dialect::CmOnly
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn formula_print_parse_roundtrip(f in formula_strategy()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn arrow_print_parse_roundtrip(seed in any::<u64>(), leaves in 1usize..9, full in any::<bool>()) {
        let mut r = rng(seed);
        let chance = if full { 0.2 } else { 0.0 };
        let a = random_formula(&mut r, leaves, chance);
        let f = random_term(&mut r, &a, 8, dialect(full));
        let parsed = parse_arrow(&f.to_string()).unwrap();
        prop_assert!(parsed.infer_type().is_ok());
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn types_preserve_size(seed in any::<u64>(), leaves in 1usize..9, full in any::<bool>()) {
        let mut r = rng(seed);
        let a = random_formula(&mut r, leaves, if full { 0.2 } else { 0.0 });
        let f = random_term(&mut r, &a, 8, dialect(full));
        let (s, t) = f.infer_type().unwrap();
        prop_assert_eq!(s.letter_count(), t.letter_count());
        if !full {
            prop_assert_eq!(s.height(), t.height());
        }
    }

    #[test]
    fn perm_is_bijection_on_letters(seed in any::<u64>(), leaves in 1usize..9, full in any::<bool>()) {
        let mut r = rng(seed);
        let a = random_formula(&mut r, leaves, if full { 0.2 } else { 0.0 });
        let f = random_term(&mut r, &a, 8, dialect(full));
        let p = eval_perm(&f).unwrap();
        prop_assert_eq!(p.size(), a.letter_count());
        let mut seen = p.images();
        seen.sort_unstable();
        prop_assert_eq!(seen, (1..=p.size()).collect::<Vec<_>>());
        // Each letter goes to an occurrence of the same letter.
        let t = f.target().unwrap();
        let (src, tgt) = (a.letter_positions(), t.letter_positions());
        for (k, (name, _)) in src.iter().enumerate() {
            prop_assert_eq!(name, &tgt[p.image(k + 1) - 1].0);
        }
    }

    #[test]
    fn category_and_bifunctor_laws(seed in any::<u64>(), leaves in 2usize..8, full in any::<bool>()) {
        let d = dialect(full);
        let mut r = rng(seed);
        let a = random_formula(&mut r, leaves, if full { 0.15 } else { 0.0 });
        let f = random_term(&mut r, &a, 4, d);
        let b = f.target().unwrap();
        let g = random_term(&mut r, &b, 4, d);
        let c = g.target().unwrap();
        let h = random_term(&mut r, &c, 4, d);

        // Identity and associativity of composition.
        prop_assert!(same_perm(&ArrowTerm::comp(ArrowTerm::id(b.clone()), f.clone()), &f));
        prop_assert!(same_perm(&ArrowTerm::comp(f.clone(), ArrowTerm::id(a.clone())), &f));
        prop_assert!(same_perm(
            &ArrowTerm::comp(h.clone(), ArrowTerm::comp(g.clone(), f.clone())),
            &ArrowTerm::comp(ArrowTerm::comp(h.clone(), g.clone()), f.clone()),
        ));

        // Tensor preserves identities and composition.
        let a2 = random_formula(&mut r, 3, 0.0);
        let a2 = rename(&a2, "y");
        prop_assert!(eval_perm(&ArrowTerm::tensor(ArrowTerm::id(a.clone()), ArrowTerm::id(a2.clone())))
            .unwrap()
            .is_identity());
        let f2 = random_term(&mut r, &a2, 3, Dialect::CmOnly);
        let g2 = random_term(&mut r, &f2.target().unwrap(), 3, Dialect::CmOnly);
        prop_assert!(same_perm(
            &ArrowTerm::tensor(ArrowTerm::comp(g.clone(), f.clone()), ArrowTerm::comp(g2.clone(), f2.clone())),
            &ArrowTerm::comp(ArrowTerm::tensor(g, g2), ArrowTerm::tensor(f, f2)),
        ));
    }

    #[test]
    fn cm_is_natural(seed in any::<u64>(), sizes in proptest::collection::vec(1usize..4, 4)) {
        let mut r = rng(seed);
        let prefixes = ["p", "q", "r", "s"];
        let arrows: Vec<ArrowTerm> = sizes
            .iter()
            .zip(prefixes)
            .map(|(&n, pre)| {
                let a = rename(&random_formula(&mut r, n, 0.0), pre);
                random_term(&mut r, &a, 3, Dialect::CmOnly)
            })
            .collect();
        let (lhs, rhs) = cm_naturality(&arrows[0], &arrows[1], &arrows[2], &arrows[3]).unwrap();
        prop_assert!(arrows_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn cm_then_swapped_cm_is_identity(a in formula_strategy(), b in formula_strategy(),
                                      c in formula_strategy(), d in formula_strategy()) {
        let there = ArrowTerm::cm(a.clone(), b.clone(), c.clone(), d.clone());
        let back = ArrowTerm::cm(a.clone(), c.clone(), b.clone(), d.clone());
        let round = ArrowTerm::comp(back, there);
        let (s, t) = round.infer_type().unwrap();
        prop_assert_eq!(s, t);
        prop_assert!(eval_perm(&round).unwrap().is_identity());
    }

    #[test]
    fn inverse_composes_to_identity(seed in any::<u64>(), leaves in 1usize..9, full in any::<bool>()) {
        let mut r = rng(seed);
        let a = random_formula(&mut r, leaves, if full { 0.2 } else { 0.0 });
        let f = random_term(&mut r, &a, 8, dialect(full));
        let round = ArrowTerm::comp(f.inverse(), f.clone());
        prop_assert_eq!(round.infer_type().unwrap(), (a.clone(), a));
        prop_assert!(eval_perm(&round).unwrap().is_identity());
    }

    #[test]
    fn catalog_holds_at_random_bindings(seed in any::<u64>(), units in any::<bool>()) {
        let mut r = rng(seed);
        for entry in catalog() {
            let bindings: BTreeMap<String, Formula> = entry
                .metavariables
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let n = 1 + (seed as usize >> (k % 16)) % 3;
                    let f = random_formula(&mut r, n, if units { 0.2 } else { 0.0 });
                    (v.to_string(), rename(&f, &format!("m{k}_")))
                })
                .collect();
            let check = entry.instantiate(&bindings).unwrap().check().unwrap();
            prop_assert!(check.holds(), "{}", entry.label);
        }
    }

    #[test]
    fn psi_shape_avoids_unit_arrows(seed in any::<u64>(), leaves in 1usize..8) {
        let mut r = rng(seed);
        let m = shape_from(&random_formula(&mut r, leaves, 0.0));
        let n = m.arity();
        let f = psi_shape(&m, &letters("a", n), &letters("b", n)).unwrap();
        prop_assert_eq!(f.count(is_delta_or_sigma), 0);
        let paired: Vec<Formula> = letters("a", n)
            .into_iter()
            .zip(letters("b", n))
            .map(|(a, b)| Formula::conj(a, b))
            .collect();
        let expected = (
            m.apply(&paired).unwrap(),
            Formula::conj(m.apply(&letters("a", n)).unwrap(), m.apply(&letters("b", n)).unwrap()),
        );
        prop_assert_eq!(f.infer_type().unwrap(), expected);
    }

    #[test]
    fn psi_shape_with_units_is_well_typed(seed in any::<u64>(), leaves in 1usize..8) {
        let mut r = rng(seed);
        let m = shape_from(&random_formula(&mut r, leaves, 0.25));
        let n = m.arity();
        let f = psi_shape(&m, &letters("a", n), &letters("b", n)).unwrap();
        let (_, t) = f.infer_type().unwrap();
        let expect = Formula::conj(m.apply(&letters("a", n)).unwrap(), m.apply(&letters("b", n)).unwrap());
        prop_assert_eq!(t, expect);
    }

    #[test]
    fn psi_lift_of_hole_has_no_unit_free_cm(seed in any::<u64>(), leaves in 1usize..7) {
        let mut r = rng(seed);
        let outer = shape_from(&random_formula(&mut r, leaves, 0.0));
        let n = outer.arity();
        let i = 1 + (seed as usize) % n;
        let args = LiftArgs::new(letters("b", i - 1), letters("a", 1), letters("c", 1), letters("d", n - i));
        let f = psi_lift(&outer, i, &Shape::Hole, &args).unwrap();
        prop_assert_eq!(f.count(unit_free_cm), 0);
        let (l, rr) = split(&outer, i, &Shape::Hole).unwrap();
        let mut left = args.before.clone();
        left.extend(args.left.clone());
        let mut right = args.right.clone();
        right.extend(args.after.clone());
        let (_, t) = f.infer_type().unwrap();
        prop_assert_eq!(t, Formula::conj(l.apply(&left).unwrap(), rr.apply(&right).unwrap()));
        prop_assert_eq!(eval_perm(&f).unwrap().size(), n + 1);
    }

    #[test]
    fn psi_lift_types(seed in any::<u64>(), outer_leaves in 1usize..6, inner_leaves in 1usize..5) {
        let mut r = rng(seed);
        let outer = shape_from(&random_formula(&mut r, outer_leaves, 0.0));
        let inner = shape_from(&random_formula(&mut r, inner_leaves, 0.0));
        let (n, m) = (outer.arity(), inner.arity());
        let i = 1 + (seed as usize) % n;
        let args = LiftArgs::new(letters("b", i - 1), letters("a", m), letters("e", m), letters("c", n - i));
        let f = psi_lift(&outer, i, &inner, &args).unwrap();
        let paired: Vec<Formula> = args.left.iter().zip(&args.right)
            .map(|(a, b)| Formula::conj(a.clone(), b.clone()))
            .collect();
        let mut outer_args = args.before.clone();
        outer_args.push(inner.apply(&paired).unwrap());
        outer_args.extend(args.after.clone());
        let (s, _) = f.infer_type().unwrap();
        prop_assert_eq!(s, outer.apply(&outer_args).unwrap());
    }

    #[test]
    fn upward_squares_commute(seed in any::<u64>(), sizes in proptest::collection::vec(1usize..3, 8)) {
        let mut r = rng(seed);
        let mut side = |pre: &str, k: usize| -> Vec<Formula> {
            (0..k)
                .map(|j| rename(&random_formula(&mut r, sizes[j], 0.0), &format!("{pre}{j}_")))
                .collect()
        };
        let (left, right) = (side("l", 4), side("r", 4));
        let hole = || Shape::Hole;
        let hh = || Shape::conj(hole(), hole());
        let cm = upward_square(
            "cm",
            &Shape::conj(hh(), hh()),
            &Shape::conj(hh(), hh()),
            &[0, 2, 1, 3],
            |xs| ArrowTerm::cm(xs[0].clone(), xs[1].clone(), xs[2].clone(), xs[3].clone()),
            &left,
            &right,
        )
        .unwrap();
        let delta = upward_square(
            "delta",
            &Shape::conj(hole(), Shape::Unit),
            &hole(),
            &[0],
            |xs| ArrowTerm::DeltaFw(xs[0].clone()),
            &left[..1],
            &right[..1],
        )
        .unwrap();
        let sigma = upward_square(
            "sigma",
            &Shape::conj(Shape::Unit, hole()),
            &hole(),
            &[0],
            |xs| ArrowTerm::SigmaFw(xs[0].clone()),
            &left[..1],
            &right[..1],
        )
        .unwrap();
        for eq in [cm, delta, sigma] {
            prop_assert!(eq.check().unwrap().holds(), "{}", eq.name);
        }
    }

    #[test]
    fn equality_is_a_congruence(seed in any::<u64>(), leaves in 2usize..7) {
        let mut r = rng(seed);
        let a = random_formula(&mut r, leaves, 0.0);
        let f = random_term(&mut r, &a, 5, Dialect::CmOnly);
        let w = random_term(&mut r, &a, 5, Dialect::CmOnly);
        // Same arrow written differently: through a detour and back.
        let g = ArrowTerm::comp(f.clone(), ArrowTerm::comp(w.inverse(), w));
        prop_assert!(arrows_equal(&f, &f).unwrap());
        prop_assert!(arrows_equal(&f, &g).unwrap());
        prop_assert!(arrows_equal(&g, &f).unwrap());

        let b = f.target().unwrap();
        let h = random_term(&mut r, &b, 4, Dialect::CmOnly);
        prop_assert!(arrows_equal(&ArrowTerm::comp(h.clone(), f.clone()), &ArrowTerm::comp(h, g.clone())).unwrap());
        let k = random_term(&mut r, &rename(&a, "z"), 4, Dialect::CmOnly);
        prop_assert!(arrows_equal(&ArrowTerm::tensor(f.clone(), k.clone()), &ArrowTerm::tensor(g.clone(), k.clone())).unwrap());
        prop_assert!(arrows_equal(&ArrowTerm::tensor(k.clone(), f), &ArrowTerm::tensor(k, g)).unwrap());
    }

    #[test]
    fn equality_is_transitive(seed in any::<u64>(), leaves in 2usize..7) {
        // All letters alike, so distinct walks often share a type.
        let mut r = rng(seed);
        let a = random_formula(&mut r, leaves, 0.0).map_letters(&mut |_, _| Formula::letter("x"));
        let terms: Vec<ArrowTerm> = (0..6).map(|_| random_term(&mut r, &a, 4, Dialect::CmOnly)).collect();
        for f in &terms {
            for g in &terms {
                let fg = arrows_equal(f, g).unwrap();
                prop_assert_eq!(fg, arrows_equal(g, f).unwrap());
                for h in &terms {
                    if fg && arrows_equal(g, h).unwrap() {
                        prop_assert!(arrows_equal(f, h).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn functor_is_faithful(seed in any::<u64>(), leaves in 2usize..9) {
        let mut r = rng(seed);
        let a = random_formula(&mut r, leaves, 0.0).map_letters(&mut |_, _| Formula::letter("x"));
        let f = random_term(&mut r, &a, 5, Dialect::CmOnly);
        let t = f.target().unwrap();
        let w = random_term(&mut r, &a, 5, Dialect::CmOnly);
        let mut candidates = vec![ArrowTerm::comp(f.clone(), ArrowTerm::comp(w.inverse(), w))];
        for _ in 0..6 {
            let g = random_term(&mut r, &a, 5, Dialect::CmOnly);
            if g.target().unwrap() == t {
                candidates.push(g);
            }
        }
        let ff = functor_f(&f).unwrap();
        let (fs, ft) = ff.infer_type().unwrap();
        let h = a.height();
        prop_assert_eq!(&fs, &medial::groups::balanced(h));
        prop_assert_eq!(&ft, &fs);
        for g in candidates {
            let fg = functor_f(&g).unwrap();
            let same_image = image(&ff).unwrap() == image(&fg).unwrap();
            prop_assert_eq!(arrows_equal(&f, &g).unwrap(), same_image);
        }
    }
}

#[test]
fn lift_is_a_homomorphism_on_s4() {
    for k in 1..=4 {
        let perms = all_permutations(k);
        for p in &perms {
            for q in &perms {
                let pq = StrandDiagram::new(p.clone()).compose(&StrandDiagram::new(q.clone())).unwrap();
                let lhs = lift(&pq);
                let rhs = compose_lift(&lift(&StrandDiagram::new(p.clone())), &lift(&StrandDiagram::new(q.clone()))).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn lift_is_injective_and_preserves_popcount() {
    for k in 1..=4 {
        let graphs: Vec<_> = all_permutations(k)
            .into_iter()
            .map(|p| lift(&StrandDiagram::new(p)))
            .collect();
        for (x, g) in graphs.iter().enumerate() {
            assert!(g.preserves_popcount());
            for h in &graphs[x + 1..] {
                assert_ne!(g, h);
            }
        }
    }
}

#[test]
fn generators_swap_their_labels() {
    for n in 1..=4 {
        let labels = nseq(n);
        for (g, p) in GeneratorRef::all(n).into_iter().zip(generator_perms(n).unwrap()) {
            assert!(is_labelled_neighbour_swap(&p, &labels, g.i, g.j), "{g:?}");
        }
    }
}

#[test]
fn generator_relations() {
    for n in 1..=4 {
        let gens: Vec<_> = GeneratorRef::all(n)
            .into_iter()
            .zip(generator_perms(n).unwrap())
            .collect();
        for (g, p) in &gens {
            assert!(p.compose(p).unwrap().is_identity(), "{g:?} is an involution");
        }
        for (g, p) in &gens {
            for (h, q) in &gens {
                let pq = p.compose(q).unwrap();
                if g.i != h.i || g.j.abs_diff(h.j) > 1 {
                    assert_eq!(pq, q.compose(p).unwrap(), "{g:?} {h:?} commute");
                } else if g.j + 1 == h.j {
                    let lhs = pq.compose(p).unwrap();
                    let rhs = q.compose(p).unwrap().compose(q).unwrap();
                    assert_eq!(lhs, rhs, "{g:?} {h:?} braid");
                }
            }
        }
    }
}

#[test]
fn words_agree_with_the_product_oracle() {
    let mut r = rng(2024);
    for n in 2..=4 {
        let alphabet = group_alphabet(n);
        for _ in 0..200 {
            let w = ArrowTerm::chain(random_group_word(&mut r, &alphabet, 5));
            let v = ArrowTerm::chain(random_group_word(&mut r, &alphabet, 5));
            let by_perm = arrows_equal(&w, &v).unwrap();
            let by_oracle = image(&w).unwrap() == image(&v).unwrap();
            assert_eq!(by_perm, by_oracle);
            assert_eq!(image(&w).unwrap().on_positions(&nseq(n)), eval_perm(&w).unwrap());
        }
    }
}
