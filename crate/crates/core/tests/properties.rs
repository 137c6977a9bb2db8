use std::collections::BTreeMap;

use canform_core::freealg::{bracket_expand, coproduct, shuffles, BracketTree, FreeElement, Word};
use canform_core::polyrat::{
    asym, equals, sgn_multiindex, sym, GroupElement, LinearForm, MultiIndex, RatFun, Rewritten, Sampler, SymFun,
    Var, Weight, Q,
};
use canform_core::treediag::{diagram_to_ratfun, parse_diagram, render, DiagramTree, Edge, Label, Node, Root, Target, Wrapper};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Q {
    format!("{n}/{d}").parse().unwrap()
}

/// One term `c * v^e / (forms)` over the variables in `pool`.
fn term(pool: Vec<Var>) -> impl Strategy<Value = RatFun> {
    let n = pool.len();
    let pick = move || 0..n.max(1);
    (
        (-5i64..=5).prop_filter("nonzero", |c| *c != 0),
        1i64..4,
        pick(),
        0u32..3,
        prop::collection::vec((pick(), prop::option::of(pick())), 0..3),
    )
        .prop_map(move |(c, d, v, e, forms)| {
            let mut f = RatFun::constant(q(c, d));
            if n == 0 {
                return f;
            }
            f = f.mul(&RatFun::from_poly(RatFun::var(pool[v]).numerator().pow(e)));
            for (a, b) in forms {
                if let Ok(inv) = RatFun::inv_diff(Some(pool[a]), b.map(|b| pool[b])) {
                    f = f.mul(&inv);
                }
            }
            f
        })
}

fn ratfun_in(pool: Vec<Var>) -> impl Strategy<Value = RatFun> {
    prop::collection::vec(term(pool), 1..4).prop_map(|ts| ts.iter().fold(RatFun::zero(), |acc, t| acc.add(t)))
}

fn pool() -> Vec<Var> {
    vec![Var::t(1, 1), Var::t(1, 2), Var::t(2, 1), Var::Z(1)]
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    ratfun_in(pool())
}

fn form() -> impl Strategy<Value = LinearForm> {
    (0..4usize, prop::option::of(0..4usize)).prop_filter_map("degenerate form", |(a, b)| {
        let p = pool();
        match LinearForm::difference(Some(p[a]), b.map(|b| p[b])) {
            Rewritten::Form(_, f) => Some(f),
            _ => None,
        }
    })
}

/// A rank-2 weight with `|k| <= max` and a function of its variables.
fn weighted(max: u32) -> impl Strategy<Value = (Weight, RatFun)> {
    (0..=max, 0..=max)
        .prop_filter("total", move |(a, b)| a + b <= max)
        .prop_flat_map(|(a, b)| {
            let k = Weight::new(vec![a, b]).unwrap();
            let vars = k.variables();
            (Just(k), ratfun_in(vars))
        })
}

fn product_of_forms() -> impl Strategy<Value = RatFun> {
    ((1i64..5), prop::collection::vec(form(), 0..3)).prop_map(|(c, forms)| {
        forms.into_iter().fold(RatFun::constant(q(c, 1)), |acc, f| acc.mul(&RatFun::from_poly(f.to_poly())))
    })
}

fn point_eval(funs: &[&RatFun], seed: u64) -> Option<Vec<Q>> {
    Sampler::new(seed).eval_all(funs).ok()
}

fn transpositions(k: &Weight) -> Vec<GroupElement> {
    (1..=k.rank() as u32).filter(|&i| k.get(i) >= 2).map(|i| GroupElement::transposition(k, i, 1, 2)).collect()
}

proptest! {
    #[test]
    fn display_parses_back(f in ratfun()) {
        let back: RatFun = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn addition_is_commutative_and_associative(f in ratfun(), g in ratfun(), h in ratfun()) {
        prop_assert_eq!(f.add(&g), g.add(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn multiplication_distributes(f in ratfun(), g in ratfun(), h in ratfun()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
    }

    #[test]
    fn division_undoes_multiplication(f in ratfun(), g in product_of_forms()) {
        prop_assert_eq!(f.mul(&g).div(&g).unwrap(), f);
    }

    #[test]
    fn normal_form_is_unique(f in ratfun(), l in form()) {
        let mut den = f.denominator().clone();
        *den.entry(l).or_insert(0) += 1;
        let expanded = RatFun::from_parts(f.numerator().mul_form(&l), den);
        prop_assert_eq!(expanded, f);
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in ratfun(), g in ratfun(), seed in any::<u64>()) {
        let (sum, prod) = (f.add(&g), f.mul(&g));
        let values = point_eval(&[&f, &g, &sum, &prod], seed);
        prop_assume!(values.is_some());
        let v = values.unwrap();
        prop_assert_eq!(&v[0] + &v[1], v[2].clone());
        prop_assert_eq!(&v[0] * &v[1], v[3].clone());
    }

    #[test]
    fn sampled_equality_agrees_with_normal_form(f in ratfun(), g in ratfun()) {
        prop_assert_eq!(equals(&f, &g), f == g);
        prop_assert!(equals(&f, &f.add(&g).sub(&g)));
    }

    #[test]
    fn sym_is_invariant_and_asym_is_skew((k, f) in weighted(3)) {
        let s = sym(&f, &k);
        let a = asym(&f, &k);
        for g in transpositions(&k) {
            prop_assert_eq!(g.act(&s), s.clone());
            prop_assert_eq!(g.act(&a), a.neg());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn star_is_commutative((k1, f) in weighted(2), (k2, g) in weighted(1)) {
        let (a, b) = (SymFun::symmetrized(&f, &k1), SymFun::symmetrized(&g, &k2));
        prop_assert_eq!(a.star(&b).unwrap(), b.star(&a).unwrap());
    }

    #[test]
    fn star_is_associative((k1, f) in weighted(1), (k2, g) in weighted(1), (k3, h) in weighted(1)) {
        let a = SymFun::symmetrized(&f, &k1);
        let b = SymFun::symmetrized(&g, &k2);
        let c = SymFun::symmetrized(&h, &k3);
        prop_assert_eq!(a.star(&b).unwrap().star(&c).unwrap(), a.star(&b.star(&c).unwrap()).unwrap());
    }
}

fn bracket_tree(max_leaves: u32) -> impl Strategy<Value = BracketTree> {
    let leaf = (1u32..=3).prop_map(BracketTree::Leaf);
    leaf.prop_recursive(3, max_leaves, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| BracketTree::bracket(a, b)))
        .prop_filter("leaves", move |t| t.leaves() <= max_leaves as usize)
}

type Triple = BTreeMap<(Word, Word, Word), Q>;

fn add_to(out: &mut Triple, key: (Word, Word, Word), c: Q) {
    *out.entry(key).or_insert_with(Q::default) += c;
}

proptest! {
    #[test]
    fn brackets_are_antisymmetric(a in bracket_tree(2), b in bracket_tree(2)) {
        let ab = bracket_expand(&BracketTree::bracket(a.clone(), b.clone()));
        let ba = bracket_expand(&BracketTree::bracket(b, a));
        prop_assert_eq!(ab, ba.neg());
    }

    #[test]
    fn jacobi_identity(a in bracket_tree(2), b in bracket_tree(1), c in bracket_tree(1)) {
        let br = |x: &BracketTree, y: &BracketTree, z: &BracketTree| {
            bracket_expand(&BracketTree::bracket(x.clone(), BracketTree::bracket(y.clone(), z.clone())))
        };
        let sum = br(&a, &b, &c).add(&br(&b, &c, &a)).add(&br(&c, &a, &b));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bracket_expansion_keeps_content(t in bracket_tree(4)) {
        let e: FreeElement = bracket_expand(&t);
        if let Some(k) = e.content(3).unwrap() {
            prop_assert_eq!(k, t.content(3));
        }
    }

    #[test]
    fn coproduct_is_coassociative(letters in prop::collection::vec(1u32..=3, 0..=4)) {
        let w = Word::new(letters);
        let (mut left, mut right) = (Triple::new(), Triple::new());
        for ((a, b), c) in coproduct(&w) {
            for ((a1, a2), c1) in coproduct(&a) {
                add_to(&mut left, (a1, a2, b.clone()), &c * &c1);
            }
            for ((b1, b2), c2) in coproduct(&b) {
                add_to(&mut right, (a.clone(), b1, b2), &c * &c2);
            }
        }
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffle_count_is_binomial(a in prop::collection::vec(1u32..=3, 0..=4), b in prop::collection::vec(1u32..=3, 0..=4)) {
        let (n, m) = (a.len() as u64, b.len() as u64);
        let binom = (1..=m).fold(1u64, |acc, i| acc * (n + i) / i);
        prop_assert_eq!(shuffles(&MultiIndex::new(a), &MultiIndex::new(b)).len() as u64, binom);
    }
}

#[test]
fn sign_matches_inversion_count() {
    for rank in 1..=3 {
        for k in Weight::all_up_to(rank, 5) {
            for j in MultiIndex::all_with_content(&k) {
                let c = j.colors();
                let inversions = (0..c.len()).flat_map(|u| (u + 1..c.len()).map(move |v| (u, v))).filter(|&(u, v)| c[u] > c[v]).count();
                let expected = if inversions % 2 == 0 { 1 } else { -1 };
                assert_eq!(sgn_multiindex(&j), expected, "{j}");
            }
        }
    }
}

fn node(depth: u32) -> BoxedStrategy<Node> {
    let label = (1u32..=2).prop_map(Label::Color);
    if depth == 0 {
        return label.prop_map(|label| Node { label, children: vec![] }).boxed();
    }
    (label, prop::collection::vec((any::<bool>(), node(depth - 1)), 0..=2))
        .prop_map(|(label, kids)| Node {
            label,
            children: kids.into_iter().map(|(double, n)| Edge { double, target: Target::Node(n) }).collect(),
        })
        .boxed()
}

fn forest() -> impl Strategy<Value = DiagramTree> {
    let root = (any::<bool>(), prop::collection::vec(node(2), 1..=2));
    (prop::option::of(prop::sample::select(vec![q(1, 2), q(3, 1), q(-2, 3)])), prop::collection::vec(root, 1..=2)).prop_map(
        |(prefactor, roots)| {
            let roots = roots
                .into_iter()
                .enumerate()
                .map(|(m, (anchored, kids))| Root {
                    anchor: anchored.then_some(Var::Z(m as u32 + 1)),
                    children: kids.into_iter().map(|n| Edge { double: false, target: Target::Node(n) }).collect(),
                })
                .collect();
            DiagramTree { prefactor, wrapper: None, roots }
        },
    )
}

fn size(n: &Node) -> usize {
    1 + n.children.iter().map(|e| if let Target::Node(c) = &e.target { size(c) } else { 0 }).sum::<usize>()
}

fn reversed(n: &Node) -> Node {
    let children = n
        .children
        .iter()
        .rev()
        .map(|e| match &e.target {
            Target::Node(c) => Edge { double: e.double, target: Target::Node(reversed(c)) },
            Target::Ref(v) => Edge { double: e.double, target: Target::Ref(*v) },
        })
        .collect();
    Node { label: n.label, children }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagrams_render_and_parse_back(d in forest()) {
        let text = render(&d);
        prop_assert_eq!(parse_diagram(&text).unwrap(), d);
    }

    #[test]
    fn symmetrized_diagrams_ignore_sibling_order(n in node(2).prop_filter("small", |n| size(n) <= 4)) {
        let wrap = |n: Node| {
            let mut d = DiagramTree {
                prefactor: None,
                wrapper: None,
                roots: vec![Root { anchor: None, children: vec![Edge { double: false, target: Target::Node(n) }] }],
            };
            d.wrapper = Some((Wrapper::Sym, d.content().unwrap()));
            d
        };
        let a = diagram_to_ratfun(&wrap(n.clone())).unwrap();
        let b = diagram_to_ratfun(&wrap(reversed(&n))).unwrap();
        prop_assert_eq!(a, b);
    }
}
