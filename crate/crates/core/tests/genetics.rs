use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symreg::expr::{check_grammar, eval};
use symreg::genetics::{
    addterm_mutation, crossover, drastic_simplify, hoist_mutation, innergrow_mutation,
    insert_mutation, mutate, point_mutation, random_expression, simplify_algebraic,
    subtree_mutation, MutationKind, MutationWeights,
};
use symreg::{
    parse, BinaryOp, Dataset, ExprNode, Grammar, MutationConfig, Operator, OperatorSet, Options,
    UnaryOp,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn strict_options() -> Options {
    let cos = Operator::Unary(UnaryOp::Cos);
    let exp = Operator::Unary(UnaryOp::Exp);
    let log = Operator::Unary(UnaryOp::Log);
    Options {
        operators: OperatorSet::new(&BinaryOp::ALL, &UnaryOp::ALL),
        grammar: Grammar::default()
            .ban(cos, cos)
            .ban(exp, log)
            .ban(log, exp)
            .with_param_in_exponent_forbidden(true),
        ..Options::default()
    }
}

// Independent scans for the two grammar rules.
fn has_nesting(e: &ExprNode, outer: UnaryOp, inner: UnaryOp) -> bool {
    match e {
        ExprNode::Unary(op, c) => {
            (*op == outer && matches!(**c, ExprNode::Unary(i, _) if i == inner))
                || has_nesting(c, outer, inner)
        }
        ExprNode::Binary(_, l, r) => has_nesting(l, outer, inner) || has_nesting(r, outer, inner),
        _ => false,
    }
}

fn compound_exponent_with_param(e: &ExprNode) -> bool {
    match e {
        ExprNode::Binary(BinaryOp::Pow, l, r) => {
            (!r.is_leaf() && r.n_params() > 0)
                || compound_exponent_with_param(l)
                || compound_exponent_with_param(r)
        }
        ExprNode::Binary(_, l, r) => {
            compound_exponent_with_param(l) || compound_exponent_with_param(r)
        }
        ExprNode::Unary(_, c) => compound_exponent_with_param(c),
        _ => false,
    }
}

fn violates(e: &ExprNode) -> bool {
    has_nesting(e, UnaryOp::Cos, UnaryOp::Cos)
        || has_nesting(e, UnaryOp::Exp, UnaryOp::Log)
        || has_nesting(e, UnaryOp::Log, UnaryOp::Exp)
        || compound_exponent_with_param(e)
}

#[test]
fn random_expressions_respect_the_grammar() {
    let opts = strict_options();
    let mut r = rng(1);
    let (_, hi) = opts.mutation.random_expr_depth_range;
    for _ in 0..10_000 {
        let e = random_expression(&opts, 3, &mut r);
        assert!(!violates(&e), "{e}");
        assert!(check_grammar(&e, &opts.grammar));
        assert!(e.depth() <= hi, "{e}");
        assert!(e.max_variable() <= 3);
    }
}

#[test]
fn depth_one_range_gives_a_leaf() {
    let mut opts = Options::default();
    opts.mutation.random_expr_depth_range = (1, 1);
    let mut r = rng(2);
    for _ in 0..100 {
        let e = random_expression(&opts, 2, &mut r);
        assert!(e.is_leaf());
        if let ExprNode::Parameter(v) = e {
            assert!((-5.0..=5.0).contains(&v));
        }
    }
}

#[test]
fn mutation_chains_stay_grammatical() {
    let opts = strict_options();
    let mut r = rng(3);
    let mut pool: Vec<ExprNode> = (0..20).map(|_| random_expression(&opts, 3, &mut r)).collect();
    for step in 0..10_000 {
        let i = step % pool.len();
        let partner = pool[(i + 7) % pool.len()].clone();
        let (child, kind) = mutate(&pool[i], Some(&partner), &opts, 3, &mut r);
        assert!(!violates(&child), "{kind}: {} -> {child}", pool[i]);
        pool[i] = if child.node_count() > 40 {
            random_expression(&opts, 3, &mut r)
        } else {
            child
        };
    }
}

#[test]
fn subtree_mutations_stay_grammatical() {
    let opts = strict_options();
    let mut r = rng(4);
    for _ in 0..10_000 {
        let e = random_expression(&opts, 3, &mut r);
        let m = subtree_mutation(&e, &opts, 3, &mut r);
        assert!(check_grammar(&m, &opts.grammar), "{e} -> {m}");
    }
}

#[test]
fn draw_frequencies_follow_weights() {
    let cfg = MutationConfig::default();
    let n = 10_000;
    let mut counts = [0usize; 9];
    let mut r = rng(5);
    for _ in 0..n {
        let k = cfg.draw(5, true, &mut r);
        counts[MutationKind::ALL.iter().position(|&x| x == k).unwrap()] += 1;
    }
    let total: f64 = cfg.weights.0.iter().sum();
    for (i, kind) in MutationKind::ALL.iter().enumerate() {
        let p = cfg.weights.get(*kind) / total;
        let mean = p * n as f64;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        assert!(
            (counts[i] as f64 - mean).abs() <= 3.0 * sigma,
            "{kind}: {} vs {mean:.0} +- {sigma:.1}",
            counts[i]
        );
    }
}

#[test]
fn shallow_trees_only_get_shallow_mutations() {
    let cfg = MutationConfig::default();
    let mut r = rng(6);
    for _ in 0..2000 {
        let k = cfg.draw(1, true, &mut r);
        assert!(
            matches!(k, MutationKind::Insert | MutationKind::Point | MutationKind::AddTerm),
            "{k}"
        );
    }
    let hoist_only = MutationConfig {
        weights: MutationWeights::only(MutationKind::Hoist),
        ..MutationConfig::default()
    };
    assert_eq!(hoist_only.draw(1, false, &mut r), MutationKind::Point);
    let cross_only = MutationConfig {
        weights: MutationWeights::only(MutationKind::Crossover),
        ..MutationConfig::default()
    };
    assert_eq!(cross_only.draw(5, false, &mut r), MutationKind::Point);
}

#[test]
fn insert_grows_around_the_target() {
    let opts = Options::default();
    let v1 = parse("v1").unwrap();
    for seed in 0..200 {
        let out = insert_mutation(&v1, &opts, 2, &mut rng(seed));
        assert!(out.node_count() > 1);
        assert!(out.nodes().iter().any(|n| **n == v1), "{out}");
    }
}

#[test]
fn point_mutation_keeps_shape() {
    let opts = Options::default();
    let mut r = rng(7);
    for _ in 0..1000 {
        let e = random_expression(&opts, 3, &mut r);
        let m = point_mutation(&e, &opts, 3, &mut r);
        assert_eq!(m.node_count(), e.node_count());
        assert_eq!(m.depth(), e.depth());
    }
    let p = parse("1.5").unwrap();
    for seed in 0..50 {
        let m = point_mutation(&p, &opts, 1, &mut rng(seed));
        let ExprNode::Parameter(v) = m else { panic!() };
        assert!(v != 1.5 && (0.75..=3.0).contains(&v));
    }
    let only_add = Options {
        operators: OperatorSet::new(&[BinaryOp::Add], &[]),
        ..Options::default()
    };
    let e = parse("v1 + v2").unwrap();
    for seed in 0..50 {
        let m = point_mutation(&e, &only_add, 3, &mut rng(seed));
        assert_eq!(m.operator(), Some(Operator::Binary(BinaryOp::Add)));
    }
}

#[test]
fn addterm_appends() {
    let opts = Options::default();
    let e = parse("v1 * 2").unwrap();
    for seed in 0..100 {
        let out = addterm_mutation(&e, &opts, 2, &mut rng(seed));
        let ExprNode::Binary(BinaryOp::Add, l, _) = out else {
            panic!("{out}")
        };
        assert_eq!(*l, e);
    }
}

#[test]
fn hoist_examples() {
    let opts = Options::default();
    assert_eq!(hoist_mutation(&parse("cos(v1)").unwrap(), &opts, &mut rng(1)), parse("v1").unwrap());
    let sum = parse("v1 + v2").unwrap();
    for seed in 0..20 {
        let out = hoist_mutation(&sum, &opts, &mut rng(seed));
        assert!(out == parse("v1").unwrap() || out == parse("v2").unwrap());
    }
    let mut r = rng(8);
    for _ in 0..500 {
        let e = random_expression(&opts, 2, &mut r);
        if e.is_leaf() {
            continue;
        }
        assert!(hoist_mutation(&e, &opts, &mut r).node_count() < e.node_count());
    }
}

// All trees obtained by replacing a node A with a copy of a node B that is
// not inside A.
fn innergrow_outcomes(e: &ExprNode) -> Vec<ExprNode> {
    let n = e.node_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !e.contains_index(a, b) {
                out.push(e.replace_at(a, e.get(b).unwrap().clone()));
            }
        }
    }
    out
}

#[test]
fn innergrow_stays_in_feasible_set() {
    let opts = Options::default();
    let e = parse("(v1 + v2) * cos(v3)").unwrap();
    let feasible = innergrow_outcomes(&e);
    assert!(feasible.contains(&parse("(v1 + v2) * v1").unwrap()));
    for seed in 0..300 {
        let out = innergrow_mutation(&e, &opts, &mut rng(seed));
        assert!(feasible.contains(&out), "{out}");
    }
    let chain = parse("cos(exp(v1))").unwrap();
    for seed in 0..50 {
        let out = innergrow_mutation(&chain, &opts, &mut rng(seed));
        assert!(innergrow_outcomes(&chain).contains(&out), "{out}");
    }
}

#[test]
fn crossover_uses_parent_material() {
    let opts = Options::default();
    let a = parse("sin(v1) + 2.0 * v2").unwrap();
    let b = parse("exp(v3) - 0.5").unwrap();
    for seed in 0..200 {
        let child = crossover(&a, &b, &opts, &mut rng(seed));
        // the inserted subtree is a whole subtree of b
        let from_b = b.nodes().iter().any(|n| child.nodes().iter().any(|c| c == n));
        assert!(from_b, "{child}");
        assert!(child.node_count() <= opts.max_nodes);
    }
}

#[test]
fn simplification_examples() {
    let p = |s: &str| parse(s).unwrap();
    assert_eq!(drastic_simplify(&p("v1 + 0.5"), 1e-4), p("v1 + 0.5"));
    assert_eq!(simplify_algebraic(&p("(v1 * 1.0) + 0.0")), p("v1"));
    assert_eq!(simplify_algebraic(&p("2.0 + 3.0")), p("5.0"));
    let e = p("log(exp(v1))");
    let s = simplify_algebraic(&e);
    assert_eq!(s, p("v1"));
    let rows: Vec<Vec<f64>> = (0..100).map(|i| vec![-3.0 + 0.06 * i as f64]).collect();
    let d = Dataset::from_rows(&rows, vec![0.0; 100], None).unwrap();
    let (a, b) = (eval(&e, d.all()).unwrap(), eval(&s, d.all()).unwrap());
    assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(1.0)));
}

#[test]
fn golden_snapshots() {
    // Seeded outputs, recorded once; any change in the random stream or
    // the operators shows up here.
    let opts = Options::default();
    let base = parse("v1 + v2").unwrap();
    let deep = parse("sin(v1 * 2.0) + exp(v2 - 1.5)").unwrap();
    let other = parse("cos(v2) * 3.0").unwrap();
    let got = [
        insert_mutation(&base, &opts, 2, &mut rng(42)).to_string(),
        addterm_mutation(&base, &opts, 2, &mut rng(42)).to_string(),
        subtree_mutation(&deep, &opts, 2, &mut rng(42)).to_string(),
        crossover(&deep, &other, &opts, &mut rng(42)).to_string(),
    ];
    let again = insert_mutation(&base, &opts, 2, &mut rng(42)).to_string();
    assert_eq!(got[0], again);
    let expected: [&str; 4] = GOLDEN;
    assert_eq!(got, expected);
}

const GOLDEN: [&str; 4] = [
    "v1 + v2 - (-3.5004112970967505)",
    "v1 + v2 + v1",
    "1.2736052119734032 + exp(v2 - 1.5)",
    "sin(v2) + exp(v2 - 1.5)",
];
