use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symreg::expr::{
    canonical_reorder, complexity, eval, recursive_complexity, remove_redundant_params,
    trim_to_size,
};
use symreg::{parse, BinaryOp, Dataset, ExprNode, UnaryOp};

// Row-by-row interpreter written from the domain rules alone.
fn scalar(e: &ExprNode, row: &[f64]) -> Option<f64> {
    let v = match e {
        ExprNode::Parameter(p) => *p,
        ExprNode::Variable(i) => *row.get(i.checked_sub(1)?)?,
        ExprNode::Unary(op, c) => {
            let x = scalar(c, row)?;
            match op {
                UnaryOp::Neg => -x,
                UnaryOp::Exp => x.exp(),
                UnaryOp::Log if x > 0.0 => x.ln(),
                UnaryOp::Log => return None,
                UnaryOp::Sin => x.sin(),
                UnaryOp::Cos => x.cos(),
                UnaryOp::Abs => x.abs(),
                UnaryOp::Sqrt if x >= 0.0 => x.sqrt(),
                UnaryOp::Sqrt => return None,
            }
        }
        ExprNode::Binary(op, l, r) => {
            let (a, b) = (scalar(l, row)?, scalar(r, row)?);
            match op {
                BinaryOp::Add => a + b,
                BinaryOp::Sub => a - b,
                BinaryOp::Mul => a * b,
                BinaryOp::Div if b.abs() >= 1e-100 => a / b,
                BinaryOp::Div => return None,
                BinaryOp::Pow if a > 0.0 || (a == 0.0 && b > 0.0) => a.powf(b),
                BinaryOp::Pow => return None,
            }
        }
    };
    v.is_finite().then_some(v)
}

fn oracle(e: &ExprNode, data: &Dataset) -> Option<Vec<f64>> {
    (0..data.n_rows())
        .map(|i| scalar(e, &data.all().row(i)))
        .collect()
}

fn grid() -> Dataset {
    let mut rows = Vec::new();
    for a in [-2.0, -0.5, 0.0, 0.7, 3.0] {
        for b in [-1.0, 0.0, 0.25, 2.0] {
            rows.push(vec![a, b, a * b + 1.0]);
        }
    }
    let y = rows.iter().map(|r| r[0]).collect();
    Dataset::from_rows(&rows, y, None).unwrap()
}

fn positive_grid() -> Dataset {
    let rows: Vec<Vec<f64>> = (1..=12)
        .map(|i| vec![0.3 * i as f64, 1.0 + 0.1 * i as f64, 2.0 - 0.1 * i as f64])
        .collect();
    let y = rows.iter().map(|r| r[0]).collect();
    Dataset::from_rows(&rows, y, None).unwrap()
}

fn arb_expr() -> impl Strategy<Value = ExprNode> {
    let leaf = prop_oneof![
        (-5.0f64..5.0).prop_map(ExprNode::param),
        (1usize..=3).prop_map(ExprNode::var),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (prop::sample::select(UnaryOp::ALL.to_vec()), inner.clone())
                .prop_map(|(op, c)| ExprNode::unary(op, c)),
            (
                prop::sample::select(BinaryOp::ALL.to_vec()),
                inner.clone(),
                inner
            )
                .prop_map(|(op, l, r)| ExprNode::binary(op, l, r)),
        ]
    })
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0))
}

#[test]
fn spot_values() {
    let d = Dataset::from_rows(&[vec![1.0], vec![4.0], vec![9.0]], vec![0.0; 3], None).unwrap();
    assert_eq!(eval(&parse("v1^0.5").unwrap(), d.all()).unwrap(), vec![1.0, 2.0, 3.0]);
    let d = Dataset::from_rows(&[vec![2.0]], vec![0.0], None).unwrap();
    assert_eq!(eval(&parse("v1 + 1.0").unwrap(), d.all()).unwrap(), vec![3.0]);
    let d = Dataset::from_rows(&[vec![-1.0]], vec![0.0], None).unwrap();
    assert!(eval(&parse("log(v1)").unwrap(), d.all()).is_err());
}

#[test]
fn counting_examples() {
    assert_eq!(complexity(&parse("2.0").unwrap()), 1);
    assert_eq!(complexity(&parse("v1 + 1").unwrap()), 3);
    assert_eq!(complexity(&parse("3 * cos(1 + v2)").unwrap()), 6);
    assert_eq!(recursive_complexity(&parse("v1").unwrap()), 1.0);
    assert_eq!(recursive_complexity(&parse("v1 + v2").unwrap()), 3.0);
    assert_eq!(recursive_complexity(&parse("cos(v1)").unwrap()), 2.0);
}

#[test]
fn redundant_parameter_examples() {
    let p = |s: &str| parse(s).unwrap();
    assert_eq!(remove_redundant_params(&p("1.0 + 2.0")), p("1.0"));
    assert_eq!(remove_redundant_params(&p("cos(0.4)")), p("0.4"));
    assert_eq!(remove_redundant_params(&p("v1 + 0.4")), p("v1 + 0.4"));
}

fn label(n: &ExprNode) -> String {
    match n.operator() {
        Some(op) => op.name().to_string(),
        None => n.to_string(),
    }
}

fn labels(e: &ExprNode) -> Vec<String> {
    let mut v: Vec<String> = e.nodes().into_iter().map(label).collect();
    v.sort();
    v
}

// `small` uses each label at most as often as `big` does.
fn is_sub_multiset(small: &[String], big: &[String]) -> bool {
    let mut rest = big.to_vec();
    small.iter().all(|l| match rest.iter().position(|b| b == l) {
        Some(i) => {
            rest.swap_remove(i);
            true
        }
        None => false,
    })
}

#[test]
fn trimming_keeps_input_nodes() {
    let e = parse("sin(v1 * 2.0) + exp(v2 - 1.5) * (v3 + cos(0.5 * v1))").unwrap();
    assert_eq!(e.node_count(), 16);
    for seed in 0..50 {
        let t = trim_to_size(&e, 7, &mut ChaCha8Rng::seed_from_u64(seed));
        assert!(t.node_count() <= 7);
        assert!(is_sub_multiset(&labels(&t), &labels(&e)), "{t}");
    }
    let leaf = trim_to_size(&e, 1, &mut ChaCha8Rng::seed_from_u64(1));
    assert!(leaf.is_leaf());
    assert!(labels(&e).contains(&label(&leaf)));
    let small = parse("v1 + 1").unwrap();
    assert_eq!(trim_to_size(&small, 10, &mut ChaCha8Rng::seed_from_u64(1)), small);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn eval_matches_scalar_oracle(e in arb_expr()) {
        let d = grid();
        match (eval(&e, d.all()), oracle(&e, &d)) {
            (Ok(v), Some(o)) => {
                prop_assert!(v.iter().all(|x| x.is_finite()));
                prop_assert!(close(&v, &o), "{e}: {v:?} vs {o:?}");
            }
            (Err(_), None) => {}
            (got, want) => prop_assert!(false, "{e}: {got:?} vs {want:?}"),
        }
    }

    #[test]
    fn reorder_is_idempotent_and_preserves_values(e in arb_expr()) {
        let r = canonical_reorder(&e);
        prop_assert_eq!(canonical_reorder(&r), r.clone());
        prop_assert_eq!(r.node_count(), e.node_count());
        let d = positive_grid();
        if let (Ok(a), Ok(b)) = (eval(&e, d.all()), eval(&r, d.all())) {
            prop_assert!(close(&a, &b), "{e} vs {r}");
        }
    }

    #[test]
    fn collapsing_reaches_a_fixed_point(e in arb_expr()) {
        let once = remove_redundant_params(&e);
        prop_assert_eq!(remove_redundant_params(&once), once.clone());
        prop_assert!(once.node_count() <= e.node_count());
    }

    #[test]
    fn trimming_respects_the_limit(e in arb_expr(), max in 1usize..12, seed in 0u64..1000) {
        let t = trim_to_size(&e, max, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(t.node_count() <= max.max(1));
        prop_assert!(t.node_count() <= e.node_count());
    }

    #[test]
    fn printing_reparses_to_the_same_tree(e in arb_expr()) {
        let text = e.to_string();
        let back = parse(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        let d = grid();
        match (eval(&e, d.all()), eval(&back, d.all())) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{text}: {a:?} vs {b:?}"),
        }
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn parameters_roundtrip_in_preorder(e in arb_expr()) {
        let p = e.params();
        prop_assert_eq!(p.len(), e.n_params());
        prop_assert_eq!(e.with_params(&p), e.clone());
    }
}

#[test]
fn parse_errors_report_position() {
    let err = parse("v1 +").unwrap_err();
    assert_eq!(err.position, 5);
}
