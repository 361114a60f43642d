//! Random expressions and every mutation operator, with a grammar that bans
//! nested exponentials and parameters inside exponents.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symreg::expr::check_grammar;
use symreg::genetics::{apply, mutate, random_expression, MutationKind};
use symreg::{parse, Operator, Options, UnaryOp};

fn main() {
    let mut opts = Options::default();
    let exp = Operator::Unary(UnaryOp::Exp);
    opts.grammar = opts.grammar.ban(exp, exp).with_param_in_exponent_forbidden(true);
    let n_vars = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let parent = parse("2.0 * v1 + sin(v2 * v3) - exp(v3)").unwrap();
    let partner = random_expression(&opts, n_vars, &mut rng);
    println!("parent   {parent}");
    println!("partner  {partner}\n");
    for kind in MutationKind::ALL {
        let child = apply(kind, &parent, Some(&partner), &opts, n_vars, &mut rng);
        assert!(check_grammar(&child, &opts.grammar));
        println!("{:<18} {child}", kind.name());
    }

    // a chain of weighted random mutations never leaves the grammar
    let mut e = parent;
    for _ in 0..1000 {
        e = mutate(&e, Some(&partner), &opts, n_vars, &mut rng).0;
        assert!(check_grammar(&e, &opts.grammar));
    }
    println!("\nafter 1000 mutations: {e}");
}
