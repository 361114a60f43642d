//! Parsing, printing, protected evaluation and the clean-up passes applied
//! to every new expression.

use symreg::expr::{canonical_reorder, complexity, eval, recursive_complexity, remove_redundant_params};
use symreg::{parse, Dataset};

fn main() {
    let x = vec![vec![0.5, 1.0], vec![1.0, 2.0], vec![2.0, 3.0]];
    let data = Dataset::from_rows(&x, vec![0.0; 3], None).unwrap();

    let e = parse("2.5 * v1 ^ 2 + sin(v2)").unwrap();
    println!("{e}");
    println!("  nodes {}, depth {}, parameters {:?}", e.node_count(), e.depth(), e.params());
    println!("  compl {}, recursive compl {}", complexity(&e), recursive_complexity(&e));
    println!("  values {:?}", eval(&e, data.all()).unwrap());

    // one bad row invalidates the whole evaluation
    for text in ["log(v1 - 1.0)", "v2 / (v1 - 1.0)", "sqrt(v1 - 0.75)", "v1 ^ v2"] {
        match eval(&parse(text).unwrap(), data.all()) {
            Ok(v) => println!("{text:<18} {v:?}"),
            Err(why) => println!("{text:<18} invalid: {why}"),
        }
    }

    let messy = parse("v1 * exp(2.0 * (3.0 + 4.0)) + 1.5").unwrap();
    let tidy = canonical_reorder(&remove_redundant_params(&messy));
    println!("{messy}  ->  {tidy}");

    match parse("v1 + * v2") {
        Ok(_) => unreachable!(),
        Err(e) => println!("parse error: {e}"),
    }
}
