//! Non-dominated sorting, tournaments and survivor selection on a small
//! hand-made population trading accuracy against size.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symreg::evolution::{non_dominated_sort, select_next_generation, tournament_select, Island, SelectionConfig};
use symreg::fitting::Measures;
use symreg::{parse, Attribute, Individual};

fn member(text: &str, mse: f64) -> Individual {
    let expr = parse(text).unwrap();
    Individual {
        compl: symreg::expr::complexity(&expr),
        recursive_compl: symreg::expr::recursive_complexity(&expr),
        n_params: expr.n_params(),
        measures: Measures {
            ms_processed_e: mse,
            mse,
            ..Measures::default()
        },
        expr,
        age: 0,
        valid: true,
    }
}

fn main() {
    let population = vec![
        member("v1", 4.0),
        member("2.0 * v1", 2.5),
        member("2.0 * v1 + 1.0", 1.0),
        member("2.0 * v1 + sin(v2)", 0.2),
        member("v1 * v1 + sin(v2) + 1.0", 0.19),
        member("v2", 6.0),
        member("cos(v1) + v2", 3.0),
        member("exp(v1) * v2 + 1.0", 5.0),
    ];
    let cfg = SelectionConfig::default();
    let objs: Vec<Vec<f64>> = population.iter().map(|i| i.objectives(&cfg.pareto_objectives)).collect();
    for (rank, front) in non_dominated_sort(&objs).iter().enumerate() {
        let names: Vec<String> = front.iter().map(|&i| population[i].expr.to_string()).collect();
        println!("front {rank}: {}", names.join(" | "));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let winners = tournament_select(&population, &cfg, 10, &mut rng);
    println!("\ntournament winners: {winners:?}");

    let island = Island {
        id: 0,
        population,
        capacity: 4,
    };
    let next = select_next_generation(island, &cfg, &mut rng);
    println!("\nsurvivors:");
    for i in &next.population {
        println!("  age {} mse {:<5} compl {:<3} {}", i.age, i.attribute(Attribute::Mse), i.compl, i.expr);
    }
}
