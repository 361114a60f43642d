//! The file-driven workflow: write a CSV and a config, load both, run, and
//! export the hall of fame, the same path the `symreg run` command takes.

use std::fmt::Write as _;
use symreg::io::{export_hall_of_fame, load_config, reference};

fn main() {
    let dir = std::env::temp_dir().join("symreg_config_example");
    std::fs::create_dir_all(&dir).unwrap();

    let mut csv = String::from("pressure,temperature,volume\n");
    for i in 0..60 {
        let t = 250.0 + 2.0 * i as f64;
        let p = 1.0 + (i % 9) as f64 * 0.25;
        writeln!(csv, "{p},{t},{}", 0.0821 * t / p).unwrap();
    }
    std::fs::write(dir.join("gas.csv"), csv).unwrap();
    std::fs::write(
        dir.join("gas.cfg"),
        "# ideal gas law\n\
         data_path = gas.csv\n\
         target_column = volume\n\
         generations = 40\n\
         n_islands = 2\n\
         island_capacity = 30\n\
         stop_target = mare:1e-9\n\
         seed = 3\n\
         output_dir = out\n",
    )
    .unwrap();

    let cfg = load_config(&dir.join("gas.cfg")).unwrap();
    let data = cfg.load_data().unwrap();
    println!("{} rows, variables {:?}", data.n_rows(), data.variable_names());
    let result = symreg::run(&cfg.options, &data).unwrap();
    let (table, listing) = export_hall_of_fame(&result.hall_of_fame, &cfg.output_dir).unwrap();
    println!("{} generations, stop: {:?}", result.generations, result.stop_reason);
    println!("{}", std::fs::read_to_string(&listing).unwrap());
    println!("table written to {}", table.display());

    if std::env::args().any(|a| a == "--keys") {
        println!("{}", reference());
    }
}
