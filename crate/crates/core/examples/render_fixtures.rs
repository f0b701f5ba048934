use mcs_core::fixtures::{table1, table2, table3};
use mcs_core::table_file::render_ascii;

fn main() {
    let dir = std::env::args().nth(1).expect("output directory");
    for (name, text) in [
        ("table1.txt", render_ascii(&table1())),
        ("table2.txt", render_ascii(&table2())),
        ("table3.txt", render_ascii(&table3())),
    ] {
        std::fs::write(format!("{dir}/{name}"), text).unwrap();
    }
}
