//! Prints the neighborhood test table in its text form.
//!
//! The checked-in copy under `data/` is regenerated with
//! `cargo run --example trellis_table > data/trellis_table.txt`.

use labelgrid::NeighborhoodTestTable;

fn main() {
    print!("{}", NeighborhoodTestTable::generate().to_text());
}
