//! Traces at conifold points against η-products and fixture files.
//!
//! Forms other than 8/1 and 9/1 are read from `$FROBCY_FORMS_DIR`.

use frobcy::catalog::lookup;
use frobcy::classify::{eta_expand, match_all, EtaProduct};
use frobcy::table::compute_tables;

fn main() -> frobcy::Result<()> {
    for (label, e) in [("8/1", EtaProduct::level8()), ("9/1", EtaProduct::level9())] {
        let c = eta_expand(&e, 20);
        println!("{label}: {:?}", &c[1..]);
    }
    for name in ["A*a", "B*d"] {
        let entry = lookup(name)?;
        let tables = compute_tables(&entry.operator, &[3, 5, 7, 11], None, None)?;
        let cells: Vec<_> = tables.into_iter().flat_map(|t| t.cells).collect();
        for (point, m) in match_all(entry, &cells, None) {
            match m {
                Ok(m) => {
                    println!("{name} at {point}, form {}:", m.form);
                    for c in &m.comparisons {
                        println!(
                            "  p = {:>2} z = {:>2} chi = {:>2}  a_p = {:>4}  form: {:?}",
                            c.p, c.z, c.chi, c.computed, c.expected
                        );
                    }
                }
                Err(e) => println!("{name} at {point}: {e}"),
            }
        }
    }
    Ok(())
}
