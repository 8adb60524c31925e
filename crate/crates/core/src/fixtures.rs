//! Small algebras used throughout the tests, the guide and the command line
//! examples. The sources live in `fixtures/*.quiver`.

use crate::algebra::ReductionSystem;
use crate::io::{parse_quiver_file, QuiverDocument};
use crate::scalar::Field;

pub const FIX_A: &str = include_str!("../fixtures/fix_a.quiver");
pub const FIX_B: &str = include_str!("../fixtures/fix_b.quiver");
pub const FIX_C: &str = include_str!("../fixtures/fix_c.quiver");
pub const FIX_D: &str = include_str!("../fixtures/fix_d.quiver");
pub const FIX_E: &str = include_str!("../fixtures/fix_e.quiver");

/// Every fixture with its name and natural composition series.
pub const ALL: [(&str, &str, &str); 5] = [
    ("A", FIX_A, "1,2"),
    ("B", FIX_B, "1,2,3"),
    ("C", FIX_C, "1,2,3"),
    ("D", FIX_D, "v,v,v"),
    ("E", FIX_E, "1,2"),
];

pub fn document(text: &str) -> QuiverDocument {
    parse_quiver_file(text).expect("fixture sources parse")
}

pub fn system(text: &str, field: Field) -> ReductionSystem {
    document(text)
        .with_field(field)
        .to_system()
        .expect("fixture algebras are admissible")
}

pub fn fix_a(field: Field) -> ReductionSystem {
    system(FIX_A, field)
}

pub fn fix_b(field: Field) -> ReductionSystem {
    system(FIX_B, field)
}

pub fn fix_c(field: Field) -> ReductionSystem {
    system(FIX_C, field)
}

pub fn fix_d(field: Field) -> ReductionSystem {
    system(FIX_D, field)
}

pub fn fix_e(field: Field) -> ReductionSystem {
    system(FIX_E, field)
}

/// Source of the two-vertex quiver with `s` parallel arrows `a1..as`.
pub fn kronecker_source(s: usize) -> String {
    let mut text = String::from("NILBOUND 2\nVERTEX 1 2\n");
    for i in 1..=s {
        text.push_str(&format!("ARROW a{i} 1 2\n"));
    }
    text
}

pub fn kronecker(s: usize, field: Field) -> ReductionSystem {
    system(&kronecker_source(s), field)
}
