//! Golden-file rendering shared by the integration and acceptance targets.

use std::path::PathBuf;

use simcore::abacus::{build_l, is_core_beta_by_structure, to_abacus, CoreTriple};
use simcore::gbs::is_generalized_beta_set;
use simcore::{BetaSet, Partition};

pub const GOLDEN: [&str; 5] = ["l_3_5", "l_3_5_partner", "l_3_6", "l_3_6_partner", "nobe"];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}

fn partition(parts: &[u64]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition")
}

/// Builds each figure's set from the library, never from the golden file.
pub fn source(name: &str) -> (CoreTriple, BetaSet) {
    let ct = |s, m| CoreTriple::new(s, m).unwrap();
    match name {
        "l_3_5" => (ct(5, 3), build_l(&ct(5, 3))),
        "l_3_6" => (ct(6, 3), build_l(&ct(6, 3))),
        "l_3_5_partner" => (
            ct(5, 3),
            partition(&[16, 12, 8, 5, 5, 5, 3, 3, 3, 1, 1, 1]).beta_set(),
        ),
        "l_3_6_partner" => (
            ct(6, 3),
            partition(&[
                24, 19, 14, 10, 10, 10, 7, 7, 7, 4, 4, 4, 2, 2, 2, 2, 2, 1, 1, 1, 1, 1,
            ])
            .beta_set(),
        ),
        "nobe" => (
            ct(6, 3),
            BetaSet::new(vec![1, 2, 3, 4, 7, 8, 9, 10, 13, 14, 15, 16, 21, 22, 27, 33]).unwrap(),
        ),
        other => panic!("unknown figure {other}"),
    }
}

pub fn render(name: &str) -> String {
    let (ct, b) = source(name);
    let join = |v: Vec<String>, sep: &str| v.join(sep);
    let p = b.to_partition();
    let rows = 3;
    format!(
        "modulus: {}\nrows: {rows}\ns: {}\nm: {}\nbeta: {}\npartition: {}\nsize: {}\ncore: {}\ngeneralized_beta_set: {}\nabacus:\n{}",
        ct.ms(),
        ct.s(),
        ct.m(),
        join(b.ascending().iter().map(u64::to_string).collect(), ","),
        join(p.parts().iter().map(u64::to_string).collect(), " "),
        p.size(),
        is_core_beta_by_structure(&b, &ct),
        is_generalized_beta_set(&b, &ct),
        to_abacus(&b, ct.ms()).unwrap().render(rows),
    )
}

#[allow(dead_code)]
/// Returns the names whose rendering differs from the committed file.
pub fn golden_mismatches() -> Vec<String> {
    GOLDEN
        .iter()
        .filter(|name| {
            let expected = std::fs::read_to_string(golden_path(name)).unwrap_or_default();
            render(name) != expected
        })
        .map(|s| s.to_string())
        .collect()
}
