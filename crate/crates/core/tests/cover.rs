//! The charts cover every submodule with uniserial quotient: an exhaustive
//! scan of the Grassmannian over GF(q) finds no others.

use std::collections::BTreeSet;

use itertools::Itertools;
use unisvar::algebra::ReductionSystem;
use unisvar::enumerate::{count_guni_points, Options};
use unisvar::fixtures;
use unisvar::grassmann::{guni_contains, is_submodule, Subspace};
use unisvar::io::parse_quiver_file;
use unisvar::scalar::{Field, Scalar};
use unisvar::uniserial::SimpleSequence;

/// Every `k`-dimensional subspace of `GF(q)^n`, one per echelon form.
fn grassmannian(field: Field, n: usize, k: usize) -> Vec<Subspace> {
    let q = field.order().unwrap();
    let mut out = Vec::new();
    for pivots in (0..n).combinations(k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| ((pivots[i] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        let total = q.pow(free.len() as u32);
        for mut code in 0..total {
            let mut rows = vec![vec![field.zero(); n]; k];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = field.one();
            }
            for &(i, c) in &free {
                rows[i][c] = field.element(code % q);
                code /= q;
            }
            out.push(Subspace::span(field, n, rows));
        }
    }
    out
}

fn gaussian_binomial(q: u64, n: u32, k: u32) -> usize {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    (num / den) as usize
}

fn check(name: &str, sys: &ReductionSystem, series: &str) {
    let series = SimpleSequence::parse(sys.quiver(), series).unwrap();
    let e = series.start();
    let n = sys.module(e).dim();
    let k = n - series.dimension();
    let all = grassmannian(sys.field(), n, k);
    assert_eq!(all.len(), gaussian_binomial(sys.field().order().unwrap(), n as u32, k as u32));
    let brute: BTreeSet<Subspace> = all
        .into_iter()
        .filter(|c| is_submodule(sys, e, c) && guni_contains(sys, e, c, &series))
        .collect();
    let charts = count_guni_points(sys, &series, &Options::default()).unwrap();
    assert_eq!(brute, charts.subspaces, "{name}");
}

#[test]
fn charts_cover_small_grassmannians() {
    for q in [2, 3] {
        let f = Field::Prime(q);
        check("A", &fixtures::fix_a(f), "1,2");
        check("C", &fixtures::fix_c(f), "1,2,3");
        check("C", &fixtures::fix_c(f), "1,2");
        check("D", &fixtures::fix_d(f), "v,v");
        check("D", &fixtures::fix_d(f), "v");
        check("E", &fixtures::fix_e(f), "1,2");
        check("K3", &fixtures::kronecker(3, f), "1,2");
        check("B", &fixtures::fix_b(f), "2,3");
    }
    check("B", &fixtures::fix_b(Field::Prime(2)), "1,2");
}

#[test]
fn charts_cover_a_relation_algebra() {
    let text = "FIELD GF 3\nNILBOUND 3\nVERTEX 1 2 3\nARROW a 1 2\nARROW c 1 2\nARROW b 2 3\nARROW d 2 3\nREL b*a - d*c\n";
    let sys = parse_quiver_file(text).unwrap().to_system().unwrap();
    check("square", &sys, "1,2,3");
    check("square", &sys, "1,2");
}

#[test]
fn scanner_sanity() {
    let f = Field::Prime(2);
    let lines = grassmannian(f, 3, 1);
    assert_eq!(lines.len(), 7);
    let zero: Vec<Scalar> = vec![f.zero(); 3];
    assert!(lines.iter().all(|l| !l.contains(&zero) || l.dim() == 1));
}
