//! Brute-force enumeration over GF(q): points of `V_p`, fibres of the map to
//! isomorphism classes, and point counts of the union of all charts.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::ReductionSystem;
use crate::error::{Error, Result};
use crate::grassmann::{self, Chart, Subspace};
use crate::modvar::{self, MatrixRep};
use crate::quiver::PathWord;
use crate::scalar::{mul_mod, Field};
use crate::uniserial::{self, Mast, PolynomialSystem, SimpleSequence, VarietyPoint};

pub const DEFAULT_BUDGET: u64 = 1 << 22;
pub const BUDGET_ENV: &str = "UNISVAR_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Maximum number of candidate tuples per mast.
    pub budget: u64,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
}

impl Default for Options {
    /// The default budget, overridden by `UNISVAR_BUDGET` when it parses.
    fn default() -> Self {
        let budget = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Options { budget, jobs: 0 }
    }
}

impl Options {
    pub fn with_jobs(self, jobs: usize) -> Self {
        Options { jobs, ..self }
    }

    pub fn with_budget(self, budget: u64) -> Self {
        Options { budget, ..self }
    }

    fn install<T: Send>(&self, work: impl FnOnce() -> T + Send) -> T {
        if self.jobs == 0 {
            return work();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        }
    }
}

/// The equations with coefficients as residues, for fast evaluation.
struct CompiledSystem {
    q: u64,
    equations: Vec<Vec<(u64, Vec<(usize, u32)>)>>,
}

impl CompiledSystem {
    fn new(eqs: &PolynomialSystem, q: u64) -> Self {
        let equations = eqs
            .equations()
            .iter()
            .map(|p| {
                p.terms()
                    .map(|(m, c)| {
                        let c = c.residue().expect("prime field coefficient");
                        (c, m.iter().map(|&(v, e)| (v as usize, e)).collect())
                    })
                    .collect()
            })
            .collect();
        CompiledSystem { q, equations }
    }

    fn vanishes_at(&self, x: &[u64]) -> bool {
        let q = self.q;
        self.equations.iter().all(|eq| {
            let mut acc = 0u64;
            for (c, mono) in eq {
                let mut t = *c;
                for &(v, e) in mono {
                    for _ in 0..e {
                        t = mul_mod(t, x[v], q);
                    }
                }
                acc = (acc + t) % q;
            }
            acc == 0
        })
    }
}

fn prime_of(field: Field) -> Result<u64> {
    match field {
        Field::Prime(q) => Ok(q),
        Field::Rational => Err(Error::InfiniteField),
    }
}

/// Number of candidate tuples, or an error naming it when over budget.
pub fn search_space(mast: &Mast, q: u64, budget: u64) -> Result<u128> {
    let n = mast.coordinates().len() as u32;
    let size = (q as u128).checked_pow(n).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { size, budget });
    }
    Ok(size)
}

const BLOCKS_PER_WORKER: u64 = 4;

/// All points of `V_p(GF(q))` in lexicographic order of the coordinate
/// tuples (first coordinate most significant).
pub fn enumerate_points(sys: &ReductionSystem, mast: &Mast, opts: &Options) -> Result<Vec<VarietyPoint>> {
    let field = sys.field();
    let q = prime_of(field)?;
    let size = search_space(mast, q, opts.budget)? as u64;
    let eqs = uniserial::variety_equations(sys, mast);
    let compiled = CompiledSystem::new(&eqs, q);
    let n = mast.coordinates().len();
    let workers = if opts.jobs == 0 { rayon::current_num_threads() } else { opts.jobs } as u64;
    let block = size.div_ceil(workers * BLOCKS_PER_WORKER).max(1);
    let starts: Vec<u64> = (0..size).step_by(block as usize).collect();
    let decode = |mut t: u64| {
        let mut digits = vec![0u64; n];
        for d in digits.iter_mut().rev() {
            *d = t % q;
            t /= q;
        }
        digits
    };
    let blocks: Vec<Vec<Vec<u64>>> = opts.install(|| {
        starts
            .par_iter()
            .map(|&s| {
                (s..(s + block).min(size))
                    .map(decode)
                    .filter(|x| compiled.vanishes_at(x))
                    .collect()
            })
            .collect()
    });
    Ok(blocks
        .into_iter()
        .flatten()
        .map(|x| {
            let values: Vec<_> = x.into_iter().map(|v| field.element(v)).collect();
            VarietyPoint::from_values(mast, &values)
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct Fibre {
    pub points: Vec<VarietyPoint>,
    pub representative: MatrixRep,
}

/// Points grouped by the isomorphism type of their modules, fibres ordered by
/// their first point.
#[derive(Clone, Debug)]
pub struct FibrePartition {
    pub fibres: Vec<Fibre>,
}

impl FibrePartition {
    pub fn len(&self) -> usize {
        self.fibres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibres.is_empty()
    }

    pub fn all_singletons(&self) -> bool {
        self.fibres.iter().all(|f| f.points.len() == 1)
    }

    /// The partition as sets of points, for comparing two computations.
    pub fn classes(&self) -> BTreeSet<BTreeSet<VarietyPoint>> {
        self.fibres
            .iter()
            .map(|f| f.points.iter().cloned().collect())
            .collect()
    }
}

fn group_by_isomorphism(points: Vec<VarietyPoint>, modules: Vec<MatrixRep>) -> FibrePartition {
    let mut fibres: Vec<Fibre> = Vec::new();
    for (k, x) in points.into_iter().zip(modules) {
        match fibres
            .iter_mut()
            .find(|f| modvar::is_isomorphic(&f.representative, &x))
        {
            Some(f) => f.points.push(k),
            None => fibres.push(Fibre {
                points: vec![k],
                representative: x,
            }),
        }
    }
    FibrePartition { fibres }
}

/// Fibres computed from the normalized matrices of each point.
pub fn fibres(sys: &ReductionSystem, mast: &Mast, opts: &Options) -> Result<FibrePartition> {
    let points = enumerate_points(sys, mast, opts)?;
    let modules = opts.install(|| {
        points
            .par_iter()
            .map(|k| modvar::theorem_d_matrices(sys, mast, k))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(group_by_isomorphism(points, modules))
}

/// Fibres computed from the quotients `Λe/ψ_p(k)` instead.
pub fn fibres_via_subspaces(sys: &ReductionSystem, mast: &Mast, opts: &Options) -> Result<FibrePartition> {
    let points = enumerate_points(sys, mast, opts)?;
    if points.is_empty() {
        return Ok(FibrePartition { fibres: Vec::new() });
    }
    let chart = Chart::new(sys, mast)?;
    let modules = opts.install(|| {
        points
            .par_iter()
            .map(|k| {
                let c = chart.psi(k)?;
                match grassmann::phi_s(sys, mast.source(), &c, mast.sequence())? {
                    grassmann::Quotient::Uniserial { module, .. } => Ok(module),
                    grassmann::Quotient::Rejected(r) => Err(Error::Internal(format!(
                        "quotient of a chart point is not uniserial: {r:?}"
                    ))),
                }
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(group_by_isomorphism(points, modules))
}

#[derive(Clone, Debug)]
pub struct ChartCount {
    pub mast: PathWord,
    pub points: usize,
}

/// Deduplicated points of the union of all charts of a sequence.
#[derive(Clone, Debug)]
pub struct GuniCount {
    pub total: usize,
    pub charts: Vec<ChartCount>,
    /// `overlaps[i][j]`: subspaces in both chart `i` and chart `j`.
    pub overlaps: Vec<Vec<usize>>,
    pub subspaces: BTreeSet<Subspace>,
}

/// The images `ψ_p(V_p(GF(q)))` of one mast, as a set of subspaces.
pub fn chart_image(sys: &ReductionSystem, mast: &Mast, opts: &Options) -> Result<BTreeSet<Subspace>> {
    let points = enumerate_points(sys, mast, opts)?;
    if points.is_empty() {
        return Ok(BTreeSet::new());
    }
    let chart = Chart::new(sys, mast)?;
    let images = opts.install(|| {
        points
            .par_iter()
            .map(|k| chart.psi(k))
            .collect::<Result<Vec<_>>>()
    })?;
    let n = images.len();
    let set: BTreeSet<Subspace> = images.into_iter().collect();
    if set.len() != n {
        return Err(Error::Internal("two chart points have the same image".into()));
    }
    Ok(set)
}

pub fn count_guni_points(sys: &ReductionSystem, series: &SimpleSequence, opts: &Options) -> Result<GuniCount> {
    let masts = uniserial::masts(sys, series);
    let images = masts
        .iter()
        .map(|m| chart_image(sys, m, opts))
        .collect::<Result<Vec<_>>>()?;
    let overlaps = images
        .iter()
        .map(|a| images.iter().map(|b| a.intersection(b).count()).collect())
        .collect();
    let charts = masts
        .iter()
        .zip(&images)
        .map(|(m, s)| ChartCount {
            mast: m.path().clone(),
            points: s.len(),
        })
        .collect();
    let subspaces: BTreeSet<Subspace> = images.into_iter().flatten().collect();
    Ok(GuniCount {
        total: subspaces.len(),
        charts,
        overlaps,
        subspaces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::uniserial::masts;

    fn opts() -> Options {
        Options {
            budget: DEFAULT_BUDGET,
            jobs: 2,
        }
    }

    fn seq(sys: &ReductionSystem, s: &str) -> SimpleSequence {
        SimpleSequence::parse(sys.quiver(), s).unwrap()
    }

    #[test]
    fn points_of_fixtures() {
        let a = fixtures::fix_a(Field::Prime(2));
        let ms = masts(&a, &seq(&a, "1,2"));
        let pts = enumerate_points(&a, &ms[0], &opts()).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0], VarietyPoint::new());

        for q in [2, 3, 5] {
            let c = fixtures::fix_c(Field::Prime(q));
            let ms = masts(&c, &seq(&c, "1,2,3"));
            assert_eq!(enumerate_points(&c, &ms[0], &opts()).unwrap(), [VarietyPoint::new()]);
        }
        let d = fixtures::fix_d(Field::Prime(3));
        let ms = masts(&d, &seq(&d, "v,v,v"));
        assert_eq!(enumerate_points(&d, &ms[0], &opts()).unwrap().len(), 1);
    }

    #[test]
    fn errors() {
        let a = fixtures::fix_a(Field::Rational);
        let ms = masts(&a, &seq(&a, "1,2"));
        assert!(matches!(enumerate_points(&a, &ms[0], &opts()), Err(Error::InfiniteField)));
        let b = fixtures::fix_b(Field::Prime(5));
        let ms = masts(&b, &seq(&b, "1,2,3"));
        let tight = opts().with_budget(100);
        assert!(matches!(
            enumerate_points(&b, &ms[0], &tight),
            Err(Error::BudgetExceeded { size: 125, budget: 100 })
        ));
    }

    #[test]
    fn counts_on_fix_a_and_fix_c() {
        let a = fixtures::fix_a(Field::Prime(2));
        let g = count_guni_points(&a, &seq(&a, "1,2"), &opts()).unwrap();
        assert_eq!(g.total, 3);
        assert_eq!(g.charts.iter().map(|c| c.points).collect::<Vec<_>>(), [2, 2]);
        assert_eq!(g.overlaps, vec![vec![2, 1], vec![1, 2]]);
        let c = fixtures::fix_c(Field::Prime(3));
        assert_eq!(count_guni_points(&c, &seq(&c, "1,2,3"), &opts()).unwrap().total, 1);
    }

    #[test]
    fn fibres_agree_between_models() {
        let a = fixtures::fix_a(Field::Prime(3));
        let ms = masts(&a, &seq(&a, "1,2"));
        let f = fibres(&a, &ms[0], &opts()).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.all_singletons());
        assert_eq!(f.classes(), fibres_via_subspaces(&a, &ms[0], &opts()).unwrap().classes());
    }

    #[test]
    fn output_is_independent_of_workers() {
        let b = fixtures::fix_b(Field::Prime(3));
        let ms = masts(&b, &seq(&b, "1,2,3"));
        let one = enumerate_points(&b, &ms[0], &opts().with_jobs(1)).unwrap();
        let many = enumerate_points(&b, &ms[0], &opts().with_jobs(7)).unwrap();
        assert_eq!(one, many);
        let mut sorted = one.clone();
        sorted.sort_by_key(|k| k.to_vec(&ms[0], b.field()).unwrap());
        assert_eq!(sorted, one);
    }
}
