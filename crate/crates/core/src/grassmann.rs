//! Subspaces of `Λe`, submodule closure, the chart maps from affine
//! coordinates into the Grassmannian, Plücker coordinates, and quotients.

use itertools::Itertools;

use crate::algebra::{AlgebraElement, ReductionSystem};
use crate::error::{Error, Result};
use crate::linalg::{rref_in_place, solve_combination, Matrix};
use crate::modvar::MatrixRep;
use crate::quiver::{PathWord, VertexId};
use crate::scalar::{Field, Scalar};
use crate::uniserial::{
    self, is_route, DetourCoordinate, Mast, PolynomialSystem, RouteReducer, SimpleSequence,
    SpecialBasis, VarietyPoint,
};

/// A subspace of `K^n` in reduced row-echelon form. Two subspaces are equal
/// exactly when their echelon forms agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, mut rows: Vec<Vec<Scalar>>) -> Subspace {
        let pivots = rref_in_place(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace {
            field,
            ambient,
            rows,
            pivots,
        }
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Self::span(field, ambient, Vec::new())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// The echelon rows.
    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears the pivot coordinates of `v`; the result is zero iff `v` lies
    /// in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&c * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::span(self.field, self.ambient, rows)
    }

    pub fn with_vectors(&self, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(vectors);
        Self::span(self.field, self.ambient, rows)
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

/// Closes a set of vectors of `Λe` under the left action of every arrow and
/// vertex idempotent.
pub fn closure_of_vectors(sys: &ReductionSystem, e: VertexId, vectors: Vec<Vec<Scalar>>) -> Subspace {
    let module = sys.module(e);
    let n = module.dim();
    let mut space = Subspace::span(sys.field(), n, vectors);
    let mut frontier: Vec<Vec<Scalar>> = space.rows().to_vec();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for v in &frontier {
            let images = module
                .actions()
                .iter()
                .map(|a| a.mul_vec(v))
                .chain((0..sys.quiver().vertex_count()).map(|w| module.project(w, v)));
            for w in images {
                if !space.contains(&w) {
                    space = space.with_vectors([w.clone()]);
                    fresh.push(w);
                }
            }
        }
        frontier = fresh;
    }
    space
}

/// The smallest submodule of `Λe` containing the generators.
pub fn submodule_closure(
    sys: &ReductionSystem,
    e: VertexId,
    generators: &[AlgebraElement],
) -> Result<Subspace> {
    let vectors = generators
        .iter()
        .map(|g| sys.coordinates(e, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(closure_of_vectors(sys, e, vectors))
}

pub fn is_submodule(sys: &ReductionSystem, e: VertexId, c: &Subspace) -> bool {
    let module = sys.module(e);
    c.rows().iter().all(|v| {
        module.actions().iter().all(|a| c.contains(&a.mul_vec(v)))
            && (0..sys.quiver().vertex_count()).all(|w| c.contains(&module.project(w, v)))
    })
}

/// Writes `v = Σ c_r p_r + w` with `w ∈ C`, returning the `c_r`.
pub fn reduce_modulo(a_p: &[Vec<Scalar>], c: &Subspace, v: &[Scalar]) -> Option<Vec<Scalar>> {
    let mut basis = a_p.to_vec();
    basis.extend(c.rows().iter().cloned());
    let coeffs = solve_combination(c.field(), &basis, v)?;
    Some(coeffs[..a_p.len()].to_vec())
}

/// The ordered basis `b_1, …, b_m, p_0, …, p_l` of `Λe` that indexes the
/// Plücker coordinates of a chart.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    codim: usize,
    vectors: Matrix,
    inverse: Matrix,
}

impl WedgeBasis {
    pub fn new(mast: &Mast, special: &SpecialBasis) -> Result<WedgeBasis> {
        let mut rows: Vec<Vec<Scalar>> = special.vectors().map(<[Scalar]>::to_vec).collect();
        rows.extend(mast.subpath_coordinates().iter().cloned());
        let n = rows.len();
        let field = rows
            .first()
            .and_then(|r| r.first())
            .map(Scalar::field)
            .ok_or(Error::ImpossibleSupplementation)?;
        let vectors = Matrix::from_rows(field, n, rows);
        let inverse = vectors
            .inverse()
            .map_err(|_| Error::ImpossibleSupplementation)?;
        Ok(WedgeBasis {
            codim: special.len(),
            vectors,
            inverse,
        })
    }

    /// `m`, the number of leading complement vectors.
    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn len(&self) -> usize {
        self.vectors.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vectors(&self) -> &Matrix {
        &self.vectors
    }

    /// Coordinates of a vector of `Λe` relative to this basis.
    pub fn express(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.inverse.transpose().mul_vec(v)
    }
}

/// Homogeneous coordinates of `⋀^m C`, indexed by the `m`-subsets of a
/// [`WedgeBasis`] in lexicographic order. The first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    subsets: Vec<Vec<usize>>,
    values: Vec<Scalar>,
}

impl PlueckerVector {
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn get(&self, subset: &[usize]) -> Option<&Scalar> {
        self.subsets
            .binary_search_by(|s| s.as_slice().cmp(subset))
            .ok()
            .map(|i| &self.values[i])
    }

    /// The coordinate on `b_1 ∧ … ∧ b_m`.
    pub fn first(&self) -> &Scalar {
        &self.values[0]
    }

    /// True when `C` meets `A_p` trivially.
    pub fn in_principal_chart(&self) -> bool {
        !self.first().is_zero()
    }
}

pub fn pluecker_coords(c: &Subspace, basis: &WedgeBasis) -> Result<PlueckerVector> {
    let m = basis.codim();
    if c.dim() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: c.dim(),
        });
    }
    let n = basis.len();
    let field = c.field();
    let rows: Vec<Vec<Scalar>> = c.rows().iter().map(|r| basis.express(r)).collect();
    let subsets: Vec<Vec<usize>> = (0..n).combinations(m).collect();
    let mut values: Vec<Scalar> = subsets
        .iter()
        .map(|s| {
            let minor = rows
                .iter()
                .map(|r| s.iter().map(|&j| r[j].clone()).collect())
                .collect();
            Matrix::from_rows(field, m, minor).det()
        })
        .collect();
    let Some(lead) = values.iter().find(|v| !v.is_zero()).cloned() else {
        return Err(Error::Internal("all Plücker coordinates vanish".into()));
    };
    let inv = lead.inv()?;
    for v in &mut values {
        *v *= &inv;
    }
    Ok(PlueckerVector { subsets, values })
}

/// Everything needed to move between a chart's affine coordinates and its
/// image in the Grassmannian.
#[derive(Clone, Debug)]
pub struct Chart<'a> {
    sys: &'a ReductionSystem,
    mast: Mast,
    equations: PolynomialSystem,
    special: SpecialBasis,
    wedge: WedgeBasis,
    reducer: RouteReducer<'a>,
    non_routes: Vec<Vec<Scalar>>,
    a_p: Subspace,
}

impl<'a> Chart<'a> {
    pub fn new(sys: &'a ReductionSystem, mast: &Mast) -> Result<Chart<'a>> {
        let special = uniserial::special_basis(sys, mast)?;
        let wedge = WedgeBasis::new(mast, &special)?;
        let equations = uniserial::variety_equations(sys, mast);
        let reducer = RouteReducer::with_basis(sys, mast, special.clone());
        let e = mast.source();
        let non_routes = sys
            .quiver()
            .paths_from(e, sys.nilbound())
            .into_iter()
            .filter(|q| !is_route(sys.quiver(), mast, q))
            .map(|q| sys.path_coordinates(e, &q))
            .collect::<Result<Vec<_>>>()?;
        let a_p = Subspace::span(
            sys.field(),
            sys.module(e).dim(),
            mast.subpath_coordinates().to_vec(),
        );
        Ok(Chart {
            sys,
            mast: mast.clone(),
            equations,
            special,
            wedge,
            reducer,
            non_routes,
            a_p,
        })
    }

    pub fn mast(&self) -> &Mast {
        &self.mast
    }

    pub fn equations(&self) -> &PolynomialSystem {
        &self.equations
    }

    pub fn special_basis(&self) -> &SpecialBasis {
        &self.special
    }

    pub fn wedge_basis(&self) -> &WedgeBasis {
        &self.wedge
    }

    pub fn reducer(&self) -> &RouteReducer<'a> {
        &self.reducer
    }

    /// `A_p`, the span of the right subpaths.
    pub fn a_p(&self) -> &Subspace {
        &self.a_p
    }

    /// The submodule `ψ_p(k)` of `Λe`.
    pub fn psi(&self, k: &VarietyPoint) -> Result<Subspace> {
        if !uniserial::evaluate_point(&self.equations, k)? {
            return Err(Error::NotOnVariety);
        }
        self.psi_unchecked(k)
    }

    fn psi_unchecked(&self, k: &VarietyPoint) -> Result<Subspace> {
        let sys = self.sys;
        let e = self.mast.source();
        let field = sys.field();
        let subs = self.mast.subpath_coordinates();
        let mut gens = self.non_routes.clone();
        for d in self.mast.detours() {
            let mut v = sys.path_coordinates(e, &d.product(sys.quiver(), &self.mast))?;
            for &i in d.indices() {
                let coord = DetourCoordinate {
                    position: d.position(),
                    arrow: d.arrow(),
                    index: i,
                };
                let c = k.value(field, &coord);
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(&subs[i]) {
                    *x -= &(&c * y);
                }
            }
            gens.push(v);
        }
        let c = closure_of_vectors(sys, e, gens);
        let m = self.mast.codimension();
        if c.dim() != m {
            return Err(Error::Internal(format!(
                "chart image has dimension {} instead of {m}",
                c.dim()
            )));
        }
        if c.intersection_dim(&self.a_p) != 0 {
            return Err(Error::Internal("chart image meets the mast span".into()));
        }
        Ok(c)
    }

    /// Whether `C` lies in this chart: a submodule of dimension `m` meeting
    /// `A_p` trivially.
    pub fn contains(&self, c: &Subspace) -> bool {
        c.dim() == self.mast.codimension()
            && c.intersection_dim(&self.a_p) == 0
            && is_submodule(self.sys, self.mast.source(), c)
    }

    pub fn pluecker(&self, c: &Subspace) -> Result<PlueckerVector> {
        pluecker_coords(c, &self.wedge)
    }

    /// The entry `X[i][j]` of the normalized chart matrix `[I | X]`, read
    /// off the Plücker vector.
    fn chart_entry(&self, pv: &PlueckerVector, i: usize, j: usize) -> Scalar {
        let m = self.wedge.codim();
        let mut subset: Vec<usize> = (0..m).filter(|&r| r != i).collect();
        subset.push(m + j);
        let w = pv.get(&subset).expect("subset of the wedge basis").clone();
        if (m - 1 - i) % 2 == 1 {
            -w
        } else {
            w
        }
    }

    /// Recovers the affine coordinates of a point in the principal chart.
    pub fn recover(&self, pv: &PlueckerVector) -> Result<VarietyPoint> {
        if !pv.in_principal_chart() {
            return Err(Error::NotOnVariety);
        }
        let field = self.sys.field();
        let mut basis_point = VarietyPoint::new();
        for (i, b) in self.special.detour_products().iter().enumerate() {
            let (arrow, position) = b.detour().expect("detour product");
            let d = self
                .mast
                .detour(arrow, position)
                .expect("detour of the mast");
            for &j in d.indices() {
                let k = -self.chart_entry(pv, i, j);
                basis_point.insert(
                    DetourCoordinate {
                        position,
                        arrow,
                        index: j,
                    },
                    k,
                );
            }
        }
        let values = basis_point.to_vec(&self.mast, field)?;
        let mut point = VarietyPoint::new();
        for d in self.mast.detours() {
            let product = d.product(self.sys.quiver(), &self.mast);
            let polys = self.reducer.reduce(&product)?;
            for &i in d.indices() {
                let v = polys[i].evaluate(&values);
                point.insert(
                    DetourCoordinate {
                        position: d.position(),
                        arrow: d.arrow(),
                        index: i,
                    },
                    v,
                );
            }
        }
        Ok(point)
    }

    /// Route coefficients `l_ij` of the `i`-th special basis vector, read
    /// off the Plücker vector.
    pub fn route_coefficients(&self, pv: &PlueckerVector, i: usize) -> Vec<Scalar> {
        (0..=self.mast.length())
            .map(|j| -self.chart_entry(pv, i, j))
            .collect()
    }
}

/// `ψ_p(k)`.
pub fn psi_p(sys: &ReductionSystem, mast: &Mast, k: &VarietyPoint) -> Result<Subspace> {
    Chart::new(sys, mast)?.psi(k)
}

/// Why a quotient `Λe/C` fails to be uniserial with the requested series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerRejection {
    /// Index `i` of the radical layer `J^i/J^{i+1}` that fails.
    pub layer: usize,
    pub dimension: usize,
    /// Multiplicity of each vertex in the layer, for vertices that occur.
    pub support: Vec<(VertexId, usize)>,
    /// The vertex the series asks for, if the layer is within the series.
    pub expected: Option<VertexId>,
}

/// The outcome of forming `Λe/C`.
#[derive(Clone, Debug)]
pub enum Quotient {
    Uniserial {
        module: MatrixRep,
        /// The masts `p` of the series with `p ∉ C`.
        masts: Vec<PathWord>,
    },
    Rejected(LayerRejection),
}

impl Quotient {
    pub fn is_uniserial(&self) -> bool {
        matches!(self, Quotient::Uniserial { .. })
    }
}

/// Forms `Λe/C` on a basis adapted to its radical filtration and checks that
/// it is uniserial with composition series `series`.
pub fn phi_s(
    sys: &ReductionSystem,
    e: VertexId,
    c: &Subspace,
    series: &SimpleSequence,
) -> Result<Quotient> {
    let module = sys.module(e);
    let n = module.dim();
    let d = series.dimension();
    if n < d || c.dim() != n - d {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(d),
            found: c.dim(),
        });
    }
    if !is_submodule(sys, e, c) {
        return Err(Error::NotSubmodule);
    }
    let field = sys.field();
    let vertex_count = sys.quiver().vertex_count();
    let layer_space = |i: usize| module.radical_power(i).sum(c);
    let paths: Vec<(PathWord, Vec<Scalar>)> = sys
        .quiver()
        .paths_from(e, sys.nilbound())
        .into_iter()
        .map(|q| {
            let v = sys.path_coordinates(e, &q)?;
            Ok((q, v))
        })
        .collect::<Result<_>>()?;
    let mut reps: Vec<Vec<Scalar>> = Vec::with_capacity(d);
    for i in 0..=d {
        let upper = layer_space(i);
        let lower = layer_space(i + 1);
        let dimension = upper.dim() - lower.dim();
        let mut support = Vec::new();
        for w in 0..vertex_count {
            let part = lower.with_vectors(upper.rows().iter().map(|r| module.project(w, r)));
            let mult = part.dim() - lower.dim();
            if mult > 0 {
                support.push((w, mult));
            }
        }
        let expected = series.vertices().get(i).copied();
        let ok = match expected {
            Some(v) => dimension == 1 && support == [(v, 1)],
            None => dimension == 0,
        };
        if !ok {
            return Ok(Quotient::Rejected(LayerRejection {
                layer: i,
                dimension,
                support,
                expected,
            }));
        }
        if let Some(v) = expected {
            let rep = paths
                .iter()
                .filter(|(q, _)| q.len() >= i && q.target() == v)
                .map(|(_, x)| x)
                .find(|x| !lower.contains(x))
                .ok_or_else(|| Error::Internal("radical layer without representative".into()))?;
            reps.push(rep.clone());
        }
    }
    let mut basis = reps.clone();
    basis.extend(c.rows().iter().cloned());
    let arrows = module
        .actions()
        .iter()
        .map(|a| {
            let mut m = Matrix::zeros(field, d, d);
            for (j, z) in reps.iter().enumerate() {
                let image = a.mul_vec(z);
                let coeffs = solve_combination(field, &basis, &image)
                    .ok_or_else(|| Error::Internal("quotient basis does not span".into()))?;
                for (i, x) in coeffs.into_iter().take(d).enumerate() {
                    m[(i, j)] = x;
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = MatrixRep::new(field, series.vertices().to_vec(), arrows)?;
    let mut masts = Vec::new();
    for mast in uniserial::masts(sys, series) {
        if !c.contains(&sys.path_coordinates(e, mast.path())?) {
            masts.push(mast.path().clone());
        }
    }
    Ok(Quotient::Uniserial {
        module: rep,
        masts,
    })
}

/// Whether `C` is a point of the Grassmannian model of the series.
pub fn guni_contains(
    sys: &ReductionSystem,
    e: VertexId,
    c: &Subspace,
    series: &SimpleSequence,
) -> bool {
    matches!(phi_s(sys, e, c, series), Ok(q) if q.is_uniserial())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::uniserial::masts;

    fn point(sys: &ReductionSystem, mast: &Mast, values: &[i64]) -> VarietyPoint {
        let f = sys.field();
        VarietyPoint::from_values(
            mast,
            &values.iter().map(|&v| f.from_i64(v)).collect::<Vec<_>>(),
        )
    }

    fn seq(sys: &ReductionSystem, s: &str) -> SimpleSequence {
        SimpleSequence::parse(sys.quiver(), s).unwrap()
    }

    #[test]
    fn subspace_canonical_form() {
        let f = Field::Rational;
        let v = |xs: &[i64]| xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let a = Subspace::span(f, 3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(f, 3, vec![v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
        let line = Subspace::span(f, 3, vec![v(&[0, 0, 1])]);
        assert_eq!(a.intersection_dim(&line), 0);
        assert_eq!(a.sum(&line).dim(), 3);
    }

    #[test]
    fn closure_examples() {
        let sys = fixtures::fix_a(Field::Rational);
        let q = sys.quiver();
        let f = sys.field();
        let kappa = f.from_i64(3);
        let g = AlgebraElement::path(f, q.parse_path("b").unwrap())
            .sub(&AlgebraElement::path(f, q.parse_path("a").unwrap()).scale(&kappa));
        let c = submodule_closure(&sys, 0, &[g]).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(submodule_closure(&sys, 0, &[]).unwrap().is_zero());
        let e1 = Subspace::span(f, 3, vec![sys.path_coordinates(0, &PathWord::trivial(0)).unwrap()]);
        assert!(!is_submodule(&sys, 0, &e1));
        assert!(is_submodule(&sys, 0, &Subspace::zero(f, 3)));

        let sys = fixtures::fix_c(Field::Rational);
        let a = AlgebraElement::path(sys.field(), sys.quiver().parse_path("a").unwrap());
        let c = submodule_closure(&sys, 0, &[a]).unwrap();
        assert_eq!(c.dim(), 1);
        let bc = sys.path_coordinates(0, &sys.quiver().parse_path("b*c").unwrap()).unwrap();
        assert!(is_submodule(&sys, 0, &Subspace::span(sys.field(), 4, vec![bc])));
    }

    #[test]
    fn psi_and_pluecker_on_fix_a() {
        let sys = fixtures::fix_a(Field::Rational);
        let ms = masts(&sys, &seq(&sys, "1,2"));
        let chart = Chart::new(&sys, &ms[0]).unwrap();
        let k = point(&sys, &ms[0], &[7]);
        let c = chart.psi(&k).unwrap();
        let f = sys.field();
        // C = span{b - 7a} over the basis (e1, a, b), in echelon form.
        let seventh = f.one().checked_div(&f.from_i64(7)).unwrap();
        assert_eq!(c.rows(), [vec![f.zero(), f.one(), -seventh]]);
        let pv = chart.pluecker(&c).unwrap();
        // Wedge basis (b; e1, a): subsets {0}, {1}, {2}.
        assert_eq!(pv.values(), [f.one(), f.zero(), -f.from_i64(7)]);
        assert!(pv.in_principal_chart());
        assert_eq!(chart.recover(&pv).unwrap(), k);

        let span_a = Subspace::span(f, 3, vec![sys.path_coordinates(0, &ms[0].path().clone()).unwrap()]);
        assert!(!chart.pluecker(&span_a).unwrap().in_principal_chart());
        let other = Chart::new(&sys, &ms[1]).unwrap();
        assert!(other.pluecker(&span_a).unwrap().in_principal_chart());
    }

    #[test]
    fn psi_rejects_points_off_the_variety() {
        let sys = fixtures::fix_c(Field::Rational);
        let ms = masts(&sys, &seq(&sys, "1,2,3"));
        let chart = Chart::new(&sys, &ms[0]).unwrap();
        assert!(matches!(chart.psi(&point(&sys, &ms[0], &[1])), Err(Error::NotOnVariety)));
        let c = chart.psi(&point(&sys, &ms[0], &[0])).unwrap();
        let a = sys.path_coordinates(0, &sys.quiver().parse_path("a").unwrap()).unwrap();
        assert_eq!(c, Subspace::span(sys.field(), 4, vec![a]));
    }

    #[test]
    fn fix_d_chart_is_a_point() {
        let sys = fixtures::fix_d(Field::Prime(3));
        let ms = masts(&sys, &seq(&sys, "v,v,v"));
        assert_eq!(ms.len(), 1);
        let chart = Chart::new(&sys, &ms[0]).unwrap();
        let c = chart.psi(&VarietyPoint::new()).unwrap();
        assert!(c.is_zero());
        let pv = chart.pluecker(&c).unwrap();
        assert_eq!(pv.values().len(), 1);
        assert!(pv.first().is_one());
        let Quotient::Uniserial { module, masts } = phi_s(&sys, 0, &c, &seq(&sys, "v,v,v")).unwrap()
        else {
            panic!("regular module is uniserial");
        };
        assert_eq!(module.dim(), 3);
        assert_eq!(masts.len(), 1);
        assert!(guni_contains(&sys, 0, &c, &seq(&sys, "v,v,v")));
    }

    #[test]
    fn phi_detects_masts_and_rejects() {
        let sys = fixtures::fix_a(Field::Rational);
        let s = seq(&sys, "1,2");
        let ms = masts(&sys, &s);
        let chart = Chart::new(&sys, &ms[0]).unwrap();
        for (kappa, expected) in [(0, 1), (2, 2)] {
            let c = chart.psi(&point(&sys, &ms[0], &[kappa])).unwrap();
            match phi_s(&sys, 0, &c, &s).unwrap() {
                Quotient::Uniserial { masts, .. } => assert_eq!(masts.len(), expected),
                Quotient::Rejected(r) => panic!("unexpected rejection {r:?}"),
            }
            assert!(guni_contains(&sys, 0, &c, &s));
        }

        let sys = fixtures::fix_c(Field::Rational);
        let s = seq(&sys, "1,2,3");
        let bc = sys.path_coordinates(0, &sys.quiver().parse_path("b*c").unwrap()).unwrap();
        let c = Subspace::span(sys.field(), 4, vec![bc]);
        match phi_s(&sys, 0, &c, &s).unwrap() {
            Quotient::Rejected(r) => {
                assert_eq!(r.layer, 1);
                assert_eq!(r.dimension, 2);
                assert_eq!(r.support, [(1, 2)]);
            }
            Quotient::Uniserial { .. } => panic!("quotient is not uniserial"),
        }
        assert!(!guni_contains(&sys, 0, &c, &s));
    }
}
