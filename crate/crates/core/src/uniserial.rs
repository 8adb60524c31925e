//! Masts, detours and routes for a sequence of simple modules, the affine
//! chart `V_p` with its defining equations, and symbolic route reduction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::ReductionSystem;
use crate::error::{Error, Result};
use crate::grassmann::Subspace;
use crate::linalg::solve_combination;
use crate::modvar;
use crate::poly::{MultiPoly, PolyMatrix};
use crate::quiver::{ArrowId, PathWord, Quiver, VertexId};
use crate::scalar::{Field, Scalar};

/// The vertices `e(0), …, e(l)` of a sequence of simple modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleSequence {
    vertices: Vec<VertexId>,
}

impl SimpleSequence {
    /// # Panics
    /// If the sequence is empty.
    pub fn new(vertices: Vec<VertexId>) -> SimpleSequence {
        assert!(!vertices.is_empty(), "a sequence of simples is never empty");
        SimpleSequence { vertices }
    }

    /// Parses a comma-separated list of vertex names.
    pub fn parse(quiver: &Quiver, text: &str) -> Result<SimpleSequence> {
        let vertices = text
            .split(',')
            .map(|v| quiver.vertex_id(v.trim()))
            .collect::<Result<Vec<_>>>()?;
        if vertices.is_empty() {
            return Err(Error::Input("empty series".into()));
        }
        Ok(SimpleSequence { vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    /// `l`, the length of the paths through the sequence.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `l + 1`, the dimension of a uniserial module with this series.
    pub fn dimension(&self) -> usize {
        self.vertices.len()
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        self.vertices
            .iter()
            .map(|&v| quiver.vertex_name(v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The coordinate `k[index; arrow; position]`, i.e. the coefficient of
/// `p_index` in `arrow · p_position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DetourCoordinate {
    pub position: usize,
    pub arrow: ArrowId,
    pub index: usize,
}

impl DetourCoordinate {
    pub fn name(&self, quiver: &Quiver) -> String {
        format!(
            "k[{};{};{}]",
            self.index,
            quiver.arrow(self.arrow).name,
            self.position
        )
    }

    /// Parses `k[i;alpha;m]`.
    pub fn parse(quiver: &Quiver, text: &str) -> Result<DetourCoordinate> {
        let bad = || Error::Input(format!("malformed coordinate `{text}`"));
        let inner = text
            .trim()
            .strip_prefix("k[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = inner.split(';').map(str::trim).collect();
        let [index, arrow, position] = parts.as_slice() else {
            return Err(bad());
        };
        Ok(DetourCoordinate {
            index: index.parse().map_err(|_| bad())?,
            arrow: quiver.arrow_id(arrow)?,
            position: position.parse().map_err(|_| bad())?,
        })
    }
}

/// A detour `(arrow, p_position)` with its index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detour {
    arrow: ArrowId,
    position: usize,
    indices: Vec<usize>,
}

impl Detour {
    pub fn arrow(&self) -> ArrowId {
        self.arrow
    }

    pub fn position(&self) -> usize {
        self.position
    }

    /// `I(α, p_m)`, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// The path `α p_m`.
    pub fn product(&self, quiver: &Quiver, mast: &Mast) -> PathWord {
        mast.subpaths[self.position].then_arrow(quiver, self.arrow)
    }

    pub fn coordinates(&self) -> impl Iterator<Item = DetourCoordinate> + '_ {
        self.indices.iter().map(|&index| DetourCoordinate {
            position: self.position,
            arrow: self.arrow,
            index,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteClass {
    Route,
    NonRoute,
}

/// A path through a sequence of simples that survives in the algebra,
/// together with its right subpaths and detour table.
#[derive(Clone, Debug)]
pub struct Mast {
    path: PathWord,
    sequence: SimpleSequence,
    subpaths: Vec<PathWord>,
    subpath_coords: Vec<Vec<Scalar>>,
    module_dim: usize,
    detours: Vec<Detour>,
    coordinates: Vec<DetourCoordinate>,
    routes: Vec<RouteClass>,
}

impl Mast {
    pub fn new(sys: &ReductionSystem, path: PathWord) -> Result<Mast> {
        let quiver = sys.quiver();
        let name = quiver.path_name(&path);
        if sys.path_in_ideal(&path) {
            return Err(Error::NotAMast(name));
        }
        let e = path.source();
        let l = path.len();
        let subpaths: Vec<PathWord> = (0..=l).map(|i| path.right_subpath(quiver, i)).collect();
        let subpath_coords = subpaths
            .iter()
            .map(|p| sys.path_coordinates(e, p))
            .collect::<Result<Vec<_>>>()?;
        let module_dim = sys.module(e).dim();
        if Subspace::span(sys.field(), module_dim, subpath_coords.clone()).dim() != l + 1 {
            return Err(Error::DependentSubpaths(name));
        }
        let mut detours = Vec::new();
        for (m, pm) in subpaths.iter().enumerate() {
            for arrow in quiver.arrows_from(pm.target()) {
                if m < l && path.arrows()[m] == arrow {
                    continue;
                }
                if sys.path_in_ideal(&pm.then_arrow(quiver, arrow)) {
                    continue;
                }
                let target = quiver.arrow(arrow).target;
                let indices: Vec<usize> = (m + 1..=l)
                    .filter(|&s| subpaths[s].target() == target)
                    .collect();
                if !indices.is_empty() {
                    detours.push(Detour {
                        arrow,
                        position: m,
                        indices,
                    });
                }
            }
        }
        let coordinates = detours.iter().flat_map(Detour::coordinates).collect();
        let sequence = SimpleSequence::new(quiver.vertex_sequence(&path));
        let mut mast = Mast {
            path,
            sequence,
            subpaths,
            subpath_coords,
            module_dim,
            detours,
            coordinates,
            routes: Vec::new(),
        };
        mast.routes = sys
            .left_module_basis(e)
            .iter()
            .map(|q| {
                if is_route(quiver, &mast, q) {
                    RouteClass::Route
                } else {
                    RouteClass::NonRoute
                }
            })
            .collect();
        Ok(mast)
    }

    pub fn path(&self) -> &PathWord {
        &self.path
    }

    pub fn name(&self, quiver: &Quiver) -> String {
        quiver.path_name(&self.path)
    }

    /// `l`.
    pub fn length(&self) -> usize {
        self.path.len()
    }

    /// `e(0)`.
    pub fn source(&self) -> VertexId {
        self.path.source()
    }

    pub fn sequence(&self) -> &SimpleSequence {
        &self.sequence
    }

    /// `p_0, …, p_l`.
    pub fn subpaths(&self) -> &[PathWord] {
        &self.subpaths
    }

    /// Coordinates of `p_0, …, p_l` in the path basis of `Λe`.
    pub fn subpath_coordinates(&self) -> &[Vec<Scalar>] {
        &self.subpath_coords
    }

    /// `m = dim Λe − (l + 1)`.
    pub fn codimension(&self) -> usize {
        self.module_dim - self.subpaths.len()
    }

    pub fn detours(&self) -> &[Detour] {
        &self.detours
    }

    pub fn detour(&self, arrow: ArrowId, position: usize) -> Option<&Detour> {
        self.detours
            .iter()
            .find(|d| d.arrow == arrow && d.position == position)
    }

    /// All detour coordinates, sorted; this is the variable order of `V_p`.
    pub fn coordinates(&self) -> &[DetourCoordinate] {
        &self.coordinates
    }

    pub fn coordinate_index(&self, c: &DetourCoordinate) -> Option<usize> {
        self.coordinates.binary_search(c).ok()
    }

    pub fn coordinate_names(&self, quiver: &Quiver) -> Vec<String> {
        self.coordinates.iter().map(|c| c.name(quiver)).collect()
    }

    /// Route classification of every basis path of `Λe`.
    pub fn route_classes(&self) -> &[RouteClass] {
        &self.routes
    }
}

/// All masts through the sequence, in path order.
pub fn masts(sys: &ReductionSystem, series: &SimpleSequence) -> Vec<Mast> {
    let quiver = sys.quiver();
    let v = series.vertices();
    let mut words: Vec<Vec<ArrowId>> = vec![Vec::new()];
    for w in v.windows(2) {
        let step: Vec<ArrowId> = quiver
            .arrows_from(w[0])
            .filter(|&a| quiver.arrow(a).target == w[1])
            .collect();
        words = words
            .iter()
            .flat_map(|p| {
                step.iter().map(move |&a| {
                    let mut p = p.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    let mut paths: Vec<PathWord> = words
        .into_iter()
        .map(|w| {
            if w.is_empty() {
                PathWord::trivial(v[0])
            } else {
                quiver.path(&w).expect("consecutive arrows compose")
            }
        })
        .collect();
    paths.sort();
    paths
        .into_iter()
        .filter_map(|p| Mast::new(sys, p).ok())
        .collect()
}

/// The detour table of a mast.
pub fn detours(mast: &Mast) -> &[Detour] {
    mast.detours()
}

/// Whether the vertex sequence of `q` embeds order-preservingly into the
/// vertex sequence of the mast.
pub fn is_route(quiver: &Quiver, mast: &Mast, q: &PathWord) -> bool {
    let target = mast.sequence.vertices();
    let mut pos = 0;
    for v in quiver.vertex_sequence(q) {
        match target[pos..].iter().position(|&w| w == v) {
            Some(i) => pos += i + 1,
            None => return false,
        }
    }
    true
}

pub fn classify_route(quiver: &Quiver, mast: &Mast, q: &PathWord) -> Result<RouteClass> {
    if q.source() != mast.source() {
        return Err(Error::SourceMismatch {
            path: quiver.path_name(q),
            vertex: quiver.vertex_name(mast.source()).to_string(),
        });
    }
    Ok(if is_route(quiver, mast, q) {
        RouteClass::Route
    } else {
        RouteClass::NonRoute
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    DetourProduct { arrow: ArrowId, position: usize },
    NonRoute,
    Route,
}

/// One vector `b_i` of a special basis: the path it was recruited from and
/// the coordinates of its normal form in `Λe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub path: PathWord,
    pub kind: BasisKind,
    pub coordinates: Vec<Scalar>,
}

impl BasisVector {
    pub fn detour(&self) -> Option<(ArrowId, usize)> {
        match self.kind {
            BasisKind::DetourProduct { arrow, position } => Some((arrow, position)),
            _ => None,
        }
    }
}

/// `b_1, …, b_m` supplementing `p_0, …, p_l` to a basis of `Λe`: detour
/// products first, then non-routes, then routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialBasis {
    entries: Vec<BasisVector>,
    detour_end: usize,
    non_route_end: usize,
}

impl SpecialBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[BasisVector] {
        &self.entries
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.iter().map(|b| b.coordinates.as_slice())
    }

    /// `b_1, …, b_{m_1}`.
    pub fn detour_products(&self) -> &[BasisVector] {
        &self.entries[..self.detour_end]
    }

    /// `b_{m_1+1}, …, b_{m_2}`.
    pub fn non_routes(&self) -> &[BasisVector] {
        &self.entries[self.detour_end..self.non_route_end]
    }

    /// `b_{m_2+1}, …, b_m`.
    pub fn routes(&self) -> &[BasisVector] {
        &self.entries[self.non_route_end..]
    }

    /// `Σ len(u_i)` over the detour products.
    pub fn detour_weight(&self) -> usize {
        self.detour_products()
            .iter()
            .filter_map(|b| b.detour().map(|(_, m)| m))
            .sum()
    }
}

pub fn special_basis(sys: &ReductionSystem, mast: &Mast) -> Result<SpecialBasis> {
    let quiver = sys.quiver();
    let e = mast.source();
    let n = sys.module(e).dim();
    let mut span = Subspace::span(sys.field(), n, mast.subpath_coords.clone());
    let mut entries = Vec::new();
    let mut recruit = |path: PathWord, kind: BasisKind, span: &mut Subspace| -> Result<()> {
        let coordinates = sys.path_coordinates(e, &path)?;
        if !span.contains(&coordinates) {
            *span = span.with_vectors([coordinates.clone()]);
            entries.push(BasisVector {
                path,
                kind,
                coordinates,
            });
        }
        Ok(())
    };

    let mut candidates: Vec<(usize, PathWord, &Detour)> = mast
        .detours
        .iter()
        .map(|d| (d.position, d.product(quiver, mast), d))
        .collect();
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    for (_, path, d) in candidates {
        let kind = BasisKind::DetourProduct {
            arrow: d.arrow,
            position: d.position,
        };
        recruit(path, kind, &mut span)?;
    }
    let detour_end = entries_len(&span, mast);

    for q in quiver.paths_from(e, sys.nilbound()) {
        if !is_route(quiver, mast, &q) {
            recruit(q, BasisKind::NonRoute, &mut span)?;
        }
    }
    let non_route_end = entries_len(&span, mast);

    for q in sys.left_module_basis(e) {
        if is_route(quiver, mast, q) {
            recruit(q.clone(), BasisKind::Route, &mut span)?;
        }
    }
    if span.dim() != n {
        return Err(Error::ImpossibleSupplementation);
    }
    Ok(SpecialBasis {
        entries,
        detour_end,
        non_route_end,
    })
}

fn entries_len(span: &Subspace, mast: &Mast) -> usize {
    span.dim() - mast.subpaths.len()
}

/// A point of `V_p`: detour coordinates with their values. Absent
/// coordinates are zero, and zero values are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarietyPoint {
    values: BTreeMap<DetourCoordinate, Scalar>,
}

impl VarietyPoint {
    pub fn new() -> Self {
        Self::default()
    }

    /// The point with the given values in the mast's coordinate order.
    pub fn from_values(mast: &Mast, values: &[Scalar]) -> Self {
        let mut p = Self::new();
        for (c, v) in mast.coordinates().iter().zip(values) {
            p.insert(*c, v.clone());
        }
        p
    }

    pub fn insert(&mut self, c: DetourCoordinate, v: Scalar) {
        if v.is_zero() {
            self.values.remove(&c);
        } else {
            self.values.insert(c, v);
        }
    }

    pub fn get(&self, c: &DetourCoordinate) -> Option<&Scalar> {
        self.values.get(c)
    }

    pub fn value(&self, field: Field, c: &DetourCoordinate) -> Scalar {
        self.values.get(c).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DetourCoordinate, &Scalar)> {
        self.values.iter()
    }

    /// Values in the given variable order; unknown keys are an error.
    pub fn values_for(&self, variables: &[DetourCoordinate], field: Field) -> Result<Vec<Scalar>> {
        let known: BTreeSet<&DetourCoordinate> = variables.iter().collect();
        if let Some((c, _)) = self.values.iter().find(|(c, _)| !known.contains(c)) {
            return Err(Error::UnknownCoordinate(format!(
                "k[{};#{};{}]",
                c.index, c.arrow, c.position
            )));
        }
        Ok(variables.iter().map(|c| self.value(field, c)).collect())
    }

    pub fn to_vec(&self, mast: &Mast, field: Field) -> Result<Vec<Scalar>> {
        self.values_for(mast.coordinates(), field)
    }

    pub fn display(&self, quiver: &Quiver) -> String {
        self.values
            .iter()
            .map(|(c, v)| format!("{}={v}", c.name(quiver)))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses `k[i;alpha;m]=value,...`.
    pub fn parse(quiver: &Quiver, field: Field, text: &str) -> Result<VarietyPoint> {
        let mut p = VarietyPoint::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (c, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("expected `coordinate=value`, got `{item}`")))?;
            p.insert(DetourCoordinate::parse(quiver, c)?, field.parse_scalar(v.trim())?);
        }
        Ok(p)
    }
}

impl fmt::Display for DetourCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{};#{};{}]", self.index, self.arrow, self.position)
    }
}

/// Polynomial equations in the detour coordinates of a mast.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSystem {
    variables: Vec<DetourCoordinate>,
    names: Vec<String>,
    equations: Vec<MultiPoly>,
}

impl PolynomialSystem {
    pub fn variables(&self) -> &[DetourCoordinate] {
        &self.variables
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn is_satisfied_by(&self, values: &[Scalar]) -> bool {
        self.equations.iter().all(|p| p.evaluate(values).is_zero())
    }
}

/// The defining equations of `V_p`: every matrix entry of every relation
/// generator, evaluated on the generic normalized representation.
pub fn variety_equations(sys: &ReductionSystem, mast: &Mast) -> PolynomialSystem {
    let field = sys.field();
    let mats = modvar::theorem_d_symbolic(sys, mast);
    let tags = mast.sequence().vertices();
    let d = tags.len();
    let idempotent = |v: VertexId| {
        let mut m = PolyMatrix::zeros(field, d, d);
        for (i, &t) in tags.iter().enumerate() {
            if t == v {
                m.set(i, i, MultiPoly::one(field));
            }
        }
        m
    };
    let path_matrix = |p: &PathWord| {
        let mut acc = idempotent(p.source());
        for &a in p.arrows() {
            acc = mats[a].mul(&acc);
        }
        acc
    };
    let mut found: BTreeSet<MultiPoly> = BTreeSet::new();
    let mut collect = |m: &PolyMatrix| {
        for p in m.entries() {
            if !p.is_zero() {
                found.insert(p.monic());
            }
        }
    };
    for r in sys.relations() {
        let mut acc = PolyMatrix::zeros(field, d, d);
        for (p, c) in r.terms() {
            acc = acc.add(&path_matrix(p).scale(c));
        }
        collect(&acc);
    }
    if d > sys.nilbound() {
        // Products along paths of length N, pruned as soon as they vanish.
        let mut stack: Vec<(usize, VertexId, PolyMatrix)> = (0..sys.quiver().vertex_count())
            .map(|v| (0, v, idempotent(v)))
            .filter(|(_, _, m)| !m.is_zero())
            .collect();
        while let Some((len, v, m)) = stack.pop() {
            if len == sys.nilbound() {
                collect(&m);
                continue;
            }
            for a in sys.quiver().arrows_from(v) {
                let next = mats[a].mul(&m);
                if !next.is_zero() {
                    stack.push((len + 1, sys.quiver().arrow(a).target, next));
                }
            }
        }
    }
    PolynomialSystem {
        variables: mast.coordinates().to_vec(),
        names: mast.coordinate_names(sys.quiver()),
        equations: found.into_iter().collect(),
    }
}

/// Whether every equation vanishes at `k`.
pub fn evaluate_point(eqs: &PolynomialSystem, k: &VarietyPoint) -> Result<bool> {
    let field = eqs
        .equations
        .first()
        .map(MultiPoly::field)
        .or_else(|| k.iter().next().map(|(_, v)| v.field()));
    let Some(field) = field else {
        return Ok(true);
    };
    let values = k.values_for(&eqs.variables, field)?;
    Ok(eqs.is_satisfied_by(&values))
}

/// Symbolic reduction of routes modulo the chart image, following the
/// induction on the longest right subpath of the mast contained in a route.
#[derive(Clone, Debug)]
pub struct RouteReducer<'a> {
    sys: &'a ReductionSystem,
    mast: Mast,
    special: SpecialBasis,
    expansion: Vec<Vec<Scalar>>,
}

impl<'a> RouteReducer<'a> {
    pub fn new(sys: &'a ReductionSystem, mast: &Mast) -> Result<Self> {
        Ok(Self::with_basis(sys, mast, special_basis(sys, mast)?))
    }

    pub fn with_basis(sys: &'a ReductionSystem, mast: &Mast, special: SpecialBasis) -> Self {
        let mut expansion = mast.subpath_coords.clone();
        expansion.extend(special.detour_products().iter().map(|b| b.coordinates.clone()));
        RouteReducer {
            sys,
            mast: mast.clone(),
            special,
            expansion,
        }
    }

    pub fn special_basis(&self) -> &SpecialBasis {
        &self.special
    }

    /// Polynomials `q_0, …, q_l` with `v ≡ Σ q_r(k) p_r` modulo `ψ_p(k)`.
    pub fn reduce(&self, v: &PathWord) -> Result<Vec<MultiPoly>> {
        let quiver = self.sys.quiver();
        classify_route(quiver, &self.mast, v)?;
        if !is_route(quiver, &self.mast, v) {
            return Err(Error::NotARoute(quiver.path_name(v)));
        }
        self.reduce_inner(v)
    }

    fn zero(&self) -> Vec<MultiPoly> {
        vec![MultiPoly::zero(self.sys.field()); self.mast.length() + 1]
    }

    fn reduce_inner(&self, v: &PathWord) -> Result<Vec<MultiPoly>> {
        let sys = self.sys;
        let quiver = sys.quiver();
        let field = sys.field();
        let mast = &self.mast;
        if sys.path_in_ideal(v) || !is_route(quiver, mast, v) {
            return Ok(self.zero());
        }
        let l = mast.length();
        let d = (0..=l.min(v.len()))
            .rev()
            .find(|&i| v.arrows()[..i] == mast.path.arrows()[..i])
            .unwrap_or(0);
        if v.len() == d {
            let mut out = self.zero();
            out[d] = MultiPoly::one(field);
            return Ok(out);
        }
        let beta = v.arrows()[d];
        let Some(detour) = mast.detour(beta, d) else {
            return Ok(self.zero());
        };
        let rest = quiver
            .path(&v.arrows()[d + 1..])
            .unwrap_or_else(|_| PathWord::trivial(quiver.arrow(beta).target));
        let product = detour.product(quiver, mast);
        let coords = sys.path_coordinates(mast.source(), &product)?;
        let coeffs = solve_combination(field, &self.expansion, &coords)
            .ok_or_else(|| Error::Internal("detour product outside the detour span".into()))?;
        let (h, k) = coeffs.split_at(l + 1);
        if h[..=d].iter().any(|c| !c.is_zero()) {
            return Err(Error::EmptyChart(mast.name(quiver)));
        }
        let mut out = self.zero();
        let add_scaled = |out: &mut Vec<MultiPoly>, r: usize, c: &MultiPoly| -> Result<()> {
            let prefix = &mast.subpaths[r];
            let w = prefix
                .then(&rest)
                .ok_or_else(|| Error::Internal("expansion term does not compose".into()))?;
            for (o, q) in out.iter_mut().zip(self.reduce_inner(&w)?) {
                *o = o.add(&q.mul(c));
            }
            Ok(())
        };
        for (r, c) in h.iter().enumerate().skip(d + 1) {
            if !c.is_zero() {
                add_scaled(&mut out, r, &MultiPoly::constant(c.clone()))?;
            }
        }
        for (b, c) in self.special.detour_products().iter().zip(k) {
            if c.is_zero() {
                continue;
            }
            let (arrow, position) = b.detour().expect("detour product");
            if position < d {
                return Err(Error::Internal("special basis is not length-maximal".into()));
            }
            let bd = mast.detour(arrow, position).expect("detour of the mast");
            for coord in bd.coordinates() {
                let var = mast.coordinate_index(&coord).expect("declared coordinate");
                let poly = MultiPoly::var(field, var).scale(c);
                add_scaled(&mut out, coord.index, &poly)?;
            }
        }
        Ok(out)
    }
}

pub fn reduce_route_symbolic(
    sys: &ReductionSystem,
    mast: &Mast,
    v: &PathWord,
) -> Result<Vec<MultiPoly>> {
    RouteReducer::new(sys, mast)?.reduce(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn seq(sys: &ReductionSystem, s: &str) -> SimpleSequence {
        SimpleSequence::parse(sys.quiver(), s).unwrap()
    }

    fn names(sys: &ReductionSystem, ms: &[Mast]) -> Vec<String> {
        ms.iter().map(|m| m.name(sys.quiver())).collect()
    }

    #[test]
    fn masts_of_fixtures() {
        let a = fixtures::fix_a(Field::Rational);
        assert_eq!(names(&a, &masts(&a, &seq(&a, "1,2"))), ["a", "b"]);
        assert!(masts(&a, &seq(&a, "2,1")).is_empty());
        let c = fixtures::fix_c(Field::Rational);
        assert_eq!(names(&c, &masts(&c, &seq(&c, "1,2,3"))), ["b*c"]);
        let b = fixtures::fix_b(Field::Prime(2));
        assert_eq!(masts(&b, &seq(&b, "1,2,3")).len(), 6);
    }

    #[test]
    fn detour_tables() {
        let a = fixtures::fix_a(Field::Rational);
        let ms = masts(&a, &seq(&a, "1,2"));
        let d = ms[0].detours();
        assert_eq!(d.len(), 1);
        assert_eq!(a.quiver().arrow(d[0].arrow()).name, "b");
        assert_eq!((d[0].position(), d[0].indices()), (0, &[1][..]));

        let c = fixtures::fix_c(Field::Rational);
        let ms = masts(&c, &seq(&c, "1,2,3"));
        let d = ms[0].detours();
        assert_eq!(d.len(), 1);
        assert_eq!(c.quiver().arrow(d[0].arrow()).name, "a");
        assert_eq!(d[0].indices(), [1]);
        assert_eq!(ms[0].coordinate_names(c.quiver()), ["k[1;a;0]"]);

        let dd = fixtures::fix_d(Field::Rational);
        let ms = masts(&dd, &seq(&dd, "v,v,v"));
        assert!(ms[0].detours().is_empty());
        assert_eq!(ms[0].codimension(), 0);
    }

    #[test]
    fn routes() {
        let c = fixtures::fix_c(Field::Rational);
        let ms = masts(&c, &seq(&c, "1,2,3"));
        let q = c.quiver();
        assert_eq!(classify_route(q, &ms[0], &q.parse_path("a").unwrap()).unwrap(), RouteClass::Route);
        assert_eq!(
            classify_route(q, &ms[0], &PathWord::trivial(0)).unwrap(),
            RouteClass::Route
        );
        assert!(classify_route(q, &ms[0], &PathWord::trivial(1)).is_err());

        let e = fixtures::fix_e(Field::Rational);
        let ms = masts(&e, &seq(&e, "1,2"));
        let q = e.quiver();
        assert_eq!(
            classify_route(q, &ms[0], &q.parse_path("b*a").unwrap()).unwrap(),
            RouteClass::NonRoute
        );
    }

    #[test]
    fn route_test_allows_any_embedding() {
        let d = fixtures::fix_d(Field::Rational);
        let ms = masts(&d, &seq(&d, "v,v"));
        let q = d.quiver();
        assert!(is_route(q, &ms[0], &q.parse_path("x").unwrap()));
        assert!(!is_route(q, &ms[0], &q.parse_path("x*x").unwrap()));
    }

    #[test]
    fn special_bases() {
        let a = fixtures::fix_a(Field::Rational);
        let ms = masts(&a, &seq(&a, "1,2"));
        let sb = special_basis(&a, &ms[0]).unwrap();
        assert_eq!(sb.len(), 1);
        assert_eq!(sb.detour_products().len(), 1);
        assert_eq!(a.quiver().path_name(&sb.entries()[0].path), "b");

        let d = fixtures::fix_d(Field::Rational);
        let ms = masts(&d, &seq(&d, "v,v,v"));
        assert!(special_basis(&d, &ms[0]).unwrap().is_empty());

        let c = fixtures::fix_c(Field::Rational);
        let ms = masts(&c, &seq(&c, "1,2,3"));
        let sb = special_basis(&c, &ms[0]).unwrap();
        assert_eq!(sb.detour_products().len(), 1);
        assert_eq!(sb.len(), 1);
        assert_eq!(c.quiver().path_name(&sb.entries()[0].path), "a");
    }

    #[test]
    fn symbolic_reduction_examples() {
        let a = fixtures::fix_a(Field::Rational);
        let ms = masts(&a, &seq(&a, "1,2"));
        let q = a.quiver();
        let r = reduce_route_symbolic(&a, &ms[0], &q.parse_path("b").unwrap()).unwrap();
        let names = ms[0].coordinate_names(q);
        assert_eq!(r.iter().map(|p| p.display(&names)).collect::<Vec<_>>(), ["0", "k[1;b;0]"]);
        let r = reduce_route_symbolic(&a, &ms[0], &q.parse_path("a").unwrap()).unwrap();
        assert_eq!(r.iter().map(|p| p.display(&names)).collect::<Vec<_>>(), ["0", "1"]);

        let c = fixtures::fix_c(Field::Rational);
        let ms = masts(&c, &seq(&c, "1,2,3"));
        let q = c.quiver();
        let names = ms[0].coordinate_names(q);
        let r = reduce_route_symbolic(&c, &ms[0], &q.parse_path("a").unwrap()).unwrap();
        assert_eq!(
            r.iter().map(|p| p.display(&names)).collect::<Vec<_>>(),
            ["0", "k[1;a;0]", "0"]
        );
        let e = fixtures::fix_e(Field::Rational);
        let ms = masts(&e, &seq(&e, "1,2"));
        let q = e.quiver();
        assert!(matches!(
            reduce_route_symbolic(&e, &ms[0], &q.parse_path("b*a").unwrap()),
            Err(Error::NotARoute(_))
        ));
    }

    #[test]
    fn equations_of_fixtures() {
        let a = fixtures::fix_a(Field::Rational);
        let ms = masts(&a, &seq(&a, "1,2"));
        let eqs = variety_equations(&a, &ms[0]);
        assert_eq!(eqs.variables().len(), 1);
        assert!(eqs.equations().is_empty());

        let c = fixtures::fix_c(Field::Rational);
        let ms = masts(&c, &seq(&c, "1,2,3"));
        let eqs = variety_equations(&c, &ms[0]);
        assert_eq!(eqs.equations().len(), 1);
        assert_eq!(eqs.equations()[0].display(eqs.names()), "k[1;a;0]");
        let f = c.field();
        let coord = ms[0].coordinates()[0];
        let mut k = VarietyPoint::new();
        assert!(evaluate_point(&eqs, &k).unwrap());
        k.insert(coord, f.one());
        assert!(!evaluate_point(&eqs, &k).unwrap());

        let d = fixtures::fix_d(Field::Rational);
        let ms = masts(&d, &seq(&d, "v,v,v"));
        let eqs = variety_equations(&d, &ms[0]);
        assert!(eqs.variables().is_empty() && eqs.equations().is_empty());
        assert!(evaluate_point(&eqs, &VarietyPoint::new()).unwrap());
    }

    #[test]
    fn point_parsing() {
        let a = fixtures::fix_a(Field::Prime(5));
        let ms = masts(&a, &seq(&a, "1,2"));
        let k = VarietyPoint::parse(a.quiver(), a.field(), "k[1;b;0]=3").unwrap();
        assert_eq!(k.to_vec(&ms[0], a.field()).unwrap(), [a.field().from_i64(3)]);
        assert_eq!(k.display(a.quiver()), "k[1;b;0]=3");
        let bad = VarietyPoint::parse(a.quiver(), a.field(), "k[1;a;0]=3").unwrap();
        assert!(bad.to_vec(&ms[0], a.field()).is_err());
    }
}
