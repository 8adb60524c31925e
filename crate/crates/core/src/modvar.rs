//! Modules as tuples of matrices: the normalized representations of a mast,
//! membership tests, homomorphism spaces, isomorphism, socles, and
//! certificates that one uniserial module does not degenerate to another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, ReductionSystem};
use crate::error::{Error, Result};
use crate::grassmann::Subspace;
use crate::linalg::Matrix;
use crate::poly::{MultiPoly, PolyMatrix};
use crate::quiver::{PathWord, VertexId};
use crate::scalar::{Field, Scalar};
use crate::uniserial::{self, DetourCoordinate, Mast, SimpleSequence, VarietyPoint};

/// A `d`-dimensional representation: every basis coordinate carries a vertex
/// and every arrow acts by a `d × d` matrix on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixRep {
    field: Field,
    tags: Vec<VertexId>,
    arrows: Vec<Matrix>,
}

impl MatrixRep {
    /// Checks shapes and that every arrow maps its source block into its
    /// target block. Relations are not checked here.
    pub fn new_unchecked_relations(
        field: Field,
        tags: Vec<VertexId>,
        arrows: Vec<Matrix>,
        ends: &[(VertexId, VertexId)],
    ) -> Result<MatrixRep> {
        let d = tags.len();
        if ends.len() != arrows.len() {
            return Err(Error::MalformedRepresentation(format!(
                "expected {} arrow matrices, found {}",
                ends.len(),
                arrows.len()
            )));
        }
        for (a, (m, &(s, t))) in arrows.iter().zip(ends).enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::MalformedRepresentation(format!(
                    "arrow #{a} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch {
                    expected: field.to_string(),
                    found: m.field().to_string(),
                });
            }
            for i in 0..d {
                for j in 0..d {
                    if !m[(i, j)].is_zero() && (tags[j] != s || tags[i] != t) {
                        return Err(Error::MalformedRepresentation(format!(
                            "arrow #{a} has a nonzero entry at ({i}, {j}) outside its blocks"
                        )));
                    }
                }
            }
        }
        Ok(MatrixRep {
            field,
            tags,
            arrows,
        })
    }

    /// Builds a representation without block checks; used where the blocks
    /// hold by construction.
    pub fn new(field: Field, tags: Vec<VertexId>, arrows: Vec<Matrix>) -> Result<MatrixRep> {
        let d = tags.len();
        if arrows.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(Error::MalformedRepresentation("non-square arrow matrix".into()));
        }
        Ok(MatrixRep {
            field,
            tags,
            arrows,
        })
    }

    /// Builds and validates a representation of the system's quiver.
    pub fn for_system(sys: &ReductionSystem, tags: Vec<VertexId>, arrows: Vec<Matrix>) -> Result<MatrixRep> {
        let quiver = sys.quiver();
        if let Some(&v) = tags.iter().find(|&&v| v >= quiver.vertex_count()) {
            return Err(Error::MalformedRepresentation(format!("unknown vertex #{v}")));
        }
        let ends: Vec<(VertexId, VertexId)> =
            quiver.arrows().iter().map(|a| (a.source, a.target)).collect();
        let x = Self::new_unchecked_relations(sys.field(), tags, arrows, &ends)?;
        if !satisfies_relations(sys, &x) {
            return Err(Error::MalformedRepresentation(
                "the matrices violate the relations".into(),
            ));
        }
        Ok(x)
    }

    /// The simple module at vertex `v`.
    pub fn simple(field: Field, v: VertexId, arrow_count: usize) -> MatrixRep {
        MatrixRep {
            field,
            tags: vec![v],
            arrows: vec![Matrix::zeros(field, 1, 1); arrow_count],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.tags.len()
    }

    pub fn tags(&self) -> &[VertexId] {
        &self.tags
    }

    pub fn arrow(&self, a: usize) -> &Matrix {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Matrix] {
        &self.arrows
    }

    pub fn idempotent(&self, v: VertexId) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.dim());
        for (i, &t) in self.tags.iter().enumerate() {
            if t == v {
                m[(i, i)] = self.field.one();
            }
        }
        m
    }

    pub fn dimension_vector(&self, vertex_count: usize) -> Vec<usize> {
        let mut dv = vec![0; vertex_count];
        for &t in &self.tags {
            if t >= dv.len() {
                dv.resize(t + 1, 0);
            }
            dv[t] += 1;
        }
        dv
    }

    /// The action of a path: the product of its arrow matrices.
    pub fn path_matrix(&self, p: &PathWord) -> Matrix {
        let mut acc = self.idempotent(p.source());
        for &a in p.arrows() {
            acc = self.arrows[a].mul(&acc);
        }
        acc
    }

    pub fn element_matrix(&self, x: &AlgebraElement) -> Matrix {
        let d = self.dim();
        let mut acc = Matrix::zeros(self.field, d, d);
        for (p, c) in x.terms() {
            let m = self.path_matrix(p);
            for i in 0..d {
                for j in 0..d {
                    if !m[(i, j)].is_zero() {
                        acc[(i, j)] += &(&m[(i, j)] * c);
                    }
                }
            }
        }
        acc
    }

    /// `g x g⁻¹` for an invertible `g` respecting the vertex blocks.
    pub fn conjugate(&self, g: &Matrix) -> Result<MatrixRep> {
        let inv = g.inverse()?;
        let arrows = self.arrows.iter().map(|a| g.mul(a).mul(&inv)).collect();
        Ok(MatrixRep {
            field: self.field,
            tags: self.tags.clone(),
            arrows,
        })
    }

    /// Projection of a column vector onto the coordinates of vertex `v`.
    fn project(&self, v: VertexId, x: &[Scalar]) -> Vec<Scalar> {
        x.iter()
            .zip(&self.tags)
            .map(|(c, &t)| if t == v { c.clone() } else { self.field.zero() })
            .collect()
    }

    fn vertices(&self) -> Vec<VertexId> {
        let mut vs = self.tags.clone();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

fn point_value(mast: &Mast, k: &VarietyPoint, field: Field) -> Result<Vec<Scalar>> {
    k.to_vec(mast, field)
}

/// The normalized representation of a point of `V_p`: the mast arrows act
/// by the shift `p_m ↦ p_{m+1}`, detours by their coordinates, everything
/// else by zero.
pub fn theorem_d_matrices(sys: &ReductionSystem, mast: &Mast, k: &VarietyPoint) -> Result<MatrixRep> {
    let field = sys.field();
    let values = point_value(mast, k, field)?;
    let d = mast.length() + 1;
    let mut arrows = vec![Matrix::zeros(field, d, d); sys.quiver().arrow_count()];
    for (m, &a) in mast.path().arrows().iter().enumerate() {
        arrows[a][(m + 1, m)] = field.one();
    }
    for det in mast.detours() {
        for c in det.coordinates() {
            let v = &values[mast.coordinate_index(&c).expect("declared coordinate")];
            arrows[det.arrow()][(c.index, c.position)] = v.clone();
        }
    }
    MatrixRep::new(field, mast.sequence().vertices().to_vec(), arrows)
}

/// [`theorem_d_matrices`] with the detour coordinates left as variables,
/// numbered in the mast's coordinate order.
pub fn theorem_d_symbolic(sys: &ReductionSystem, mast: &Mast) -> Vec<PolyMatrix> {
    let field = sys.field();
    let d = mast.length() + 1;
    let mut arrows = vec![PolyMatrix::zeros(field, d, d); sys.quiver().arrow_count()];
    for (m, &a) in mast.path().arrows().iter().enumerate() {
        arrows[a].set(m + 1, m, MultiPoly::one(field));
    }
    for (v, c) in mast.coordinates().iter().enumerate() {
        arrows[c.arrow].set(c.index, c.position, MultiPoly::var(field, v));
    }
    arrows
}

/// Whether every relation generator and every path of length `N` acts by
/// zero.
pub fn satisfies_relations(sys: &ReductionSystem, x: &MatrixRep) -> bool {
    let d = x.dim();
    for r in sys.relations() {
        if !x.element_matrix(r).is_zero() {
            return false;
        }
    }
    if d == 0 {
        return true;
    }
    let quiver = sys.quiver();
    let mut stack: Vec<(usize, VertexId, Matrix)> = x
        .vertices()
        .into_iter()
        .map(|v| (0, v, x.idempotent(v)))
        .collect();
    while let Some((len, v, m)) = stack.pop() {
        if len == sys.nilbound() {
            return false;
        }
        for a in quiver.arrows_from(v) {
            let next = x.arrows[a].mul(&m);
            if !next.is_zero() {
                stack.push((len + 1, quiver.arrow(a).target, next));
            }
        }
    }
    true
}

/// Whether `x` has exactly the normalized shape of the mast.
pub fn in_rep_p(x: &MatrixRep, mast: &Mast) -> bool {
    shape_violation(x, mast).is_none()
}

fn shape_violation(x: &MatrixRep, mast: &Mast) -> Option<String> {
    let d = mast.length() + 1;
    if x.dim() != d {
        return Some(format!("dimension {} instead of {d}", x.dim()));
    }
    if x.tags() != mast.sequence().vertices() {
        return Some("vertex tags differ from the mast".into());
    }
    let field = x.field();
    let mast_arrows = mast.path().arrows();
    for (a, m) in x.arrows().iter().enumerate() {
        for col in 0..d {
            let on_mast = col < mast_arrows.len() && mast_arrows[col] == a;
            let free: &[usize] = match mast.detour(a, col) {
                Some(det) if !on_mast => det.indices(),
                _ => &[],
            };
            for row in 0..d {
                let v = &m[(row, col)];
                let ok = if on_mast && row == col + 1 {
                    v.is_one()
                } else {
                    free.contains(&row) || v.is_zero()
                };
                if !ok {
                    return Some(format!("arrow #{a} entry ({row}, {col}) is {v}"));
                }
                let _ = field;
            }
        }
    }
    None
}

/// Reads the detour coordinates off a normalized representation.
pub fn rho_p(x: &MatrixRep, mast: &Mast) -> Result<VarietyPoint> {
    if let Some(why) = shape_violation(x, mast) {
        return Err(Error::ShapeViolation(why));
    }
    let mut k = VarietyPoint::new();
    for c in mast.coordinates() {
        k.insert(*c, x.arrow(c.arrow)[(c.index, c.position)].clone());
    }
    Ok(k)
}

fn column_space(field: Field, d: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
    Subspace::span(field, d, vectors)
}

/// `J^i x` for `i = 0, 1, …` until it vanishes.
pub fn radical_filtration(x: &MatrixRep) -> Vec<Subspace> {
    let d = x.dim();
    let field = x.field();
    let mut out = vec![column_space(field, d, Matrix::identity(field, d).row_vecs())];
    while !out.last().unwrap().is_zero() {
        let prev = out.last().unwrap();
        let images = prev
            .rows()
            .iter()
            .flat_map(|v| x.arrows().iter().map(move |a| a.mul_vec(v)))
            .collect();
        out.push(column_space(field, d, images));
    }
    out
}

/// Vertex multiplicities of each radical layer `J^i/J^{i+1}`.
pub fn radical_layers(x: &MatrixRep) -> Vec<Vec<(VertexId, usize)>> {
    let filtration = radical_filtration(x);
    filtration
        .windows(2)
        .map(|w| {
            let (upper, lower) = (&w[0], &w[1]);
            x.vertices()
                .into_iter()
                .filter_map(|v| {
                    let part = lower.with_vectors(upper.rows().iter().map(|r| x.project(v, r)));
                    let mult = part.dim() - lower.dim();
                    (mult > 0).then_some((v, mult))
                })
                .collect()
        })
        .collect()
}

/// The composition series of a uniserial module, or `None` if some radical
/// layer is not simple.
pub fn composition_series(x: &MatrixRep) -> Option<Vec<VertexId>> {
    radical_layers(x)
        .into_iter()
        .map(|layer| match layer.as_slice() {
            [(v, 1)] => Some(*v),
            _ => None,
        })
        .collect()
}

pub fn is_uniserial(x: &MatrixRep) -> bool {
    x.dim() > 0 && composition_series(x).is_some()
}

/// Whether `x` is uniserial with series `series` and not annihilated by
/// some mast of the series.
pub fn in_rep_s(sys: &ReductionSystem, x: &MatrixRep, series: &SimpleSequence) -> bool {
    if x.dim() != series.dimension() {
        return false;
    }
    let has_mast = uniserial::masts(sys, series)
        .iter()
        .any(|m| !x.path_matrix(m.path()).is_zero());
    has_mast && composition_series(x).as_deref() == Some(series.vertices())
}

/// A basis of `Hom(x, y)` in echelon form over the row-major entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    rows: usize,
    cols: usize,
    basis: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// `Σ c_i T_i`.
    pub fn combination(&self, field: Field, coeffs: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(field, self.rows, self.cols);
        for (t, c) in self.basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                for j in 0..self.cols {
                    if !t[(i, j)].is_zero() {
                        acc[(i, j)] += &(&t[(i, j)] * c);
                    }
                }
            }
        }
        acc
    }
}

/// All block-respecting `T` with `T·α(x) = α(y)·T` for every arrow.
pub fn hom_space(x: &MatrixRep, y: &MatrixRep) -> HomSpace {
    let field = x.field();
    let (dx, dy) = (x.dim(), y.dim());
    let unknowns: Vec<(usize, usize)> = (0..dy)
        .flat_map(|i| (0..dx).map(move |j| (i, j)))
        .filter(|&(i, j)| y.tags[i] == x.tags[j])
        .collect();
    let mut slot = vec![None; dy * dx];
    for (u, &(i, j)) in unknowns.iter().enumerate() {
        slot[i * dx + j] = Some(u);
    }
    let mut equations: Vec<Vec<Scalar>> = Vec::new();
    for (ax, ay) in x.arrows().iter().zip(y.arrows()) {
        for r in 0..dy {
            for c in 0..dx {
                let mut row = vec![field.zero(); unknowns.len()];
                // (T ax)[r][c] = Σ_k T[r][k] ax[k][c]
                for k in 0..dx {
                    if let Some(u) = slot[r * dx + k] {
                        if !ax[(k, c)].is_zero() {
                            row[u] += &ax[(k, c)];
                        }
                    }
                }
                // (ay T)[r][c] = Σ_k ay[r][k] T[k][c]
                for k in 0..dy {
                    if let Some(u) = slot[k * dx + c] {
                        if !ay[(r, k)].is_zero() {
                            row[u] -= &ay[(r, k)];
                        }
                    }
                }
                if row.iter().any(|s| !s.is_zero()) {
                    equations.push(row);
                }
            }
        }
    }
    let n = unknowns.len();
    let solutions = Matrix::from_rows(field, n, equations).nullspace();
    let space = Subspace::span(field, n, solutions);
    let basis = space
        .rows()
        .iter()
        .map(|v| {
            let mut t = Matrix::zeros(field, dy, dx);
            for (u, &(i, j)) in unknowns.iter().enumerate() {
                t[(i, j)] = v[u].clone();
            }
            t
        })
        .collect();
    HomSpace {
        rows: dy,
        cols: dx,
        basis,
    }
}

const EXHAUSTIVE_LIMIT: u128 = 1_000_000;
const RANDOM_TRIALS: usize = 16;

/// Isomorphism test with the default seed.
pub fn is_isomorphic(x: &MatrixRep, y: &MatrixRep) -> bool {
    is_isomorphic_seeded(x, y, 0)
}

/// Whether `Hom(x, y)` contains an invertible map. Small finite Hom spaces
/// are scanned completely; otherwise random combinations are tried, and if
/// none is invertible the determinant of the generic combination is
/// expanded symbolically. A nonzero determinant polynomial means the modules
/// become isomorphic over the algebraic closure, hence are isomorphic.
pub fn is_isomorphic_seeded(x: &MatrixRep, y: &MatrixRep, seed: u64) -> bool {
    let mut dx = x.tags.clone();
    let mut dy = y.tags.clone();
    dx.sort_unstable();
    dy.sort_unstable();
    if dx != dy || x.field != y.field {
        return false;
    }
    if x.dim() == 0 {
        return true;
    }
    let field = x.field();
    let hom = hom_space(x, y);
    let h = hom.dim();
    if h == 0 {
        return false;
    }
    if let Some(q) = field.order() {
        let total = (q as u128).checked_pow(h as u32);
        if let Some(total) = total.filter(|&t| t <= EXHAUSTIVE_LIMIT) {
            let mut digits = vec![0u64; h];
            for _ in 0..total {
                let coeffs: Vec<Scalar> = digits.iter().map(|&d| field.element(d)).collect();
                if hom.combination(field, &coeffs).is_invertible() {
                    return true;
                }
                for dgt in digits.iter_mut() {
                    *dgt += 1;
                    if *dgt < q {
                        break;
                    }
                    *dgt = 0;
                }
            }
            return false;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        let coeffs: Vec<Scalar> = (0..h)
            .map(|_| match field.order() {
                Some(q) => field.element(rng.random_range(0..q)),
                None => field.from_i64(rng.random_range(-(1i64 << 20)..(1i64 << 20))),
            })
            .collect();
        if hom.combination(field, &coeffs).is_invertible() {
            return true;
        }
    }
    !generic_determinant(&hom, x.tags(), y.tags(), field).is_zero()
}

/// The determinant of `Σ c_i T_i` as a polynomial in the `c_i`, computed
/// block by block (maps preserve vertex blocks).
fn generic_determinant(hom: &HomSpace, src: &[VertexId], dst: &[VertexId], field: Field) -> MultiPoly {
    let mut vertices = src.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let mut total = MultiPoly::one(field);
    for v in vertices {
        let cols: Vec<usize> = (0..src.len()).filter(|&j| src[j] == v).collect();
        let rows: Vec<usize> = (0..dst.len()).filter(|&i| dst[i] == v).collect();
        let n = rows.len();
        let entry = |i: usize, j: usize| {
            let mut p = MultiPoly::zero(field);
            for (t, b) in hom.basis().iter().enumerate() {
                let c = &b[(rows[i], cols[j])];
                if !c.is_zero() {
                    p = p.add(&MultiPoly::var(field, t).scale(c));
                }
            }
            p
        };
        let entries: Vec<Vec<MultiPoly>> =
            (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
        // Laplace expansion over column subsets, one row at a time.
        let mut dp: Vec<MultiPoly> = vec![MultiPoly::zero(field); 1 << n];
        dp[0] = MultiPoly::one(field);
        for mask in 0usize..(1 << n) {
            let row = mask.count_ones() as usize;
            if row == n || dp[mask].is_zero() {
                continue;
            }
            for (j, e) in entries[row].iter().enumerate() {
                if mask & (1 << j) != 0 || e.is_zero() {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let mut term = dp[mask].mul(e);
                if above % 2 == 1 {
                    term = term.scale(&-field.one());
                }
                dp[mask | (1 << j)] = dp[mask | (1 << j)].add(&term);
            }
        }
        total = total.mul(&dp[(1 << n) - 1]);
        if total.is_zero() {
            break;
        }
    }
    total
}

/// The socle of a module and the induced quotient module.
#[derive(Clone, Debug)]
pub struct SocleSplit {
    /// One vertex per simple summand of the socle.
    pub socle: Vec<VertexId>,
    pub subspace: Subspace,
    pub quotient: MatrixRep,
}

/// The socle (vectors killed by every arrow) and the quotient on the
/// coordinates complementary to its echelon pivots.
pub fn socle_and_quotient(x: &MatrixRep) -> SocleSplit {
    let field = x.field();
    let d = x.dim();
    let mut stacked: Vec<Vec<Scalar>> = Vec::new();
    for a in x.arrows() {
        stacked.extend(a.row_vecs());
    }
    let kernel = Matrix::from_rows(field, d, stacked).nullspace();
    let subspace = Subspace::span(field, d, kernel);
    let socle = subspace.pivots().iter().map(|&p| x.tags[p]).collect();
    let keep: Vec<usize> = (0..d).filter(|c| !subspace.pivots().contains(c)).collect();
    let arrows = x
        .arrows()
        .iter()
        .map(|a| {
            let mut m = Matrix::zeros(field, keep.len(), keep.len());
            for (j, &src) in keep.iter().enumerate() {
                let image = subspace.reduce(&a.column(src));
                for (i, &dst) in keep.iter().enumerate() {
                    m[(i, j)] = image[dst].clone();
                }
            }
            m
        })
        .collect();
    let quotient = MatrixRep {
        field,
        tags: keep.iter().map(|&c| x.tags[c]).collect(),
        arrows,
    };
    SocleSplit {
        socle,
        subspace,
        quotient,
    }
}

/// Which of the two Hom inequalities forced by a degeneration `U ⇝ U′` a
/// leaf refutes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inequality {
    /// `dim Hom(X, U) ≤ dim Hom(X, U′)`.
    HomFromWitness,
    /// `dim Hom(U, X) ≤ dim Hom(U′, X)`.
    HomToWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafKind {
    /// The socles differ; the witness is the socle of `U`.
    SocleMismatch,
    /// The socle quotients are isomorphic; the witness is `U` itself.
    IsomorphicQuotients,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub kind: LeafKind,
    pub witness: MatrixRep,
    pub inequality: Inequality,
    /// The side that the inequality bounds from above.
    pub lhs: usize,
    pub rhs: usize,
    /// `dim Hom(U/S, U)`, which must equal `rhs` for isomorphic quotients.
    pub quotient_hom: Option<usize>,
}

pub const QUOTIENT_STEP: &str =
    "a degeneration of modules with a common socle S induces a degeneration of their quotients by S";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateNode {
    Leaf(Leaf),
    /// Equal socles: any degeneration would pass to the socle quotients,
    /// which the child certificate rules out.
    Quotient {
        socle: VertexId,
        justification: String,
        child: Box<DegenerationCertificate>,
    },
}

/// A proof tree that `left` does not degenerate to `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationCertificate {
    pub left: MatrixRep,
    pub right: MatrixRep,
    pub node: CertificateNode,
}

fn uniserial_socle(x: &MatrixRep) -> Result<(VertexId, MatrixRep)> {
    if !is_uniserial(x) {
        return Err(Error::NotUniserial);
    }
    let split = socle_and_quotient(x);
    match split.socle.as_slice() {
        [v] => Ok((*v, split.quotient)),
        _ => Err(Error::NotUniserial),
    }
}

/// Certifies that the uniserial module `u` does not degenerate to `u2`.
pub fn no_degeneration_certificate(u: &MatrixRep, u2: &MatrixRep) -> Result<DegenerationCertificate> {
    no_degeneration_certificate_seeded(u, u2, 0)
}

/// [`no_degeneration_certificate`] with an explicit seed for the
/// isomorphism tests.
pub fn no_degeneration_certificate_seeded(
    u: &MatrixRep,
    u2: &MatrixRep,
    seed: u64,
) -> Result<DegenerationCertificate> {
    if u.dim() != u2.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: u2.dim(),
        });
    }
    let (s, q) = uniserial_socle(u)?;
    let (s2, q2) = uniserial_socle(u2)?;
    if is_isomorphic_seeded(u, u2, seed) {
        return Err(Error::Isomorphic);
    }
    let field = u.field();
    let node = if s != s2 {
        let witness = MatrixRep::simple(field, s, u.arrows().len());
        let lhs = hom_space(&witness, u).dim();
        let rhs = hom_space(&witness, u2).dim();
        CertificateNode::Leaf(Leaf {
            kind: LeafKind::SocleMismatch,
            witness,
            inequality: Inequality::HomFromWitness,
            lhs,
            rhs,
            quotient_hom: None,
        })
    } else if q.dim() > 0 && !is_isomorphic_seeded(&q, &q2, seed) {
        CertificateNode::Quotient {
            socle: s,
            justification: QUOTIENT_STEP.into(),
            child: Box::new(no_degeneration_certificate_seeded(&q, &q2, seed)?),
        }
    } else {
        let lhs = hom_space(u, u).dim();
        let rhs = hom_space(u2, u).dim();
        let quotient_hom = hom_space(&q, u).dim();
        if quotient_hom != rhs {
            return Err(Error::Internal(format!(
                "dim Hom(U', U) = {rhs} but dim Hom(U/S, U) = {quotient_hom}"
            )));
        }
        CertificateNode::Leaf(Leaf {
            kind: LeafKind::IsomorphicQuotients,
            witness: u.clone(),
            inequality: Inequality::HomToWitness,
            lhs,
            rhs,
            quotient_hom: Some(quotient_hom),
        })
    };
    let cert = DegenerationCertificate {
        left: u.clone(),
        right: u2.clone(),
        node,
    };
    cert.verify()?;
    Ok(cert)
}

impl DegenerationCertificate {
    /// Recomputes every number in the tree and checks each leaf is strict.
    pub fn verify(&self) -> Result<()> {
        let fail = |why: &str| Err(Error::Internal(format!("certificate check failed: {why}")));
        let (s, q) = uniserial_socle(&self.left)?;
        let (s2, q2) = uniserial_socle(&self.right)?;
        match &self.node {
            CertificateNode::Leaf(leaf) => {
                let (lhs, rhs) = match leaf.inequality {
                    Inequality::HomFromWitness => (
                        hom_space(&leaf.witness, &self.left).dim(),
                        hom_space(&leaf.witness, &self.right).dim(),
                    ),
                    Inequality::HomToWitness => (
                        hom_space(&self.left, &leaf.witness).dim(),
                        hom_space(&self.right, &leaf.witness).dim(),
                    ),
                };
                if (lhs, rhs) != (leaf.lhs, leaf.rhs) {
                    return fail("Hom dimensions do not recompute");
                }
                if lhs <= rhs {
                    return fail("leaf inequality is not strict");
                }
                match leaf.kind {
                    LeafKind::SocleMismatch => {
                        if s == s2 || leaf.witness != MatrixRep::simple(self.left.field, s, self.left.arrows.len()) {
                            return fail("socle witness is wrong");
                        }
                    }
                    LeafKind::IsomorphicQuotients => {
                        if s != s2 || !is_isomorphic(&q, &q2) || leaf.witness != self.left {
                            return fail("quotients are not isomorphic");
                        }
                        if leaf.quotient_hom != Some(hom_space(&q, &self.left).dim())
                            || leaf.quotient_hom != Some(rhs)
                        {
                            return fail("dim Hom(U/S, U) differs from dim Hom(U', U)");
                        }
                    }
                }
                Ok(())
            }
            CertificateNode::Quotient { socle, child, .. } => {
                if s != s2 || *socle != s {
                    return fail("socles differ at a quotient node");
                }
                if !is_isomorphic(&child.left, &q) || !is_isomorphic(&child.right, &q2) {
                    return fail("child modules are not the socle quotients");
                }
                child.verify()
            }
        }
    }

    /// Number of nodes on the path to the leaf.
    pub fn depth(&self) -> usize {
        match &self.node {
            CertificateNode::Leaf(_) => 1,
            CertificateNode::Quotient { child, .. } => 1 + child.depth(),
        }
    }

    pub fn leaf(&self) -> &Leaf {
        match &self.node {
            CertificateNode::Leaf(l) => l,
            CertificateNode::Quotient { child, .. } => child.leaf(),
        }
    }
}

/// Reads `(coordinate, value)` pairs for a point of the mast; a shorthand
/// used by tests and the command line.
pub fn point_from_pairs(mast: &Mast, pairs: &[(DetourCoordinate, Scalar)]) -> VarietyPoint {
    let mut k = VarietyPoint::new();
    for (c, v) in pairs {
        if mast.coordinate_index(c).is_some() {
            k.insert(*c, v.clone());
        }
    }
    k
}
