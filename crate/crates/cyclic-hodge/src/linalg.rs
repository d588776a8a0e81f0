//! Exact sparse linear algebra over ℚ and the graded-complex machinery
//! built on it: kernels, images, homology with representatives, total
//! complexes of bicomplexes, and exactness verification.
//!
//! Everything is exact rational Gaussian elimination — no modular shortcuts,
//! no floating point. Correctness over speed at desk scale.

use crate::scalar::{qi, Q};
use num::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("differential does not square to zero at degree {degree}: entry ({row},{col}) = {value}")]
    NotAComplex {
        degree: i64,
        row: usize,
        col: usize,
        value: String,
    },
    #[error("maps are not composable at position {position}: target space/degree mismatch")]
    NotComposable { position: usize },
    #[error("bicomplex axiom failed: {0}")]
    BicomplexAxiom(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

// ---------------------------------------------------------------------------
// Sparse matrices and incremental elimination
// ---------------------------------------------------------------------------

/// Column-major sparse matrix over ℚ. Each column is a sorted
/// `(row, value)` list with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, Q)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat {
            rows: n,
            cols: (0..n).map(|i| vec![(i, qi(1))]).collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<Q>>) -> Self {
        let cols = columns
            .into_iter()
            .map(|c| {
                assert_eq!(c.len(), rows);
                c.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMat { rows, cols }
    }

    pub fn set(&mut self, row: usize, col: usize, value: Q) {
        assert!(row < self.rows && col < self.cols.len());
        let c = &mut self.cols[col];
        match c.binary_search_by_key(&row, |(r, _)| *r) {
            Ok(i) => {
                if value.is_zero() {
                    c.remove(i);
                } else {
                    c[i].1 = value;
                }
            }
            Err(i) => {
                if !value.is_zero() {
                    c.insert(i, (row, value));
                }
            }
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: Q) {
        if value.is_zero() {
            return;
        }
        let c = &mut self.cols[col];
        match c.binary_search_by_key(&row, |(r, _)| *r) {
            Ok(i) => {
                let v = &c[i].1 + &value;
                if v.is_zero() {
                    c.remove(i);
                } else {
                    c[i].1 = v;
                }
            }
            Err(i) => c.insert(i, (row, value)),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        match self.cols[col].binary_search_by_key(&row, |(r, _)| *r) {
            Ok(i) => self.cols[col][i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn column_dense(&self, col: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.rows];
        for (r, x) in &self.cols[col] {
            v[*r] = x.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Matrix–vector product (dense vector in/out).
    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols.len());
        let mut out = vec![Q::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, a) in &self.cols[j] {
                out[*r] += a * x;
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul_mat(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols.len(), other.rows);
        let mut out = SparseMat::zero(self.rows, other.ncols());
        for (j, col) in other.cols.iter().enumerate() {
            for (k, x) in col {
                for (r, a) in &self.cols[*k] {
                    out.add_to(*r, j, a * x);
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: &Q) -> SparseMat {
        if s.is_zero() {
            return SparseMat::zero(self.rows, self.ncols());
        }
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect())
            .collect();
        SparseMat {
            rows: self.rows,
            cols,
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.ncols(), other.ncols());
        let mut out = self.clone();
        for (j, col) in other.cols.iter().enumerate() {
            for (r, v) in col {
                out.add_to(*r, j, v.clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut solver = Solver::new(self.rows);
        for j in 0..self.ncols() {
            solver.insert(self.column_dense(j));
        }
        solver.rank()
    }

    /// Basis of the right nullspace, as dense coefficient vectors over the
    /// columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Q>> {
        let mut solver = Solver::new(self.rows);
        let mut kernel = Vec::new();
        for j in 0..self.ncols() {
            match solver.insert(self.column_dense(j)) {
                Inserted::Independent => {}
                Inserted::Dependent(combo) => {
                    // column j = Σ combo[i] · (earlier independent column i);
                    // kernel vector: earlier coefficients −combo, then 1 at j.
                    let mut v = vec![Q::zero(); self.ncols()];
                    for (i, c) in combo.iter().enumerate() {
                        v[i] = -c.clone();
                    }
                    v[j] = qi(1);
                    kernel.push(v);
                }
            }
        }
        kernel
    }

    /// Solve `self * x = b` exactly; `None` if inconsistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut solver = Solver::new(self.rows);
        for j in 0..self.ncols() {
            solver.insert(self.column_dense(j));
        }
        solver.express(b)
    }
}

/// Outcome of inserting a vector into a [`Solver`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inserted {
    Independent,
    /// The vector is a linear combination of the *previously inserted*
    /// vectors, with the given coefficients (indexed by insertion order).
    Dependent(Vec<Q>),
}

/// Incremental exact Gaussian eliminator with coefficient tracking.
///
/// Vectors live in ℚ^dim. Inserting a vector either extends the stored
/// row-echelon basis or returns the exact linear combination of earlier
/// insertions that produces it. This one tool provides ranks, kernels,
/// membership tests, quotient-basis extension, and linear solves.
pub struct Solver {
    dim: usize,
    /// `(pivot, echelon vector with leading coefficient 1, expression of
    /// that vector over the inserted vectors)` — kept mutually reduced.
    rows: Vec<(usize, Vec<Q>, Vec<Q>)>,
    n_inserted: usize,
}

impl Solver {
    pub fn new(dim: usize) -> Self {
        Solver {
            dim,
            rows: Vec::new(),
            n_inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn n_inserted(&self) -> usize {
        self.n_inserted
    }

    fn reduce(&self, mut v: Vec<Q>) -> (Vec<Q>, Vec<Q>) {
        // combo over inserted vectors such that v_original = v_reduced + Σ combo·inserted-expressed rows
        let mut combo = vec![Q::zero(); self.n_inserted];
        for (pivot, row, expr) in &self.rows {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (i, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[i] -= &c * x;
                }
            }
            for (i, x) in expr.iter().enumerate() {
                if !x.is_zero() {
                    combo[i] += &c * x;
                }
            }
        }
        (v, combo)
    }

    /// Insert a vector; see [`Inserted`].
    pub fn insert(&mut self, v: Vec<Q>) -> Inserted {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let (mut v, combo) = self.reduce(v);
        let pivot = v.iter().position(|x| !x.is_zero());
        match pivot {
            None => {
                let mut combo = combo;
                combo.resize(self.n_inserted + 1, Q::zero());
                self.n_inserted += 1;
                combo.truncate(self.n_inserted - 1);
                Inserted::Dependent(combo)
            }
            Some(p) => {
                let lead = v[p].clone();
                for x in v.iter_mut() {
                    if !x.is_zero() {
                        *x /= &lead;
                    }
                }
                // expression of the echelon row over inserted vectors:
                // row = (v_original − Σ combo·…)/lead
                let mut expr = vec![Q::zero(); self.n_inserted + 1];
                for (i, c) in combo.iter().enumerate() {
                    expr[i] = -c / &lead;
                }
                expr[self.n_inserted] = qi(1) / &lead;
                self.n_inserted += 1;
                // pad earlier expressions
                for (_, _, e) in self.rows.iter_mut() {
                    e.resize(self.n_inserted, Q::zero());
                }
                self.rows.push((p, v, expr));
                Inserted::Independent
            }
        }
    }

    /// Express `v` over the inserted vectors without inserting; `None` if
    /// `v` is outside their span.
    pub fn express(&self, v: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(v.len(), self.dim);
        let (red, combo) = self.reduce(v.to_vec());
        if red.iter().all(|x| x.is_zero()) {
            Some(combo)
        } else {
            None
        }
    }

    /// Membership test.
    pub fn contains(&self, v: &[Q]) -> bool {
        self.express(v).is_some()
    }
}

// ---------------------------------------------------------------------------
// Graded spaces, linear maps, complexes
// ---------------------------------------------------------------------------

/// A finite graded vector space: an ordered basis of opaque labels per
/// integer degree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedSpace {
    pub blocks: BTreeMap<i64, Vec<String>>,
}

impl GradedSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: BTreeMap<i64, Vec<String>>) -> Self {
        for labels in blocks.values() {
            let mut seen = std::collections::BTreeSet::new();
            for l in labels {
                assert!(seen.insert(l.clone()), "duplicate label `{l}` in degree block");
            }
        }
        GradedSpace { blocks }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.blocks.get(&degree).map_or(0, |b| b.len())
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(|b| b.len()).sum()
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.blocks.keys().copied()
    }

    pub fn labels(&self, degree: i64) -> &[String] {
        self.blocks.get(&degree).map_or(&[], |b| b.as_slice())
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.blocks.keys().next().copied()
    }

    pub fn index_of(&self, degree: i64, label: &str) -> Option<usize> {
        self.blocks.get(&degree)?.iter().position(|l| l == label)
    }
}

/// A degree-homogeneous linear map between graded spaces, stored as one
/// sparse block per source degree. A nonzero block at source degree `d`
/// maps into target degree `d + degree_shift`.
#[derive(Debug, Clone)]
pub struct LinearMap {
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub degree_shift: i64,
    pub blocks: BTreeMap<i64, SparseMat>,
}

impl LinearMap {
    /// The zero map.
    pub fn zero(source: GradedSpace, target: GradedSpace, degree_shift: i64) -> Self {
        LinearMap {
            source,
            target,
            degree_shift,
            blocks: BTreeMap::new(),
        }
    }

    /// The block at a given source degree (materializing a zero block of the
    /// right shape on demand).
    pub fn block(&self, source_degree: i64) -> SparseMat {
        match self.blocks.get(&source_degree) {
            Some(m) => m.clone(),
            None => SparseMat::zero(
                self.target.dim(source_degree + self.degree_shift),
                self.source.dim(source_degree),
            ),
        }
    }

    pub fn set_block(&mut self, source_degree: i64, block: SparseMat) {
        assert_eq!(block.ncols(), self.source.dim(source_degree));
        assert_eq!(
            block.rows,
            self.target.dim(source_degree + self.degree_shift)
        );
        if block.is_zero() {
            self.blocks.remove(&source_degree);
        } else {
            self.blocks.insert(source_degree, block);
        }
    }

    /// Compose `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap, LinalgError> {
        if self.source != other.target {
            return Err(LinalgError::NotComposable { position: 0 });
        }
        let mut out = LinearMap::zero(
            other.source.clone(),
            self.target.clone(),
            self.degree_shift + other.degree_shift,
        );
        for d in other.source.degrees().collect::<Vec<_>>() {
            let mid = d + other.degree_shift;
            let b = self.block(mid).mul_mat(&other.block(d));
            out.set_block(d, b);
        }
        Ok(out)
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        assert_eq!(self.degree_shift, other.degree_shift);
        let mut out = LinearMap::zero(self.source.clone(), self.target.clone(), self.degree_shift);
        let degrees: std::collections::BTreeSet<i64> = self
            .blocks
            .keys()
            .chain(other.blocks.keys())
            .copied()
            .collect();
        for d in degrees {
            out.set_block(d, self.block(d).add(&other.block(d)));
        }
        out
    }

    pub fn scaled(&self, s: &Q) -> LinearMap {
        let mut out = LinearMap::zero(self.source.clone(), self.target.clone(), self.degree_shift);
        for (d, b) in &self.blocks {
            out.set_block(*d, b.scaled(s));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }
}

/// A chain complex: a graded space with a degree −1 differential whose
/// square is verified to vanish at construction.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub space: GradedSpace,
    pub differential: LinearMap,
}

impl ChainComplex {
    pub fn new(space: GradedSpace, differential: LinearMap) -> Result<Self, LinalgError> {
        assert_eq!(differential.degree_shift, -1);
        assert_eq!(differential.source, space);
        assert_eq!(differential.target, space);
        let square = differential.compose(&differential).unwrap();
        for (d, b) in &square.blocks {
            for (j, col) in b.cols.iter().enumerate() {
                if let Some((r, v)) = col.first() {
                    return Err(LinalgError::NotAComplex {
                        degree: *d,
                        row: *r,
                        col: j,
                        value: v.to_string(),
                    });
                }
            }
        }
        Ok(ChainComplex {
            space,
            differential,
        })
    }

    /// The zero complex.
    pub fn empty() -> Self {
        let space = GradedSpace::new();
        ChainComplex {
            space: space.clone(),
            differential: LinearMap::zero(space.clone(), space, -1),
        }
    }
}

/// Homology of a chain complex in one degree: dimension plus representative
/// cycles (dense coordinate vectors over the degree-`degree` basis) spanning
/// a complement of the boundaries inside the cycles.
pub fn homology(c: &ChainComplex, degree: i64) -> (usize, Vec<Vec<Q>>) {
    let n = c.space.dim(degree);
    if n == 0 {
        return (0, Vec::new());
    }
    let d_here = c.differential.block(degree);
    let d_above = c.differential.block(degree + 1);
    let cycles = d_here.kernel_basis();
    // Insert boundaries first, then pick cycles that extend the span.
    let mut solver = Solver::new(n);
    for j in 0..d_above.ncols() {
        solver.insert(d_above.column_dense(j));
    }
    let boundary_rank = solver.rank();
    let mut reps = Vec::new();
    for z in &cycles {
        if let Inserted::Independent = solver.insert(z.clone()) {
            reps.push(z.clone());
        }
    }
    debug_assert_eq!(reps.len(), cycles.len() - boundary_rank.min(cycles.len()));
    (reps.len(), reps)
}

// ---------------------------------------------------------------------------
// Bicomplexes and totalization
// ---------------------------------------------------------------------------

/// A (bounded) bicomplex: an ordered list of chain-complex columns and
/// horizontal maps `horizontal[i] : columns[i+1] → columns[i]` of internal
/// degree 0 that square to zero and **anticommute** with the verticals.
#[derive(Debug, Clone)]
pub struct Bicomplex {
    pub columns: Vec<ChainComplex>,
    pub horizontal: Vec<LinearMap>,
}

impl Bicomplex {
    pub fn new(columns: Vec<ChainComplex>, horizontal: Vec<LinearMap>) -> Result<Self, LinalgError> {
        if !columns.is_empty() {
            assert_eq!(horizontal.len() + 1, columns.len());
        }
        for (i, h) in horizontal.iter().enumerate() {
            if h.source != columns[i + 1].space || h.target != columns[i].space {
                return Err(LinalgError::BicomplexAxiom(format!(
                    "horizontal {i} does not connect columns {} → {i}",
                    i + 1
                )));
            }
            assert_eq!(h.degree_shift, 0);
        }
        // h ∘ h = 0 on consecutive pairs
        for i in 0..horizontal.len().saturating_sub(1) {
            let hh = horizontal[i].compose(&horizontal[i + 1]).unwrap();
            if !hh.is_zero() {
                return Err(LinalgError::BicomplexAxiom(format!(
                    "horizontal ∘ horizontal ≠ 0 between columns {} and {i}",
                    i + 2
                )));
            }
        }
        // anticommutation: d_v ∘ h + h ∘ d_v = 0
        for (i, h) in horizontal.iter().enumerate() {
            let a = columns[i].differential.compose(h).unwrap();
            let b = h.compose(&columns[i + 1].differential).unwrap();
            if !a.add(&b).is_zero() {
                return Err(LinalgError::BicomplexAxiom(format!(
                    "horizontal {i} does not anticommute with the verticals"
                )));
            }
        }
        Ok(Bicomplex {
            columns,
            horizontal,
        })
    }

    /// Number of columns.
    pub fn width(&self) -> usize {
        self.columns.len()
    }
}

/// Label for a total-complex basis vector: `col{i}|{original label}`.
fn total_label(col: usize, label: &str) -> String {
    format!("col{col}|{label}")
}

/// Total complex of a bicomplex. An element of column `i`, internal degree
/// `m`, sits in total degree `m + i`; the total differential acts on column
/// `i` as `vertical + (−1)^i · horizontal`. Columns must be bounded below.
/// Degrees above `max_total_degree` are discarded (with the degree
/// `max_total_degree + 1` sources retained so boundaries in the top retained
/// degree stay correct when the caller accounts for safety).
pub fn totalize(b: &Bicomplex, max_total_degree: i64) -> Result<ChainComplex, LinalgError> {
    for (i, c) in b.columns.iter().enumerate() {
        if c.space.blocks.is_empty() {
            continue;
        }
        if c.space.min_degree().is_none() {
            return Err(LinalgError::Dimension(format!("column {i} unbounded below")));
        }
    }
    let mut blocks: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    // (total degree, col) → (offset into the total block, internal degree)
    let mut offsets: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    for (i, c) in b.columns.iter().enumerate() {
        for (m, labels) in &c.space.blocks {
            let t = m + i as i64;
            if t > max_total_degree {
                continue;
            }
            let entry = blocks.entry(t).or_default();
            offsets.insert((t, i), entry.len());
            for l in labels {
                entry.push(total_label(i, l));
            }
        }
    }
    let space = GradedSpace::from_blocks(blocks);
    let mut diff = LinearMap::zero(space.clone(), space.clone(), -1);
    let degrees: Vec<i64> = space.degrees().collect();
    for t in degrees {
        let ncols = space.dim(t);
        let nrows = space.dim(t - 1);
        let mut mat = SparseMat::zero(nrows, ncols);
        for (i, c) in b.columns.iter().enumerate() {
            let m = t - i as i64;
            let src_off = match offsets.get(&(t, i)) {
                Some(o) => *o,
                None => continue,
            };
            // vertical: column i, internal degree m → m−1, total t−1
            if let Some(tgt_off) = offsets.get(&(t - 1, i)) {
                let vb = c.differential.block(m);
                for (j, col) in vb.cols.iter().enumerate() {
                    for (r, v) in col {
                        mat.add_to(tgt_off + r, src_off + j, v.clone());
                    }
                }
            }
            // horizontal: column i → i−1, internal degree m, total t−1
            if i > 0 {
                if let Some(tgt_off) = offsets.get(&(t - 1, i - 1)) {
                    let hb = b.horizontal[i - 1].block(m);
                    let sign = if i % 2 == 0 { qi(1) } else { qi(-1) };
                    for (j, col) in hb.cols.iter().enumerate() {
                        for (r, v) in col {
                            mat.add_to(tgt_off + r, src_off + j, v * &sign);
                        }
                    }
                }
            }
        }
        diff.set_block(t, mat);
    }
    ChainComplex::new(space, diff)
}

// ---------------------------------------------------------------------------
// Exactness verification
// ---------------------------------------------------------------------------

/// Per-degree exactness report for one junction of a sequence of maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactnessReport {
    /// Junction index: between `maps[i]` and `maps[i+1]`.
    pub junction: usize,
    /// Degree in the middle space.
    pub degree: i64,
    pub exact: bool,
    /// dim(ker / im) at this junction and degree.
    pub defect: usize,
}

/// Verify exactness of `… → A --maps[i+1]--> B --maps[i]--> C → …` at every
/// junction (middle space of two consecutive maps), per degree. The maps are
/// ordered so that `maps[i+1]` feeds `maps[i]`.
pub fn verify_exact_sequence(maps: &[LinearMap]) -> Result<Vec<ExactnessReport>, LinalgError> {
    for i in 0..maps.len().saturating_sub(1) {
        if maps[i].source != maps[i + 1].target {
            return Err(LinalgError::NotComposable { position: i });
        }
    }
    let mut reports = Vec::new();
    for i in 0..maps.len().saturating_sub(1) {
        let outgoing = &maps[i];
        let incoming = &maps[i + 1];
        let composite_zero = outgoing.compose(incoming)?.is_zero();
        for degree in outgoing.source.degrees() {
            let out_block = outgoing.block(degree);
            let kernel = out_block.kernel_basis();
            let in_block = incoming.block(degree - incoming.degree_shift);
            let mut solver = Solver::new(outgoing.source.dim(degree));
            for j in 0..in_block.ncols() {
                solver.insert(in_block.column_dense(j));
            }
            // dim(ker / im): kernel vectors independent from the image.
            // (im ⊆ ker overall iff the composite vanishes, checked above.)
            let mut defect = 0;
            for z in &kernel {
                if let Inserted::Independent = solver.insert(z.clone()) {
                    defect += 1;
                }
            }
            reports.push(ExactnessReport {
                junction: i,
                degree,
                exact: composite_zero && defect == 0,
                defect,
            });
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qr;

    fn space1(deg: i64, labels: &[&str]) -> GradedSpace {
        let mut blocks = BTreeMap::new();
        blocks.insert(deg, labels.iter().map(|s| s.to_string()).collect());
        GradedSpace::from_blocks(blocks)
    }

    #[test]
    fn solver_rank_and_dependence() {
        let mut s = Solver::new(3);
        assert_eq!(s.insert(vec![qi(1), qi(2), qi(0)]), Inserted::Independent);
        assert_eq!(s.insert(vec![qi(0), qi(1), qi(1)]), Inserted::Independent);
        // v3 = 2·v1 − 3·v2
        let dep = s.insert(vec![qi(2), qi(1), qi(-3)]);
        assert_eq!(dep, Inserted::Dependent(vec![qi(2), qi(-3)]));
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn solver_express_tracks_rational_coefficients() {
        let mut s = Solver::new(2);
        s.insert(vec![qi(2), qi(0)]);
        s.insert(vec![qi(0), qi(3)]);
        let combo = s.express(&[qi(1), qi(1)]).unwrap();
        assert_eq!(combo, vec![qr(1, 2), qr(1, 3)]);
        assert!(s.express(&[qi(0), qi(0)]).is_some());
    }

    #[test]
    fn kernel_and_solve() {
        // [1 1 2; 0 1 1]
        let m = SparseMat::from_columns(
            2,
            vec![
                vec![qi(1), qi(0)],
                vec![qi(1), qi(1)],
                vec![qi(2), qi(1)],
            ],
        );
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        let x = m.solve(&[qi(3), qi(1)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![qi(3), qi(1)]);
        assert!(m.solve(&[qi(0), qi(0)]).is_some());
    }

    #[test]
    fn rank_nullity() {
        // random-ish fixed matrix
        let m = SparseMat::from_columns(
            3,
            vec![
                vec![qi(1), qi(2), qi(3)],
                vec![qi(2), qi(4), qi(6)],
                vec![qi(0), qi(1), qi(1)],
                vec![qi(1), qi(3), qi(4)],
            ],
        );
        assert_eq!(m.rank() + m.kernel_basis().len(), m.ncols());
    }

    #[test]
    fn homology_zero_complex() {
        let c = ChainComplex::empty();
        assert_eq!(homology(&c, 0).0, 0);
        assert_eq!(homology(&c, 5).0, 0);
    }

    #[test]
    fn homology_acyclic_identity() {
        // 0 → k → k → 0 with identity differential
        let mut blocks = BTreeMap::new();
        blocks.insert(0, vec!["a".to_string()]);
        blocks.insert(1, vec!["b".to_string()]);
        let space = GradedSpace::from_blocks(blocks);
        let mut d = LinearMap::zero(space.clone(), space.clone(), -1);
        d.set_block(1, SparseMat::identity(1));
        let c = ChainComplex::new(space, d).unwrap();
        assert_eq!(homology(&c, 0).0, 0);
        assert_eq!(homology(&c, 1).0, 0);
    }

    #[test]
    fn homology_representatives_are_cycles_mod_boundaries() {
        // 0 → k^2 --(1,1)--> k → 0: H_1 = ker = span{(1,−1)}, H_0 = 0
        let mut blocks = BTreeMap::new();
        blocks.insert(0, vec!["x".to_string()]);
        blocks.insert(1, vec!["u".to_string(), "v".to_string()]);
        let space = GradedSpace::from_blocks(blocks);
        let mut d = LinearMap::zero(space.clone(), space.clone(), -1);
        d.set_block(
            1,
            SparseMat::from_columns(1, vec![vec![qi(1)], vec![qi(1)]]),
        );
        let c = ChainComplex::new(space, d).unwrap();
        let (h1, reps) = homology(&c, 1);
        assert_eq!(h1, 1);
        assert!(c
            .differential
            .block(1)
            .mul_vec(&reps[0])
            .iter()
            .all(|x| x.is_zero()));
        assert_eq!(homology(&c, 0).0, 0);
    }

    #[test]
    fn d_squared_checked_at_construction() {
        let mut blocks = BTreeMap::new();
        blocks.insert(0, vec!["a".to_string()]);
        blocks.insert(1, vec!["b".to_string()]);
        blocks.insert(2, vec!["c".to_string()]);
        let space = GradedSpace::from_blocks(blocks);
        let mut d = LinearMap::zero(space.clone(), space.clone(), -1);
        d.set_block(1, SparseMat::identity(1));
        d.set_block(2, SparseMat::identity(1));
        assert!(ChainComplex::new(space, d).is_err());
    }

    #[test]
    fn totalize_single_column_is_identity() {
        let mut blocks = BTreeMap::new();
        blocks.insert(0, vec!["a".to_string()]);
        blocks.insert(1, vec!["b".to_string()]);
        let space = GradedSpace::from_blocks(blocks);
        let mut d = LinearMap::zero(space.clone(), space.clone(), -1);
        d.set_block(1, SparseMat::from_columns(1, vec![vec![qi(2)]]));
        let c = ChainComplex::new(space, d).unwrap();
        let b = Bicomplex::new(vec![c.clone()], vec![]).unwrap();
        let t = totalize(&b, 10).unwrap();
        assert_eq!(t.space.dim(0), 1);
        assert_eq!(t.space.dim(1), 1);
        assert_eq!(t.differential.block(1).get(0, 0), qi(2));
    }

    #[test]
    fn totalize_two_column_iso_is_acyclic() {
        // two columns k → k joined by an identity horizontal, zero verticals
        let space = space1(0, &["a"]);
        let zero_d = |s: &GradedSpace| LinearMap::zero(s.clone(), s.clone(), -1);
        let c0 = ChainComplex::new(space.clone(), zero_d(&space)).unwrap();
        let c1 = ChainComplex::new(space.clone(), zero_d(&space)).unwrap();
        let mut h = LinearMap::zero(space.clone(), space.clone(), 0);
        h.set_block(0, SparseMat::identity(1));
        let b = Bicomplex::new(vec![c0, c1], vec![h]).unwrap();
        let t = totalize(&b, 10).unwrap();
        assert_eq!(homology(&t, 0).0, 0);
        assert_eq!(homology(&t, 1).0, 0);
    }

    #[test]
    fn totalize_total_differential_squares_even_with_anticommuting_squares() {
        // Build a 3-column strip with nontrivial verticals and horizontals
        // chosen to anticommute; ChainComplex::new inside totalize asserts
        // d² = 0 for the total differential.
        let mut blocks = BTreeMap::new();
        blocks.insert(0, vec!["a".to_string()]);
        blocks.insert(1, vec!["b".to_string()]);
        let sp = GradedSpace::from_blocks(blocks);
        let mut d = LinearMap::zero(sp.clone(), sp.clone(), -1);
        d.set_block(1, SparseMat::identity(1));
        let c0 = ChainComplex::new(sp.clone(), d.clone()).unwrap();
        // column 1 gets the negated vertical so that an identity horizontal
        // anticommutes.
        let mut d1 = LinearMap::zero(sp.clone(), sp.clone(), -1);
        d1.set_block(1, SparseMat::identity(1).scaled(&qi(-1)));
        let c1 = ChainComplex::new(sp.clone(), d1).unwrap();
        let mut h = LinearMap::zero(sp.clone(), sp.clone(), 0);
        h.set_block(0, SparseMat::identity(1));
        h.set_block(1, SparseMat::identity(1));
        let b = Bicomplex::new(vec![c0, c1], vec![h]).unwrap();
        assert!(totalize(&b, 10).is_ok());
    }

    #[test]
    fn exactness_identity_and_defect() {
        let v = space1(0, &["x", "y"]);
        let zero = GradedSpace::new();
        // 0 → V —id→ V → 0
        let inj = {
            let mut m = LinearMap::zero(v.clone(), v.clone(), 0);
            m.set_block(0, SparseMat::identity(2));
            m
        };
        let from_zero = LinearMap::zero(zero.clone(), v.clone(), 0);
        let to_zero = LinearMap::zero(v.clone(), zero.clone(), 0);
        let reports = verify_exact_sequence(&[to_zero, inj, from_zero]).unwrap();
        assert!(reports.iter().all(|r| r.exact));

        // 0 → k → 0: middle junction has defect 1
        let k = space1(0, &["x"]);
        let from_zero = LinearMap::zero(zero.clone(), k.clone(), 0);
        let to_zero = LinearMap::zero(k.clone(), zero.clone(), 0);
        let reports = verify_exact_sequence(&[to_zero, from_zero]).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(!reports[0].exact);
        assert_eq!(reports[0].defect, 1);
    }

    #[test]
    fn homology_dimension_independent_of_basis_order() {
        // same complex with shuffled labels/columns
        let build = |perm: [usize; 3]| {
            let mut blocks = BTreeMap::new();
            let names = ["p", "q", "r"];
            blocks.insert(1, perm.iter().map(|&i| names[i].to_string()).collect());
            blocks.insert(0, vec!["z".to_string()]);
            let space = GradedSpace::from_blocks(blocks);
            // d(p)=z, d(q)=z, d(r)=0 in the original order
            let vals = [qi(1), qi(1), qi(0)];
            let cols = perm.iter().map(|&i| vec![vals[i].clone()]).collect();
            let mut d = LinearMap::zero(space.clone(), space.clone(), -1);
            d.set_block(1, SparseMat::from_columns(1, cols));
            ChainComplex::new(space, d).unwrap()
        };
        let h = |perm| homology(&build(perm), 1).0;
        assert_eq!(h([0, 1, 2]), 2);
        assert_eq!(h([2, 0, 1]), 2);
        assert_eq!(h([1, 2, 0]), 2);
    }
}
