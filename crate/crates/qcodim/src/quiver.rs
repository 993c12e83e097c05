//! Equioriented type-A quiver representations over a prime field.
//!
//! A representation is a dimension vector `d_1..d_n` plus matrices
//! `maps[i]: V_i -> V_{i+1}` over GF(p). Its persistent Betti numbers
//! `r_ij = rank(V_i -> V_j)` form a triangular rank array which determines
//! the isoclass. The codimension of the isoclass inside the ambient
//! representation space is computed two ways: the classical triangle-weight
//! sum over the rank array and the interacting-pair count of the extracted
//! barcode. [`QuiverRep::codim`] runs both and insists they agree.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::barcode::{Bar, Barcode, BarcodeError, Grid, IndexSet};

#[derive(Debug, Error, PartialEq)]
pub enum QuiverError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("matrix row {row} has {got} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("matrix entry {entry} is not reduced mod {p}")]
    EntryOutOfRange { entry: u32, p: u8 },
    #[error("map {index} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShape {
        index: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("expected {expected} maps for {dims} dimensions, got {got}")]
    MapCount {
        expected: usize,
        dims: usize,
        got: usize,
    },
    #[error("dimension vector must be nonempty")]
    EmptyDims,
    #[error("rank array violates diagonal monotonicity at r[{i}][{j}]")]
    NotMonotone { i: usize, j: usize },
    #[error("rank array yields negative interval multiplicity at [{i}, {j}]")]
    NegativeMultiplicity { i: usize, j: usize },
    #[error("rank array rows do not form a triangle of size {0}")]
    BadTriangle(usize),
    #[error("barcode is not over a finite grid")]
    NotFiniteGrid,
    #[error("codimension formulas disagree: rank formula {rank_formula}, interacting pairs {interacting_pairs}")]
    FormulaMismatch {
        rank_formula: u64,
        interacting_pairs: u64,
    },
    #[error(transparent)]
    Barcode(#[from] BarcodeError),
}

/// The coefficient field GF(p) for a small prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<PrimeField, QuiverError> {
        let is_prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !is_prime || p > 251 {
            return Err(QuiverError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u8 })
    }

    /// GF(2), the default field.
    pub fn gf2() -> PrimeField {
        PrimeField { p: 2 }
    }

    pub fn p(self) -> u8 {
        self.p
    }

    fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0);
        // p <= 251, brute force is fine
        (1..self.p).find(|&x| self.mul(a, x) == 1).unwrap()
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::gf2()
    }
}

/// Dense matrix over GF(p) with canonical entries `0..p-1`.
///
/// Zero-dimensional shapes (0 x k, k x 0) are allowed and behave uniformly:
/// their rank is 0 and they compose like the linear maps they are.
#[derive(Clone, Debug, PartialEq)]
pub struct GfMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> GfMatrix {
        GfMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> GfMatrix {
        let mut m = GfMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major nested rows, checking shape and range.
    pub fn from_rows(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: &[Vec<u32>],
    ) -> Result<GfMatrix, QuiverError> {
        if entries.len() != rows {
            return Err(QuiverError::RaggedMatrix {
                row: 0,
                got: entries.len(),
                expected: rows,
            });
        }
        let mut m = GfMatrix::zeros(field, rows, cols);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(QuiverError::RaggedMatrix {
                    row: i,
                    got: row.len(),
                    expected: cols,
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= field.p as u32 {
                    return Err(QuiverError::EntryOutOfRange {
                        entry: x,
                        p: field.p,
                    });
                }
                m.data[i * cols + j] = x as u8;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!(v < self.field.p);
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) as u32).collect())
            .collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &GfMatrix) -> GfMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes");
        assert_eq!(self.field, rhs.field, "mixed fields");
        let f = self.field;
        let mut out = GfMatrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Exact rank by Gaussian elimination mod p.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..m.cols {
                    let (a, b) = (m.get(rank, j), m.get(pivot, j));
                    m.set(rank, j, b);
                    m.set(pivot, j, a);
                }
            }
            let inv = f.inv(m.get(rank, col));
            for j in col..m.cols {
                m.set(rank, j, f.mul(inv, m.get(rank, j)));
            }
            for r in rank + 1..m.rows {
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Exact rank of a matrix over GF(p); empty-dimension matrices have rank 0.
pub fn gf_rank(m: &GfMatrix) -> usize {
    m.rank()
}

/// Triangular array of persistent Betti numbers `r_ij`, `1 <= i <= j <= n`.
///
/// Constructing a `RankArray` checks both realizability invariants: ranks
/// weakly decrease moving down every diagonal, and the inclusion-exclusion
/// interval multiplicities are non-negative.
#[derive(Clone, Debug, PartialEq)]
pub struct RankArray {
    n: usize,
    // rows[i][j - i] = r_{i+1, j+1} in 1-based notation
    rows: Vec<Vec<u64>>,
}

impl RankArray {
    pub fn new(rows: Vec<Vec<u64>>) -> Result<RankArray, QuiverError> {
        let n = rows.len();
        if n == 0 {
            return Err(QuiverError::BadTriangle(0));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n - i {
                return Err(QuiverError::BadTriangle(n));
            }
        }
        let ra = RankArray { n, rows };
        for i in 0..n {
            for j in i + 1..n {
                if ra.rank(i, j) > ra.rank(i, j - 1).min(ra.rank(i + 1, j)) {
                    return Err(QuiverError::NotMonotone { i: i + 1, j: j + 1 });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                if ra.signed_multiplicity(i, j) < 0 {
                    return Err(QuiverError::NegativeMultiplicity { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(ra)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `r_{i+1, j+1}` with 0-based `i <= j`.
    pub fn rank(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j - i]
    }

    // r extended by zero outside the triangle (i < 0 or j >= n)
    fn rank_ext(&self, i: isize, j: isize) -> i64 {
        if i < 0 || j >= self.n as isize {
            0
        } else {
            self.rank(i as usize, j as usize) as i64
        }
    }

    fn signed_multiplicity(&self, i: usize, j: usize) -> i64 {
        let (i, j) = (i as isize, j as isize);
        self.rank_ext(i, j) - self.rank_ext(i - 1, j) - self.rank_ext(i, j + 1)
            + self.rank_ext(i - 1, j + 1)
    }

    /// Multiplicity of the interval `[i+1, j+1]` in the barcode (0-based in).
    pub fn multiplicity(&self, i: usize, j: usize) -> u64 {
        self.signed_multiplicity(i, j) as u64
    }

    /// Classical codimension formula: the sum of triangle weights
    /// `(r_{i,j-1} - r_ij)(r_{i+1,j} - r_ij)` over `i < j`.
    pub fn codim_rank_formula(&self) -> u64 {
        let mut total = 0u64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let r = self.rank(i, j);
                total += (self.rank(i, j - 1) - r) * (self.rank(i + 1, j) - r);
            }
        }
        total
    }

    /// Interval decomposition: bar `[i, j]` with multiplicity `m_ij`, over
    /// the grid `{1..n}`.
    pub fn to_barcode(&self) -> Barcode {
        let mut bars = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                let m = self.multiplicity(i, j);
                if m > 0 {
                    let bar = Bar::finite((i + 1) as f64, (j + 1) as f64).unwrap();
                    bars.push((bar, m));
                }
            }
        }
        Barcode::new(IndexSet::FiniteGrid(Grid::integer(self.n)), bars)
            .expect("interval endpoints lie on the integer grid")
    }

    /// Triangular text layout, one diagonal per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for offset in 0..self.n {
            let indent = "  ".repeat(offset);
            let row: Vec<String> = (0..self.n - offset)
                .map(|i| self.rank(i, i + offset).to_string())
                .collect();
            out.push_str(&indent);
            out.push_str(&row.join("   "));
            out.push('\n');
        }
        out
    }
}

/// Persistent Betti numbers of a finite-grid barcode: `r_ij` counts bar
/// instances with birth at or before grid point `i` and death at or after
/// grid point `j`.
pub fn rank_array_from_barcode(bc: &Barcode) -> Result<RankArray, QuiverError> {
    let IndexSet::FiniteGrid(grid) = bc.index_set() else {
        return Err(QuiverError::NotFiniteGrid);
    };
    let n = grid.len();
    let positions: Vec<(usize, usize, u64)> = bc
        .entries()
        .iter()
        .map(|e| {
            let b = grid
                .position_of(e.bar.birth().as_finite().expect("grid bars are finite"))
                .expect("grid barcode endpoints are grid members");
            let d = grid
                .position_of(e.bar.death().as_finite().expect("grid bars are finite"))
                .expect("grid barcode endpoints are grid members");
            (b, d, e.multiplicity)
        })
        .collect();
    let mut rows: Vec<Vec<u64>> = (0..n).map(|i| vec![0; n - i]).collect();
    for i in 0..n {
        for j in i..n {
            rows[i][j - i] = positions
                .iter()
                .filter(|(b, d, _)| *b <= i && *d >= j)
                .map(|(_, _, m)| m)
                .sum();
        }
    }
    RankArray::new(rows)
}

/// A chain of GF(p) linear maps `V_1 -> V_2 -> ... -> V_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuiverRep {
    field: PrimeField,
    dims: Vec<usize>,
    maps: Vec<GfMatrix>,
}

impl QuiverRep {
    /// Validates that `maps[i]` has shape `dims[i+1] x dims[i]`.
    pub fn new(
        field: PrimeField,
        dims: Vec<usize>,
        maps: Vec<GfMatrix>,
    ) -> Result<QuiverRep, QuiverError> {
        if dims.is_empty() {
            return Err(QuiverError::EmptyDims);
        }
        if maps.len() != dims.len() - 1 {
            return Err(QuiverError::MapCount {
                expected: dims.len() - 1,
                dims: dims.len(),
                got: maps.len(),
            });
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != dims[i + 1] || m.cols() != dims[i] {
                return Err(QuiverError::MapShape {
                    index: i,
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: dims[i + 1],
                    expected_cols: dims[i],
                });
            }
        }
        Ok(QuiverRep { field, dims, maps })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[GfMatrix] {
        &self.maps
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    /// The rank array `r_ij = rank(V_i -> V_j)`.
    ///
    /// Composites accumulate left to right so each product is formed once:
    /// the matrix for `(i, j)` reuses the one for `(i, j-1)`.
    pub fn rank_array(&self) -> RankArray {
        let n = self.dims.len();
        let mut rows: Vec<Vec<u64>> = (0..n).map(|i| vec![0; n - i]).collect();
        for i in 0..n {
            rows[i][0] = self.dims[i] as u64;
            let mut acc: Option<GfMatrix> = None;
            for j in i + 1..n {
                let next = match &acc {
                    None => self.maps[j - 1].clone(),
                    Some(prev) => self.maps[j - 1].mul(prev),
                };
                rows[i][j - i] = next.rank() as u64;
                acc = Some(next);
            }
        }
        RankArray::new(rows).expect("rank arrays of actual matrices satisfy the invariants")
    }

    /// Barcode of the interval decomposition.
    pub fn barcode(&self) -> Barcode {
        self.rank_array().to_barcode()
    }

    /// Codimension of the isoclass, by both formulas.
    ///
    /// Computes the triangle-weight sum and the interacting-pair count of the
    /// extracted barcode and checks they agree; disagreement means a bug in
    /// this library, never bad input.
    pub fn codim(&self) -> Result<u64, QuiverError> {
        let ra = self.rank_array();
        let by_ranks = ra.codim_rank_formula();
        let by_pairs = ra.to_barcode().qcodim();
        if by_ranks != by_pairs {
            return Err(QuiverError::FormulaMismatch {
                rank_formula: by_ranks,
                interacting_pairs: by_pairs,
            });
        }
        Ok(by_ranks)
    }
}

/// The direct sum of interval modules realizing a finite-grid barcode.
///
/// Bar instances are ordered by (birth, death); each contributes one basis
/// vector at every grid position it covers, and the maps send that vector
/// forward where the bar covers consecutive positions (else to zero). The
/// result has `rank_array` equal to the barcode's own rank array.
pub fn canonical_rep(bc: &Barcode, field: PrimeField) -> Result<QuiverRep, QuiverError> {
    let IndexSet::FiniteGrid(grid) = bc.index_set() else {
        return Err(QuiverError::NotFiniteGrid);
    };
    let n = grid.len();
    // bar instances as grid-position spans, already sorted by (birth, death)
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for e in bc.entries() {
        let b = grid
            .position_of(e.bar.birth().as_finite().unwrap())
            .unwrap();
        let d = grid
            .position_of(e.bar.death().as_finite().unwrap())
            .unwrap();
        for _ in 0..e.multiplicity {
            spans.push((b, d));
        }
    }
    let basis_at = |v: usize| -> Vec<usize> {
        spans
            .iter()
            .enumerate()
            .filter(|(_, (b, d))| *b <= v && v <= *d)
            .map(|(idx, _)| idx)
            .collect()
    };
    let dims: Vec<usize> = (0..n).map(|v| basis_at(v).len()).collect();
    let mut maps = Vec::new();
    for v in 0..n.saturating_sub(1) {
        let src = basis_at(v);
        let dst = basis_at(v + 1);
        let mut m = GfMatrix::zeros(field, dst.len(), src.len());
        for (col, span) in src.iter().enumerate() {
            if let Some(row) = dst.iter().position(|s| s == span) {
                m.set(row, col, 1);
            }
        }
        maps.push(m);
    }
    QuiverRep::new(field, dims, maps)
}

/// Deterministic representation with i.i.d. uniform GF(p) entries.
pub fn random_rep(dims: &[usize], field: PrimeField, seed: u64) -> QuiverRep {
    assert!(!dims.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = dims
        .windows(2)
        .map(|w| {
            let (rows, cols) = (w[1], w[0]);
            let mut m = GfMatrix::zeros(field, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m.set(i, j, rng.gen_range(0..field.p()));
                }
            }
            m
        })
        .collect();
    QuiverRep::new(field, dims.to_vec(), maps).unwrap()
}
