//! Barcode combinatorics and quiver codimension for persistence modules.
//!
//! The crate has five layers:
//!
//! - [`barcode`]: bars, barcodes over dense or finite index sets, the
//!   interacting-pair classification, the `Qcodim` count, critical points,
//!   and restriction of a barcode to a finite grid.
//! - [`quiver`]: exact representations of equioriented type-A quivers over
//!   a prime field, persistent Betti (rank) arrays, interval decomposition,
//!   and the codimension of an isoclass by two independent formulas.
//! - [`approx`]: h-approximation grids and the stability check that the
//!   interacting-pair count survives restriction to a dense-enough grid.
//! - [`ph`]: a minimal persistent-homology engine (Vietoris-Rips and
//!   lower-star filtrations, boundary-matrix reduction over GF(2), and a
//!   union-find fast path for degree 0).
//! - [`realize`]: point-cloud and sawtooth families whose persistent
//!   homology realizes any prescribed quiver codimension.
//!
//! File formats (JSON barcodes and representations, CSV point clouds) live
//! in [`io`].

pub mod approx;
pub mod barcode;
pub mod io;
pub mod ph;
pub mod quiver;
pub mod realize;

pub use barcode::{classify_pair, Bar, Barcode, BarcodeError, ExtReal, Grid, IndexSet, PairKind};
pub use quiver::{GfMatrix, PrimeField, QuiverError, QuiverRep, RankArray};
