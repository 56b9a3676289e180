//! Reference eigenvalues of `H = p² + x² + g x⁴` by diagonalisation in a
//! harmonic-oscillator basis.
//!
//! The basis is that of `p² + ω²x²`-type ladder operators with
//! `x = (b + b†)/√(2ω)`; `ω = 1` diagonalises the unperturbed `p² + x²`
//! (eigenvalues `2m + 1`). Matrix elements are exact closed forms, so a
//! truncation to the first `dim` states is a Rayleigh–Ritz projection and
//! eigenvalues decrease monotonically with `dim`. Parity splits the matrix
//! into independent even and odd blocks.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Convergence threshold for the dimension-doubling test.
pub const DOUBLING_TOLERANCE: f64 = 1e-8;

/// Symmetric matrix with nonzero bands at offsets 0, 2 and 4 only.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedHamiltonian {
    pub dim: usize,
    pub g: f64,
    pub omega: f64,
    /// `bands[k][m] = H[m][m + 2k]`.
    pub bands: [Vec<f64>; 3],
}

impl BandedHamiltonian {
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let off = hi - lo;
        if off % 2 == 1 || off > 4 {
            return 0.0;
        }
        self.bands[off / 2].get(lo).copied().unwrap_or(0.0)
    }

    /// One parity block (`parity` 0 = even states, 1 = odd states).
    fn block(&self, parity: usize) -> DMatrix<f64> {
        let idx: Vec<usize> = (parity..self.dim).step_by(2).collect();
        DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.entry(idx[r], idx[c]))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |r, c| self.entry(r, c))
    }

    /// All eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut all: Vec<f64> = (0..2.min(self.dim))
            .flat_map(|parity| {
                SymmetricEigen::new(self.block(parity))
                    .eigenvalues
                    .iter()
                    .copied()
                    .collect::<Vec<_>>()
            })
            .collect();
        all.sort_by(f64::total_cmp);
        all
    }
}

pub fn build_hamiltonian(g: f64, dim: usize) -> BandedHamiltonian {
    build_hamiltonian_scaled(g, dim, 1.0)
}

// One pass fills all three bands, so indexing by `m` is the clearest form.
#[allow(clippy::needless_range_loop)]
pub fn build_hamiltonian_scaled(g: f64, dim: usize, omega: f64) -> BandedHamiltonian {
    let mut bands = [
        vec![0.0; dim],
        vec![0.0; dim.saturating_sub(2)],
        vec![0.0; dim.saturating_sub(4)],
    ];
    for m in 0..dim {
        let mf = m as f64;
        let p2 = omega * (2.0 * mf + 1.0) / 2.0;
        let x2 = (2.0 * mf + 1.0) / (2.0 * omega);
        let x4 = (6.0 * mf * mf + 6.0 * mf + 3.0) / (4.0 * omega * omega);
        bands[0][m] = p2 + x2 + g * x4;
        if m + 2 < dim {
            let s = ((mf + 1.0) * (mf + 2.0)).sqrt();
            let p2 = -omega * s / 2.0;
            let x2 = s / (2.0 * omega);
            let x4 = (4.0 * mf + 6.0) * s / (4.0 * omega * omega);
            bands[1][m] = p2 + x2 + g * x4;
        }
        if m + 4 < dim {
            let s = ((mf + 1.0) * (mf + 2.0) * (mf + 3.0) * (mf + 4.0)).sqrt();
            bands[2][m] = g * s / (4.0 * omega * omega);
        }
    }
    BandedHamiltonian {
        dim,
        g,
        omega,
        bands,
    }
}

/// Lowest `k` eigenvalues, validated against a basis of twice the size.
pub fn lowest_eigenvalues(h: &BandedHamiltonian, k: usize) -> Result<Vec<f64>> {
    if k > h.dim / 4 {
        return Err(Error::InvalidProblem(format!(
            "requested {k} eigenvalues from a basis of {}; need k <= dim/4",
            h.dim
        )));
    }
    let coarse = h.eigenvalues();
    let fine = build_hamiltonian_scaled(h.g, 2 * h.dim, h.omega).eigenvalues();
    for index in 0..k {
        let delta = (coarse[index] - fine[index]).abs();
        if delta >= DOUBLING_TOLERANCE {
            return Err(Error::NotConverged { index, delta });
        }
    }
    Ok(fine[..k].to_vec())
}

/// Basis size used by [`exact_eigenvalues`] before doubling.
pub fn default_dim(g: f64) -> usize {
    if g <= 1.0 {
        64
    } else if g <= 100.0 {
        128
    } else {
        256
    }
}

/// Basis frequency matched to the quartic length scale `g^(-1/6)`.
pub fn default_omega(g: f64) -> f64 {
    g.cbrt().max(1.0)
}

/// Reference eigenvalues `E_0 .. E_(k-1)` for coupling `g`.
pub fn exact_eigenvalues(g: f64, k: usize) -> Result<Vec<f64>> {
    let dim = default_dim(g).max(4 * k);
    lowest_eigenvalues(&build_hamiltonian_scaled(g, dim, default_omega(g)), k)
}
