//! Unitaries `exp(-i K)` for generators `K` that conserve one or more
//! photon-number charges.
//!
//! The local Fock basis of the device's modes is partitioned by the values
//! of the conserved charges; `K` is block diagonal in that partition and
//! each block is exponentiated on its own through a Hermitian
//! eigendecomposition. Blocks are exponentiated lazily, the first time a
//! state with support on them passes through, so a wide truncation costs
//! nothing for the sectors a scan never visits.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fock::{apply_monomial, FockDensityOp, Ladder, ModeRegistry, PureState};
use crate::C64;

/// One term `coefficient * ops[0] ops[1] ...` of a generator.
pub type GeneratorTerm = (C64, Vec<Ladder>);

#[derive(Debug)]
struct Block {
    /// Local basis indices spanned by the block.
    indices: Vec<usize>,
    generator: DMatrix<C64>,
    unitary: OnceLock<DMatrix<C64>>,
}

impl Block {
    fn unitary(&self) -> &DMatrix<C64> {
        self.unitary.get_or_init(|| exp_hermitian(&self.generator))
    }
}

/// `exp(-i K)` for Hermitian `K`.
pub fn exp_hermitian(k: &DMatrix<C64>) -> DMatrix<C64> {
    let n = k.nrows();
    if n == 1 {
        return DMatrix::from_element(1, 1, C64::from_polar(1.0, -k[(0, 0)].re));
    }
    let eig = k.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases =
        DVector::from_iterator(n, eig.eigenvalues.iter().map(|&l| C64::from_polar(1.0, -l)));
    let mut scaled = v.clone();
    for (j, mut col) in scaled.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    scaled * v.adjoint()
}

/// Block-diagonal unitary on the Fock space of a few local modes.
#[derive(Debug)]
pub struct BlockedUnitary {
    local: ModeRegistry,
    blocks: Vec<Block>,
}

impl BlockedUnitary {
    /// Builds `exp(-i K)` with `K = sum_t c_t ops_t` on `local`. `charges`
    /// maps local occupations to the conserved quantities; every term must
    /// map a basis state to one with equal charges. Terms that would leave
    /// the truncated space are dropped.
    pub fn from_generator<F>(
        local: ModeRegistry,
        terms: &[GeneratorTerm],
        charges: F,
    ) -> Result<Self>
    where
        F: Fn(&[usize]) -> Vec<i64>,
    {
        let dim = local.dim();
        let mut sectors: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for idx in 0..dim {
            sectors
                .entry(charges(&local.occupations(idx)))
                .or_default()
                .push(idx);
        }
        let mut position = vec![(0usize, 0usize); dim];
        for (b, indices) in sectors.values().enumerate() {
            for (p, &idx) in indices.iter().enumerate() {
                position[idx] = (b, p);
            }
        }
        let mut blocks = Vec::with_capacity(sectors.len());
        for (b, indices) in sectors.into_values().enumerate() {
            let n = indices.len();
            let mut generator = DMatrix::<C64>::zeros(n, n);
            for (col, &j) in indices.iter().enumerate() {
                for (coeff, ops) in terms {
                    if let Some((i, amp)) = apply_monomial(&local, ops, j) {
                        let (bi, row) = position[i];
                        if bi != b {
                            return Err(Error::InvalidDevice(
                                "generator term does not conserve the declared charges".into(),
                            ));
                        }
                        generator[(row, col)] += coeff * amp;
                    }
                }
            }
            blocks.push(Block {
                indices,
                generator,
                unitary: OnceLock::new(),
            });
        }
        Ok(Self { local, blocks })
    }

    pub fn local_registry(&self) -> &ModeRegistry {
        &self.local
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn largest_block(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.indices.len())
            .max()
            .unwrap_or(0)
    }

    /// The full unitary on the local modes.
    pub fn to_dense(&self) -> DMatrix<C64> {
        let d = self.local.dim();
        let mut u = DMatrix::zeros(d, d);
        for block in &self.blocks {
            let ub = block.unitary();
            for (c, &j) in block.indices.iter().enumerate() {
                for (r, &i) in block.indices.iter().enumerate() {
                    u[(i, j)] = ub[(r, c)];
                }
            }
        }
        u
    }

    fn check_modes(&self, registry: &ModeRegistry, modes: &[usize]) -> Result<()> {
        let local_dims: Vec<usize> = self.local.modes().iter().map(|m| m.cutoff).collect();
        let dims: Vec<usize> = modes.iter().map(|&k| registry.modes()[k].cutoff).collect();
        if local_dims != dims {
            return Err(Error::DimensionMismatch {
                expected: self.local.dim(),
                actual: modes.iter().map(|&k| registry.local_dim(k)).product(),
            });
        }
        Ok(())
    }

    /// The unitary tensored with identity on the rest of `registry`, as a
    /// dense matrix. `modes` lists the global indices of the local modes.
    pub fn embed_dense(&self, registry: &ModeRegistry, modes: &[usize]) -> Result<DMatrix<C64>> {
        self.check_modes(registry, modes)?;
        let (offsets, bases) = registry.split(modes);
        let d = registry.dim();
        let mut u = DMatrix::zeros(d, d);
        for block in &self.blocks {
            let ub = block.unitary();
            for &base in &bases {
                for (c, &j) in block.indices.iter().enumerate() {
                    for (r, &i) in block.indices.iter().enumerate() {
                        u[(base + offsets[i], base + offsets[j])] = ub[(r, c)];
                    }
                }
            }
        }
        Ok(u)
    }

    fn active_blocks(&self, offsets: &[usize], bases: &[usize], active: &[bool]) -> Vec<bool> {
        self.blocks
            .iter()
            .map(|block| {
                bases
                    .iter()
                    .any(|&base| block.indices.iter().any(|&i| active[base + offsets[i]]))
            })
            .collect()
    }

    pub fn apply_pure(&self, state: &PureState, modes: &[usize]) -> Result<PureState> {
        let registry = state.registry();
        self.check_modes(registry, modes)?;
        let (offsets, bases) = registry.split(modes);
        let amps = state.amplitudes();
        let active: Vec<bool> = amps.iter().map(|z| z.re != 0.0 || z.im != 0.0).collect();
        let live = self.active_blocks(&offsets, &bases, &active);
        let mut out = amps.clone();
        let mut gathered = Vec::new();
        for (block, _) in self.blocks.iter().zip(&live).filter(|(_, &l)| l) {
            let ub = block.unitary();
            let n = block.indices.len();
            for &base in &bases {
                gathered.clear();
                gathered.extend(block.indices.iter().map(|&i| amps[base + offsets[i]]));
                if gathered.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                    continue;
                }
                for r in 0..n {
                    let mut acc = C64::new(0.0, 0.0);
                    for c in 0..n {
                        acc += ub[(r, c)] * gathered[c];
                    }
                    out[base + offsets[block.indices[r]]] = acc;
                }
            }
        }
        PureState::from_amplitudes(registry, out)
    }

    /// `U rho U^dagger`.
    pub fn apply_density(&self, state: &FockDensityOp, modes: &[usize]) -> Result<FockDensityOp> {
        let registry = state.registry();
        self.check_modes(registry, modes)?;
        let (offsets, bases) = registry.split(modes);
        let rho = state.matrix();
        let dim = rho.nrows();
        let active: Vec<bool> = (0..dim)
            .map(|i| rho.row(i).iter().any(|z| z.re != 0.0 || z.im != 0.0))
            .collect();
        let live = self.active_blocks(&offsets, &bases, &active);

        // rows: A = U rho
        let mut a = rho.clone();
        for (block, _) in self.blocks.iter().zip(&live).filter(|(_, &l)| l) {
            let ub = block.unitary();
            let n = block.indices.len();
            for &base in &bases {
                let rows: Vec<usize> = block.indices.iter().map(|&i| base + offsets[i]).collect();
                if rows.iter().all(|&r| !active[r]) {
                    continue;
                }
                for col in 0..dim {
                    let v: Vec<C64> = rows.iter().map(|&r| rho[(r, col)]).collect();
                    for r in 0..n {
                        let mut acc = C64::new(0.0, 0.0);
                        for c in 0..n {
                            acc += ub[(r, c)] * v[c];
                        }
                        a[(rows[r], col)] = acc;
                    }
                }
            }
        }
        // columns: rho' = A U^dagger, i.e. each row transformed by conj(U)
        let mut out = a.clone();
        for (block, _) in self.blocks.iter().zip(&live).filter(|(_, &l)| l) {
            let ub = block.unitary();
            let n = block.indices.len();
            for &base in &bases {
                let cols: Vec<usize> = block.indices.iter().map(|&i| base + offsets[i]).collect();
                if cols.iter().all(|&c| !active[c]) {
                    continue;
                }
                for row in 0..dim {
                    let v: Vec<C64> = cols.iter().map(|&c| a[(row, c)]).collect();
                    for r in 0..n {
                        let mut acc = C64::new(0.0, 0.0);
                        for c in 0..n {
                            acc += ub[(r, c)].conj() * v[c];
                        }
                        out[(row, cols[r])] = acc;
                    }
                }
            }
        }
        Ok(FockDensityOp::from_parts(registry.clone(), out))
    }
}
