//! Assembly of the scatterer Hamiltonian over the truncated basis.
//!
//! The scatterer Hamiltonian is
//!
//!   H_S = omega_c sum_j a_j^† a_j  -  xi sum_{j=2..N} (a_j^† a_{j-1} + h.c.)
//!         + (omega_a/2) sigma_z  +  g sigma_x (a_s^† + a_s)
//!
//! with the sigma_x coupling split into the excitation-conserving exchange
//! part `g (sigma_+ a_s + a_s^† sigma_-)` and the counter-rotating part
//! `g (sigma_+ a_s^† + a_s sigma_-)`; `rwa_only` drops the latter. Matrix
//! elements that would leave the truncated space are dropped, which is the
//! projection of H onto the space spanned by the basis.
//!
//! The semi-infinite leads and the edge couplings are never materialized as
//! matrices; they enter analytically through the scattering boundary
//! equations.

use std::io::Write;

use crate::error::{Error, Result};
use crate::model::{Basis, BasisState, ModelParams};
use crate::scalar::Real;

/// Sparse real-symmetric operator tied to a [`Basis`].
///
/// Each unordered pair is stored once with `row <= col`; the implied full
/// matrix is the stored triangle plus its mirror. All coefficients of `H_S`
/// are real in the occupation basis.
#[derive(Clone, Debug)]
pub struct HermitianOperator<S> {
    dim: usize,
    entries: Vec<(u32, u32, S)>,
    basis_tag: u64,
}

impl<S: Real> HermitianOperator<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored entries, sorted by `(row, col)` with `row <= col`, each pair once.
    pub fn entries(&self) -> &[(u32, u32, S)] {
        &self.entries
    }

    pub fn basis_tag(&self) -> u64 {
        self.basis_tag
    }

    pub fn check_basis(&self, basis: &Basis) -> Result<()> {
        if self.basis_tag != basis.tag() {
            return Err(Error::BasisMismatch {
                expected: basis.tag(),
                found: self.basis_tag,
            });
        }
        Ok(())
    }

    /// `y = H x` over the full basis.
    pub fn apply(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.dim);
        let mut y = vec![S::zero(); self.dim];
        for &(r, c, v) in &self.entries {
            let (r, c) = (r as usize, c as usize);
            y[r] += v * x[c];
            if r != c {
                y[c] += v * x[r];
            }
        }
        y
    }

    /// Dense column-major matrix over the given (ascending) index subset.
    pub fn dense_on(&self, indices: &[usize]) -> Vec<S> {
        let n = indices.len();
        let mut local = vec![-1i64; self.dim];
        for (li, &gi) in indices.iter().enumerate() {
            local[gi] = li as i64;
        }
        let mut a = vec![S::zero(); n * n];
        for &(r, c, v) in &self.entries {
            let lr = local[r as usize];
            let lc = local[c as usize];
            if lr >= 0 && lc >= 0 {
                let (lr, lc) = (lr as usize, lc as usize);
                a[lc * n + lr] = v;
                a[lr * n + lc] = v;
            }
        }
        a
    }

    /// Largest absolute entry; a cheap scale proxy for residual bounds.
    pub fn max_abs_entry(&self) -> S {
        self.entries
            .iter()
            .map(|&(_, _, v)| v.abs())
            .fold(S::zero(), S::max)
    }

    /// Debug dump as CSV triplets `row,col,value`.
    pub fn dump_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "row,col,value")?;
        for &(r, c, v) in &self.entries {
            writeln!(w, "{r},{c},{v}")?;
        }
        Ok(())
    }
}

fn check_params_basis<S: Real>(params: &ModelParams<S>, basis: &Basis) -> Result<()> {
    if basis.tag() != Basis::tag_for(params.n_cavities, params.max_excitation) {
        return Err(Error::BasisMismatch {
            expected: Basis::tag_for(params.n_cavities, params.max_excitation),
            found: basis.tag(),
        });
    }
    Ok(())
}

struct Accumulator<S> {
    entries: Vec<(u32, u32, S)>,
}

impl<S: Real> Accumulator<S> {
    fn new() -> Self {
        Accumulator { entries: Vec::new() }
    }

    fn push(&mut self, i: usize, j: usize, v: S) {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        self.entries.push((r as u32, c as u32, v));
    }

    fn finish(mut self, dim: usize, basis_tag: u64) -> HermitianOperator<S> {
        self.entries.sort_by_key(|&(r, c, _)| (r, c));
        debug_assert!(
            self.entries.windows(2).all(|w| (w[0].0, w[0].1) != (w[1].0, w[1].1)),
            "duplicate matrix element generated"
        );
        HermitianOperator {
            dim,
            entries: self.entries,
            basis_tag,
        }
    }
}

/// Test hook for the self-check suite: optionally corrupt the assembly.
#[doc(hidden)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AssemblyFault {
    None,
    /// Apply the counter-rotating drive without the atom flip, which breaks
    /// the parity block structure.
    DropAtomFlipInCrw,
}

/// Scatterer Hamiltonian `H_S` over the truncated basis.
pub fn build_sc_hamiltonian<S: Real>(
    params: &ModelParams<S>,
    basis: &Basis,
) -> Result<HermitianOperator<S>> {
    build_with_fault(params, basis, AssemblyFault::None)
}

#[doc(hidden)]
pub fn build_sc_hamiltonian_with_fault<S: Real>(
    params: &ModelParams<S>,
    basis: &Basis,
    fault: AssemblyFault,
) -> Result<HermitianOperator<S>> {
    build_with_fault(params, basis, fault)
}

fn build_with_fault<S: Real>(
    params: &ModelParams<S>,
    basis: &Basis,
    fault: AssemblyFault,
) -> Result<HermitianOperator<S>> {
    params.validate()?;
    check_params_basis(params, basis)?;

    let n = params.n_cavities;
    let s_idx = params.atom_site - 1;
    let half_split = params.omega_a / S::of(2.0);
    let mut acc = Accumulator::new();

    for (i, state) in basis.states().iter().enumerate() {
        let occ = &state.photon_occupations;

        // diagonal: photon energy plus atomic splitting
        let photons = occ.iter().map(|&v| S::of(v as f64)).fold(S::zero(), |a, b| a + b);
        let sigma_z = if state.atom_excited { half_split } else { -half_split };
        acc.push(i, i, params.omega_c * photons + sigma_z);

        // hopping a_j^† a_{j-1}, j = 2..N (h.c. implied by symmetric storage)
        for j in 1..n {
            let from = j - 1;
            let to = j;
            if occ[from] == 0 {
                continue;
            }
            let mut new_occ = occ.clone();
            new_occ[from] -= 1;
            new_occ[to] += 1;
            let target = BasisState {
                photon_occupations: new_occ,
                atom_excited: state.atom_excited,
            };
            let k = basis
                .index_of(&target)
                .expect("hopping conserves the excitation number");
            let amp = S::of(occ[from] as f64) * S::of(occ[to] as f64 + 1.0);
            acc.push(i, k, -params.xi * amp.sqrt());
        }

        // exchange part: sigma_+ a_s from the atom-ground side
        if !state.atom_excited && occ[s_idx] > 0 {
            let mut new_occ = occ.clone();
            new_occ[s_idx] -= 1;
            let target = BasisState {
                photon_occupations: new_occ,
                atom_excited: true,
            };
            let k = basis
                .index_of(&target)
                .expect("exchange term conserves the excitation number");
            acc.push(i, k, params.g * S::of(occ[s_idx] as f64).sqrt());
        }

        // counter-rotating part: sigma_+ a_s^† from the atom-ground side;
        // states pushed past the cutoff are absent and the element is dropped
        if !params.rwa_only && !state.atom_excited {
            let mut new_occ = occ.clone();
            new_occ[s_idx] += 1;
            let target = BasisState {
                photon_occupations: new_occ,
                atom_excited: fault != AssemblyFault::DropAtomFlipInCrw,
            };
            if let Some(k) = basis.index_of(&target) {
                acc.push(i, k, params.g * S::of(occ[s_idx] as f64 + 1.0).sqrt());
            }
        }
    }

    Ok(acc.finish(basis.dim(), basis.tag()))
}

/// `H_S` restricted to the span of basis states with
/// `N_ext >= min_excitation` (both parities retained). The operator keeps the
/// full basis dimension; rows and columns outside the subspace are zero.
pub fn build_subspace_hamiltonian<S: Real>(
    params: &ModelParams<S>,
    basis: &Basis,
    min_excitation: usize,
) -> Result<HermitianOperator<S>> {
    if min_excitation > params.max_excitation {
        return Err(Error::EmptySubspace { min_excitation });
    }
    let full = build_sc_hamiltonian(params, basis)?;
    if min_excitation == 0 {
        return Ok(full);
    }
    let keep: Vec<bool> = basis
        .states()
        .iter()
        .map(|s| s.excitation() >= min_excitation)
        .collect();
    let entries = full
        .entries
        .iter()
        .filter(|&&(r, c, _)| keep[r as usize] && keep[c as usize])
        .copied()
        .collect();
    Ok(HermitianOperator {
        dim: full.dim,
        entries,
        basis_tag: full.basis_tag,
    })
}

/// Indices of the basis states with `N_ext >= min_excitation`, ascending.
pub fn subspace_indices(basis: &Basis, min_excitation: usize) -> Vec<usize> {
    (0..basis.dim())
        .filter(|&i| basis.state(i).excitation() >= min_excitation)
        .collect()
}

/// Delocalized-mode coupling `G_k = g sqrt(2/(N+1)) sin(k pi / 2)`.
pub fn mode_coupling<S: Real>(params: &ModelParams<S>, k: usize) -> Result<S> {
    let n = params.n_cavities;
    if k == 0 || k > n {
        return Err(Error::ModeOutOfRange { k, n });
    }
    let norm = (S::of(2.0) / S::of(n as f64 + 1.0)).sqrt();
    let phase = S::of(k as f64) * S::FRAC_PI_2();
    Ok(params.g * norm * phase.sin())
}

/// All dark modes `k'` with `G_{k'} = 0`, paired with their transition
/// energies `omega_c - 2 xi cos(k' pi / (N+1))`. These lines are independent
/// of the coupling strength.
pub fn dark_mode_energies<S: Real>(params: &ModelParams<S>) -> Vec<(usize, S)> {
    let n = params.n_cavities;
    (1..=n)
        .filter(|k| k % 2 == 0)
        .map(|k| {
            let angle = S::of(k as f64) * S::PI() / S::of(n as f64 + 1.0);
            (k, params.omega_c - S::of(2.0) * params.xi * angle.cos())
        })
        .collect()
}

/// Expectation value of the photon number at 1-based `site`.
pub fn site_occupation<S: Real>(vector: &[S], basis: &Basis, site: usize) -> Result<S> {
    if site == 0 || site > basis.n_cavities() {
        return Err(Error::SiteOutOfRange {
            site,
            n: basis.n_cavities(),
        });
    }
    assert_eq!(vector.len(), basis.dim());
    let mut acc = S::zero();
    for (i, &v) in vector.iter().enumerate() {
        if v != S::zero() {
            acc += v * v * S::of(basis.state(i).occupation(site) as f64);
        }
    }
    Ok(acc)
}

/// Total photon number expectation over all cavities.
pub fn total_photon_number<S: Real>(vector: &[S], basis: &Basis) -> S {
    assert_eq!(vector.len(), basis.dim());
    let mut acc = S::zero();
    for (i, &v) in vector.iter().enumerate() {
        if v != S::zero() {
            let photons: u32 = basis.state(i).photon_occupations.iter().sum();
            acc += v * v * S::of(photons as f64);
        }
    }
    acc
}

/// `y = a_site^† x` expressed over the same basis; components pushed past the
/// excitation cutoff are dropped.
pub fn apply_creation<S: Real>(vector: &[S], basis: &Basis, site: usize) -> Result<Vec<S>> {
    if site == 0 || site > basis.n_cavities() {
        return Err(Error::SiteOutOfRange {
            site,
            n: basis.n_cavities(),
        });
    }
    assert_eq!(vector.len(), basis.dim());
    let mut out = vec![S::zero(); basis.dim()];
    for (i, &v) in vector.iter().enumerate() {
        if v == S::zero() {
            continue;
        }
        let state = basis.state(i);
        let mut occ = state.photon_occupations.clone();
        occ[site - 1] += 1;
        let target = BasisState {
            photon_occupations: occ,
            atom_excited: state.atom_excited,
        };
        if let Some(k) = basis.index_of(&target) {
            out[k] += v * S::of(state.occupation(site) as f64 + 1.0).sqrt();
        }
    }
    Ok(out)
}

/// `y = a_site x` expressed over the same basis.
pub fn apply_annihilation<S: Real>(vector: &[S], basis: &Basis, site: usize) -> Result<Vec<S>> {
    if site == 0 || site > basis.n_cavities() {
        return Err(Error::SiteOutOfRange {
            site,
            n: basis.n_cavities(),
        });
    }
    assert_eq!(vector.len(), basis.dim());
    let mut out = vec![S::zero(); basis.dim()];
    for (i, &v) in vector.iter().enumerate() {
        if v == S::zero() {
            continue;
        }
        let state = basis.state(i);
        if state.occupation(site) == 0 {
            continue;
        }
        let mut occ = state.photon_occupations.clone();
        occ[site - 1] -= 1;
        let target = BasisState {
            photon_occupations: occ,
            atom_excited: state.atom_excited,
        };
        let k = basis
            .index_of(&target)
            .expect("annihilation lowers the excitation number");
        out[k] += v * S::of(state.occupation(site) as f64).sqrt();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::enumerate_basis;

    fn params(n: usize, cutoff: usize) -> ModelParams<f64> {
        ModelParams::<f64>::default()
            .with_n_cavities(n)
            .with_max_excitation(cutoff)
    }

    fn dense(h: &HermitianOperator<f64>) -> Vec<f64> {
        h.dense_on(&(0..h.dim()).collect::<Vec<_>>())
    }

    #[test]
    fn decoupled_single_cavity_diagonal() {
        let p = params(1, 1).with_g(0.0);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_sc_hamiltonian(&p, &basis).unwrap();
        let d = dense(&h);
        // ordering: |0,g>, |1,g>, |0,e>
        assert_eq!(d[0], -0.5);
        assert_eq!(d[4], 1.0 - 0.5);
        assert_eq!(d[8], 0.5);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(d[j * 3 + i], 0.0);
        }
    }

    #[test]
    fn exchange_and_counter_rotating_elements() {
        // cutoff 1: only the exchange element <0,e|H|1,g> = g survives
        let p = params(1, 1).with_g(0.3);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_sc_hamiltonian(&p, &basis).unwrap();
        let d = dense(&h);
        let i1g = 1; // |1,g>
        let i0e = 2; // |0,e>
        assert_eq!(d[i0e * 3 + i1g], 0.3);

        // cutoff 2 admits |1,e>: the counter-rotating element <1,e|H|0,g> = g
        let p2 = params(1, 2).with_g(0.3);
        let basis2 = enumerate_basis(&p2).unwrap();
        let h2 = build_sc_hamiltonian(&p2, &basis2).unwrap();
        let i0g = basis2
            .index_of(&BasisState {
                photon_occupations: vec![0],
                atom_excited: false,
            })
            .unwrap();
        let i1e = basis2
            .index_of(&BasisState {
                photon_occupations: vec![1],
                atom_excited: true,
            })
            .unwrap();
        let d2 = h2.dense_on(&(0..basis2.dim()).collect::<Vec<_>>());
        let n2 = basis2.dim();
        assert_eq!(d2[i1e * n2 + i0g], 0.3);

        // and it is absent in the rotating-wave approximation
        let p2r = p2.clone().with_rwa(true);
        let h2r = build_sc_hamiltonian(&p2r, &basis2).unwrap();
        let d2r = h2r.dense_on(&(0..basis2.dim()).collect::<Vec<_>>());
        assert_eq!(d2r[i1e * n2 + i0g], 0.0);
    }

    #[test]
    fn entries_connect_equal_parity_states() {
        let p = params(7, 7);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_sc_hamiltonian(&p, &basis).unwrap();
        for &(r, c, _) in h.entries() {
            assert_eq!(basis.parity(r as usize), basis.parity(c as usize));
        }
    }

    #[test]
    fn fault_hook_breaks_parity_blocks() {
        let p = params(3, 2);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_sc_hamiltonian_with_fault(&p, &basis, AssemblyFault::DropAtomFlipInCrw).unwrap();
        let violations = h
            .entries()
            .iter()
            .filter(|&&(r, c, _)| basis.parity(r as usize) != basis.parity(c as usize))
            .count();
        assert!(violations > 0);
    }

    #[test]
    fn rwa_conserves_excitation_number() {
        let p = params(5, 4).with_rwa(true);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_sc_hamiltonian(&p, &basis).unwrap();
        for &(r, c, _) in h.entries() {
            assert_eq!(
                basis.state(r as usize).excitation(),
                basis.state(c as usize).excitation()
            );
        }
    }

    #[test]
    fn linear_in_coupling() {
        let basis = enumerate_basis(&params(5, 3)).unwrap();
        let h0 = build_sc_hamiltonian(&params(5, 3).with_g(0.0), &basis).unwrap();
        let h1 = build_sc_hamiltonian(&params(5, 3).with_g(0.4), &basis).unwrap();
        let h2 = build_sc_hamiltonian(&params(5, 3).with_g(0.8), &basis).unwrap();
        let (d0, d1, d2) = (dense(&h0), dense(&h1), dense(&h2));
        for i in 0..d0.len() {
            let slope1 = (d1[i] - d0[i]) / 0.4;
            let slope2 = (d2[i] - d0[i]) / 0.8;
            assert!((slope1 - slope2).abs() < 1e-13);
        }
    }

    #[test]
    fn hermitian_under_application() {
        let p = params(5, 3);
        let basis = enumerate_basis(&p).unwrap();
        let h = build_sc_hamiltonian(&p, &basis).unwrap();
        let dim = basis.dim();
        let x: Vec<f64> = (0..dim).map(|i| ((i * 37 + 11) % 101) as f64 / 101.0).collect();
        let y: Vec<f64> = (0..dim).map(|i| ((i * 53 + 29) % 97) as f64 / 97.0).collect();
        let hx = h.apply(&x);
        let hy = h.apply(&y);
        let xy: f64 = x.iter().zip(&hy).map(|(a, b)| a * b).sum();
        let yx: f64 = y.iter().zip(&hx).map(|(a, b)| a * b).sum();
        assert!((xy - yx).abs() < 1e-10);
    }

    #[test]
    fn mode_coupling_values() {
        let p = params(7, 7).with_g(0.8);
        assert_eq!(mode_coupling(&p, 2).unwrap(), 0.0,);
        let g1 = mode_coupling(&p, 1).unwrap();
        assert!((g1 - 0.4).abs() < 1e-15); // g sqrt(2/8) sin(pi/2) = g/2
        for k in [2, 4, 6] {
            assert!(mode_coupling(&p, k).unwrap().abs() < 1e-15);
        }
        for k in [1, 3, 5, 7] {
            assert!(mode_coupling(&p, k).unwrap().abs() > 0.1);
        }
        assert!(mode_coupling(&p, 0).is_err());
        assert!(mode_coupling(&p, 8).is_err());
    }

    #[test]
    fn dark_mode_energy_values() {
        let p = params(7, 7).with_xi(0.23);
        let dark = dark_mode_energies(&p);
        assert_eq!(dark.iter().map(|&(k, _)| k).collect::<Vec<_>>(), vec![2, 4, 6]);
        let by_k: std::collections::HashMap<usize, f64> = dark.into_iter().collect();
        assert!((by_k[&4] - 1.0).abs() < 1e-15);
        let expect2 = 1.0 - 0.46 * (std::f64::consts::PI / 4.0).cos();
        assert!((by_k[&2] - expect2).abs() < 1e-15);
        assert!((by_k[&2] - 0.6747308806541881).abs() < 1e-12);
        assert!((by_k[&6] - 1.3252691193458119).abs() < 1e-12);
    }

    #[test]
    fn site_occupation_examples() {
        let p = params(7, 7);
        let basis = enumerate_basis(&p).unwrap();
        let idx = basis
            .index_of(&BasisState {
                photon_occupations: vec![0, 0, 0, 2, 0, 0, 0],
                atom_excited: true,
            })
            .unwrap();
        let mut v = vec![0.0; basis.dim()];
        v[idx] = 1.0;
        assert_eq!(site_occupation(&v, &basis, 4).unwrap(), 2.0);
        assert_eq!(site_occupation(&v, &basis, 1).unwrap(), 0.0);

        // equal superposition of one photon at site 1 and one at site 7
        let i1 = basis
            .index_of(&BasisState {
                photon_occupations: vec![1, 0, 0, 0, 0, 0, 0],
                atom_excited: false,
            })
            .unwrap();
        let i7 = basis
            .index_of(&BasisState {
                photon_occupations: vec![0, 0, 0, 0, 0, 0, 1],
                atom_excited: false,
            })
            .unwrap();
        let mut w = vec![0.0; basis.dim()];
        w[i1] = std::f64::consts::FRAC_1_SQRT_2;
        w[i7] = std::f64::consts::FRAC_1_SQRT_2;
        assert!((site_occupation(&w, &basis, 7).unwrap() - 0.5).abs() < 1e-15);
        assert!(site_occupation(&w, &basis, 8).is_err());
    }

    #[test]
    fn subspace_projection() {
        let p = params(7, 7);
        let basis = enumerate_basis(&p).unwrap();
        let full = build_sc_hamiltonian(&p, &basis).unwrap();
        let same = build_subspace_hamiltonian(&p, &basis, 0).unwrap();
        assert_eq!(full.entries(), same.entries());

        // N_ext <= 2 states: 1 + (7+1) + (28+7) = 44, so the subspace keeps 5104
        let idx = subspace_indices(&basis, 3);
        assert_eq!(basis.dim() - idx.len(), 44);
        assert_eq!(idx.len(), 5104);

        let sub = build_subspace_hamiltonian(&p, &basis, 3).unwrap();
        for &(r, c, _) in sub.entries() {
            assert!(basis.state(r as usize).excitation() >= 3);
            assert!(basis.state(c as usize).excitation() >= 3);
        }

        assert!(build_subspace_hamiltonian(&p, &basis, 8).is_err());
    }

    #[test]
    fn creation_annihilation_roundtrip() {
        let p = params(3, 2);
        let basis = enumerate_basis(&p).unwrap();
        let vac = basis
            .index_of(&BasisState {
                photon_occupations: vec![0, 0, 0],
                atom_excited: false,
            })
            .unwrap();
        let mut v = vec![0.0; basis.dim()];
        v[vac] = 1.0;
        let up: Vec<f64> = apply_creation(&v, &basis, 2).unwrap();
        assert!((site_occupation(&up, &basis, 2).unwrap() - 1.0).abs() < 1e-15);
        let down = apply_annihilation(&up, &basis, 2).unwrap();
        assert_eq!(down[vac], 1.0);
    }

    #[test]
    fn basis_mismatch_is_rejected() {
        let p = params(5, 3);
        let other = enumerate_basis(&params(5, 2)).unwrap();
        assert!(matches!(
            build_sc_hamiltonian(&p, &other),
            Err(Error::BasisMismatch { .. })
        ));
    }
}
