//! Model parameters and the truncated many-excitation basis.
//!
//! The scatterer is an `N`-cavity segment (N odd) with a two-level atom in
//! the center cavity `s = (N+1)/2`. Basis states are photon occupation
//! vectors over the `N` cavities combined with the atomic state, truncated by
//! the total excitation number `N_ext = sum_j n_j + atom`. The parity
//! `(-1)^{N_ext}` is conserved by the full Hamiltonian and splits the basis
//! into even and odd sectors.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default cap on the enumerated basis dimension.
pub const DEFAULT_BASIS_LIMIT: usize = 2_000_000;

/// Parity label `(-1)^{N_ext}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_excitation(n_ext: usize) -> Self {
        if n_ext % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign<S: Real>(self) -> S {
        match self {
            Parity::Even => S::one(),
            Parity::Odd => -S::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn combine(self, other: Self) -> Self {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "+1"),
            Parity::Odd => write!(f, "-1"),
        }
    }
}

/// Physical and truncation parameters of the cavity array plus atom.
///
/// All energies are in units of the cavity frequency (`omega_c = 1` by
/// convention; the field is kept so outputs can be relabeled).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    deny_unknown_fields,
    bound(serialize = "S: Serialize", deserialize = "S: Deserialize<'de>")
)]
pub struct ModelParams<S: Real> {
    /// Number of cavities in the scatterer segment; must be odd.
    pub n_cavities: usize,
    /// Atom position, fixed to the center cavity `(N+1)/2` (1-based).
    /// `0` means "fill in the center" during validation.
    #[serde(default)]
    pub atom_site: usize,
    /// Cavity mode frequency.
    pub omega_c: S,
    /// Atomic level splitting.
    pub omega_a: S,
    /// Intra-array photon hopping.
    pub xi: S,
    /// Edge hopping between the scatterer and the semi-infinite leads.
    pub eta: S,
    /// Atom-cavity coupling strength.
    pub g: S,
    /// Cap on the total excitation number `N_ext`.
    pub max_excitation: usize,
    /// Drop the counter-rotating part of the coupling (rotating-wave
    /// approximation).
    #[serde(default)]
    pub rwa_only: bool,
}

impl<S: Real> Default for ModelParams<S> {
    /// Reference parameter set: `N = 7`, `omega_a = omega_c = 1`,
    /// `xi = eta = 0.23`, `g = 0.6`, cutoff 7.
    fn default() -> Self {
        ModelParams {
            n_cavities: 7,
            atom_site: 4,
            omega_c: S::one(),
            omega_a: S::one(),
            xi: S::of(0.23),
            eta: S::of(0.23),
            g: S::of(0.6),
            max_excitation: 7,
            rwa_only: false,
        }
    }
}

impl<S: Real> ModelParams<S> {
    /// Center site `(N+1)/2`, 1-based.
    pub fn center_site(n_cavities: usize) -> usize {
        (n_cavities + 1) / 2
    }

    pub fn with_n_cavities(mut self, n: usize) -> Self {
        self.n_cavities = n;
        self.atom_site = Self::center_site(n);
        self
    }

    pub fn with_g(mut self, g: S) -> Self {
        self.g = g;
        self
    }

    pub fn with_xi(mut self, xi: S) -> Self {
        self.xi = xi;
        self
    }

    pub fn with_eta(mut self, eta: S) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_omega_a(mut self, omega_a: S) -> Self {
        self.omega_a = omega_a;
        self
    }

    pub fn with_max_excitation(mut self, cutoff: usize) -> Self {
        self.max_excitation = cutoff;
        self
    }

    pub fn with_rwa(mut self, rwa_only: bool) -> Self {
        self.rwa_only = rwa_only;
        self
    }

    /// Check every structural invariant, filling in `atom_site = (N+1)/2`
    /// when it was left as zero.
    pub fn validated(mut self) -> Result<Self> {
        if self.atom_site == 0 {
            self.atom_site = Self::center_site(self.n_cavities);
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.n_cavities == 0 || self.n_cavities % 2 == 0 {
            return fail(format!("n_cavities must be a positive odd integer, got {}", self.n_cavities));
        }
        if self.atom_site != Self::center_site(self.n_cavities) {
            return fail(format!(
                "atom_site must be the center cavity {} for N = {}, got {}",
                Self::center_site(self.n_cavities),
                self.n_cavities,
                self.atom_site
            ));
        }
        for (name, v) in [
            ("omega_c", self.omega_c),
            ("omega_a", self.omega_a),
            ("xi", self.xi),
            ("eta", self.eta),
            ("g", self.g),
        ] {
            if !v.is_finite() {
                return fail(format!("{name} must be finite"));
            }
        }
        if self.omega_c <= S::zero() {
            return fail("omega_c must be positive".into());
        }
        if self.omega_a < S::zero() {
            return fail("omega_a must be non-negative".into());
        }
        if self.xi < S::zero() {
            return fail("xi must be non-negative".into());
        }
        if self.eta < S::zero() || self.eta > self.xi {
            return fail(format!(
                "eta must satisfy 0 <= eta <= xi, got eta = {}, xi = {}",
                self.eta, self.xi
            ));
        }
        if self.g < S::zero() {
            return fail("g must be non-negative".into());
        }
        if self.max_excitation == 0 {
            return fail("max_excitation must be at least 1".into());
        }
        Ok(())
    }

    /// Open propagation band of the leads, `(omega_c - 2 xi, omega_c + 2 xi)`.
    pub fn band_edges(&self) -> (S, S) {
        let two = S::of(2.0);
        (self.omega_c - two * self.xi, self.omega_c + two * self.xi)
    }
}

/// One basis vector: photon occupations per cavity plus the atomic state.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisState {
    /// Photon number per cavity; site `j` (1-based) is stored at `j - 1`.
    pub photon_occupations: Vec<u32>,
    pub atom_excited: bool,
}

impl BasisState {
    /// Total excitation number `N_ext`.
    pub fn excitation(&self) -> usize {
        self.photon_occupations.iter().map(|&n| n as usize).sum::<usize>()
            + usize::from(self.atom_excited)
    }

    pub fn parity(&self) -> Parity {
        Parity::of_excitation(self.excitation())
    }

    /// Photon number at 1-based site `j`.
    pub fn occupation(&self, site: usize) -> u32 {
        self.photon_occupations[site - 1]
    }
}

/// Parity of a basis state, `(-1)^{N_ext}`.
pub fn parity_of(state: &BasisState) -> Parity {
    state.parity()
}

/// Ordered truncated basis with parity sectors and index lookup.
#[derive(Debug)]
pub struct Basis {
    states: Vec<BasisState>,
    index: HashMap<BasisState, usize>,
    parities: Vec<Parity>,
    even: Vec<usize>,
    odd: Vec<usize>,
    n_cavities: usize,
    max_excitation: usize,
    tag: u64,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, i: usize) -> &BasisState {
        &self.states[i]
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn index_of(&self, state: &BasisState) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    /// Indices of the requested parity sector, ascending.
    pub fn sector(&self, parity: Parity) -> &[usize] {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn n_cavities(&self) -> usize {
        self.n_cavities
    }

    pub fn max_excitation(&self) -> usize {
        self.max_excitation
    }

    /// Identifier binding operators to the basis that produced them.
    /// Bases with equal `(n_cavities, max_excitation)` enumerate identically.
    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub(crate) fn tag_for(n_cavities: usize, max_excitation: usize) -> u64 {
        ((n_cavities as u64) << 32) | max_excitation as u64
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Closed-form dimension of the truncated basis.
pub fn basis_dimension(n_cavities: usize, max_excitation: usize) -> u128 {
    // ground-atom states with p <= K photons plus excited-atom states with
    // p <= K - 1 photons; the telescoped sums are single binomials.
    let n = n_cavities as u128;
    let k = max_excitation as u128;
    if max_excitation == 0 {
        return 1;
    }
    binomial(k + n, n) + binomial(k - 1 + n, n)
}

/// Enumerate the truncated basis with the default dimension limit.
pub fn enumerate_basis<S: Real>(params: &ModelParams<S>) -> Result<Basis> {
    enumerate_basis_with_limit(params, DEFAULT_BASIS_LIMIT)
}

/// Enumerate every state with `N_ext <= max_excitation` exactly once.
///
/// Ordering is lexicographic by `(N_ext, atom flag, occupation vector)` with
/// `atom ground < atom excited`; repeated calls produce identical orderings.
pub fn enumerate_basis_with_limit<S: Real>(
    params: &ModelParams<S>,
    limit: usize,
) -> Result<Basis> {
    params.validate()?;
    let n = params.n_cavities;
    let cutoff = params.max_excitation;

    let dim = basis_dimension(n, cutoff);
    if dim > limit as u128 {
        return Err(Error::BasisTooLarge { dim, limit });
    }

    let mut states = Vec::with_capacity(dim as usize);
    for n_ext in 0..=cutoff {
        for atom_excited in [false, true] {
            if atom_excited && n_ext == 0 {
                continue;
            }
            let photons = n_ext - usize::from(atom_excited);
            push_compositions(n, photons, &mut states, atom_excited);
        }
    }
    debug_assert_eq!(states.len() as u128, dim);

    let index: HashMap<BasisState, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let parities: Vec<Parity> = states.iter().map(|s| s.parity()).collect();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, p) in parities.iter().enumerate() {
        match p {
            Parity::Even => even.push(i),
            Parity::Odd => odd.push(i),
        }
    }

    Ok(Basis {
        states,
        index,
        parities,
        even,
        odd,
        n_cavities: n,
        max_excitation: cutoff,
        tag: Basis::tag_for(n, cutoff),
    })
}

/// Append all occupation vectors of `n` sites summing to `total`, in
/// lexicographic order.
fn push_compositions(n: usize, total: usize, out: &mut Vec<BasisState>, atom_excited: bool) {
    let mut occ = vec![0u32; n];
    fill(&mut occ, 0, total, out, atom_excited);
}

fn fill(occ: &mut [u32], site: usize, remaining: usize, out: &mut Vec<BasisState>, atom: bool) {
    if site == occ.len() - 1 {
        occ[site] = remaining as u32;
        out.push(BasisState {
            photon_occupations: occ.to_vec(),
            atom_excited: atom,
        });
        return;
    }
    for here in 0..=remaining {
        occ[site] = here as u32;
        fill(occ, site + 1, remaining - here, out, atom);
    }
    occ[site] = 0;
}
