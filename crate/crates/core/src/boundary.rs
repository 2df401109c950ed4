//! Boundary coins for walks on a finite line.
//!
//! A boundary replaces the coin at the first and last lattice sites. On the
//! lifted side the reflectors carry a `1/sqrt(2)` factor (they are partial
//! traps for the population); on the quantum side they are plain coin
//! exchanges. The two sides are related by `r = B R B^T / sqrt(2)`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Matrix4};
use num_complex::Complex64;

use crate::coin::{self, CoinMatrix, QubitState};
use crate::error::{Result, WalkError};
use crate::walk::{self, Lattice, LiftedState, Scaling, WaveState};

/// Number of sites of the finite line used by [`reflecting_norm_check`].
pub const NORM_CHECK_SITES: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryKind {
    /// Open line, population leaving an edge is lost.
    None,
    /// Ring closure, no boundary coin.
    Cyclic,
    /// Exchange `|0> <-> |1>` at both ends.
    Reflect1,
    /// Exchange `|0> <-> -|1>` at both ends.
    Reflect2,
    /// Absorb everything at both ends.
    Trap,
}

impl BoundaryKind {
    pub fn has_edge_coin(self) -> bool {
        matches!(self, Self::Reflect1 | Self::Reflect2 | Self::Trap)
    }

    pub fn is_reflecting(self) -> bool {
        matches!(self, Self::Reflect1 | Self::Reflect2)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Cyclic => "cyclic",
            Self::Reflect1 => "reflect1",
            Self::Reflect2 => "reflect2",
            Self::Trap => "trap",
        }
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundaryKind {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "cyclic" => Ok(Self::Cyclic),
            "reflect1" => Ok(Self::Reflect1),
            "reflect2" => Ok(Self::Reflect2),
            "trap" => Ok(Self::Trap),
            other => Err(WalkError::InvalidBoundary(format!(
                "unknown kind {other:?}"
            ))),
        }
    }
}

/// Boundary kind plus the shift closure.
///
/// `Cyclic` always closes the shift into a ring and `None` never does. The
/// edge-coin kinds default to an open shift; [`with_cyclic_closure`] adds the
/// wraparound entries, which makes the unitary step square-unitary.
///
/// [`with_cyclic_closure`]: BoundarySpec::with_cyclic_closure
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundarySpec {
    pub kind: BoundaryKind,
    pub cyclic_closure: bool,
}

impl BoundarySpec {
    pub const fn new(kind: BoundaryKind) -> Self {
        Self {
            kind,
            cyclic_closure: matches!(kind, BoundaryKind::Cyclic),
        }
    }

    pub const fn none() -> Self {
        Self::new(BoundaryKind::None)
    }

    pub const fn cyclic() -> Self {
        Self::new(BoundaryKind::Cyclic)
    }

    pub const fn reflect1() -> Self {
        Self::new(BoundaryKind::Reflect1)
    }

    pub const fn reflect2() -> Self {
        Self::new(BoundaryKind::Reflect2)
    }

    pub const fn trap() -> Self {
        Self::new(BoundaryKind::Trap)
    }

    pub const fn with_cyclic_closure(mut self, cyclic: bool) -> Self {
        self.cyclic_closure = cyclic;
        self
    }

    pub fn validate(&self, lattice: &Lattice) -> Result<()> {
        match (self.kind, self.cyclic_closure) {
            (BoundaryKind::None, true) => {
                return Err(WalkError::InvalidBoundary(
                    "kind none cannot be cyclic; use kind cyclic".into(),
                ))
            }
            (BoundaryKind::Cyclic, false) => {
                return Err(WalkError::InvalidBoundary(
                    "kind cyclic requires the cyclic closure".into(),
                ))
            }
            _ => {}
        }
        if self.kind.has_edge_coin() && lattice.sites() < 3 {
            return Err(WalkError::InvalidBoundary(format!(
                "{} needs at least 3 sites, got {}",
                self.kind,
                lattice.sites()
            )));
        }
        Ok(())
    }
}

impl Default for BoundarySpec {
    fn default() -> Self {
        Self::none()
    }
}

/// Reflecting coins for both sides of the lift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflectors {
    pub lifted_r1: CoinMatrix,
    pub lifted_r2: CoinMatrix,
    pub r1: Matrix2<f64>,
    pub r2: Matrix2<f64>,
}

pub fn make_reflectors() -> Reflectors {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let lifted_r1 = Matrix4::new(
        0.0, 1.0, 0.0, 0.0, //
        1.0, 0.0, 0.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        0.0, 0.0, 1.0, 0.0,
    ) * s;
    let lifted_r2 = Matrix4::new(
        0.0, 0.0, 1.0, 0.0, //
        0.0, 0.0, 0.0, 1.0, //
        1.0, 0.0, 0.0, 0.0, //
        0.0, 1.0, 0.0, 0.0,
    ) * s;
    let exchange = Matrix2::new(0.0, 1.0, 1.0, 0.0);
    Reflectors {
        lifted_r1: lifted_r1.into(),
        lifted_r2: lifted_r2.into(),
        r1: exchange,
        r2: -exchange,
    }
}

/// The absorbing coin (all zeros).
pub fn make_trap() -> CoinMatrix {
    CoinMatrix::from(Matrix4::zeros())
}

/// A coin layer: one `C x C` block per site, with an optional different
/// block on the first and last sites.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinLayer<const C: usize> {
    sites: usize,
    interior: [[f64; C]; C],
    edge: Option<[[f64; C]; C]>,
}

impl<const C: usize> CoinLayer<C> {
    pub fn uniform(sites: usize, block: [[f64; C]; C]) -> Self {
        Self {
            sites,
            interior: block,
            edge: None,
        }
    }

    pub fn masked(sites: usize, interior: [[f64; C]; C], edge: [[f64; C]; C]) -> Self {
        Self {
            sites,
            interior,
            edge: Some(edge),
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    #[inline]
    pub fn block(&self, site: usize) -> &[[f64; C]; C] {
        match &self.edge {
            Some(edge) if site == 0 || site + 1 == self.sites => edge,
            _ => &self.interior,
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
        for (k, (src, dst)) in v.chunks_exact(C).zip(out.chunks_exact_mut(C)).enumerate() {
            let block = self.block(k);
            for (r, d) in dst.iter_mut().enumerate() {
                for (c, x) in src.iter().enumerate() {
                    *d += *x * block[r][c];
                }
            }
        }
        out
    }

    /// Block-diagonal dense form.
    pub fn dense(&self) -> DMatrix<f64> {
        let d = self.sites * C;
        let mut m = DMatrix::zeros(d, d);
        for k in 0..self.sites {
            let block = self.block(k);
            for r in 0..C {
                for c in 0..C {
                    m[(k * C + r, k * C + c)] = block[r][c];
                }
            }
        }
        m
    }
}

fn block2(m: &Matrix2<f64>) -> [[f64; 2]; 2] {
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

/// Edge coins of `kind` for the lifted and the quantum side.
pub fn edge_coins(kind: BoundaryKind) -> Option<(CoinMatrix, Matrix2<f64>)> {
    let reflectors = make_reflectors();
    match kind {
        BoundaryKind::Reflect1 => Some((reflectors.lifted_r1, reflectors.r1)),
        BoundaryKind::Reflect2 => Some((reflectors.lifted_r2, reflectors.r2)),
        BoundaryKind::Trap => Some((make_trap(), Matrix2::zeros())),
        BoundaryKind::None | BoundaryKind::Cyclic => None,
    }
}

/// Coin layers with the transition matrix (resp. Hadamard) in the
/// interior and the boundary coin on the two extreme sites.
pub fn make_masked_coin_layer(
    lattice: &Lattice,
    boundary: &BoundarySpec,
) -> Result<(CoinLayer<4>, CoinLayer<2>)> {
    let Some((lifted_edge, quantum_edge)) = edge_coins(boundary.kind) else {
        return Err(WalkError::InvalidBoundary(format!(
            "kind {} has no boundary coin",
            boundary.kind
        )));
    };
    if lattice.sites() < 3 {
        return Err(WalkError::TooFewSites {
            sites: lattice.sites(),
            min: 3,
        });
    }
    let sites = lattice.sites();
    Ok((
        CoinLayer::masked(
            sites,
            coin::make_transition_matrix().rows(),
            lifted_edge.rows(),
        ),
        CoinLayer::masked(sites, block2(&coin::hadamard()), block2(&quantum_edge)),
    ))
}

/// Plain coin layers without boundary coins.
pub(crate) fn uniform_coin_layers(lattice: &Lattice) -> (CoinLayer<4>, CoinLayer<2>) {
    (
        CoinLayer::uniform(lattice.sites(), coin::make_transition_matrix().rows()),
        CoinLayer::uniform(lattice.sites(), block2(&coin::hadamard())),
    )
}

/// Runs the same interior start under open and cyclic shift closure and
/// returns the max-norm difference of the two final states (lifted
/// populations, interference channel and quantum amplitudes).
pub fn no_leak_check(
    sites: usize,
    steps: usize,
    start: usize,
    state: QubitState,
    kind: BoundaryKind,
) -> Result<f64> {
    if !kind.is_reflecting() {
        return Err(WalkError::InvalidBoundary(format!(
            "no-leak check needs a reflecting kind, got {kind}"
        )));
    }
    let lattice = Lattice::new(sites)?;
    if start >= sites {
        return Err(WalkError::SiteOutOfRange { site: start, sites });
    }
    if start == 0 || start + 1 == sites {
        return Err(WalkError::BoundaryStart { site: start });
    }
    let open = BoundarySpec::new(kind);
    let closed = open.with_cyclic_closure(true);

    let mut deviation: f64 = 0.0;

    let lifted = LiftedState::point(
        lattice,
        start,
        state,
        coin::LiftMode::SignSplit,
        Scaling::PerStepSqrt2,
    )?;
    let mut a = lifted.clone();
    let mut b = lifted;
    a.evolve(&walk::make_markov_step(lattice, open)?, steps)?;
    b.evolve(&walk::make_markov_step(lattice, closed)?, steps)?;
    deviation = deviation.max(walk::max_abs_diff(a.populations(), b.populations()));
    deviation = deviation.max(walk::max_abs_diff(a.interference(), b.interference()));

    let wave = WaveState::point(lattice, start, state)?;
    let mut a = wave.clone();
    let mut b = wave;
    a.evolve(&walk::make_unitary_step(lattice, open)?, steps)?;
    b.evolve(&walk::make_unitary_step(lattice, closed)?, steps)?;
    deviation = deviation.max(walk::max_abs_diff(a.amplitudes(), b.amplitudes()));

    Ok(deviation)
}

/// The finite-line start used by [`reflecting_norm_check`]: the state
/// `(|0> - |1>)/sqrt(46)` on every non-boundary site of a 25-site line.
pub fn finite_line_start(scaling: Scaling) -> Result<LiftedState> {
    let lattice = Lattice::new(NORM_CHECK_SITES)?;
    let amp = 1.0 / 46f64.sqrt();
    let q = QubitState::real(amp, -amp);
    let sites: Vec<_> = (1..NORM_CHECK_SITES - 1).map(|k| (k, q)).collect();
    LiftedState::from_sites(lattice, &sites, coin::LiftMode::SignSplit, scaling)
}

/// `|total quantum probability - 1|` after `steps` steps of the 25-site
/// reflecting walk started from [`finite_line_start`].
pub fn reflecting_norm_check(steps: usize) -> Result<f64> {
    let mut state = finite_line_start(Scaling::PerStepSqrt2)?;
    let op = walk::make_markov_step(*state.lattice(), BoundarySpec::reflect1())?;
    state.evolve(&op, steps)?;
    let probs = state.quantum_probabilities()?;
    Ok((probs.total() - 1.0).abs())
}
