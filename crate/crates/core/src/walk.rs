//! Walks on an `m`-site line.
//!
//! Both systems use a site-major layout: entry `4k + c` of a lifted vector
//! is coin slot `c` (ordered as in [`crate::coin`]) of site `k`, and entry
//! `2k + c` of a quantum vector is amplitude `c` of site `k`.
//!
//! One step applies the coin layer first and the shift second. The shift
//! moves the `|0>`-type slots with `Right` (site `k` to `k - 1`) and the
//! `|1>`-type slots with `Left` (site `k` to `k + 1`). Operators are stored
//! as per-site blocks and applied in `O(m)` per step; dense forms exist only
//! in [`crate::oracle`].
//!
//! # Interference channel
//!
//! The quantum readout is a difference of two populations, e.g.
//! `p0 - m0`, scaled by `sqrt(2)^n`. The populations themselves grow like
//! `sqrt(2)^n` relative to that difference, so reading the difference off the
//! evolved population vector cancels catastrophically after a few dozen
//! steps. [`LiftedState`] therefore carries, next to the population vector
//! `P`, the reversal-antisymmetric part `(P - J P) / 2` of each site block.
//! The step operator commutes with `I (x) J`, so that part evolves under the
//! same operator without mixing, and all quantum quantities are read from it.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::boundary::{self, BoundarySpec, CoinLayer};
use crate::coin::{self, LiftMode, QubitState, LIFTED_COINS, QUANTUM_COINS};
use crate::error::{Result, WalkError};
use crate::oracle;

/// Steps beyond which an unscaled state refuses quantum readout.
pub const UNSCALED_STEP_LIMIT: usize = 512;
/// Largest lattice accepted by [`lift_equivalence_residual`].
pub const EQUIVALENCE_SITE_LIMIT: usize = 64;
/// Largest step count accepted by [`lift_equivalence_residual`].
pub const EQUIVALENCE_STEP_LIMIT: usize = 20;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    sites: usize,
}

impl Lattice {
    pub fn new(sites: usize) -> Result<Self> {
        if sites < 2 {
            return Err(WalkError::TooFewSites { sites, min: 2 });
        }
        Ok(Self { sites })
    }

    /// A line on which an `steps`-step walk from the returned center site
    /// never reaches either edge: `2 * steps + 3` sites.
    pub fn centered(steps: usize) -> (Self, usize) {
        (
            Self {
                sites: 2 * steps + 3,
            },
            steps + 1,
        )
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn lifted_dim(&self) -> usize {
        LIFTED_COINS * self.sites
    }

    pub fn wave_dim(&self) -> usize {
        QUANTUM_COINS * self.sites
    }

    pub fn lifted_index(&self, site: usize, coin: usize) -> usize {
        LIFTED_COINS * site + coin
    }

    pub fn wave_index(&self, site: usize, coin: usize) -> usize {
        QUANTUM_COINS * site + coin
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.sites {
            return Err(WalkError::SiteOutOfRange {
                site,
                sites: self.sites,
            });
        }
        Ok(())
    }
}

/// The `Right` / `Left` shift pair on `sites` sites.
///
/// `Right` has ones on the superdiagonal and `Left` on the subdiagonal;
/// with `cyclic` the corner entries `Right(m-1, 0)` and `Left(0, m-1)` are
/// added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftMatrices {
    sites: usize,
    cyclic: bool,
}

pub fn make_shift_matrices(sites: usize, cyclic: bool) -> Result<ShiftMatrices> {
    if sites < 2 {
        return Err(WalkError::TooFewSites { sites, min: 2 });
    }
    Ok(ShiftMatrices { sites, cyclic })
}

impl ShiftMatrices {
    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic
    }

    /// Where `Right` sends site `j`.
    #[inline]
    pub fn right_target(&self, j: usize) -> Option<usize> {
        match j {
            0 if self.cyclic => Some(self.sites - 1),
            0 => None,
            _ => Some(j - 1),
        }
    }

    /// Where `Left` sends site `j`.
    #[inline]
    pub fn left_target(&self, j: usize) -> Option<usize> {
        if j + 1 < self.sites {
            Some(j + 1)
        } else if self.cyclic {
            Some(0)
        } else {
            None
        }
    }

    pub fn apply_right(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.apply_with(v, |j| self.right_target(j))
    }

    pub fn apply_left(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.apply_with(v, |j| self.left_target(j))
    }

    fn apply_with(
        &self,
        v: &[Complex64],
        target: impl Fn(usize) -> Option<usize>,
    ) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.sites];
        for (j, x) in v.iter().enumerate() {
            if let Some(t) = target(j) {
                out[t] += *x;
            }
        }
        out
    }

    /// Dense `(Right, Left)`.
    pub fn dense(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let mut right = DMatrix::zeros(self.sites, self.sites);
        let mut left = DMatrix::zeros(self.sites, self.sites);
        for j in 0..self.sites {
            if let Some(t) = self.right_target(j) {
                right[(t, j)] = 1.0;
            }
            if let Some(t) = self.left_target(j) {
                left[(t, j)] = 1.0;
            }
        }
        (right, left)
    }
}

/// One step of a walk: a coin layer followed by the shift.
///
/// `C = 4` is the lifted Markov step, `C = 2` the unitary step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOperator<const C: usize> {
    lattice: Lattice,
    boundary: BoundarySpec,
    layer: CoinLayer<C>,
    shift: ShiftMatrices,
    zero_type: [bool; C],
}

pub type MarkovStep = StepOperator<LIFTED_COINS>;
pub type UnitaryStep = StepOperator<QUANTUM_COINS>;

/// The lifted step `X Y`, with `Y` the transition matrix on every site or
/// the masked layer when `boundary` has edge coins.
pub fn make_markov_step(lattice: Lattice, boundary: BoundarySpec) -> Result<MarkovStep> {
    boundary.validate(&lattice)?;
    let layer = if boundary.kind.has_edge_coin() {
        boundary::make_masked_coin_layer(&lattice, &boundary)?.0
    } else {
        boundary::uniform_coin_layers(&lattice).0
    };
    Ok(StepOperator {
        lattice,
        boundary,
        layer,
        shift: make_shift_matrices(lattice.sites(), boundary.cyclic_closure)?,
        zero_type: std::array::from_fn(coin::is_zero_type),
    })
}

/// The quantum step `x y`, with `y` the Hadamard coin on every site or the
/// masked layer when `boundary` has edge coins.
pub fn make_unitary_step(lattice: Lattice, boundary: BoundarySpec) -> Result<UnitaryStep> {
    boundary.validate(&lattice)?;
    let layer = if boundary.kind.has_edge_coin() {
        boundary::make_masked_coin_layer(&lattice, &boundary)?.1
    } else {
        boundary::uniform_coin_layers(&lattice).1
    };
    Ok(StepOperator {
        lattice,
        boundary,
        layer,
        shift: make_shift_matrices(lattice.sites(), boundary.cyclic_closure)?,
        zero_type: [true, false],
    })
}

impl<const C: usize> StepOperator<C> {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn boundary(&self) -> &BoundarySpec {
        &self.boundary
    }

    pub fn coin_layer(&self) -> &CoinLayer<C> {
        &self.layer
    }

    pub fn shift(&self) -> &ShiftMatrices {
        &self.shift
    }

    pub fn dim(&self) -> usize {
        C * self.lattice.sites()
    }

    /// `dst = scale * op * src`.
    fn apply_into(&self, src: &[Complex64], dst: &mut [Complex64], scale: f64) {
        dst.fill(ZERO);
        for (k, x) in src.chunks_exact(C).enumerate() {
            let block = self.layer.block(k);
            let right = self.shift.right_target(k);
            let left = self.shift.left_target(k);
            for r in 0..C {
                let target = if self.zero_type[r] { right } else { left };
                let Some(t) = target else { continue };
                let mut w = ZERO;
                for c in 0..C {
                    w += x[c] * block[r][c];
                }
                dst[t * C + r] += w * scale;
            }
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(WalkError::DimensionMismatch {
                got: len,
                expected: self.dim(),
            });
        }
        Ok(())
    }

    /// One unscaled application.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_len(v.len())?;
        let mut out = vec![ZERO; v.len()];
        self.apply_into(v, &mut out, 1.0);
        Ok(out)
    }

    fn evolve_buffer(
        &self,
        v: &mut Vec<Complex64>,
        scratch: &mut Vec<Complex64>,
        steps: usize,
        scale: f64,
    ) {
        scratch.resize(v.len(), ZERO);
        for _ in 0..steps {
            self.apply_into(v, scratch, scale);
            std::mem::swap(v, scratch);
        }
    }
}

/// Normalisation carried by a lifted state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scaling {
    /// Plain Markov evolution; quantum readout needs a `2^n` factor.
    Unscaled,
    /// The state is multiplied by `sqrt(2)` after every step.
    #[default]
    PerStepSqrt2,
}

impl Scaling {
    fn step_factor(self) -> f64 {
        match self {
            Self::Unscaled => 1.0,
            Self::PerStepSqrt2 => SQRT_2,
        }
    }
}

/// Evolution under a step operator of the matching kind.
pub trait Evolve: Sized {
    type Operator;

    fn evolve(&mut self, op: &Self::Operator, steps: usize) -> Result<()>;
}

/// Returns `state` evolved by `steps` applications of `op`.
pub fn evolve<S: Evolve + Clone>(state: &S, op: &S::Operator, steps: usize) -> Result<S> {
    let mut out = state.clone();
    out.evolve(op, steps)?;
    Ok(out)
}

/// Populations of the lifted walk on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftedState {
    lattice: Lattice,
    populations: Vec<Complex64>,
    interference: Vec<Complex64>,
    step: usize,
    scaling: Scaling,
}

fn antisymmetric_part(v: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; v.len()];
    for (src, dst) in v.chunks_exact(4).zip(out.chunks_exact_mut(4)) {
        let a0 = (src[0] - src[3]) * 0.5;
        let a1 = (src[1] - src[2]) * 0.5;
        dst.copy_from_slice(&[a0, a1, -a1, -a0]);
    }
    out
}

fn theta(z: Complex64) -> f64 {
    if z == ZERO {
        return 0.0;
    }
    let t = z.im.atan2(z.re);
    if t == -PI {
        PI
    } else {
        t
    }
}

impl LiftedState {
    pub fn from_populations(
        lattice: Lattice,
        populations: Vec<Complex64>,
        scaling: Scaling,
    ) -> Result<Self> {
        if populations.len() != lattice.lifted_dim() {
            return Err(WalkError::DimensionMismatch {
                got: populations.len(),
                expected: lattice.lifted_dim(),
            });
        }
        let interference = antisymmetric_part(&populations);
        Ok(Self {
            lattice,
            populations,
            interference,
            step: 0,
            scaling,
        })
    }

    /// Lifts one coin state per listed site; repeated sites accumulate.
    pub fn from_sites(
        lattice: Lattice,
        sites: &[(usize, QubitState)],
        mode: LiftMode,
        scaling: Scaling,
    ) -> Result<Self> {
        let mut v = vec![ZERO; lattice.lifted_dim()];
        for &(site, q) in sites {
            lattice.check_site(site)?;
            let p = coin::lift(q, mode);
            for (c, x) in p.0.iter().enumerate() {
                v[lattice.lifted_index(site, c)] += *x;
            }
        }
        Self::from_populations(lattice, v, scaling)
    }

    pub fn point(
        lattice: Lattice,
        site: usize,
        q: QubitState,
        mode: LiftMode,
        scaling: Scaling,
    ) -> Result<Self> {
        Self::from_sites(lattice, &[(site, q)], mode, scaling)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn scaling(&self) -> Scaling {
        self.scaling
    }

    /// The population vector, site-major.
    pub fn populations(&self) -> &[Complex64] {
        &self.populations
    }

    /// The reversal-antisymmetric part of the populations, evolved alongside.
    pub fn interference(&self) -> &[Complex64] {
        &self.interference
    }

    pub fn population_total(&self) -> Complex64 {
        self.populations.iter().sum()
    }

    /// Factor turning the stored scale into the unscaled Markov populations.
    fn population_scale(&self) -> f64 {
        match self.scaling {
            Scaling::Unscaled => 1.0,
            Scaling::PerStepSqrt2 => SQRT_2.powi(-(self.step as i32)),
        }
    }

    /// Factor turning stored amplitudes into quantum amplitudes.
    fn amplitude_scale(&self) -> Result<f64> {
        match self.scaling {
            Scaling::PerStepSqrt2 => Ok(1.0),
            Scaling::Unscaled if self.step > UNSCALED_STEP_LIMIT => Err(WalkError::ScaleOverflow {
                step: self.step,
                limit: UNSCALED_STEP_LIMIT,
            }),
            Scaling::Unscaled => Ok(SQRT_2.powi(self.step as i32)),
        }
    }

    /// Splits the population vector into the four per-site coin arrays.
    pub fn unfold(&self) -> CoinDistributions {
        let m = self.lattice.sites();
        let mut d = CoinDistributions {
            p0: Vec::with_capacity(m),
            p1: Vec::with_capacity(m),
            m1: Vec::with_capacity(m),
            m0: Vec::with_capacity(m),
        };
        for block in self.populations.chunks_exact(4) {
            d.p0.push(block[coin::ZERO]);
            d.p1.push(block[coin::ONE]);
            d.m1.push(block[coin::MINUS_ONE]);
            d.m0.push(block[coin::MINUS_ZERO]);
        }
        d
    }

    /// Folded amplitudes `(psi_0(k), psi_1(k))` per site.
    fn folded(&self) -> Result<Vec<(Complex64, Complex64)>> {
        let s = self.amplitude_scale()?;
        Ok(self
            .interference
            .chunks_exact(4)
            .map(|a| ((a[0] - a[3]) * s, (a[1] - a[2]) * s))
            .collect())
    }

    pub fn quantum_probabilities(&self) -> Result<QuantumProbabilities> {
        let folded = self.folded()?;
        Ok(QuantumProbabilities {
            prob0: folded.iter().map(|(a, _)| a.norm_sqr()).collect(),
            prob1: folded.iter().map(|(_, b)| b.norm_sqr()).collect(),
        })
    }

    /// The quantum state `sqrt(2)^n (I (x) B) P(n)`.
    pub fn project(&self) -> Result<WaveState> {
        let amplitudes = self
            .folded()?
            .into_iter()
            .flat_map(|(a, b)| [a, b])
            .collect();
        Ok(WaveState {
            lattice: self.lattice,
            amplitudes,
            step: self.step,
        })
    }

    fn site_totals(&self) -> Vec<Complex64> {
        let s = self.population_scale();
        self.populations
            .chunks_exact(4)
            .map(|b| b.iter().sum::<Complex64>() * s)
            .collect()
    }

    /// Total population per site, i.e. the classical random-walk occupation.
    ///
    /// Rejects states with complex populations: a complex start propagates
    /// two independent real walkers and has no single classical reading.
    pub fn classical_distribution(&self) -> Result<Vec<f64>> {
        if let Some(i) = self.populations.iter().position(|z| z.im != 0.0) {
            return Err(WalkError::ComplexPopulation { site: i / 4 });
        }
        Ok(self.site_totals().into_iter().map(|z| z.re).collect())
    }

    /// Occupation of the walker started from the real part of the populations.
    pub fn real_walker_distribution(&self) -> Vec<f64> {
        self.site_totals().into_iter().map(|z| z.re).collect()
    }

    /// Per-site phase differences `theta(p0) - theta(m0)` and
    /// `theta(p1) - theta(m1)`, with `theta` the two-argument arctangent on
    /// `(-pi, pi]` and `theta(0) = 0`.
    pub fn phases(&self) -> PhaseDifferences {
        let mut out = PhaseDifferences {
            phase0: Vec::with_capacity(self.lattice.sites()),
            phase1: Vec::with_capacity(self.lattice.sites()),
        };
        for b in self.populations.chunks_exact(4) {
            out.phase0
                .push(theta(b[coin::ZERO]) - theta(b[coin::MINUS_ZERO]));
            out.phase1
                .push(theta(b[coin::ONE]) - theta(b[coin::MINUS_ONE]));
        }
        out
    }

    /// Everything that can be read off the state, per site.
    pub fn site_distribution(&self) -> Result<SiteDistribution> {
        let coins = self.unfold();
        let quantum = self.quantum_probabilities()?;
        let phases = self.phases();
        let scale = self.population_scale();
        let rescale = |v: Vec<Complex64>| v.into_iter().map(|z| z * scale).collect();
        Ok(SiteDistribution {
            prob_total: quantum.totals(),
            classical: self.real_walker_distribution(),
            p0: rescale(coins.p0),
            p1: rescale(coins.p1),
            m1: rescale(coins.m1),
            m0: rescale(coins.m0),
            prob0: quantum.prob0,
            prob1: quantum.prob1,
            phase0: phases.phase0,
            phase1: phases.phase1,
        })
    }
}

impl Evolve for LiftedState {
    type Operator = MarkovStep;

    fn evolve(&mut self, op: &MarkovStep, steps: usize) -> Result<()> {
        LiftedState::evolve(self, op, steps)
    }
}

impl LiftedState {
    /// Applies `op` `steps` times to both the populations and the
    /// interference channel, rescaling by `sqrt(2)` per step if requested.
    pub fn evolve(&mut self, op: &MarkovStep, steps: usize) -> Result<()> {
        if *op.lattice() != self.lattice {
            return Err(WalkError::LatticeMismatch {
                state: self.lattice.sites(),
                operator: op.lattice().sites(),
            });
        }
        let factor = self.scaling.step_factor();
        let mut scratch = Vec::new();
        op.evolve_buffer(&mut self.populations, &mut scratch, steps, factor);
        op.evolve_buffer(&mut self.interference, &mut scratch, steps, factor);
        self.step += steps;
        Ok(())
    }
}

/// Amplitudes of the quantum walk on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState {
    lattice: Lattice,
    amplitudes: Vec<Complex64>,
    step: usize,
}

impl WaveState {
    pub fn from_amplitudes(lattice: Lattice, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != lattice.wave_dim() {
            return Err(WalkError::DimensionMismatch {
                got: amplitudes.len(),
                expected: lattice.wave_dim(),
            });
        }
        Ok(Self {
            lattice,
            amplitudes,
            step: 0,
        })
    }

    pub fn from_sites(lattice: Lattice, sites: &[(usize, QubitState)]) -> Result<Self> {
        let mut w = vec![ZERO; lattice.wave_dim()];
        for &(site, q) in sites {
            lattice.check_site(site)?;
            w[lattice.wave_index(site, 0)] += q.a0;
            w[lattice.wave_index(site, 1)] += q.a1;
        }
        Self::from_amplitudes(lattice, w)
    }

    pub fn point(lattice: Lattice, site: usize, q: QubitState) -> Result<Self> {
        Self::from_sites(lattice, &[(site, q)])
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> QuantumProbabilities {
        QuantumProbabilities {
            prob0: self
                .amplitudes
                .iter()
                .step_by(2)
                .map(|z| z.norm_sqr())
                .collect(),
            prob1: self
                .amplitudes
                .iter()
                .skip(1)
                .step_by(2)
                .map(|z| z.norm_sqr())
                .collect(),
        }
    }
}

impl Evolve for WaveState {
    type Operator = UnitaryStep;

    fn evolve(&mut self, op: &UnitaryStep, steps: usize) -> Result<()> {
        WaveState::evolve(self, op, steps)
    }
}

impl WaveState {
    pub fn evolve(&mut self, op: &UnitaryStep, steps: usize) -> Result<()> {
        if *op.lattice() != self.lattice {
            return Err(WalkError::LatticeMismatch {
                state: self.lattice.sites(),
                operator: op.lattice().sites(),
            });
        }
        let mut scratch = Vec::new();
        op.evolve_buffer(&mut self.amplitudes, &mut scratch, steps, 1.0);
        self.step += steps;
        Ok(())
    }
}

/// The four coin-state population arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinDistributions {
    pub p0: Vec<Complex64>,
    pub p1: Vec<Complex64>,
    pub m1: Vec<Complex64>,
    pub m0: Vec<Complex64>,
}

impl CoinDistributions {
    /// Re-interleaves the arrays into the site-major population vector.
    pub fn interleave(&self) -> Vec<Complex64> {
        (0..self.p0.len())
            .flat_map(|k| [self.p0[k], self.p1[k], self.m1[k], self.m0[k]])
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumProbabilities {
    pub prob0: Vec<f64>,
    pub prob1: Vec<f64>,
}

impl QuantumProbabilities {
    pub fn totals(&self) -> Vec<f64> {
        self.prob0
            .iter()
            .zip(&self.prob1)
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn total(&self) -> f64 {
        self.prob0.iter().sum::<f64>() + self.prob1.iter().sum::<f64>()
    }

    /// Share of the probability carried by `|0>`.
    pub fn zero_fraction(&self) -> f64 {
        self.prob0.iter().sum::<f64>() / self.total()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDifferences {
    pub phase0: Vec<f64>,
    pub phase1: Vec<f64>,
}

/// Per-site readout of a lifted state.
///
/// Coin populations and `classical` are unscaled Markov values whatever the
/// state's scaling. For complex starts `classical` is the occupation of the
/// real-part walker.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteDistribution {
    pub p0: Vec<Complex64>,
    pub p1: Vec<Complex64>,
    pub m1: Vec<Complex64>,
    pub m0: Vec<Complex64>,
    pub prob0: Vec<f64>,
    pub prob1: Vec<f64>,
    pub prob_total: Vec<f64>,
    pub classical: Vec<f64>,
    pub phase0: Vec<f64>,
    pub phase1: Vec<f64>,
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Max-norm of `u^n (I (x) B) P(0) - sqrt(2)^n (I (x) B) U^n P(0)`, both
/// sides built and multiplied densely.
pub fn lift_equivalence_residual(
    start: &LiftedState,
    steps: usize,
    boundary: BoundarySpec,
) -> Result<f64> {
    let lattice = *start.lattice();
    if lattice.sites() > EQUIVALENCE_SITE_LIMIT {
        return Err(WalkError::LimitExceeded {
            what: "sites",
            got: lattice.sites(),
            limit: EQUIVALENCE_SITE_LIMIT,
        });
    }
    if steps > EQUIVALENCE_STEP_LIMIT {
        return Err(WalkError::LimitExceeded {
            what: "steps",
            got: steps,
            limit: EQUIVALENCE_STEP_LIMIT,
        });
    }
    let lifted = oracle::dense_assemble(&lattice, &boundary, oracle::System::Lifted)?;
    let unitary = oracle::dense_assemble(&lattice, &boundary, oracle::System::Unitary)?;
    let fold = oracle::dense_fold(&lattice);

    let folded_start = &fold * nalgebra::DVector::from_column_slice(start.populations());
    let lhs = oracle::dense_evolve(&unitary, folded_start.as_slice(), steps)?;
    let evolved = oracle::dense_evolve(&lifted, start.populations(), steps)?;
    let rhs = &fold
        * nalgebra::DVector::from_vec(evolved)
        * Complex64::new(SQRT_2.powi(steps as i32), 0.0);
    Ok(max_abs_diff(&lhs, rhs.as_slice()))
}
