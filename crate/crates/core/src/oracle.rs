//! Slow reference implementations.
//!
//! Everything here is built literally: full `d x d` operators assembled from
//! Kronecker products, matrix-vector products repeated `n` times, and the
//! classical walk by repeated convolution. Nothing in this module calls the
//! structural engine in [`crate::walk`] except the equivalence suite, which
//! compares the two.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::{self, BoundarySpec};
use crate::coin::{self, CoinPopulation};
use crate::error::{Result, WalkError};
use crate::walk::{self, Lattice, LiftedState, Scaling};

/// Default guard on the lattice size of dense operators.
pub const DENSE_SITE_LIMIT: usize = 64;
/// Largest step count accepted by [`dense_evolve`].
pub const DENSE_STEP_LIMIT: usize = 200;
/// Largest step count accepted by [`binomial_walk`].
pub const BINOMIAL_STEP_LIMIT: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum System {
    /// The four-state Markov lift.
    Lifted,
    /// The two-state Hadamard walk.
    Unitary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    system: System,
    sites: usize,
    matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn system(&self) -> System {
        self.system
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Max-norm of `M^dagger M - I`.
    pub fn unitarity_residual(&self) -> f64 {
        let gram = self.matrix.adjoint() * &self.matrix;
        let id = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        (gram - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn column_sums(&self) -> Vec<Complex64> {
        self.matrix.column_iter().map(|c| c.sum()).collect()
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim() {
            return Err(WalkError::DimensionMismatch {
                got: v.len(),
                expected: self.dim(),
            });
        }
        Ok((&self.matrix * DVector::from_column_slice(v))
            .as_slice()
            .to_vec())
    }
}

fn literal_shifts(m: usize, cyclic: bool) -> (DMatrix<f64>, DMatrix<f64>) {
    let mut right = DMatrix::zeros(m, m);
    let mut left = DMatrix::zeros(m, m);
    for j in 0..m - 1 {
        right[(j, j + 1)] = 1.0;
        left[(j + 1, j)] = 1.0;
    }
    if cyclic {
        right[(m - 1, 0)] = 1.0;
        left[(0, m - 1)] = 1.0;
    }
    (right, left)
}

fn edge_mask(m: usize) -> DMatrix<f64> {
    let mut z = DMatrix::zeros(m, m);
    z[(0, 0)] = 1.0;
    z[(m - 1, m - 1)] = 1.0;
    z
}

fn dyn4(m: &Matrix4<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(4, 4, |r, c| m[(r, c)])
}

fn dyn2(m: &Matrix2<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(2, 2, |r, c| m[(r, c)])
}

/// [`dense_assemble_within`] with the default [`DENSE_SITE_LIMIT`].
pub fn dense_assemble(
    lattice: &Lattice,
    boundary: &BoundarySpec,
    system: System,
) -> Result<DenseOperator> {
    dense_assemble_within(lattice, boundary, system, DENSE_SITE_LIMIT)
}

/// Materialises the full step operator from its Kronecker formula:
/// `(Right (x) Z0 + Left (x) Z1) ((I - Z) (x) coin + Z (x) edge)`, where
/// `Z` selects the two end sites and is empty for kinds without edge coins.
pub fn dense_assemble_within(
    lattice: &Lattice,
    boundary: &BoundarySpec,
    system: System,
    max_sites: usize,
) -> Result<DenseOperator> {
    let m = lattice.sites();
    if m > max_sites {
        return Err(WalkError::LimitExceeded {
            what: "sites",
            got: m,
            limit: max_sites,
        });
    }
    boundary.validate(lattice)?;
    let (right, left) = literal_shifts(m, boundary.cyclic_closure);

    let (zero, one, bulk, edge) = match system {
        System::Lifted => {
            let edge = boundary::edge_coins(boundary.kind).map(|(l, _)| dyn4(l.matrix()));
            (
                dyn4(coin::zero_state().matrix()),
                dyn4(coin::one_state().matrix()),
                dyn4(coin::make_transition_matrix().matrix()),
                edge,
            )
        }
        System::Unitary => {
            let edge = boundary::edge_coins(boundary.kind).map(|(_, q)| dyn2(&q));
            (
                DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]),
                DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]),
                dyn2(&coin::hadamard()),
                edge,
            )
        }
    };

    let shift = right.kronecker(&zero) + left.kronecker(&one);
    let identity = DMatrix::<f64>::identity(m, m);
    let coin_layer = match edge {
        Some(edge) => {
            let z = edge_mask(m);
            (&identity - &z).kronecker(&bulk) + z.kronecker(&edge)
        }
        None => identity.kronecker(&bulk),
    };
    let matrix = (shift * coin_layer).map(|x| Complex64::new(x, 0.0));
    Ok(DenseOperator {
        system,
        sites: m,
        matrix,
    })
}

/// `I_m (x) B`, a `2m x 4m` matrix.
pub fn dense_fold(lattice: &Lattice) -> DMatrix<Complex64> {
    let b = coin::make_interference_matrix().to_f64();
    let b = DMatrix::from_fn(2, 4, |r, c| b[(r, c)]);
    DMatrix::<f64>::identity(lattice.sites(), lattice.sites())
        .kronecker(&b)
        .map(|x| Complex64::new(x, 0.0))
}

/// `op^steps v` by repeated matrix-vector products.
pub fn dense_evolve(op: &DenseOperator, v: &[Complex64], steps: usize) -> Result<Vec<Complex64>> {
    if steps > DENSE_STEP_LIMIT {
        return Err(WalkError::LimitExceeded {
            what: "steps",
            got: steps,
            limit: DENSE_STEP_LIMIT,
        });
    }
    if v.len() != op.dim() {
        return Err(WalkError::DimensionMismatch {
            got: v.len(),
            expected: op.dim(),
        });
    }
    let mut x = DVector::from_column_slice(v);
    for _ in 0..steps {
        x = &op.matrix * x;
    }
    Ok(x.as_slice().to_vec())
}

/// Values on consecutive integer sites starting at `first`.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteSeries {
    pub first: i64,
    pub values: Vec<f64>,
}

impl SiteSeries {
    pub fn at(&self, site: i64) -> f64 {
        usize::try_from(site - self.first)
            .ok()
            .and_then(|i| self.values.get(i).copied())
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Distribution of the symmetric `+-1` walk after `steps` steps, by
/// convolving with `(1/2, 1/2)` once per step. Covers sites
/// `start - steps ..= start + steps`.
pub fn binomial_walk(steps: usize, start: i64) -> Result<SiteSeries> {
    if steps > BINOMIAL_STEP_LIMIT {
        return Err(WalkError::LimitExceeded {
            what: "steps",
            got: steps,
            limit: BINOMIAL_STEP_LIMIT,
        });
    }
    let width = 2 * steps + 1;
    let mut cur = vec![0.0; width];
    let mut next = vec![0.0; width];
    cur[steps] = 1.0;
    for _ in 0..steps {
        for i in 0..width {
            let from_left = if i > 0 { cur[i - 1] } else { 0.0 };
            let from_right = if i + 1 < width { cur[i + 1] } else { 0.0 };
            next[i] = 0.5 * (from_left + from_right);
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(SiteSeries {
        first: start - steps as i64,
        values: cur,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub mean: f64,
    pub std: f64,
    pub total: f64,
}

/// Mass-weighted mean and standard deviation over the indices of `dist`.
pub fn moments(dist: &[f64]) -> Result<MomentReport> {
    if let Some((index, &value)) = dist.iter().enumerate().find(|(_, v)| **v < 0.0) {
        return Err(WalkError::NegativeMass { index, value });
    }
    let total: f64 = dist.iter().sum();
    if total == 0.0 {
        return Err(WalkError::EmptyDistribution);
    }
    let mean = dist
        .iter()
        .enumerate()
        .map(|(i, p)| i as f64 * p)
        .sum::<f64>()
        / total;
    let var = dist
        .iter()
        .enumerate()
        .map(|(i, p)| (i as f64 - mean).powi(2) * p)
        .sum::<f64>()
        / total;
    Ok(MomentReport {
        mean,
        std: var.max(0.0).sqrt(),
        total,
    })
}

/// One named identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn new(name: &'static str, residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl EquivalenceReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Names of the checks run by [`equivalence_suite`], in order.
pub const SUITE_CHECKS: [&str; 7] = [
    "hadamard_from_lift",
    "power_relation",
    "population_conservation",
    "norm_preservation",
    "lift_equivalence",
    "reflector_conjugation",
    "boundary_lift_equivalence",
];

/// Random complex entries with real and imaginary parts uniform on `[-1, 1)`.
pub fn random_complex(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// Runs every lift identity at small fixed scales. Random starts come from a
/// ChaCha8 stream seeded with `seed` (`ChaCha8Rng::seed_from_u64`).
pub fn equivalence_suite(seed: u64) -> EquivalenceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let failed = f64::INFINITY;

    let hadamard = (coin::hadamard_via_lift() - coin::hadamard()).amax();

    let power = (0..=32)
        .map(|n| coin::power_relation_residual(n).unwrap_or(failed))
        .fold(0.0, f64::max);

    let conservation_steps = 40;
    let conservation = {
        let (lattice, center) = Lattice::centered(conservation_steps);
        let sites: Vec<_> = (center - 2..=center + 2)
            .map(|k| {
                (
                    k,
                    coin::QubitState::real(
                        rng.random_range(-1.0..1.0),
                        rng.random_range(-1.0..1.0),
                    ),
                )
            })
            .collect();
        LiftedState::from_sites(
            lattice,
            &sites,
            coin::LiftMode::SignSplit,
            Scaling::Unscaled,
        )
        .and_then(|mut s| {
            let before = s.population_total();
            s.evolve(
                &walk::make_markov_step(lattice, BoundarySpec::none())?,
                conservation_steps,
            )?;
            Ok((s.population_total() - before).norm())
        })
        .unwrap_or(failed)
    };

    let norm = {
        let p = CoinPopulation(
            random_complex(&mut rng, 4)
                .try_into()
                .expect("four entries"),
        );
        let a = coin::make_transition_matrix();
        let b = coin::make_interference_matrix();
        let fold_norm = |p: &CoinPopulation| {
            let (x, y) = b.apply(p);
            x.norm_sqr() + y.norm_sqr()
        };
        let initial = fold_norm(&p);
        let mut cur = p;
        let mut worst: f64 = 0.0;
        for n in 1..=40 {
            cur = a.apply(&cur);
            let scaled = 2f64.powi(n) * fold_norm(&cur);
            worst = worst.max((scaled - initial).abs() / initial);
        }
        worst
    };

    let lift = {
        let lattice = Lattice::new(8).expect("valid lattice");
        let start =
            LiftedState::from_populations(lattice, random_complex(&mut rng, 32), Scaling::Unscaled);
        start
            .and_then(|s| {
                (1..=10).try_fold(0.0f64, |acc, n| {
                    Ok(acc.max(walk::lift_equivalence_residual(
                        &s,
                        n,
                        BoundarySpec::none(),
                    )?))
                })
            })
            .unwrap_or(failed)
    };

    let reflectors = {
        let r = boundary::make_reflectors();
        let b = coin::make_interference_matrix().to_f64();
        let fold = |m: &coin::CoinMatrix| b * m.matrix() * b.transpose() * FRAC_1_SQRT_2;
        (fold(&r.lifted_r1) - r.r1)
            .amax()
            .max((fold(&r.lifted_r2) - r.r2).amax())
    };

    let boundary_lift = [BoundarySpec::reflect1(), BoundarySpec::reflect2()]
        .iter()
        .map(|spec| boundary_lift_residual(25, spec).unwrap_or(failed))
        .fold(0.0, f64::max);

    EquivalenceReport {
        seed,
        checks: vec![
            Check::new(SUITE_CHECKS[0], hadamard, 1e-12),
            Check::new(SUITE_CHECKS[1], power, 1e-9),
            Check::new(
                SUITE_CHECKS[2],
                conservation,
                1e-9 * conservation_steps as f64,
            ),
            Check::new(SUITE_CHECKS[3], norm, 1e-8),
            Check::new(SUITE_CHECKS[4], lift, 1e-9),
            Check::new(SUITE_CHECKS[5], reflectors, 1e-12),
            Check::new(SUITE_CHECKS[6], boundary_lift, 1e-12),
        ],
    }
}

/// Max-norm of `u (I (x) B) - sqrt(2) (I (x) B) U` for one dense step.
pub fn boundary_lift_residual(sites: usize, boundary: &BoundarySpec) -> Result<f64> {
    let lattice = Lattice::new(sites)?;
    let lifted = dense_assemble(&lattice, boundary, System::Lifted)?;
    let unitary = dense_assemble(&lattice, boundary, System::Unitary)?;
    let fold = dense_fold(&lattice);
    let lhs = unitary.matrix() * &fold;
    let rhs = &fold * lifted.matrix() * Complex64::new(SQRT_2, 0.0);
    Ok((lhs - rhs).iter().map(|z| z.norm()).fold(0.0, f64::max))
}
