//! Four-state coin lift of the Hadamard coin.
//!
//! The lifted coin space has the ordered basis
//! `(|0>, |1>, -|1>, -|0>)`. Every signed amplitude of the two-dimensional
//! coin becomes a pair of separate population slots, and the interference
//! matrix `B` folds them back:
//!
//! ```text
//! B = [1 0  0 -1]
//!     [0 1 -1  0]
//! ```
//!
//! On this basis the doubly stochastic matrix `A` reproduces the Hadamard
//! coin through `H = B A B^T / sqrt(2)` and, more generally,
//! `H^n B = sqrt(2)^n B A^n`.

use nalgebra::{Matrix2, Matrix2x4, Matrix4, Vector2, Vector4};
use num_complex::Complex64;

use crate::error::{Result, WalkError};

/// Number of coin states in the lifted space.
pub const LIFTED_COINS: usize = 4;
/// Number of coin states of the quantum walker.
pub const QUANTUM_COINS: usize = 2;

/// Slot of `|0>` in a lifted coin block.
pub const ZERO: usize = 0;
/// Slot of `|1>` in a lifted coin block.
pub const ONE: usize = 1;
/// Slot of `-|1>` in a lifted coin block.
pub const MINUS_ONE: usize = 2;
/// Slot of `-|0>` in a lifted coin block.
pub const MINUS_ZERO: usize = 3;

/// Largest power accepted by [`power_relation_residual`].
pub const MAX_POWER: u32 = 64;

/// A real 4x4 matrix acting on the lifted coin space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinMatrix(Matrix4<f64>);

impl CoinMatrix {
    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        Self(Matrix4::from_fn(|r, c| rows[r][c]))
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        let mut out = [[0.0; 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.0[(r, c)];
            }
        }
        out
    }

    pub fn apply(&self, p: &CoinPopulation) -> CoinPopulation {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (r, o) in out.iter_mut().enumerate() {
            for c in 0..4 {
                *o += p.0[c] * self.0[(r, c)];
            }
        }
        CoinPopulation(out)
    }
}

impl From<Matrix4<f64>> for CoinMatrix {
    fn from(m: Matrix4<f64>) -> Self {
        Self(m)
    }
}

/// The transition matrix of the four-site coin chain: two reflecting
/// end states and hopping probability 1/2.
pub fn make_transition_matrix() -> CoinMatrix {
    CoinMatrix::from_rows([
        [0.5, 0.5, 0.0, 0.0],
        [0.5, 0.0, 0.5, 0.0],
        [0.0, 0.5, 0.0, 0.5],
        [0.0, 0.0, 0.5, 0.5],
    ])
}

/// Projector onto the `|0>`-type slots (`|0>` and `-|0>`).
pub fn zero_state() -> CoinMatrix {
    CoinMatrix(Matrix4::from_diagonal(&Vector4::new(1.0, 0.0, 0.0, 1.0)))
}

/// Projector onto the `|1>`-type slots (`|1>` and `-|1>`).
pub fn one_state() -> CoinMatrix {
    CoinMatrix(Matrix4::from_diagonal(&Vector4::new(0.0, 1.0, 1.0, 0.0)))
}

/// Whether lifted slot `c` is shifted together with `|0>`.
pub fn is_zero_type(c: usize) -> bool {
    c == ZERO || c == MINUS_ZERO
}

/// The fixed 2x4 integer matrix folding lifted populations into amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterferenceMatrix(Matrix2x4<i64>);

impl InterferenceMatrix {
    pub fn matrix(&self) -> &Matrix2x4<i64> {
        &self.0
    }

    pub fn to_f64(&self) -> Matrix2x4<f64> {
        self.0.map(|v| v as f64)
    }

    /// `B B^T`, exactly.
    pub fn gram(&self) -> Matrix2<i64> {
        self.0 * self.0.transpose()
    }

    /// `B^T B`, exactly.
    pub fn outer(&self) -> Matrix4<i64> {
        self.0.transpose() * self.0
    }

    pub fn apply(&self, p: &CoinPopulation) -> (Complex64, Complex64) {
        let p = &p.0;
        (p[ZERO] - p[MINUS_ZERO], p[ONE] - p[MINUS_ONE])
    }
}

pub fn make_interference_matrix() -> InterferenceMatrix {
    InterferenceMatrix(Matrix2x4::new(1, 0, 0, -1, 0, 1, -1, 0))
}

/// The 4x4 reversal (exchange) matrix.
pub fn reversal_matrix() -> Matrix4<i64> {
    Matrix4::from_fn(|r, c| i64::from(r + c == 3))
}

/// The normalised Hadamard coin.
pub fn hadamard() -> Matrix2<f64> {
    Matrix2::new(1.0, 1.0, 1.0, -1.0) * std::f64::consts::FRAC_1_SQRT_2
}

/// `B A B^T / sqrt(2)`.
pub fn hadamard_via_lift() -> Matrix2<f64> {
    let b = make_interference_matrix().to_f64();
    let a = make_transition_matrix();
    b * a.matrix() * b.transpose() * std::f64::consts::FRAC_1_SQRT_2
}

/// Max-norm of `H^n B - sqrt(2)^n B A^n`.
pub fn power_relation_residual(n: u32) -> Result<f64> {
    if n > MAX_POWER {
        return Err(WalkError::LimitExceeded {
            what: "power",
            got: n as usize,
            limit: MAX_POWER as usize,
        });
    }
    let b = make_interference_matrix().to_f64();
    let a = *make_transition_matrix().matrix();
    let h = hadamard();
    let mut h_n = Matrix2::identity();
    let mut a_n = Matrix4::identity();
    for _ in 0..n {
        h_n *= h;
        a_n *= a;
    }
    let scale = std::f64::consts::SQRT_2.powi(n as i32);
    let lhs = h_n * b;
    let rhs = b * a_n * scale;
    Ok((lhs - rhs).amax())
}

/// Max-norm of `(B^T B / 2)^2 - B^T B / 2`.
pub fn idempotent_check() -> f64 {
    let half = make_interference_matrix().outer().map(|v| v as f64 * 0.5);
    (half * half - half).amax()
}

/// Max-norms of the commutators of `B^T B` with the coin-layer matrices
/// that the lift identities rely on.
pub fn commutation_residuals() -> Vec<(&'static str, f64)> {
    let gram = make_interference_matrix().outer().map(|v| v as f64);
    let reflectors = crate::boundary::make_reflectors();
    let commutator = |m: &CoinMatrix| (gram * m.matrix() - m.matrix() * gram).amax();
    vec![
        ("transition", commutator(&make_transition_matrix())),
        ("zero_state", commutator(&zero_state())),
        ("one_state", commutator(&one_state())),
        ("reflect1", commutator(&reflectors.lifted_r1)),
        ("reflect2", commutator(&reflectors.lifted_r2)),
    ]
}

/// A coin state `a0|0> + a1|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub a0: Complex64,
    pub a1: Complex64,
}

impl QubitState {
    pub fn new(a0: Complex64, a1: Complex64) -> Self {
        Self { a0, a1 }
    }

    pub fn real(a0: f64, a1: f64) -> Self {
        Self::new(Complex64::new(a0, 0.0), Complex64::new(a1, 0.0))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a0.norm_sqr() + self.a1.norm_sqr()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn is_real(&self) -> bool {
        self.a0.im == 0.0 && self.a1.im == 0.0
    }

    pub fn as_vector(&self) -> Vector2<Complex64> {
        Vector2::new(self.a0, self.a1)
    }
}

/// Populations of the four lifted coin states, ordered `(|0>, |1>, -|1>, -|0>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinPopulation(pub [Complex64; 4]);

impl CoinPopulation {
    pub fn real(values: [f64; 4]) -> Self {
        Self(values.map(|v| Complex64::new(v, 0.0)))
    }

    pub fn total(&self) -> Complex64 {
        self.0.iter().sum()
    }
}

/// How a quantum coin state is laid onto the four population slots.
///
/// The fold `B` has a two-dimensional kernel, so the lift is not unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LiftMode {
    /// Nonnegative parts go to `|0>`/`|1>`, negated negative parts to
    /// `-|0>`/`-|1>`. Real and imaginary parts are split independently.
    #[default]
    SignSplit,
    /// `(a0, a1, 0, 0)`.
    Raw,
}

fn split(x: f64) -> (f64, f64) {
    if x >= 0.0 {
        (x, 0.0)
    } else {
        (0.0, -x)
    }
}

fn split_complex(z: Complex64) -> (Complex64, Complex64) {
    let (re_pos, re_neg) = split(z.re);
    let (im_pos, im_neg) = split(z.im);
    (
        Complex64::new(re_pos, im_pos),
        Complex64::new(re_neg, im_neg),
    )
}

pub fn lift(q: QubitState, mode: LiftMode) -> CoinPopulation {
    let zero = Complex64::new(0.0, 0.0);
    match mode {
        LiftMode::Raw => CoinPopulation([q.a0, q.a1, zero, zero]),
        LiftMode::SignSplit => {
            let (p0, m0) = split_complex(q.a0);
            let (p1, m1) = split_complex(q.a1);
            CoinPopulation([p0, p1, m1, m0])
        }
    }
}

/// `sqrt(2)^n B p`.
pub fn project(p: &CoinPopulation, n: u32) -> QubitState {
    let (a0, a1) = make_interference_matrix().apply(p);
    let scale = std::f64::consts::SQRT_2.powi(n as i32);
    QubitState::new(a0 * scale, a1 * scale)
}
