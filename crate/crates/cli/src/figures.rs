//! Configurations behind the figure datasets.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use lifted_walk::boundary::BoundaryKind;
use lifted_walk::coin::QubitState;
use num_complex::Complex64;

use crate::cli::Sites;
use crate::initial::InitialSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    CoinPopulations,
    ClassicalVsQuantum,
    Phases,
    FiniteLine,
    PartialTraps,
}

impl FigureId {
    pub const ALL: [FigureId; 5] = [
        Self::CoinPopulations,
        Self::ClassicalVsQuantum,
        Self::Phases,
        Self::FiniteLine,
        Self::PartialTraps,
    ];

    pub fn number(self) -> u8 {
        match self {
            Self::CoinPopulations => 3,
            Self::ClassicalVsQuantum => 4,
            Self::Phases => 5,
            Self::FiniteLine => 8,
            Self::PartialTraps => 9,
        }
    }
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|f| f.number().to_string() == s)
            .ok_or_else(|| format!("unknown figure {s:?}; expected one of 3, 4, 5, 8, 9"))
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// One dataset file of a figure.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureRun {
    pub file_name: String,
    pub steps: usize,
    pub sites: Sites,
    pub boundary: BoundaryKind,
    pub initial: InitialSpec,
    /// Only emit the labels `-steps..=steps` instead of the whole lattice.
    pub core_only: bool,
    /// Divide the classical column by the initial total population, so it
    /// reads as the probability of a walker started with unit mass.
    pub normalize_classical: bool,
}

fn origin(state: QubitState) -> InitialSpec {
    InitialSpec::Point { site: 0, state }
}

fn finite_line_start() -> InitialSpec {
    let amp = 1.0 / 46f64.sqrt();
    InitialSpec::Uniform {
        first: 2,
        last: 24,
        state: QubitState::real(amp, -amp),
    }
}

/// Every dataset written for figure `id`.
pub fn registry(id: FigureId) -> Vec<FigureRun> {
    let open = |n: usize, initial: InitialSpec| FigureRun {
        file_name: format!("figure{}.csv", id.number()),
        steps: n,
        sites: Sites::Auto,
        boundary: BoundaryKind::None,
        initial,
        core_only: true,
        normalize_classical: false,
    };
    let finite = |n: usize, file_name: String, normalize_classical: bool| FigureRun {
        file_name,
        steps: n,
        sites: Sites::Count(25),
        boundary: BoundaryKind::Reflect1,
        initial: finite_line_start(),
        core_only: false,
        normalize_classical,
    };
    match id {
        FigureId::CoinPopulations | FigureId::ClassicalVsQuantum => {
            vec![open(100, origin(QubitState::real(1.0, 0.0)))]
        }
        FigureId::Phases => vec![open(
            50,
            origin(QubitState::new(
                Complex64::new(FRAC_1_SQRT_2, 0.0),
                Complex64::new(0.0, FRAC_1_SQRT_2),
            )),
        )],
        FigureId::FiniteLine => [35, 65]
            .into_iter()
            .map(|n| finite(n, format!("figure8_n{n}.csv"), false))
            .collect(),
        FigureId::PartialTraps => vec![finite(65, "figure9.csv".into(), true)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in FigureId::ALL {
            assert_eq!(id.to_string().parse::<FigureId>().unwrap(), id);
        }
        assert!("6".parse::<FigureId>().is_err());
    }

    #[test]
    fn finite_line_writes_two_files() {
        let runs = registry(FigureId::FiniteLine);
        assert_eq!(runs.iter().map(|r| r.steps).collect::<Vec<_>>(), [35, 65]);
        assert_ne!(runs[0].file_name, runs[1].file_name);
    }
}
