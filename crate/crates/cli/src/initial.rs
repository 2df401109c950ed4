//! Textual initial states: `point:SITE:(RE,IM),(RE,IM)` and
//! `uniform:FIRST-LAST:(RE,IM),(RE,IM)`.

use std::fmt;
use std::str::FromStr;

use lifted_walk::coin::QubitState;
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialSpec {
    Point {
        site: i64,
        state: QubitState,
    },
    Uniform {
        first: i64,
        last: i64,
        state: QubitState,
    },
}

impl InitialSpec {
    pub fn state(&self) -> QubitState {
        match *self {
            Self::Point { state, .. } | Self::Uniform { state, .. } => state,
        }
    }

    /// Site labels covered by the start, in increasing order.
    pub fn sites(&self) -> std::ops::RangeInclusive<i64> {
        match *self {
            Self::Point { site, .. } => site..=site,
            Self::Uniform { first, last, .. } => first..=last,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct ParseInitialError(String);

fn err<T>(msg: impl Into<String>) -> Result<T, ParseInitialError> {
    Err(ParseInitialError(msg.into()))
}

fn parse_int(s: &str) -> Result<i64, ParseInitialError> {
    s.parse()
        .or_else(|_| err(format!("site {s:?} is not an integer")))
}

fn parse_float(s: &str) -> Result<f64, ParseInitialError> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => err(format!("amplitude component {s:?} is not a finite number")),
    }
}

/// Parses `(RE,IM)` into a complex number.
fn parse_complex(s: &str) -> Result<Complex64, ParseInitialError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| ParseInitialError(format!("amplitude {s:?} must look like (RE,IM)")))?;
    match inner.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_float(re)?, parse_float(im)?)),
        None => err(format!("amplitude {s:?} must look like (RE,IM)")),
    }
}

fn parse_state(s: &str) -> Result<QubitState, ParseInitialError> {
    let (a0, a1) = s
        .split_once("),")
        .ok_or_else(|| ParseInitialError(format!("state {s:?} must look like (RE,IM),(RE,IM)")))?;
    let state = QubitState::new(parse_complex(&format!("{a0})"))?, parse_complex(a1)?);
    if state.norm_sqr() == 0.0 {
        return err("state has no nonzero amplitude");
    }
    Ok(state)
}

/// Splits `FIRST-LAST`, where either bound may carry its own minus sign.
fn parse_range(s: &str) -> Result<(i64, i64), ParseInitialError> {
    let split = s
        .char_indices()
        .skip(1)
        .find(|&(i, c)| c == '-' && s.as_bytes()[i - 1].is_ascii_digit())
        .map(|(i, _)| i);
    let Some(i) = split else {
        return err(format!("range {s:?} must look like FIRST-LAST"));
    };
    let (first, last) = (parse_int(&s[..i])?, parse_int(&s[i + 1..])?);
    if first > last {
        return err(format!("range {s:?} is empty"));
    }
    Ok((first, last))
}

impl FromStr for InitialSpec {
    type Err = ParseInitialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s
            .replace('\u{2212}', "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| ParseInitialError("expected point:... or uniform:...".into()))?;
        let (sites, state) = rest
            .split_once(':')
            .ok_or_else(|| ParseInitialError(format!("missing sites or state in {s:?}")))?;
        let state = parse_state(state)?;
        match kind {
            "point" => Ok(Self::Point {
                site: parse_int(sites)?,
                state,
            }),
            "uniform" => {
                let (first, last) = parse_range(sites)?;
                Ok(Self::Uniform { first, last, state })
            }
            other => err(format!(
                "unknown start kind {other:?}; expected point or uniform"
            )),
        }
    }
}

impl fmt::Display for InitialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.state();
        let state = format!("({},{}),({},{})", q.a0.re, q.a0.im, q.a1.re, q.a1.im);
        match *self {
            Self::Point { site, .. } => write!(f, "point:{site}:{state}"),
            Self::Uniform { first, last, .. } => write!(f, "uniform:{first}-{last}:{state}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_point_and_uniform() {
        let p: InitialSpec = "point:0:(1,0),(0,0)".parse().unwrap();
        assert_eq!(
            p,
            InitialSpec::Point {
                site: 0,
                state: QubitState::real(1.0, 0.0)
            }
        );
        let u: InitialSpec = "uniform:2-24:(0.1474,0),(\u{2212}0.1474,0)"
            .parse()
            .unwrap();
        assert_eq!(u.sites(), 2..=24);
        assert_eq!(u.state(), QubitState::real(0.1474, -0.1474));
        let neg: InitialSpec = "uniform:-3--1:(1,0),(0,1)".parse().unwrap();
        assert_eq!(neg.sites(), -3..=-1);
        let p: InitialSpec = "point:-7:(0.5, 0.5), (0, -0.5)".parse().unwrap();
        assert_eq!(p.sites(), -7..=-7);
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "point:-4:(0.7071067811865476,0),(0,0.7071067811865476)",
            "uniform:2-24:(1,0),(-1,0)",
        ] {
            let spec: InitialSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(spec.to_string().parse::<InitialSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn rejects_malformed() {
        for s in [
            "",
            "point",
            "point:0",
            "line:0:(1,0),(0,0)",
            "point:x:(1,0),(0,0)",
            "point:0:(1,0)",
            "point:0:(1,0),(0,0",
            "point:0:(0,0),(0,0)",
            "point:0:(nan,0),(1,0)",
            "uniform:5-2:(1,0),(0,0)",
            "uniform:5:(1,0),(0,0)",
        ] {
            assert!(s.parse::<InitialSpec>().is_err(), "{s:?}");
        }
    }
}
