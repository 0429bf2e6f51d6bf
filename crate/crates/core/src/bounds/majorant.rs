//! Majorant series for `G1(T) = Σ_{k≥1} |g(k+1)| T^k` and
//! `G2(T) = Σ_{k≥2} |g(k+1) − g(2) g(k)| T^k`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::rat::{binomial, fmt_rat, pow_rat};
use crate::arith::{ArithFn, Rat};
use crate::error::{Error, Result};

pub const DEFAULT_HORIZON: u64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MajorantKind {
    G1,
    G2,
}

/// Term-wise bound `c(k) ≤ m(k)` with `m(k) = c(k)` for `k < K` and
/// `m(k) = A · C(k − s + d, d)` for `k ≥ K`. The tail sums in closed form to
/// `A T^s / (1 − T)^(d+1)` minus the tail terms below `K`.
#[derive(Clone, Debug)]
pub struct Majorant {
    kind: MajorantKind,
    target: ArithFn,
    head: Vec<Rat>,
    amplitude: Rat,
    degree: u32,
    shift: u32,
    start: u64,
    verified_horizon: u64,
}

/// `c(k)` for the given kind, `k ≥ 0`.
pub fn target_term(kind: MajorantKind, g: &ArithFn, k: u64) -> Result<Rat> {
    Ok(match kind {
        MajorantKind::G1 if k >= 1 => g.eval(k + 1)?.abs(),
        MajorantKind::G2 if k >= 2 => (g.eval(k + 1)? - g.eval(2)? * g.eval(k)?).abs(),
        _ => Rat::zero(),
    })
}

impl Majorant {
    /// Builds the head from `g` and checks the tail against the exact terms
    /// for `K ≤ k ≤ horizon` (capped by the horizon of a custom `g`).
    pub fn new(
        kind: MajorantKind,
        target: &ArithFn,
        amplitude: Rat,
        degree: u32,
        shift: u32,
        start: u64,
        horizon: u64,
    ) -> Result<Self> {
        if amplitude.is_negative() {
            return Err(Error::Domain("tail amplitude must be non-negative".into()));
        }
        if start < shift as u64 {
            return Err(Error::Domain(format!("tail start {start} lies below the shift {shift}")));
        }
        let head = (0..start).map(|k| target_term(kind, target, k)).collect::<Result<Vec<_>>>()?;
        let horizon = match target.horizon() {
            // `c(k)` needs `g(k + 1)`.
            Some(h) => horizon.min(h.saturating_sub(1)),
            None => horizon,
        };
        let m = Majorant {
            kind,
            target: target.clone(),
            head,
            amplitude,
            degree,
            shift,
            start,
            verified_horizon: horizon,
        };
        for k in start..=horizon {
            let c = target_term(kind, target, k)?;
            if c > m.tail_term(k) {
                return Err(Error::Contract {
                    name: target.name().to_string(),
                    index: k,
                    reason: format!(
                        "{:?} term {} exceeds the tail bound {}",
                        kind,
                        c,
                        m.tail_term(k)
                    ),
                });
            }
        }
        Ok(m)
    }

    /// `A · C(k − s + d, d)`, zero below the shift.
    pub fn tail_term(&self, k: u64) -> Rat {
        if k < self.shift as u64 {
            return Rat::zero();
        }
        let b = binomial(k - self.shift as u64 + self.degree as u64, self.degree as u64);
        &self.amplitude * Rat::from_integer(b)
    }

    /// The majorant term `m(k)`.
    pub fn term(&self, k: u64) -> Rat {
        if k < self.start {
            self.head[k as usize].clone()
        } else {
            self.tail_term(k)
        }
    }

    /// Default majorant for a built-in `g`.
    ///
    /// `one` and `id` have exact closed forms; `sigma` uses
    /// `σ(k) ≤ (1 + ln k) k`, `sigma3` uses `σ₃(k) ≤ ζ(3) k³`.
    pub fn preset(kind: MajorantKind, g: &ArithFn) -> Result<Self> {
        let r = |n: i64| Rat::from_integer(BigInt::from(n));
        use MajorantKind::*;
        match (g.name(), kind) {
            ("one", G1) => Self::new(G1, g, r(1), 0, 1, 1, DEFAULT_HORIZON),
            ("one", G2) => Self::new(G2, g, r(0), 0, 0, 0, DEFAULT_HORIZON),
            ("id", G1) => Self::new(G1, g, r(1), 1, 0, 1, DEFAULT_HORIZON),
            ("id", G2) => Self::new(G2, g, r(1), 1, 2, 2, DEFAULT_HORIZON),
            ("sigma", G1) => Self::new(G1, g, r(1), 2, 0, 4, DEFAULT_HORIZON),
            ("sigma", G2) => Self::sigma_g2(8),
            ("sigma3", G1) => Self::new(G1, g, r(9), 3, 0, 3, DEFAULT_HORIZON),
            ("sigma3", G2) => Self::sigma3_g2(8),
            (name, _) => Err(Error::Domain(format!(
                "no preset {kind:?} majorant for `{name}`; supply amplitude, degree and start"
            ))),
        }
    }

    /// `|σ(k+1) − 3σ(k)| ≤ 4 C(k+2, 2)` for `k ≥ start`.
    pub fn sigma_g2(start: u64) -> Result<Self> {
        Self::new(
            MajorantKind::G2,
            &ArithFn::sigma(),
            Rat::from_integer(4.into()),
            2,
            0,
            start,
            DEFAULT_HORIZON,
        )
    }

    /// `|σ₃(k+1) − 9σ₃(k)| ≤ 90 C(k+3, 3)` for `k ≥ start`.
    pub fn sigma3_g2(start: u64) -> Result<Self> {
        Self::new(
            MajorantKind::G2,
            &ArithFn::sigma3(),
            Rat::from_integer(90.into()),
            3,
            0,
            start,
            DEFAULT_HORIZON,
        )
    }

    pub fn kind(&self) -> MajorantKind {
        self.kind
    }

    pub fn target(&self) -> &ArithFn {
        &self.target
    }

    pub fn head(&self) -> &[Rat] {
        &self.head
    }

    pub fn amplitude(&self) -> &Rat {
        &self.amplitude
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn verified_horizon(&self) -> u64 {
        self.verified_horizon
    }

    pub fn to_json(&self) -> MajorantJson {
        MajorantJson {
            kind: self.kind,
            g: self.target.name().to_string(),
            head: self.head.iter().map(fmt_rat).collect(),
            amplitude: fmt_rat(&self.amplitude),
            degree: self.degree,
            shift: self.shift,
            start: self.start,
            verified_horizon: self.verified_horizon,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MajorantJson {
    pub kind: MajorantKind,
    pub g: String,
    pub head: Vec<String>,
    pub amplitude: String,
    pub degree: u32,
    pub shift: u32,
    pub start: u64,
    pub verified_horizon: u64,
}

/// Exact value of the majorant series at `0 < T < 1`.
pub fn majorant_eval(m: &Majorant, t: &Rat) -> Result<Rat> {
    if !t.is_positive() || t >= &Rat::one() {
        return Err(Error::Domain(format!("T = {t} must satisfy 0 < T < 1")));
    }
    let mut sum = Rat::zero();
    let mut tk = Rat::one();
    for k in 0..m.start {
        let diff = &m.head[k as usize] - m.tail_term(k);
        if !diff.is_zero() {
            sum += diff * &tk;
        }
        tk *= t;
    }
    if !m.amplitude.is_zero() {
        let one_minus = Rat::one() - t;
        sum += &m.amplitude * pow_rat(t, m.shift) / pow_rat(&one_minus, m.degree + 1);
    }
    Ok(sum)
}
