//! `P_0 = 1`, `P_n = (x / h(n)) · Σ_{k=1..n} g(k) · P_{n−k}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{ArithFn, Rat};
use crate::error::{Error, Result};

use super::poly::RationalPoly;

/// `P_0..P_N` for a pair `(g, h)`. Extending never touches existing entries.
///
/// When every `g(k)` and `h(k)` is an integer the sequence is carried
/// internally as `Q_n = D_n · P_n` with `D_n = h(1)···h(n)`, which has integer
/// coefficients and satisfies
/// `Q_n = x · Σ_k g(k) · h(n−k+1)···h(n−1) · Q_{n−k}`.
#[derive(Clone, Debug)]
pub struct PolySequence {
    g: ArithFn,
    h: ArithFn,
    polys: Vec<RationalPoly>,
    scaled: Option<Scaled>,
}

#[derive(Clone, Debug)]
struct Scaled {
    g: Vec<BigInt>,
    h: Vec<BigInt>,
    dens: Vec<BigInt>,
    polys: Vec<Vec<BigInt>>,
}

pub fn build_sequence(g: &ArithFn, h: &ArithFn, n: usize) -> Result<PolySequence> {
    if g.eval(1)? != Rat::one() {
        return Err(Error::Contract {
            name: g.name().to_string(),
            index: 1,
            reason: "g(1) must equal 1".into(),
        });
    }
    let mut seq = PolySequence {
        g: g.clone(),
        h: h.clone(),
        polys: vec![RationalPoly::one()],
        scaled: None,
    };
    if g.integer_values(1)?.is_some() && h.integer_values(1)?.is_some() {
        seq.scaled = Some(Scaled {
            g: Vec::new(),
            h: Vec::new(),
            dens: vec![BigInt::one()],
            polys: vec![vec![BigInt::one()]],
        });
    }
    seq.extend(n)?;
    Ok(seq)
}

/// `P_0(x), …, P_n(x)` at a fixed rational `x`, by the same recurrence on
/// numbers instead of polynomials.
pub fn eval_sequence(g: &ArithFn, h: &ArithFn, x: &Rat, n: usize) -> Result<Vec<Rat>> {
    if g.eval(1)? != Rat::one() {
        return Err(Error::Contract {
            name: g.name().to_string(),
            index: 1,
            reason: "g(1) must equal 1".into(),
        });
    }
    h.check_monotone_positive(n as u64)?;
    let gs = (1..=n as u64).map(|k| g.eval(k)).collect::<Result<Vec<_>>>()?;
    let mut vals = vec![Rat::one()];
    for m in 1..=n {
        let s = (1..=m).fold(Rat::zero(), |acc, k| acc + &gs[k - 1] * &vals[m - k]);
        vals.push(x * s / h.eval(m as u64)?);
    }
    Ok(vals)
}

impl PolySequence {
    pub fn g(&self) -> &ArithFn {
        &self.g
    }

    pub fn h(&self) -> &ArithFn {
        &self.h
    }

    /// Largest index built.
    pub fn max_n(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&RationalPoly> {
        self.polys.get(n)
    }

    pub fn polys(&self) -> &[RationalPoly] {
        &self.polys
    }

    /// `(D_n, Q_n)` with `P_n = Q_n / D_n`, when the integer path is active.
    pub fn scaled(&self, n: usize) -> Option<(&BigInt, &[BigInt])> {
        let s = self.scaled.as_ref()?;
        Some((s.dens.get(n)?, s.polys.get(n)?.as_slice()))
    }

    /// Builds entries up to `n`.
    pub fn extend(&mut self, n: usize) -> Result<()> {
        if n <= self.max_n() {
            return Ok(());
        }
        self.h.check_monotone_positive(n as u64)?;
        if self.scaled.is_some() {
            let gi = self.g.integer_values(n as u64)?;
            let hi = self.h.integer_values(n as u64)?;
            match (gi, hi) {
                (Some(gi), Some(hi)) => {
                    let s = self.scaled.as_mut().unwrap();
                    s.g = gi;
                    s.h = hi;
                    while self.polys.len() <= n {
                        let m = self.polys.len();
                        let (den, q) = s.next(m);
                        let p = RationalPoly::new(
                            q.iter().map(|c| Rat::new(c.clone(), den.clone())).collect(),
                        );
                        s.dens.push(den);
                        s.polys.push(q);
                        self.polys.push(p);
                    }
                    return Ok(());
                }
                _ => self.scaled = None,
            }
        }
        while self.polys.len() <= n {
            let m = self.polys.len();
            let p = self.rational_step(m)?;
            self.polys.push(p);
        }
        Ok(())
    }

    fn rational_step(&self, m: usize) -> Result<RationalPoly> {
        let mut acc = vec![Rat::zero(); m];
        for k in 1..=m {
            let gk = self.g.eval(k as u64)?;
            if gk.is_zero() {
                continue;
            }
            for (j, c) in self.polys[m - k].coeffs().iter().enumerate() {
                acc[j] += &gk * c;
            }
        }
        let hm = self.h.eval(m as u64)?;
        Ok(RationalPoly::new(acc).shift(1).scale(&(Rat::one() / hm)))
    }

    /// Re-expands the defining recurrence at index `n` in plain rational
    /// arithmetic and compares with the stored entry.
    pub fn check_recurrence(&self, n: usize) -> Result<bool> {
        if n == 0 {
            return Ok(self.polys[0] == RationalPoly::one());
        }
        if n > self.max_n() {
            return Ok(false);
        }
        Ok(self.rational_step(n)? == self.polys[n])
    }
}

impl Scaled {
    fn next(&self, m: usize) -> (BigInt, Vec<BigInt>) {
        let mut acc = vec![BigInt::zero(); m + 1];
        // w = h(m−k+1)···h(m−1), starting empty at k = 1.
        let mut w = BigInt::one();
        for k in 1..=m {
            if k > 1 {
                w *= &self.h[m - k];
            }
            let gk = &self.g[k - 1];
            if !gk.is_zero() {
                let f = gk * &w;
                for (j, c) in self.polys[m - k].iter().enumerate() {
                    if !c.is_zero() {
                        acc[j + 1] += &f * c;
                    }
                }
            }
        }
        while acc.last().is_some_and(|c| c.is_zero()) {
            acc.pop();
        }
        (&self.dens[m - 1] * &self.h[m - 1], acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat::{int, rat};

    #[test]
    fn spec_examples() {
        let s = build_sequence(&ArithFn::sigma(), &ArithFn::id(), 2).unwrap();
        assert_eq!(s.get(2).unwrap(), &RationalPoly::new(vec![int(0), rat(3, 2), rat(1, 2)]));
        let s = build_sequence(&ArithFn::one(), &ArithFn::id(), 2).unwrap();
        assert_eq!(s.get(2).unwrap(), &RationalPoly::new(vec![int(0), rat(1, 2), rat(1, 2)]));
        let s = build_sequence(&ArithFn::sigma(), &ArithFn::id(), 0).unwrap();
        assert_eq!(s.max_n(), 0);
        assert_eq!(s.get(0).unwrap(), &RationalPoly::one());
    }

    #[test]
    fn small_factorizations() {
        let s = build_sequence(&ArithFn::sigma(), &ArithFn::id(), 5).unwrap();
        let f = |roots: &[i64], d: i64| {
            RationalPoly::from_roots(&roots.iter().map(|&r| int(r)).collect::<Vec<_>>())
                .scale(&rat(1, d))
        };
        assert_eq!(s.get(3).unwrap(), &f(&[0, -1, -8], 6));
        assert_eq!(s.get(4).unwrap(), &f(&[0, -1, -3, -14], 24));
        let p5 = &f(&[0, -3, -6], 120) * &RationalPoly::from_ints(&[8, 21, 1]);
        assert_eq!(s.get(5).unwrap(), &p5);
        assert_eq!(s.get(1).unwrap().eval(&int(-24)), int(-24));
    }

    #[test]
    fn integer_and_rational_paths_agree() {
        let halves = ArithFn::custom("halves", (1..=12).map(|k| rat(k + 1, 2)).collect()).unwrap();
        let s = build_sequence(&ArithFn::sigma(), &halves, 12).unwrap();
        assert!(s.scaled(3).is_none());
        let t = build_sequence(&ArithFn::sigma(), &ArithFn::id(), 12).unwrap();
        assert!(t.scaled(3).is_some());
        for n in 0..=12 {
            assert!(s.check_recurrence(n).unwrap());
            assert!(t.check_recurrence(n).unwrap());
        }
    }

    #[test]
    fn extension_keeps_prefix() {
        let mut s = build_sequence(&ArithFn::sigma3(), &ArithFn::one(), 5).unwrap();
        let before = s.polys().to_vec();
        s.extend(9).unwrap();
        assert_eq!(&s.polys()[..6], before.as_slice());
        assert_eq!(s.max_n(), 9);
    }

    #[test]
    fn bad_h_names_index() {
        let h = ArithFn::custom("dip", vec![int(1), int(3), int(2), int(4)]).unwrap();
        match build_sequence(&ArithFn::sigma(), &h, 4) {
            Err(Error::Contract { index, .. }) => assert_eq!(index, 3),
            other => panic!("unexpected {other:?}"),
        }
        let h = ArithFn::custom("short", vec![int(1), int(2)]).unwrap();
        assert!(matches!(
            build_sequence(&ArithFn::sigma(), &h, 4),
            Err(Error::Horizon { .. })
        ));
    }

    #[test]
    fn unnormalized_g_rejected() {
        let g = ArithFn::custom("two", vec![int(2), int(1)]).unwrap();
        assert!(build_sequence(&g, &ArithFn::id(), 1).is_err());
    }
}
