//! Annulus windows in log-radius coordinates.
//!
//! A window `[t_low, t_high]` stands for the closed annulus
//! `A[p^t_low, p^t_high]`; `t_low = -∞` encodes inner radius zero (a disk)
//! and `t_high = +∞` an unbounded outer radius. Radii always live in the
//! value group, so windows are given in exact log-radii, never as raw radii.

use crate::error::Error;
use crate::rat::{ExtRat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusWindow {
    t_low: ExtRat,
    t_high: ExtRat,
}

impl AnnulusWindow {
    pub fn new(t_low: ExtRat, t_high: ExtRat) -> Result<Self, Error> {
        if matches!(t_low, ExtRat::PosInf) || matches!(t_high, ExtRat::NegInf) || t_low > t_high {
            return Err(Error::EmptyWindow);
        }
        Ok(AnnulusWindow { t_low, t_high })
    }

    /// Window with finite bounds.
    pub fn closed(t_low: Rat, t_high: Rat) -> Result<Self, Error> {
        Self::new(ExtRat::Finite(t_low), ExtRat::Finite(t_high))
    }

    /// Disk window: inner radius zero.
    pub fn disk(t_high: ExtRat) -> Result<Self, Error> {
        Self::new(ExtRat::NegInf, t_high)
    }

    /// The whole line of log-radii (the punctured plane minus the origin's
    /// radius only in the disk reading; as a window it is simply unbounded).
    pub fn all() -> Self {
        AnnulusWindow {
            t_low: ExtRat::NegInf,
            t_high: ExtRat::PosInf,
        }
    }

    pub fn t_low(&self) -> &ExtRat {
        &self.t_low
    }

    pub fn t_high(&self) -> &ExtRat {
        &self.t_high
    }

    pub fn is_disk(&self) -> bool {
        matches!(self.t_low, ExtRat::NegInf)
    }

    pub fn contains(&self, t: &ExtRat) -> bool {
        self.t_low <= *t && *t <= self.t_high
    }

    /// Strict interior, as an interval of log-radii. A `-∞` end is treated
    /// as interior for disk windows: the annulus then contains the origin,
    /// so a zero or pole at the origin sits inside the domain.
    pub fn interior_contains(&self, t: &ExtRat) -> bool {
        match t {
            ExtRat::NegInf => self.is_disk(),
            ExtRat::PosInf => false,
            finite => self.t_low < *finite && *finite < self.t_high,
        }
    }

    /// Reflect `t -> -t`, the window of `z -> 1/z`.
    pub fn reflect(&self) -> AnnulusWindow {
        AnnulusWindow {
            t_low: -self.t_high.clone(),
            t_high: -self.t_low.clone(),
        }
    }

    /// Some finite log-radius inside the window.
    pub fn sample_point(&self) -> Rat {
        use ExtRat::*;
        match (&self.t_low, &self.t_high) {
            (Finite(a), _) => a.clone(),
            (_, Finite(b)) => b.clone(),
            _ => Rat::from_integer(0.into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn ordering_is_enforced() {
        assert!(AnnulusWindow::closed(rat_int(1), rat_int(0)).is_err());
        assert!(AnnulusWindow::closed(rat_int(1), rat_int(1)).is_ok());
        assert!(AnnulusWindow::new(ExtRat::PosInf, ExtRat::PosInf).is_err());
    }

    #[test]
    fn reflection_is_an_involution() {
        let w = AnnulusWindow::new(ExtRat::NegInf, ExtRat::Finite(rat_int(2))).unwrap();
        let r = w.reflect();
        assert_eq!(r.t_low(), &ExtRat::Finite(rat_int(-2)));
        assert_eq!(r.t_high(), &ExtRat::PosInf);
        assert_eq!(r.reflect(), w);
    }

    #[test]
    fn interior_of_disk_window_holds_the_origin() {
        let disk = AnnulusWindow::disk(ExtRat::Finite(rat_int(0))).unwrap();
        assert!(disk.interior_contains(&ExtRat::NegInf));
        let ann = AnnulusWindow::closed(rat_int(-1), rat_int(1)).unwrap();
        assert!(!ann.interior_contains(&ExtRat::NegInf));
        assert!(ann.interior_contains(&ExtRat::Finite(rat_int(0))));
        assert!(!ann.interior_contains(&ExtRat::Finite(rat_int(1))));
    }
}
