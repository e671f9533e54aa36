//! Tropicalization, lattices and fundamental domains.
//!
//! The tropicalization of a torus point is the vector of coordinate
//! valuations `(-log_p|x_1|, ..., -log_p|x_g|)`; applied along an analytic
//! map it turns curves into piecewise-linear paths with integer slopes.
//! A full-rank integer lattice cuts the target into translates of its
//! half-open fundamental parallelepiped; `fundamental_reduce` finds the
//! translate of a point and `translates_met` the exact set of translates a
//! path visits, the computational content of the covering argument.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::jets::TorusMap;
use crate::pwl::PiecewiseLinear;
use crate::rat::{rat_int, ExtRat, Rat};
use crate::series::AnnulusWindow;
use crate::valued::ValuedScalar;

/// A point of the tropicalization target `ℚ^g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropPoint(pub Vec<Rat>);

impl TropPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Tropicalize a torus point: coordinatewise exact valuation. Every
/// coordinate must be nonzero.
pub fn trop_point(coords: &[ValuedScalar]) -> Result<TropPoint, Error> {
    let mut out = Vec::with_capacity(coords.len());
    for x in coords {
        match x.val() {
            ExtRat::Finite(v) => out.push(v),
            _ => return Err(Error::ZeroCoordinate),
        }
    }
    Ok(TropPoint(out))
}

/// A full-rank integer lattice in `ℤ^g`, stored as a `g×g` matrix whose
/// columns are the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    entries: Vec<Vec<i64>>,
}

impl Lattice {
    /// `entries[r][c]` is row `r`, column `c`; columns are basis vectors.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, Error> {
        let g = entries.len();
        if g == 0 || entries.iter().any(|row| row.len() != g) {
            return Err(Error::BadLatticeShape);
        }
        let lattice = Lattice { entries };
        if lattice.solve(&vec![Rat::zero(); g]).is_none() {
            return Err(Error::SingularLattice);
        }
        Ok(lattice)
    }

    pub fn identity(g: usize) -> Self {
        let entries = (0..g)
            .map(|r| (0..g).map(|c| i64::from(r == c)).collect())
            .collect();
        Lattice { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `Λ γ` for an integer vector.
    pub fn apply(&self, gamma: &[i64]) -> Vec<Rat> {
        let g = self.dim();
        (0..g)
            .map(|r| {
                (0..g)
                    .map(|c| rat_int(self.entries[r][c]) * rat_int(gamma[c]))
                    .fold(Rat::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Solve `Λ u = x` exactly; `None` when the matrix is singular.
    pub fn solve(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        let g = self.dim();
        debug_assert_eq!(x.len(), g);
        // Gaussian elimination over the rationals
        let mut aug: Vec<Vec<Rat>> = (0..g)
            .map(|r| {
                let mut row: Vec<Rat> = self.entries[r].iter().map(|&e| rat_int(e)).collect();
                row.push(x[r].clone());
                row
            })
            .collect();
        for col in 0..g {
            let pivot = (col..g).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].recip();
            for e in aug[col].iter_mut() {
                *e *= &inv;
            }
            let pivot_row = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (value, pivot_value) in row.iter_mut().zip(&pivot_row).skip(col) {
                        *value -= &factor * pivot_value;
                    }
                }
            }
        }
        Some(aug.into_iter().map(|row| row[g].clone()).collect())
    }
}

/// Reduce a point into the half-open fundamental parallelepiped
/// `{Λ u : u ∈ [0, 1)^g}`: returns the unique `γ ∈ ℤ^g` and residue with
/// `x = Λ γ + residue`.
pub fn fundamental_reduce(x: &TropPoint, lattice: &Lattice) -> Result<(Vec<i64>, TropPoint), Error> {
    if x.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch);
    }
    let u = lattice.solve(&x.0).ok_or(Error::SingularLattice)?;
    let gamma: Vec<i64> = u.iter().map(floor_to_i64).collect::<Result<_, _>>()?;
    let shifted = lattice.apply(&gamma);
    let residue: Vec<Rat> = x
        .0
        .iter()
        .zip(&shifted)
        .map(|(a, b)| a - b)
        .collect();
    Ok((gamma, TropPoint(residue)))
}

fn floor_to_i64(q: &Rat) -> Result<i64, Error> {
    let f = q.floor();
    i64::try_from(f.numer().clone()).map_err(|_| Error::CoordinateOverflow)
}

/// A closed axis-aligned cube: `{t : |t_i - center_i| <= eps}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cube {
    pub center: Vec<Rat>,
    pub eps: Rat,
}

impl Cube {
    pub fn new(center: Vec<Rat>, eps: Rat) -> Result<Self, Error> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEps);
        }
        Ok(Cube { center, eps })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Whether the translate by an integer vector meets the cube, decided
    /// by interval intersection per axis: `(a + S) ∩ S ≠ ∅` iff every
    /// `|a_i| <= 2 eps` (the cubes are closed).
    pub fn meets_translate(&self, a: &[i64]) -> bool {
        let two_eps = &self.eps + &self.eps;
        a.iter().all(|&ai| rat_int(ai).abs() <= two_eps)
    }
}

/// Disjointness report for all nonzero integer translates of a cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeReport {
    pub disjoint: bool,
    /// A nonzero translate meeting the cube, when one exists.
    pub witness: Option<Vec<i64>>,
}

/// Whether `(a + S) ∩ S = ∅` for every `a ∈ ℤ^g \ {0}`. Among nonzero
/// integer vectors the unit vectors minimize every `|a_i|`, so the decision
/// reduces to the first axis: disjoint iff `eps < 1/2`.
pub fn cube_disjointness(cube: &Cube) -> CubeReport {
    let mut unit = vec![0i64; cube.dim().max(1)];
    unit[0] = 1;
    if cube.meets_translate(&unit) {
        CubeReport {
            disjoint: false,
            witness: Some(unit),
        }
    } else {
        CubeReport {
            disjoint: true,
            witness: None,
        }
    }
}

/// A piecewise-linear path in `ℚ^g`: the tropicalization of an analytic
/// map into the torus, coordinate by coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropPath {
    coords: Vec<PiecewiseLinear>,
}

impl TropPath {
    pub fn new(coords: Vec<PiecewiseLinear>) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch);
        }
        let domain = coords[0].domain().clone();
        if coords.iter().any(|c| c.domain() != &domain) {
            return Err(Error::DimensionMismatch);
        }
        Ok(TropPath { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn domain(&self) -> &AnnulusWindow {
        self.coords[0].domain()
    }

    pub fn coords(&self) -> &[PiecewiseLinear] {
        &self.coords
    }

    pub fn value(&self, t: &Rat) -> TropPoint {
        TropPoint(self.coords.iter().map(|c| c.value(t)).collect())
    }

    pub fn restrict(&self, window: &AnnulusWindow) -> Result<TropPath, Error> {
        TropPath::new(
            self.coords
                .iter()
                .map(|c| c.restrict(window))
                .collect::<Result<_, _>>()?,
        )
    }
}

/// Tropicalize a torus map: coordinate `i` of the path at log-radius `t`
/// is `val(f_i) = -log_p|f_i|_{p^t}`, a piecewise-linear function with
/// integer slopes. Every coordinate is tropicalized, including the plain
/// ones; they must be nonzero as rational functions.
pub fn trop_map(map: &TorusMap) -> Result<TropPath, Error> {
    let window = map.window();
    let coords = map
        .coords()
        .iter()
        .map(|f| {
            if f.is_zero() {
                return Err(Error::ZeroCoordinate);
            }
            Ok(crate::nevanlinna::lognorm_fn(f, window)?.neg())
        })
        .collect::<Result<Vec<_>, _>>()?;
    TropPath::new(coords)
}

/// The exact set of lattice translates `γ` such that the reduced path
/// visits `γ` somewhere on the window: splitting at path breakpoints and
/// at integer crossings of the lattice coordinates makes the set finite
/// and exactly computable. An unbounded window is rejected unless the
/// path is eventually constant in lattice coordinates.
pub fn translates_met(
    path: &TropPath,
    lattice: &Lattice,
    window: &AnnulusWindow,
) -> Result<Vec<Vec<i64>>, Error> {
    if path.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch);
    }
    let path = path.restrict(window)?;
    let g = path.dim();

    // lattice coordinates of the path: u_i(t) = Σ_j inv[i][j] path_j(t),
    // assembled by solving Λ u = e_j once per j
    let mut inverse_cols: Vec<Vec<Rat>> = Vec::with_capacity(g);
    for j in 0..g {
        let mut e = vec![Rat::zero(); g];
        e[j] = Rat::one();
        inverse_cols.push(lattice.solve(&e).ok_or(Error::SingularLattice)?);
    }
    // u_i = Σ_j inverse[i][j] * path_j
    let u: Vec<PiecewiseLinear> = (0..g)
        .map(|i| {
            let mut acc: Option<PiecewiseLinear> = None;
            for (j, coord) in path.coords().iter().enumerate() {
                let term = coord.scale(&inverse_cols[j][i]);
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.add(&term),
                });
            }
            acc.unwrap()
        })
        .collect();

    // unbounded ends are fine only when every lattice coordinate is flat
    // there; otherwise infinitely many translates are met
    if matches!(window.t_low(), ExtRat::NegInf)
        && u.iter().any(|c| !c.leftmost_slope().is_zero())
    {
        return Err(Error::UnboundedTranslates);
    }
    if matches!(window.t_high(), ExtRat::PosInf)
        && u.iter().any(|c| !c.final_slope().is_zero())
    {
        return Err(Error::UnboundedTranslates);
    }

    // split points: breakpoints plus integer crossings of each u_i
    let mut points: BTreeSet<Rat> = BTreeSet::new();
    if let ExtRat::Finite(a) = window.t_low() {
        points.insert(a.clone());
    }
    if let ExtRat::Finite(b) = window.t_high() {
        points.insert(b.clone());
    }
    for coord in &u {
        for bp in coord.breakpoints() {
            points.insert(bp.clone());
        }
        // reference points for flat unbounded tails
        let (anchor_t, _) = coord.anchor();
        points.insert(anchor_t.clone());
    }
    let base: Vec<Rat> = points.iter().cloned().collect();
    for coord in &u {
        for pair in base.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            let va = coord.value(a);
            let vb = coord.value(b);
            if va == vb {
                continue;
            }
            let (lo, hi) = if va < vb { (&va, &vb) } else { (&vb, &va) };
            let slope = (&vb - &va) / (b - a);
            let mut z = lo.ceil();
            while z <= hi.floor() {
                let t = a + (&z - &va) / &slope;
                if *a <= t && t <= *b {
                    points.insert(t);
                }
                z += Rat::one();
            }
        }
    }

    // evaluate the reduction at every split point and between consecutive
    // split points
    let points: Vec<Rat> = points.into_iter().collect();
    let mut met: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut visit = |t: &Rat| -> Result<(), Error> {
        let gamma: Vec<i64> = u
            .iter()
            .map(|c| floor_to_i64(&c.value(t)))
            .collect::<Result<_, _>>()?;
        met.insert(gamma);
        Ok(())
    };
    for (i, t) in points.iter().enumerate() {
        visit(t)?;
        if let Some(next) = points.get(i + 1) {
            let mid = (t + next) / rat_int(2);
            visit(&mid)?;
        }
    }
    Ok(met.into_iter().collect())
}

/// Wire shape of a lattice: row-major integer matrix.
#[derive(Serialize, Deserialize)]
struct LatticeDto(Vec<Vec<i64>>);

impl Serialize for Lattice {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LatticeDto(self.entries.clone()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let dto = LatticeDto::deserialize(deserializer)?;
        Lattice::new(dto.0).map_err(D::Error::custom)
    }
}
