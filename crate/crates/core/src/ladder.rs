//! SUSYQM factorization of the radial Hamiltonian, the shape-invariance
//! hierarchy and the resulting finite bound-state spectrum.
//!
//! The radial Hamiltonian of channel `l` factorizes as `h = B+(g,s) B-(g,s) + eps0`
//! with
//!
//! ```text
//! B±(g, s) = (1/sqrt 2) (∓ sqrt(f) d/drho sqrt(f) - s/rho + g)
//! ```
//!
//! Shape invariance maps `(g, s)` to `(g_1, s_1)`, and iterating the map gives
//! the rungs `(g_i, s_i)` from which every level follows by telescoping.

use num::{BigInt, BigRational, One};

use crate::error::{Error, Result};
use crate::model::{angular_eigenvalue, effective_charge, DeformedCoulombModel, Picture};
use crate::numdiff;
use crate::polynomial::Scalar;

/// `g_i` of the hierarchy rooted at `(g, s)`:
/// `[g s - (alpha/2)(s + (2s+1) i + i^2)] / (s + i) + alpha/2`.
pub fn rung_g<T: Scalar>(g: &T, s: &T, alpha: &T, i: u32) -> T {
    let i_t = T::from_int(i);
    let half_alpha = alpha.clone() / T::from_int(2);
    let two_s_plus_one = s.clone() + s.clone() + T::one();
    let shift = s.clone() + two_s_plus_one * i_t.clone() + i_t.clone() * i_t.clone();
    (g.clone() * s.clone() - half_alpha.clone() * shift) / (s.clone() + i_t) + half_alpha
}

/// Base superpotential `g` of channel `l` for charge `z`:
/// `{z - (alpha/2)[(l+1)^2 + L^2 + 1]} / (l+1)`.
pub fn base_g<T: Scalar>(z: &T, alpha: &T, l: u32) -> T {
    let s = T::from_int(l + 1);
    let l2 = T::from_int(l * (l + 1));
    let half_alpha = alpha.clone() / T::from_int(2);
    (z.clone() - half_alpha * (s.clone() * s.clone() + l2 + T::one())) / s
}

/// A shape-invariant family rooted at `(g, s)`.
///
/// `offset` is the constant `alpha^2 (L^2 + 1) / 2` such that the levels of the
/// family are `e_k = -g_k^2 / 2 + offset`. Shifting the root along the
/// hierarchy keeps the offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hierarchy {
    pub g: f64,
    pub s: f64,
    pub alpha: f64,
    pub offset: f64,
}

impl Hierarchy {
    /// Family of the deformed-picture channel `l` with Coulomb strength `z`.
    pub fn for_channel(z: f64, alpha: f64, l: u32) -> Self {
        Self {
            g: base_g(&z, &alpha, l),
            s: f64::from(l + 1),
            alpha,
            offset: 0.5 * alpha * alpha * (angular_eigenvalue(l) + 1.0),
        }
    }

    pub fn g_at(&self, i: u32) -> f64 {
        rung_g(&self.g, &self.s, &self.alpha, i)
    }

    pub fn s_at(&self, i: u32) -> f64 {
        self.s + f64::from(i)
    }

    /// The family rooted at rung `i`, i.e. `(g_i, s_i)`.
    pub fn shifted(&self, i: u32) -> Self {
        Self {
            g: self.g_at(i),
            s: self.s_at(i),
            ..*self
        }
    }

    /// Factorization energy `eps_i`.
    pub fn eps(&self, i: u32) -> f64 {
        if i == 0 {
            -0.5 * self.g * self.g + self.offset
        } else {
            let (a, b) = (self.g_at(i - 1), self.g_at(i));
            0.5 * (a * a - b * b)
        }
    }

    /// `e_k = -g_k^2 / 2 + offset`.
    pub fn level(&self, k: u32) -> f64 {
        let gk = self.g_at(k);
        -0.5 * gk * gk + self.offset
    }

    /// `sum_{i=0}^{k} eps_i`, accumulated rung by rung.
    pub fn level_telescoped(&self, k: u32) -> f64 {
        (0..=k).map(|i| self.eps(i)).sum()
    }

    /// `e_k - e_0 = (g^2 - g_k^2) / 2`.
    pub fn excitation(&self, k: u32) -> f64 {
        let gk = self.g_at(k);
        0.5 * (self.g * self.g - gk * gk)
    }

    /// Whether rung `k` carries a square-integrable state (`s_k > 0`, `g_k > 0`).
    pub fn normalizable(&self, k: u32) -> bool {
        self.s_at(k) > 0.0 && self.g_at(k) > 0.0
    }

    fn sqrt_f(&self, rho: f64) -> f64 {
        (1.0 + self.alpha * rho).sqrt()
    }

    /// `B-(g, s) F` at `rho`, with the derivative taken by a five-point stencil
    /// of step `h` (`h < rho / 2`).
    pub fn lower<F: Fn(f64) -> f64>(&self, func: F, rho: f64, h: f64) -> f64 {
        let derivative = self.sqrt_f(rho) * numdiff::d1(|r| self.sqrt_f(r) * func(r), rho, h);
        std::f64::consts::FRAC_1_SQRT_2 * (derivative + (self.g - self.s / rho) * func(rho))
    }

    /// `B+(g, s) F` at `rho`.
    pub fn raise<F: Fn(f64) -> f64>(&self, func: F, rho: f64, h: f64) -> f64 {
        let derivative = self.sqrt_f(rho) * numdiff::d1(|r| self.sqrt_f(r) * func(r), rho, h);
        std::f64::consts::FRAC_1_SQRT_2 * (-derivative + (self.g - self.s / rho) * func(rho))
    }

    /// `B-(g, s)` applied to samples on a uniform grid with second-order
    /// central differences. Returns values at the interior nodes.
    pub fn lower_sampled(&self, rho: &[f64], values: &[f64]) -> Vec<f64> {
        assert_eq!(rho.len(), values.len());
        let u: Vec<f64> = rho.iter().zip(values).map(|(&r, &v)| self.sqrt_f(r) * v).collect();
        (1..rho.len().saturating_sub(1))
            .map(|j| {
                let du = (u[j + 1] - u[j - 1]) / (rho[j + 1] - rho[j - 1]);
                let r = rho[j];
                std::f64::consts::FRAC_1_SQRT_2
                    * (self.sqrt_f(r) * du + (self.g - self.s / r) * values[j])
            })
            .collect()
    }
}

/// Root of the hierarchy for channel `l`: `s`, `g` and the factorization energy `eps0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factorization {
    pub s: f64,
    pub g: f64,
    pub eps0: f64,
}

pub fn factorization_base(model: &DeformedCoulombModel, l: u32) -> Factorization {
    let h = Hierarchy::for_channel(model.z(), model.alpha(), l);
    Factorization {
        s: h.s,
        g: h.g,
        eps0: h.eps(0),
    }
}

/// One rung `(s_i, g_i, eps_i)` of the shape-invariance hierarchy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderStep {
    pub i: u32,
    pub s: f64,
    pub g: f64,
    pub eps: f64,
}

pub fn ladder_step(model: &DeformedCoulombModel, l: u32, i: u32) -> LadderStep {
    let h = Hierarchy::for_channel(model.z(), model.alpha(), l);
    LadderStep {
        i,
        s: h.s_at(i),
        g: h.g_at(i),
        eps: h.eps(i),
    }
}

/// Radial and orbital quantum numbers; `n = k + l + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundStateKey {
    pub k: u32,
    pub l: u32,
}

impl BoundStateKey {
    pub fn new(k: u32, l: u32) -> Self {
        Self { k, l }
    }

    /// Builds the key from the principal quantum number; `None` unless `n > l`.
    pub fn from_principal(n: u32, l: u32) -> Option<Self> {
        (n > l).then(|| Self::new(n - l - 1, l))
    }

    pub fn n(&self) -> u32 {
        self.k + self.l + 1
    }

    /// Left side of the counting inequality, `(l+k+1)^2 + l(l+1)`.
    pub fn counting_lhs(&self) -> u64 {
        let n = u64::from(self.n());
        let l = u64::from(self.l);
        n * n + l * (l + 1)
    }
}

const GUARD_BAND: f64 = 1e-12;

/// Right side `B` of the counting inequality `(l+k+1)^2 + l(l+1) < B`.
///
/// When the charge, deformation and ordering parameters are all recognisable
/// as rationals with denominators up to `10^6`, the comparison is exact;
/// otherwise a relative guard band of `1e-12` excludes states sitting on the
/// boundary (where `g_k = 0` and the state is not normalizable).
#[derive(Debug, Clone, PartialEq)]
pub struct CountingBound {
    value: f64,
    exact: Option<BigRational>,
}

impl CountingBound {
    /// `None` when `alpha = 0` (the spectrum is infinite).
    pub fn new(model: &DeformedCoulombModel, picture: Picture) -> Option<Self> {
        if model.alpha() == 0.0 {
            return None;
        }
        let (z, a) = (model.z(), model.alpha());
        let value = 2.0 * z / a - picture_constant(picture);
        let exact = (|| {
            let zr = as_rational(z)?;
            let ar = as_rational(a)?;
            let c = match picture {
                Picture::Deformed => BigRational::one(),
                Picture::CurvedSpace => -BigRational::one(),
                Picture::PositionDependentMass(o) => {
                    BigRational::from_integer(2.into()) - as_rational(o.delta)? - as_rational(o.lambda)?
                }
            };
            Some(BigRational::from_integer(2.into()) * zr / ar - c)
        })();
        Some(Self { value, exact })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn admits(&self, lhs: u64) -> bool {
        match &self.exact {
            Some(b) => BigRational::from_integer(BigInt::from(lhs)) < *b,
            None => (lhs as f64) < self.value - GUARD_BAND * self.value.abs().max(1.0),
        }
    }
}

/// Constant `c` in `B = 2 Z / alpha - c` for each picture.
fn picture_constant(picture: Picture) -> f64 {
    match picture {
        Picture::Deformed => 1.0,
        Picture::PositionDependentMass(o) => 2.0 - o.delta - o.lambda,
        Picture::CurvedSpace => -1.0,
    }
}

/// Recovers `p/q` with `q <= 10^6` from a double when it matches to within a
/// couple of ulps, via the continued-fraction expansion.
fn as_rational(x: f64) -> Option<BigRational> {
    const MAX_DEN: i64 = 1_000_000;
    if !x.is_finite() {
        return None;
    }
    let tol = 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE);
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x.abs();
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            break;
        }
        let a = a as i64;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > MAX_DEN {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if (p1 as f64 / q1 as f64 - x.abs()).abs() <= tol {
            let v = BigRational::new(p1.into(), q1.into());
            return Some(if x < 0.0 { -v } else { v });
        }
        let frac = r - r.floor();
        if frac == 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Checks the counting inequality; always satisfied for `alpha = 0`.
pub fn check_bound(model: &DeformedCoulombModel, picture: Picture, key: BoundStateKey) -> Result<()> {
    match CountingBound::new(model, picture) {
        None => Ok(()),
        Some(b) if b.admits(key.counting_lhs()) => Ok(()),
        Some(b) => Err(Error::NotBound {
            k: key.k,
            l: key.l,
            lhs: key.counting_lhs(),
            bound: b.value(),
        }),
    }
}

/// Deformed-picture level in terms of the principal quantum number:
/// `-[z - (alpha/2)(L^2+1)]^2 / (2n^2) - alpha^2 n^2 / 8 + (alpha/2)[z + (alpha/2)(L^2+1)]`.
pub fn closed_form_energy(z: f64, alpha: f64, l: u32, n: u32) -> f64 {
    let l2 = angular_eigenvalue(l);
    let n = f64::from(n);
    let a = z - 0.5 * alpha * (l2 + 1.0);
    -a * a / (2.0 * n * n) - alpha * alpha * n * n / 8.0 + 0.5 * alpha * (z + 0.5 * alpha * (l2 + 1.0))
}

/// The level formula written directly in each picture's own parameters.
fn picture_closed_form(model: &DeformedCoulombModel, picture: Picture, key: BoundStateKey) -> f64 {
    let (z, alpha) = (model.z(), model.alpha());
    let l2 = angular_eigenvalue(key.l);
    let n = f64::from(key.n());
    let quad = -alpha * alpha * n * n / 8.0;
    match picture {
        Picture::Deformed => closed_form_energy(z, alpha, key.l, key.n()),
        Picture::PositionDependentMass(o) => {
            let (d, lam) = (o.delta, o.lambda);
            let a = z - 0.5 * alpha * (l2 + 2.0 - d - lam);
            -a * a / (2.0 * n * n)
                + quad
                + 0.5 * alpha * (z + 0.5 * alpha * (l2 + d + lam))
                + 0.5 * alpha * alpha * (1.0 - d - lam + (0.5 - d) * (0.5 - lam))
        }
        Picture::CurvedSpace => {
            let a = z - 0.5 * alpha * (l2 - 1.0);
            -a * a / (2.0 * n * n) + quad + 0.5 * alpha * (z + 0.5 * alpha * (l2 + 1.0))
        }
    }
}

/// The hierarchy a picture reduces to: channel `l` of the deformed problem with
/// the picture's effective charge.
pub fn picture_hierarchy(model: &DeformedCoulombModel, picture: Picture, l: u32) -> Hierarchy {
    let ec = effective_charge(model, picture);
    Hierarchy::for_channel(ec.z_eff, model.alpha(), l)
}

/// Level obtained by summing the factorization energies plus the picture's shift.
pub fn energy_telescoped(model: &DeformedCoulombModel, picture: Picture, key: BoundStateKey) -> f64 {
    let shift = effective_charge(model, picture).const_shift;
    picture_hierarchy(model, picture, key.l).level_telescoped(key.k) + shift
}

/// Closed-form bound-state energy `e_nl` of the picture.
pub fn energy(model: &DeformedCoulombModel, picture: Picture, key: BoundStateKey) -> Result<f64> {
    check_bound(model, picture, key)?;
    let closed = picture_closed_form(model, picture, key);
    debug_assert!({
        let tele = energy_telescoped(model, picture, key);
        (closed - tele).abs() <= 1e-9 * (1.0 + closed.abs() + model.z() * model.z())
    });
    Ok(closed)
}

/// One row of a spectrum table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub key: BoundStateKey,
    pub energy: f64,
    pub g_k: f64,
    pub s_k: f64,
}

/// The complete, finite set of bound states of a picture.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub picture: Picture,
    /// Ordered by `l`, then `k`.
    pub entries: Vec<SpectrumEntry>,
    /// Largest admissible `l`, `None` when there are no bound states.
    pub l_max: Option<u32>,
    /// `k_max` for `l = 0..=l_max`.
    pub k_max: Vec<u32>,
}

impl SpectrumTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count_for_l(&self, l: u32) -> usize {
        self.entries.iter().filter(|e| e.key.l == l).count()
    }

    pub fn contains(&self, key: BoundStateKey) -> bool {
        self.entries.iter().any(|e| e.key == key)
    }

    /// Entries sorted by energy, ties broken by `(n, l)`.
    pub fn sorted_by_energy(&self) -> Vec<SpectrumEntry> {
        let mut v = self.entries.clone();
        sort_by_energy(&mut v);
        v
    }

    /// Pairs `(l, n)` at which the energy fails to increase from `n - 1` to `n`.
    pub fn ordering_violations(&self) -> Vec<(u32, u32)> {
        self.entries
            .windows(2)
            .filter(|w| w[0].key.l == w[1].key.l && w[1].energy <= w[0].energy)
            .map(|w| (w[1].key.l, w[1].key.n()))
            .collect()
    }
}

fn sort_by_energy(v: &mut [SpectrumEntry]) {
    v.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.key.n().cmp(&b.key.n()))
            .then(a.key.l.cmp(&b.key.l))
    });
}

/// Result of enumerating bound states.
#[derive(Debug, Clone, PartialEq)]
pub enum Spectrum {
    Finite(SpectrumTable),
    /// `alpha = 0`: the undeformed Coulomb problem with infinitely many levels.
    Infinite,
}

impl Spectrum {
    pub fn table(&self) -> Option<&SpectrumTable> {
        match self {
            Spectrum::Finite(t) => Some(t),
            Spectrum::Infinite => None,
        }
    }
}

fn entry(model: &DeformedCoulombModel, picture: Picture, key: BoundStateKey) -> SpectrumEntry {
    let h = picture_hierarchy(model, picture, key.l);
    SpectrumEntry {
        key,
        energy: picture_closed_form(model, picture, key),
        g_k: h.g_at(key.k),
        s_k: h.s_at(key.k),
    }
}

pub fn enumerate_bound_states(model: &DeformedCoulombModel, picture: Picture) -> Spectrum {
    let Some(bound) = CountingBound::new(model, picture) else {
        return Spectrum::Infinite;
    };
    let mut entries = Vec::new();
    let mut k_max = Vec::new();
    let mut l = 0u32;
    // (l+1)(2l+1) < B decides l_max on its own, independently of the k scan.
    while bound.admits(u64::from(l + 1) * u64::from(2 * l + 1)) {
        let mut k = 0u32;
        while bound.admits(BoundStateKey::new(k, l).counting_lhs()) {
            entries.push(entry(model, picture, BoundStateKey::new(k, l)));
            k += 1;
        }
        debug_assert!(k > 0);
        k_max.push(k - 1);
        l += 1;
    }
    Spectrum::Finite(SpectrumTable {
        picture,
        entries,
        l_max: l.checked_sub(1),
        k_max,
    })
}

/// The first `count` levels of the undeformed (`alpha = 0`) problem, ordered by
/// energy then `l`. Used in place of a table when the spectrum is infinite.
pub fn leading_levels(model: &DeformedCoulombModel, picture: Picture, count: usize) -> Vec<SpectrumEntry> {
    let mut out = Vec::with_capacity(count);
    let mut n = 1u32;
    while out.len() < count {
        for l in 0..n {
            if out.len() == count {
                break;
            }
            out.push(entry(model, picture, BoundStateKey::new(n - l - 1, l)));
        }
        n += 1;
    }
    sort_by_energy(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::OrderingParams;
    use num::{Signed, ToPrimitive, Zero};

    fn model(z: f64, alpha: f64) -> DeformedCoulombModel {
        DeformedCoulombModel::new(z, alpha).unwrap()
    }

    #[test]
    fn factorization_hydrogen_limit() {
        let f = factorization_base(&model(1.0, 0.0), 0);
        assert_eq!((f.s, f.g, f.eps0), (1.0, 1.0, -0.5));
        let f = factorization_base(&model(1.0, 0.0), 1);
        assert_eq!((f.s, f.g, f.eps0), (2.0, 0.5, -0.125));
    }

    #[test]
    fn factorization_deformed() {
        let f = factorization_base(&model(1.0, 0.1), 0);
        assert_eq!(f.s, 1.0);
        assert!((f.g - 0.9).abs() < 1e-15);
        assert!((f.eps0 + 0.4).abs() < 1e-15);
    }

    #[test]
    fn ladder_steps() {
        let st = ladder_step(&model(1.0, 0.0), 0, 2);
        assert_eq!(st.s, 3.0);
        assert!((st.g - 1.0 / 3.0).abs() < 1e-15);
        let st = ladder_step(&model(1.0, 0.1), 0, 1);
        assert_eq!(st.s, 2.0);
        assert!((st.g - 0.375).abs() < 1e-15);
        for (z, a, l) in [(1.0, 0.1, 0), (2.3, 0.07, 3), (0.5, 0.0, 2)] {
            let m = model(z, a);
            let st = ladder_step(&m, l, 0);
            let f = factorization_base(&m, l);
            assert_eq!((st.s, st.g, st.eps), (f.s, f.g, f.eps0));
        }
    }

    #[test]
    fn first_rung_formula_matches_channel_form() {
        // g_i in terms of (g, s) equals the channel formula with l + i + 1.
        let (z, a) = (1.7, 0.13);
        for l in 0..4u32 {
            let h = Hierarchy::for_channel(z, a, l);
            for i in 0..6u32 {
                let m = f64::from(l + i + 1);
                let direct = (z - 0.5 * a * (m * m + angular_eigenvalue(l) + 1.0)) / m;
                assert!((h.g_at(i) - direct).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn shifting_root_shifts_index() {
        let h = Hierarchy::for_channel(1.0, 0.1, 1);
        let h1 = h.shifted(1);
        for i in 0..5 {
            assert!((h1.g_at(i) - h.g_at(i + 1)).abs() < 1e-14);
            assert_eq!(h1.s_at(i), h.s_at(i + 1));
        }
    }

    #[test]
    fn hydrogen_energies() {
        let m = model(1.0, 0.0);
        let e = energy(&m, Picture::Deformed, BoundStateKey::new(0, 0)).unwrap();
        assert_eq!(e, -0.5);
        for l in 0..2 {
            let e = energy(&m, Picture::Deformed, BoundStateKey::from_principal(2, l).unwrap());
            assert!((e.unwrap() + 0.125).abs() < 1e-15);
        }
    }

    #[test]
    fn deformed_ground_energy() {
        let e = energy(&model(1.0, 0.1), Picture::Deformed, BoundStateKey::new(0, 0)).unwrap();
        assert!((e + 0.4).abs() < 1e-14);
    }

    #[test]
    fn energy_rejects_unbound() {
        let m = model(1.0, 0.1);
        match energy(&m, Picture::Deformed, BoundStateKey::new(0, 5)) {
            Err(Error::NotBound { lhs, bound, .. }) => {
                assert_eq!(lhs, 66);
                assert_eq!(bound, 19.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(energy(&m, Picture::Deformed, BoundStateKey::new(4, 0)).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let t = enumerate_bound_states(&model(1.0, 0.1), Picture::Deformed);
        let t = t.table().unwrap();
        assert_eq!(t.l_max, Some(2));
        assert_eq!(t.k_max, vec![3, 2, 0]);
        assert_eq!(t.len(), 8);
        assert!(t.ordering_violations().is_empty());

        let t = enumerate_bound_states(&model(1.0, 2.5), Picture::Deformed);
        let t = t.table().unwrap();
        assert!(t.is_empty());
        assert_eq!(t.l_max, None);

        let t = enumerate_bound_states(&model(1.0, 0.1), Picture::CurvedSpace);
        assert_eq!(t.table().unwrap().k_max[0], 3);

        assert_eq!(enumerate_bound_states(&model(1.0, 0.0), Picture::Deformed), Spectrum::Infinite);
    }

    #[test]
    fn boundary_states_are_excluded_exactly() {
        // 2Z/alpha - 1 = 4 exactly: k = 1, l = 0 sits on the boundary (g_1 = 0).
        let m = model(1.0, 0.4);
        let b = CountingBound::new(&m, Picture::Deformed).unwrap();
        assert!(b.is_exact());
        assert!(!b.admits(4));
        assert!(b.admits(3));
        let h = Hierarchy::for_channel(1.0, 0.4, 0);
        assert!(h.g_at(1).abs() < 1e-15);
        let t = enumerate_bound_states(&m, Picture::Deformed);
        assert_eq!(t.table().unwrap().len(), 1);

        // 0.3 is not dyadic; 2/0.3 - 1 = 17/3.
        let m = model(0.6, 0.3);
        let b = CountingBound::new(&m, Picture::Deformed).unwrap();
        assert!(b.is_exact());
        assert!(!b.admits(4 * 4));
        let m = model(0.15, 0.1);
        // 2 * 0.15 / 0.1 - 1 = 2 exactly in rationals, 1.9999999999999996 in floats
        assert!(!CountingBound::new(&m, Picture::Deformed).unwrap().admits(2));
        assert!(CountingBound::new(&m, Picture::Deformed).unwrap().admits(1));
    }

    #[test]
    fn guard_band_for_irrational_inputs() {
        let a = std::f64::consts::PI / 10.0;
        let m = model(a * 2.5, a); // B = 4 up to rounding
        let b = CountingBound::new(&m, Picture::Deformed).unwrap();
        assert!(!b.is_exact());
        assert!(!b.admits(4));
        assert!(b.admits(1));
    }

    #[test]
    fn rational_recovery() {
        assert_eq!(as_rational(0.1), Some(BigRational::new(1.into(), 10.into())));
        assert_eq!(as_rational(-2.5), Some(BigRational::new((-5).into(), 2.into())));
        assert_eq!(as_rational(0.0), Some(BigRational::zero()));
        assert!(as_rational(std::f64::consts::E).is_none());
    }

    #[test]
    fn pdm_bound_uses_modified_condition() {
        let m = model(1.0, 0.1);
        let o = OrderingParams::new(0.5, 0.5); // kappa = 1
        let b = CountingBound::new(&m, Picture::PositionDependentMass(o)).unwrap();
        assert_eq!(b.value(), 19.0);
        let o = OrderingParams::new(2.0, 2.0); // kappa = -2 -> B = 22
        let b = CountingBound::new(&m, Picture::PositionDependentMass(o)).unwrap();
        assert!(b.admits(21) && !b.admits(22));
    }

    #[test]
    fn ladder_operators_annihilate_ground_state_form() {
        let h = Hierarchy::for_channel(1.0, 0.1, 1);
        let p = h.g / h.alpha + h.s + 0.5;
        let r0 = |r: f64| r.powf(h.s) * (1.0 + h.alpha * r).powf(-p);
        for i in 1..40 {
            let rho = 0.25 * f64::from(i);
            let lowered = h.lower(r0, rho, 1e-3);
            assert!(lowered.abs() < 1e-9 * (1.0 + r0(rho).abs()), "{rho}: {lowered}");
        }
    }

    #[test]
    fn leading_levels_hydrogen() {
        let levels = leading_levels(&model(1.0, 0.0), Picture::Deformed, 4);
        let e: Vec<f64> = levels.iter().map(|e| e.energy).collect();
        assert_eq!(e[0], -0.5);
        assert!(e[1..3].iter().all(|x| (x + 0.125).abs() < 1e-15));
        assert!((e[3] + 1.0 / 18.0).abs() < 1e-15);
    }

    #[test]
    fn exact_rung_is_rational() {
        let z = BigRational::from_integer(1.into());
        let a = BigRational::new(1.into(), 10.into());
        let g = base_g(&z, &a, 0);
        assert_eq!(g, BigRational::new(9.into(), 10.into()));
        let g1 = rung_g(&g, &BigRational::from_integer(1.into()), &a, 1);
        assert_eq!(g1, BigRational::new(3.into(), 8.into()));
        assert_eq!(g1.to_f64(), Some(0.375));
        assert!(g1.is_positive());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn telescoping_matches_closed_form(
                z in 0.2f64..4.0, alpha in 0.0f64..0.5, l in 0u32..6, k in 0u32..10,
            ) {
                let h = Hierarchy::for_channel(z, alpha, l);
                let tele = h.level_telescoped(k);
                let closed = h.level(k);
                let by_n = closed_form_energy(z, alpha, l, k + l + 1);
                let scale = 1.0 + closed.abs();
                prop_assert!((tele - closed).abs() < 1e-12 * scale);
                prop_assert!((by_n - closed).abs() < 1e-12 * scale);
            }

            #[test]
            fn picture_formulas_match_reduced_problem(
                z in 0.2f64..4.0, alpha in 0.0f64..0.5, l in 0u32..5, k in 0u32..8,
                delta in -2.0f64..2.0, lambda in -2.0f64..2.0,
            ) {
                let m = model(z, alpha);
                let key = BoundStateKey::new(k, l);
                for p in [
                    Picture::Deformed,
                    Picture::PositionDependentMass(OrderingParams::new(delta, lambda)),
                    Picture::CurvedSpace,
                ] {
                    let closed = picture_closed_form(&m, p, key);
                    let tele = energy_telescoped(&m, p, key);
                    prop_assert!((closed - tele).abs() < 1e-11 * (1.0 + closed.abs()));
                }
            }

            #[test]
            fn enumeration_matches_brute_force(z in 0.2f64..3.0, alpha in 0.02f64..3.0) {
                let m = model(z, alpha);
                let table = enumerate_bound_states(&m, Picture::Deformed);
                let table = table.table().unwrap();
                let b = 2.0 * z / alpha - 1.0;
                for l in 0..60u32 {
                    for k in 0..60u32 {
                        let key = BoundStateKey::new(k, l);
                        let lhs = key.counting_lhs() as f64;
                        // stay away from the floating-point boundary in the oracle
                        if (lhs - b).abs() < 1e-9 {
                            continue;
                        }
                        prop_assert_eq!(table.contains(key), lhs < b);
                    }
                }
            }

            #[test]
            fn bound_states_lie_below_threshold(z in 0.2f64..3.0, alpha in 0.02f64..1.0) {
                let m = model(z, alpha);
                let table = enumerate_bound_states(&m, Picture::Deformed);
                for e in &table.table().unwrap().entries {
                    let thr = crate::model::continuum_threshold(&m, Picture::Deformed, e.key.l);
                    prop_assert!(e.energy < thr);
                    prop_assert!(e.g_k > 0.0);
                }
            }
        }
    }
}
