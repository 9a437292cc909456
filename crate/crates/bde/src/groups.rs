//! Compact subgroups of O(2), their elements as exact rational multiples of
//! π, admissible homomorphisms η: Γ → {±1}, and exact group actions on
//! complex-coordinate polynomials and quadratic-form maps.
//!
//! Exactness strategy: no cyclotomic arithmetic anywhere. Rotation actions
//! are applied only where every monomial multiplier e^{iθd} lies in
//! {±1, ±i} ⊂ ℚ[i]; requests outside that domain are hard errors. The
//! congruence structure of the invariant-theory pipeline guarantees the
//! precondition wherever the pipeline applies an action.

use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::algebra::{ComplexMapForm, ComplexPoly};
use crate::rational::{i_power, Gaussian};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group is infinite; elements cannot be enumerated")]
    InfiniteGroup,
    #[error("element does not belong to the group")]
    NotInGroup,
    #[error("kernel does not have index two in the group")]
    NotIndexTwo,
    #[error("kernel is not a normal subgroup")]
    NotNormal,
    #[error("no admissible homomorphism with the requested kernel: {0}")]
    NotAdmissible(String),
    #[error("rotation multiplier e^(i {0} pi * {1}) is not in {{1, i, -1, -i}}")]
    NotExactlyRepresentable(String, i64),
}

/// An angle that is an exact rational multiple of π, normalized to [0, 2π).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle {
    /// numerator of the fraction of π
    num: i64,
    /// positive denominator, coprime to num
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Angle {
    /// `num/den` in units of π, normalized into [0, 2).
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "angle denominator must be nonzero");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(2 * den);
        let g = gcd(num, den).max(1);
        num /= g;
        den /= g;
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn pi() -> Self {
        Self { num: 1, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn add(&self, other: &Angle) -> Angle {
        Angle::new(self.num * other.den + other.num * self.den, self.den * other.den)
    }

    pub fn sub(&self, other: &Angle) -> Angle {
        Angle::new(self.num * other.den - other.num * self.den, self.den * other.den)
    }

    pub fn neg(&self) -> Angle {
        Angle::new(-self.num, self.den)
    }

    /// The angle multiplied by an integer weight (exact, mod 2π).
    pub fn times(&self, m: i64) -> Angle {
        Angle::new(self.num * m, self.den)
    }

    /// Half of this angle (used for reflection axis angles).
    pub fn half(&self) -> Angle {
        Angle::new(self.num, self.den * 2)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64 * std::f64::consts::PI
    }

    /// e^{iθ} when it is a Gaussian rational, i.e. when θ is a multiple of
    /// π/2; `None` otherwise.
    pub fn unit_multiplier(&self) -> Option<Gaussian> {
        // θ = (num/den)π lies on the quarter grid iff den divides 2·num·…
        // equivalently 2·num ≡ 0 (mod den) after reduction: den ∈ {1, 2}.
        match self.den {
            1 => Some(i_power((2 * self.num).rem_euclid(4) as u8)),
            2 => Some(i_power(self.num.rem_euclid(4) as u8)),
            _ => None,
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else if self.den == 1 {
            if self.num == 1 {
                write!(f, "pi")
            } else {
                write!(f, "{}*pi", self.num)
            }
        } else if self.num == 1 {
            write!(f, "pi/{}", self.den)
        } else {
            write!(f, "{}*pi/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of O(2): a rotation z ↦ e^{iθ}z or a reflection z ↦ e^{iφ}z̄
/// (whose axis makes the angle φ/2 with the x-axis).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Rotation(Angle),
    Reflection(Angle),
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::Rotation(Angle::zero())
    }

    pub fn kappa_x() -> Self {
        GroupElement::Reflection(Angle::zero())
    }

    pub fn kappa_y() -> Self {
        GroupElement::Reflection(Angle::pi())
    }

    pub fn minus_identity() -> Self {
        GroupElement::Rotation(Angle::pi())
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, GroupElement::Rotation(a) if a.is_zero())
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, GroupElement::Rotation(_))
    }

    pub fn det(&self) -> i8 {
        match self {
            GroupElement::Rotation(_) => 1,
            GroupElement::Reflection(_) => -1,
        }
    }

    /// Composition self ∘ other (apply `other` first).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        use GroupElement::*;
        match (self, other) {
            (Rotation(a), Rotation(b)) => Rotation(a.add(b)),
            (Rotation(a), Reflection(b)) => Reflection(a.add(b)),
            (Reflection(a), Rotation(b)) => Reflection(a.sub(b)),
            (Reflection(a), Reflection(b)) => Rotation(a.sub(b)),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Rotation(a) => GroupElement::Rotation(a.neg()),
            GroupElement::Reflection(_) => *self,
        }
    }

    /// Application to a point of the plane (numeric).
    pub fn apply_f64(&self, x: f64, y: f64) -> (f64, f64) {
        match self {
            GroupElement::Rotation(t) => {
                let (s, c) = t.to_f64().sin_cos();
                (c * x - s * y, s * x + c * y)
            }
            GroupElement::Reflection(p) => {
                // z ↦ e^{iφ} z̄
                let (s, c) = p.to_f64().sin_cos();
                (c * x + s * y, s * x - c * y)
            }
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Rotation(a) if a.is_zero() => write!(f, "id"),
            GroupElement::Rotation(a) => write!(f, "rot({a})"),
            GroupElement::Reflection(a) if a.is_zero() => write!(f, "kx"),
            GroupElement::Reflection(a) if *a == Angle::pi() => write!(f, "ky"),
            GroupElement::Reflection(a) => write!(f, "refl(axis {})", a.half()),
        }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Reflection-axis class of a dihedral group: `Kx` has its axes at kπ/n
/// (containing the x-axis), `Rotated` at (2k+1)π/(2n).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Axis {
    Kx,
    Rotated,
}

/// A compact subgroup of O(2) in standard position.
///
/// `Cyclic(2)` is the rotation group {±I}; the reflection group of order 2
/// is `Dihedral(1, _)`. The Klein four-group Z₂×Z₂ = {±I, κ_x, κ_y} is
/// stored canonically as `Dihedral(2, Kx)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupSpec {
    Cyclic(u32),
    Dihedral(u32, Axis),
    SO2,
    O2,
}

impl GroupSpec {
    pub fn klein_four() -> Self {
        GroupSpec::Dihedral(2, Axis::Kx)
    }

    pub fn trivial() -> Self {
        GroupSpec::Cyclic(1)
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, GroupSpec::SO2 | GroupSpec::O2)
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n, _) => Some(2 * n),
            _ => None,
        }
    }

    /// Number of rotations (the order of the rotation subgroup).
    pub fn rotation_order(&self) -> Option<u32> {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n, _) => Some(*n),
            _ => None,
        }
    }

    /// All elements of a finite group, rotations first by increasing angle,
    /// then reflections by increasing mirror angle.
    pub fn elements(&self) -> Result<Vec<GroupElement>, GroupError> {
        match self {
            GroupSpec::Cyclic(n) => Ok((0..*n)
                .map(|k| GroupElement::Rotation(Angle::new(2 * k as i64, *n as i64)))
                .collect()),
            GroupSpec::Dihedral(n, axis) => {
                let mut out: Vec<GroupElement> = (0..*n)
                    .map(|k| GroupElement::Rotation(Angle::new(2 * k as i64, *n as i64)))
                    .collect();
                for k in 0..*n {
                    out.push(GroupElement::Reflection(reflection_angle(*n, *axis, k)));
                }
                Ok(out)
            }
            GroupSpec::SO2 | GroupSpec::O2 => Err(GroupError::InfiniteGroup),
        }
    }

    /// Exact membership test (works for the infinite groups too).
    pub fn contains(&self, g: &GroupElement) -> bool {
        match self {
            GroupSpec::SO2 => g.is_rotation(),
            GroupSpec::O2 => true,
            GroupSpec::Cyclic(n) => match g {
                GroupElement::Rotation(a) => angle_in_cyclic(a, *n),
                GroupElement::Reflection(_) => false,
            },
            GroupSpec::Dihedral(n, axis) => match g {
                GroupElement::Rotation(a) => angle_in_cyclic(a, *n),
                GroupElement::Reflection(phi) => {
                    // φ ∈ {φ₀ + 2kπ/n}
                    (0..*n).any(|k| reflection_angle(*n, *axis, k) == *phi)
                }
            },
        }
    }

    /// Whether `sub` is a subgroup of `self` (standard-position groups).
    pub fn has_subgroup(&self, sub: &GroupSpec) -> bool {
        match (self, sub) {
            (GroupSpec::O2, GroupSpec::O2) | (GroupSpec::O2, GroupSpec::SO2) => true,
            (GroupSpec::SO2, GroupSpec::SO2) => true,
            (GroupSpec::O2, g) | (GroupSpec::SO2, g) if g.is_finite() => match g {
                GroupSpec::Cyclic(_) => true,
                GroupSpec::Dihedral(..) => matches!(self, GroupSpec::O2),
                _ => unreachable!(),
            },
            (_, GroupSpec::SO2) | (_, GroupSpec::O2) => false,
            _ => {
                let sub_elems = sub.elements().expect("finite");
                sub_elems.iter().all(|e| self.contains(e))
            }
        }
    }

    /// Canonical generating set of a finite group.
    pub fn generators(&self) -> Result<Vec<GroupElement>, GroupError> {
        match self {
            GroupSpec::Cyclic(1) => Ok(vec![]),
            GroupSpec::Cyclic(n) => {
                Ok(vec![GroupElement::Rotation(Angle::new(2, *n as i64))])
            }
            GroupSpec::Dihedral(n, axis) => {
                let mut gens = vec![GroupElement::Reflection(reflection_angle(*n, *axis, 0))];
                if *n > 1 {
                    gens.insert(0, GroupElement::Rotation(Angle::new(2, *n as i64)));
                }
                Ok(gens)
            }
            _ => Err(GroupError::InfiniteGroup),
        }
    }
}

fn reflection_angle(n: u32, axis: Axis, k: u32) -> Angle {
    match axis {
        Axis::Kx => Angle::new(2 * k as i64, n as i64),
        Axis::Rotated => Angle::new(2 * k as i64 + 1, n as i64),
    }
}

fn angle_in_cyclic(a: &Angle, n: u32) -> bool {
    // a = 2k/n π for some integer k ⟺ a·n/2 is an integer multiple of π…
    // in reduced form a = p/q with the rotation subgroup {2k/n}: membership
    // iff p·n ≡ 0 (mod 2q).
    (a.numer() * n as i64).rem_euclid(2 * a.denom()) == 0
}

/// Designated kernel of the homomorphism η: Γ → {±1}; `Trivial` means
/// η ≡ 1 (kernel is the whole group).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EtaSpec {
    Trivial,
    Kernel(GroupSpec),
}

/// A compact subgroup of O(2) paired with a validated homomorphism η,
/// written Γ[ker η] when η is nontrivial.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SymmetryGroup {
    pub group: GroupSpec,
    pub eta: EtaSpec,
}

impl SymmetryGroup {
    pub fn trivial_eta(group: GroupSpec) -> Self {
        Self {
            group,
            eta: EtaSpec::Trivial,
        }
    }

    pub fn eta_is_trivial(&self) -> bool {
        matches!(self.eta, EtaSpec::Trivial)
    }

    /// Γ₊ = ker η.
    pub fn kernel_group(&self) -> GroupSpec {
        match self.eta {
            EtaSpec::Trivial => self.group,
            EtaSpec::Kernel(k) => k,
        }
    }

    /// Value of η on an element of the group.
    pub fn eta_value(&self, g: &GroupElement) -> Result<i8, GroupError> {
        if !self.group.contains(g) {
            return Err(GroupError::NotInGroup);
        }
        Ok(match self.eta {
            EtaSpec::Trivial => 1,
            EtaSpec::Kernel(k) => {
                if k.contains(g) {
                    1
                } else {
                    -1
                }
            }
        })
    }
}

impl fmt::Display for SymmetryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::format_symmetry_group(self))
    }
}

/// Validates that `kernel` designates an admissible η for `group`:
/// the kernel must be a subgroup of index exactly 2 (index-2 subgroups are
/// automatically normal). `None` designates the trivial η.
pub fn validate_eta(
    group: GroupSpec,
    kernel: Option<GroupSpec>,
) -> Result<SymmetryGroup, GroupError> {
    let kernel = match kernel {
        None => return Ok(SymmetryGroup::trivial_eta(group)),
        Some(k) => k,
    };
    match (group, kernel) {
        (GroupSpec::SO2, _) => {
            // SO(2) is connected: it has no closed subgroup of index 2.
            Err(GroupError::NotAdmissible(
                "SO2 admits only the trivial homomorphism".into(),
            ))
        }
        (GroupSpec::O2, GroupSpec::SO2) => Ok(SymmetryGroup {
            group,
            eta: EtaSpec::Kernel(GroupSpec::SO2),
        }),
        (GroupSpec::O2, _) => Err(GroupError::NotIndexTwo),
        (g, k) => {
            if !k.is_finite() {
                return Err(GroupError::NotAdmissible(
                    "infinite kernel inside a finite group".into(),
                ));
            }
            if !g.has_subgroup(&k) {
                return Err(GroupError::NotAdmissible(format!(
                    "{k:?} is not a subgroup of {g:?}"
                )));
            }
            let (go, ko) = (g.order().unwrap(), k.order().unwrap());
            if go == ko {
                // kernel is the whole group: η is trivial
                return Ok(SymmetryGroup::trivial_eta(g));
            }
            if go != 2 * ko {
                return Err(GroupError::NotIndexTwo);
            }
            Ok(SymmetryGroup {
                group: g,
                eta: EtaSpec::Kernel(k),
            })
        }
    }
}

/// Exact multiplier e^{iθ·d}; error when it falls outside {±1, ±i}.
pub fn exact_multiplier(theta: &Angle, d: i64) -> Result<Gaussian, GroupError> {
    let total = theta.times(d);
    total
        .unit_multiplier()
        .ok_or_else(|| GroupError::NotExactlyRepresentable(theta.to_string(), d))
}

/// Pullback f ∘ γ of a scalar polynomial under a group element.
///
/// Rotation by θ sends the monomial z^j z̄^k to e^{iθ(j−k)} z^j z̄^k; a
/// reflection z ↦ e^{iφ}z̄ sends it to e^{iφ(j−k)} z^k z̄^j. The x-axis
/// reflection κ_x is always exact (it only swaps the exponent pair).
pub fn act_on_poly(g: &GroupElement, f: &ComplexPoly) -> Result<ComplexPoly, GroupError> {
    let mut out = ComplexPoly::zero();
    match g {
        GroupElement::Rotation(theta) => {
            for ((j, k), c) in f.terms() {
                let m = exact_multiplier(theta, *j as i64 - *k as i64)?;
                out.add_term(*j, *k, c.clone() * m);
            }
        }
        GroupElement::Reflection(phi) => {
            for ((j, k), c) in f.terms() {
                let m = exact_multiplier(phi, *j as i64 - *k as i64)?;
                out.add_term(*k, *j, c.clone() * m);
            }
        }
    }
    Ok(out)
}

pub fn act_rotation_on_complex_poly(
    theta: &Angle,
    f: &ComplexPoly,
) -> Result<ComplexPoly, GroupError> {
    act_on_poly(&GroupElement::Rotation(*theta), f)
}

pub fn act_reflection_on_complex_poly(
    phi: &Angle,
    f: &ComplexPoly,
) -> Result<ComplexPoly, GroupError> {
    act_on_poly(&GroupElement::Reflection(*phi), f)
}

/// The conjugacy action transported to map form: for g the map
/// w ↦ α(z)w + β(z)w̄, computes η_val · ν(γ)⁻¹ g(γz) ν(γ)… i.e. the map
/// whose fixed points are exactly the Γ_η-equivariants.
///
/// Rotation by θ multiplies the α-monomial (j,k) by e^{iθ(j−k)} and the
/// β-monomial by e^{iθ(j−k−2)}. A reflection z ↦ e^{iφ}z̄ sends
/// α_jk ↦ conj(α_jk)·e^{−iφ(j−k)} and β_jk ↦ conj(β_jk)·e^{−iφ(j−k−2)}
/// (same exponent pair: the value conjugation composed with the argument
/// substitution leaves slots in place).
pub fn act_on_form(
    g: &GroupElement,
    eta_val: i8,
    f: &ComplexMapForm,
) -> Result<ComplexMapForm, GroupError> {
    let mut alpha = ComplexPoly::zero();
    let mut beta = ComplexPoly::zero();
    match g {
        GroupElement::Rotation(theta) => {
            for ((j, k), c) in f.alpha.terms() {
                let m = exact_multiplier(theta, *j as i64 - *k as i64)?;
                alpha.add_term(*j, *k, c.clone() * m);
            }
            for ((j, k), c) in f.beta.terms() {
                let m = exact_multiplier(theta, *j as i64 - *k as i64 - 2)?;
                beta.add_term(*j, *k, c.clone() * m);
            }
        }
        GroupElement::Reflection(phi) => {
            for ((j, k), c) in f.alpha.terms() {
                let m = exact_multiplier(phi, -(*j as i64 - *k as i64))?;
                alpha.add_term(*j, *k, c.conj() * m);
            }
            for ((j, k), c) in f.beta.terms() {
                let m = exact_multiplier(phi, -(*j as i64 - *k as i64 - 2))?;
                beta.add_term(*j, *k, c.conj() * m);
            }
        }
    }
    let out = ComplexMapForm::new(alpha, beta);
    Ok(if eta_val < 0 { out.scale(&-crate::rational::g_one()) } else { out })
}

/// Constraint imposed by one group generator on the Gaussian-rational
/// coefficient of one monomial slot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoeffConstraint {
    /// no restriction
    Any,
    /// coefficient must vanish
    Zero,
    /// coefficient confined to a rational line through the origin
    Line(LineDir),
}

/// The four lines of ℂ that meet ℚ[i] nontrivially: ℝ, iℝ, (1+i)ℝ, (1−i)ℝ.
/// By Niven's theorem no other line through the origin at a rational-π
/// angle contains a nonzero Gaussian rational.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LineDir {
    Re,
    Im,
    DiagPlus,
    DiagMinus,
}

impl CoeffConstraint {
    pub fn intersect(self, other: CoeffConstraint) -> CoeffConstraint {
        use CoeffConstraint::*;
        match (self, other) {
            (Any, x) | (x, Any) => x,
            (Zero, _) | (_, Zero) => Zero,
            (Line(a), Line(b)) => {
                if a == b {
                    Line(a)
                } else {
                    Zero
                }
            }
        }
    }

    pub fn allows(&self, c: &Gaussian) -> bool {
        match self {
            CoeffConstraint::Any => true,
            CoeffConstraint::Zero => c.is_zero(),
            CoeffConstraint::Line(LineDir::Re) => c.im.is_zero(),
            CoeffConstraint::Line(LineDir::Im) => c.re.is_zero(),
            CoeffConstraint::Line(LineDir::DiagPlus) => c.re == c.im,
            CoeffConstraint::Line(LineDir::DiagMinus) => c.re == -c.im.clone(),
        }
    }

    /// Basis directions of the constrained subspace over ℚ.
    pub fn basis(&self) -> Vec<Gaussian> {
        use crate::rational::{g_i, g_one, gauss_i64};
        match self {
            CoeffConstraint::Any => vec![g_one(), g_i()],
            CoeffConstraint::Zero => vec![],
            CoeffConstraint::Line(LineDir::Re) => vec![g_one()],
            CoeffConstraint::Line(LineDir::Im) => vec![g_i()],
            CoeffConstraint::Line(LineDir::DiagPlus) => vec![gauss_i64(1, 1)],
            CoeffConstraint::Line(LineDir::DiagMinus) => vec![gauss_i64(1, -1)],
        }
    }
}

/// Constraint for a rotation generator with η-sign `eps` acting on a slot
/// of weight d: c·e^{iθd} = ε·c keeps the slot exactly when e^{iθd} = ε and
/// kills it otherwise (the multiplier is a unit, so no other case exists).
pub fn rotation_constraint(theta: &Angle, d: i64, eps: i8) -> CoeffConstraint {
    let total = theta.times(d);
    let hit = if eps > 0 {
        total.is_zero()
    } else {
        total == Angle::pi()
    };
    if hit {
        CoeffConstraint::Any
    } else {
        CoeffConstraint::Zero
    }
}

/// Constraint for a reflection generator: conj(c) = ε e^{iφd} c confines c
/// to the line at angle −(arg ε e^{iφd})/2 when that line meets ℚ[i], and
/// forces c = 0 otherwise.
pub fn reflection_constraint(phi: &Angle, d: i64, eps: i8) -> CoeffConstraint {
    let mut psi = phi.times(d);
    if eps < 0 {
        psi = psi.add(&Angle::pi());
    }
    // line angle θ₀ = −ψ/2 (mod π); in quarter-π units: −ψ·(1/2)
    let theta0 = psi.neg().half();
    // classify θ₀ mod π
    let mod_pi = Angle::new(
        theta0.numer().rem_euclid(theta0.denom()),
        theta0.denom(),
    );
    match (mod_pi.numer(), mod_pi.denom()) {
        (0, _) => CoeffConstraint::Line(LineDir::Re),
        (1, 2) => CoeffConstraint::Line(LineDir::Im),
        (1, 4) => CoeffConstraint::Line(LineDir::DiagPlus),
        (3, 4) => CoeffConstraint::Line(LineDir::DiagMinus),
        _ => CoeffConstraint::Zero,
    }
}
