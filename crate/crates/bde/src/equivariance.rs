//! Binary differential equations as coefficient triples, their
//! discriminants, exact symmetry checking and maximal symmetry detection,
//! and the Morse condition on the linear part.

use std::collections::BTreeSet;

use num::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{real_to_complex, triple_to_complex_form, ComplexMapForm, RealPoly};
use crate::groups::{
    reflection_constraint, rotation_constraint, Angle, Axis, CoeffConstraint, EtaSpec,
    GroupElement, GroupSpec, SymmetryGroup,
};
use crate::rational::{Gaussian, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BdeError {
    #[error("all three coefficients are identically zero")]
    DegenerateBde,
    #[error("the linear part is not of Morse type (the Morse expression vanishes)")]
    NotMorse,
}

/// The quadratic 1-form ω = a·dy² + 2b·dxdy + c·dx²; `b` stores the half
/// coefficient of the mixed term, following the factor 2 in the defining
/// convention.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bde {
    a: RealPoly,
    b: RealPoly,
    c: RealPoly,
}

impl Bde {
    pub fn new(a: RealPoly, b: RealPoly, c: RealPoly) -> Result<Self, BdeError> {
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(BdeError::DegenerateBde);
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> &RealPoly {
        &self.a
    }

    pub fn b(&self) -> &RealPoly {
        &self.b
    }

    pub fn c(&self) -> &RealPoly {
        &self.c
    }

    /// The discriminant function δ = b² − ac.
    pub fn discriminant(&self) -> RealPoly {
        &(&self.b * &self.b) - &(&self.a * &self.c)
    }

    pub fn complex_form(&self) -> ComplexMapForm {
        triple_to_complex_form(&self.a, &self.b, &self.c)
    }

    /// The same equation with x and y interchanged (dy² and dx² swap roles).
    pub fn swap_xy(&self) -> Self {
        Self {
            a: self.c.swap_xy(),
            b: self.b.swap_xy(),
            c: self.a.swap_xy(),
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.a
            .total_degree()
            .max(self.b.total_degree())
            .max(self.c.total_degree())
    }
}

/// Weighted monomial slots of a form: α-slots carry weight j−k and β-slots
/// j−k−2; these are the exponents that rotation multipliers act through.
fn form_slots(f: &ComplexMapForm) -> Vec<(i64, Gaussian)> {
    let mut slots = Vec::new();
    for ((j, k), c) in f.alpha.terms() {
        slots.push((*j as i64 - *k as i64, c.clone()));
    }
    for ((j, k), c) in f.beta.terms() {
        slots.push((*j as i64 - *k as i64 - 2, c.clone()));
    }
    slots
}

fn element_constraint(g: &GroupElement, d: i64, eps: i8) -> CoeffConstraint {
    match g {
        GroupElement::Rotation(theta) => rotation_constraint(theta, d, eps),
        GroupElement::Reflection(phi) => reflection_constraint(phi, d, eps),
    }
}

/// Exact equivariance test for a map form under Γ_η, via the coefficient
/// constraints of the slot weights. Checking the generators suffices by the
/// homomorphism property; SO(2) and O(2) are handled by the weight-zero
/// conditions directly.
pub fn check_form_equivariance(f: &ComplexMapForm, sg: &SymmetryGroup) -> bool {
    let slots = form_slots(f);
    match sg.group {
        GroupSpec::SO2 | GroupSpec::O2 => {
            if slots.iter().any(|(d, _)| *d != 0) {
                return false;
            }
            if sg.group == GroupSpec::O2 {
                let eps = match sg.eta {
                    EtaSpec::Trivial => 1,
                    EtaSpec::Kernel(_) => -1,
                };
                slots
                    .iter()
                    .all(|(d, c)| reflection_constraint(&Angle::zero(), *d, eps).allows(c))
            } else {
                true
            }
        }
        _ => {
            let gens = sg.group.generators().expect("finite group");
            gens.iter().all(|g| {
                let eps = sg.eta_value(g).expect("generator in group");
                slots
                    .iter()
                    .all(|(d, c)| element_constraint(g, *d, eps).allows(c))
            })
        }
    }
}

/// The matrix equivariance condition B(γp) = η(γ)·γB(p)γᵗ, tested exactly
/// in complex coordinates.
pub fn check_equivariance(e: &Bde, sg: &SymmetryGroup) -> bool {
    check_form_equivariance(&e.complex_form(), sg)
}

/// Whether one element fixes the form with the given η value; used by
/// all-element cross-checks.
pub fn element_fixes_form(f: &ComplexMapForm, g: &GroupElement, eps: i8) -> bool {
    form_slots(f)
        .iter()
        .all(|(d, c)| element_constraint(g, *d, eps).allows(c))
}

/// Exact invariance of a scalar polynomial under one group element.
fn scalar_invariant_under(q: &crate::algebra::ComplexPoly, g: &GroupElement) -> bool {
    match g {
        GroupElement::Rotation(theta) => q
            .terms()
            .all(|((j, k), _)| theta.times(*j as i64 - *k as i64).is_zero()),
        GroupElement::Reflection(phi) => q.terms().all(|((j, k), c)| {
            // pullback moves (j,k) -> (k,j) with multiplier e^{iφ(j−k)}
            match phi.times(*j as i64 - *k as i64).unit_multiplier() {
                Some(m) => q.coefficient(*k, *j) == c.clone() * m,
                // an irrational unit multiplier can never map a Gaussian
                // rational coefficient onto another one
                None => false,
            }
        }),
    }
}

/// Tests δ∘γ = δ identically for all generators of sg (the containment of
/// the symmetry group in the symmetries of the discriminant, at the level
/// of the function).
pub fn discriminant_invariance(e: &Bde, sg: &SymmetryGroup) -> bool {
    let q = real_to_complex(&e.discriminant());
    match sg.group {
        GroupSpec::SO2 | GroupSpec::O2 => {
            let rot_ok = q.terms().all(|((j, k), _)| j == k);
            if sg.group == GroupSpec::O2 {
                rot_ok && scalar_invariant_under(&q, &GroupElement::kappa_x())
            } else {
                rot_ok
            }
        }
        _ => sg
            .group
            .generators()
            .expect("finite group")
            .iter()
            .all(|g| scalar_invariant_under(&q, g)),
    }
}

/// The Morse expression (c₂a₁−c₁a₂)² − 4(b₂a₁−b₁a₂)(c₂b₁−c₁b₂) built from
/// the degree-one coefficients a = a₁x + a₂y + o(2), etc. It equals the
/// discriminant of the quadratic 2-jet of δ, so its sign separates the
/// isolated-point case (negative: definite jet) from the crossing-lines
/// case (positive: indefinite jet).
pub fn morse_value(e: &Bde) -> Rat {
    let a1 = e.a.coefficient(1, 0);
    let a2 = e.a.coefficient(0, 1);
    let b1 = e.b.coefficient(1, 0);
    let b2 = e.b.coefficient(0, 1);
    let c1 = e.c.coefficient(1, 0);
    let c2 = e.c.coefficient(0, 1);
    let first = c2.clone() * a1.clone() - c1.clone() * a2.clone();
    let second = b2.clone() * a1 - b1.clone() * a2;
    let third = c2 * b1 - c1 * b2;
    first.clone() * first - crate::rational::rat(4) * second * third
}

/// The candidate symmetry groups for a BDE whose linear part satisfies the
/// Morse condition: when the discriminant set is locally the origin the
/// possibilities are Z₃, Z₆[Z₃], D₃, D₃[Z₃], D₆[D₃]; when it is a pair of
/// transversal lines they are Z₂, Z₂[1], Z₂×Z₂[Z₂(κ_x)].
pub fn morse_symmetry_candidates(e: &Bde) -> Result<Vec<SymmetryGroup>, BdeError> {
    let v = morse_value(e);
    if v.is_zero() {
        return Err(BdeError::NotMorse);
    }
    let mk = |g: GroupSpec, k: Option<GroupSpec>| SymmetryGroup {
        group: g,
        eta: match k {
            None => EtaSpec::Trivial,
            Some(k) => EtaSpec::Kernel(k),
        },
    };
    if v.is_negative() {
        // definite 2-jet: discriminant set is the origin
        Ok(vec![
            mk(GroupSpec::Cyclic(3), None),
            mk(GroupSpec::Cyclic(6), Some(GroupSpec::Cyclic(3))),
            mk(GroupSpec::Dihedral(3, Axis::Kx), None),
            mk(GroupSpec::Dihedral(3, Axis::Kx), Some(GroupSpec::Cyclic(3))),
            mk(
                GroupSpec::Dihedral(6, Axis::Kx),
                Some(GroupSpec::Dihedral(3, Axis::Kx)),
            ),
        ])
    } else {
        // indefinite 2-jet: discriminant set is a transversal line pair
        Ok(vec![
            mk(GroupSpec::Dihedral(1, Axis::Kx), None),
            mk(GroupSpec::Dihedral(1, Axis::Kx), Some(GroupSpec::trivial())),
            mk(
                GroupSpec::klein_four(),
                Some(GroupSpec::Dihedral(1, Axis::Kx)),
            ),
        ])
    }
}

/// Everything the detector found, with exact witnesses.
#[derive(Clone, Debug)]
pub struct DetectionReport {
    /// maximal Γ_η (standard-position representative when an axis offset
    /// is reported)
    pub group: SymmetryGroup,
    /// the full rotation subgroup of the detected group
    pub rotation_part: GroupSpec,
    /// reflection axis angles (fractions of π), sorted
    pub reflection_axes: Vec<Angle>,
    /// smallest axis angle when the reflections are not in standard
    /// position (the reported group is then a conjugacy representative)
    pub axis_offset: Option<Angle>,
    /// η on the generators of the detected group
    pub eta_assignment: Vec<(GroupElement, i8)>,
    /// witness for the containment in the symmetries of the discriminant
    pub discriminant_invariant: bool,
}

enum ReflectionFinding {
    None,
    /// finitely many reflections z ↦ e^{iφ}z̄, each with its η value
    Axes(Vec<(Angle, i8)>),
    /// every reflection works, with the common η value (O(2) situation)
    Continuum(i8),
}

fn gaussian_unit_quarter_index(u: &Gaussian) -> Option<u8> {
    use crate::rational::{g_i, g_one};
    if *u == g_one() {
        Some(0)
    } else if *u == g_i() {
        Some(1)
    } else if *u == -g_one() {
        Some(2)
    } else if *u == -g_i() {
        Some(3)
    } else {
        None
    }
}

fn find_reflections(slots: &[(i64, Gaussian)]) -> ReflectionFinding {
    if slots.iter().all(|(d, _)| *d == 0) {
        // Axis-independent constraints: conj(c) = ε·c slot-wise.
        for eps in [1i8, -1] {
            let ok = slots.iter().all(|(_, c)| {
                if eps > 0 {
                    c.im.is_zero()
                } else {
                    c.re.is_zero()
                }
            });
            if ok {
                return ReflectionFinding::Continuum(eps);
            }
        }
        return ReflectionFinding::None;
    }
    // Pivot on one slot with nonzero weight: any reflection symmetry must
    // satisfy e^{−iφd} = ε·c/conj(c) there. The right-hand side is a
    // unimodular Gaussian rational; if it is not a fourth root of unity its
    // argument is not a rational multiple of π (Niven), so no reflection
    // with a π-rational mirror angle exists.
    let (d0, c0) = slots
        .iter()
        .find(|(d, _)| *d != 0)
        .expect("nonzero weight present")
        .clone();
    let u = c0.clone() / c0.conj();
    let mut candidates: BTreeSet<(Angle, i8)> = BTreeSet::new();
    for eps in [1i8, -1] {
        let w = if eps > 0 { u.clone() } else { -u.clone() };
        if let Some(m) = gaussian_unit_quarter_index(&w) {
            // e^{−iφ d0} = w = e^{i m π/2}:  φ = (−m/2 + 2t)π / d0
            for t in 0..d0.unsigned_abs() {
                let phi = Angle::new(-(m as i64) + 4 * t as i64, 2 * d0);
                candidates.insert((phi, eps));
            }
        }
    }
    let confirmed: Vec<(Angle, i8)> = candidates
        .into_iter()
        .filter(|(phi, eps)| {
            slots
                .iter()
                .all(|(d, c)| reflection_constraint(phi, *d, *eps).allows(c))
        })
        .collect();
    if confirmed.is_empty() {
        ReflectionFinding::None
    } else {
        ReflectionFinding::Axes(confirmed)
    }
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// Recognizes a set of exact elements as one of the standard subgroup
/// specifications.
fn recognize_subgroup(elements: &[GroupElement]) -> Option<GroupSpec> {
    let rotations: Vec<&GroupElement> = elements.iter().filter(|e| e.is_rotation()).collect();
    let reflections: Vec<&GroupElement> =
        elements.iter().filter(|e| !e.is_rotation()).collect();
    let r = rotations.len() as u32;
    if r == 0 {
        return None;
    }
    let cyc = GroupSpec::Cyclic(r);
    if !rotations.iter().all(|e| cyc.contains(e)) {
        return None;
    }
    if reflections.is_empty() {
        return Some(cyc);
    }
    if reflections.len() != r as usize {
        return None;
    }
    for axis in [Axis::Kx, Axis::Rotated] {
        let spec = GroupSpec::Dihedral(r, axis);
        if reflections.iter().all(|e| spec.contains(e)) {
            return Some(spec);
        }
    }
    None
}

/// Finds the maximal Γ_η among the closed subgroups of O(2) (with
/// π-rational reflection axes) under which the equation is equivariant.
///
/// Rotations: a rotation by θ rescales the slot of weight d by e^{iθd}, so
/// symmetry forces θ·d ∈ πℤ on every occupied slot. With η = +1 the
/// admissible rotations are exactly Z_g for g the gcd of the weights (all
/// weights zero gives SO(2)); a twisted generator exists iff no weight is
/// zero and all weights share one 2-adic valuation, in which case the
/// rotation part doubles to Z_{2g}[Z_g].
pub fn detect_symmetries(e: &Bde) -> DetectionReport {
    let f = e.complex_form();
    let slots = form_slots(&f);
    debug_assert!(!slots.is_empty());

    let nonzero: Vec<i64> = slots
        .iter()
        .map(|(d, _)| *d)
        .filter(|d| *d != 0)
        .collect();
    let has_zero_weight = slots.iter().any(|(d, _)| *d == 0);

    // rotation part
    let (rot_spec, rot_eta_kernel) = if nonzero.is_empty() {
        (GroupSpec::SO2, None)
    } else {
        let g = nonzero
            .iter()
            .fold(0u64, |acc, d| gcd_u(acc, d.unsigned_abs())) as u32;
        let v2 = (g as u64).trailing_zeros();
        let twisted = !has_zero_weight
            && nonzero
                .iter()
                .all(|d| d.unsigned_abs().trailing_zeros() == v2);
        if twisted {
            (GroupSpec::Cyclic(2 * g), Some(GroupSpec::Cyclic(g)))
        } else {
            (GroupSpec::Cyclic(g), None)
        }
    };

    let reflections = find_reflections(&slots);

    // assemble the full group and η
    let (group_spec, eta_kernel, axes, offset, eta_assignment): (
        GroupSpec,
        Option<GroupSpec>,
        Vec<Angle>,
        Option<Angle>,
        Vec<(GroupElement, i8)>,
    ) = match (&rot_spec, reflections) {
        (GroupSpec::SO2, ReflectionFinding::None) => {
            (GroupSpec::SO2, None, vec![], None, vec![])
        }
        (GroupSpec::SO2, ReflectionFinding::Continuum(eps)) => {
            let kernel = if eps < 0 { Some(GroupSpec::SO2) } else { None };
            (
                GroupSpec::O2,
                kernel,
                vec![],
                None,
                vec![(GroupElement::kappa_x(), eps)],
            )
        }
        (GroupSpec::SO2, ReflectionFinding::Axes(_)) => {
            unreachable!("finite reflection list implies a nonzero slot weight")
        }
        (_, ReflectionFinding::Continuum(_)) => {
            unreachable!("reflection continuum implies all weights zero")
        }
        (GroupSpec::Cyclic(n), ReflectionFinding::None) => {
            let n = *n;
            let mut assign = vec![];
            if n > 1 {
                let gen = GroupElement::Rotation(Angle::new(2, n as i64));
                let eps = if rot_eta_kernel.is_some() { -1 } else { 1 };
                assign.push((gen, eps));
            }
            (GroupSpec::Cyclic(n), rot_eta_kernel, vec![], None, assign)
        }
        (GroupSpec::Cyclic(n), ReflectionFinding::Axes(list)) => {
            let n = *n;
            debug_assert_eq!(list.len(), n as usize, "reflections form one coset");
            let axes: Vec<Angle> = list.iter().map(|(phi, _)| phi.half()).collect();
            // classify the axis family
            let kx = GroupSpec::Dihedral(n, Axis::Kx);
            let rotated = GroupSpec::Dihedral(n, Axis::Rotated);
            let as_elements: Vec<GroupElement> = list
                .iter()
                .map(|(phi, _)| GroupElement::Reflection(*phi))
                .collect();
            let (spec, offset) = if as_elements.iter().all(|e| kx.contains(e)) {
                (kx, None)
            } else if as_elements.iter().all(|e| rotated.contains(e)) {
                (rotated, None)
            } else {
                (kx, axes.iter().min().copied())
            };
            // η kernel from the exact element signs
            let mut kernel_elements: Vec<GroupElement> = vec![];
            let rot_elems = GroupSpec::Cyclic(n).elements().expect("finite");
            for rot in &rot_elems {
                let eps = match &rot_eta_kernel {
                    None => 1,
                    Some(k) => {
                        if k.contains(rot) {
                            1
                        } else {
                            -1
                        }
                    }
                };
                if eps > 0 {
                    kernel_elements.push(*rot);
                }
            }
            for ((phi, eps), _) in list.iter().zip(0..) {
                if *eps > 0 {
                    kernel_elements.push(GroupElement::Reflection(*phi));
                }
            }
            let trivial_eta = kernel_elements.len() == 2 * n as usize;
            let kernel = if trivial_eta {
                None
            } else {
                recognize_subgroup(&kernel_elements)
            };
            let mut assign = vec![];
            if n > 1 {
                let gen = GroupElement::Rotation(Angle::new(2, n as i64));
                assign.push((gen, if rot_eta_kernel.is_some() { -1 } else { 1 }));
            }
            let first = list
                .iter()
                .min_by_key(|(phi, _)| *phi)
                .expect("nonempty");
            assign.push((GroupElement::Reflection(first.0), first.1));
            (spec, kernel, axes, offset, assign)
        }
        _ => unreachable!(),
    };

    let group = SymmetryGroup {
        group: group_spec,
        eta: match eta_kernel {
            None => EtaSpec::Trivial,
            Some(k) => EtaSpec::Kernel(k),
        },
    };
    let discriminant_invariant = if offset.is_none() {
        discriminant_invariance(e, &group)
    } else {
        // conjugated representative: test the actual elements instead
        let q = real_to_complex(&e.discriminant());
        eta_assignment
            .iter()
            .all(|(g, _)| scalar_invariant_under(&q, g))
    };
    DetectionReport {
        group,
        rotation_part: rot_spec,
        reflection_axes: axes,
        axis_offset: offset,
        eta_assignment,
        discriminant_invariant,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::validate_eta;
    use crate::parse::parse_poly;
    use crate::rational::rat;

    fn bde(a: &str, b: &str, c: &str) -> Bde {
        Bde::new(
            parse_poly(a).unwrap(),
            parse_poly(b).unwrap(),
            parse_poly(c).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(
            Bde::new(RealPoly::zero(), RealPoly::zero(), RealPoly::zero()),
            Err(BdeError::DegenerateBde)
        );
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(
            bde("y", "x", "-y").discriminant(),
            parse_poly("x^2 + y^2").unwrap()
        );
        assert_eq!(bde("1", "0", "1").discriminant(), parse_poly("-1").unwrap());
        // the rotation-invariant example: δ = 2(x²+y²)² − 1
        let e = bde(
            "1 + y^2 - x^2 + 2*x*y",
            "x^2 - y^2 + 2*x*y",
            "1 + x^2 - y^2 - 2*x*y",
        );
        assert_eq!(
            e.discriminant(),
            parse_poly("2*x^4 + 4*x^2*y^2 + 2*y^4 - 1").unwrap()
        );
    }

    #[test]
    fn check_equivariance_examples() {
        // (1, y, 1) under the reflection group Z₂ with trivial η
        let sg = SymmetryGroup::trivial_eta(GroupSpec::Dihedral(1, Axis::Kx));
        assert!(check_equivariance(&bde("1", "y", "1"), &sg));

        // (−x, −y, x) under D₆[D₃(κ_x)]
        let sg = validate_eta(
            GroupSpec::Dihedral(6, Axis::Kx),
            Some(GroupSpec::Dihedral(3, Axis::Kx)),
        )
        .unwrap();
        assert!(check_equivariance(&bde("-x", "-y", "x"), &sg));

        // a = 1 is not odd in y: fails Z₂[1]
        let sg = validate_eta(
            GroupSpec::Dihedral(1, Axis::Kx),
            Some(GroupSpec::trivial()),
        )
        .unwrap();
        assert!(!check_equivariance(&bde("1", "0", "0"), &sg));
    }

    #[test]
    fn equivariance_generators_match_all_elements() {
        // on small groups the generator check agrees with checking every
        // element individually
        let cases = [
            (
                bde("-x", "-y", "x"),
                validate_eta(
                    GroupSpec::Dihedral(6, Axis::Kx),
                    Some(GroupSpec::Dihedral(3, Axis::Kx)),
                )
                .unwrap(),
            ),
            (
                bde("y", "x", "-y"),
                validate_eta(
                    GroupSpec::klein_four(),
                    Some(GroupSpec::Dihedral(1, Axis::Rotated)),
                )
                .unwrap(),
            ),
            (
                bde("1", "y", "1"),
                SymmetryGroup::trivial_eta(GroupSpec::Dihedral(1, Axis::Kx)),
            ),
        ];
        for (e, sg) in &cases {
            assert!(check_equivariance(e, sg));
            let f = e.complex_form();
            for g in sg.group.elements().unwrap() {
                let eps = sg.eta_value(&g).unwrap();
                assert!(element_fixes_form(&f, &g, eps), "element {g}");
            }
        }
    }

    #[test]
    fn discriminant_invariance_examples() {
        let sg = validate_eta(
            GroupSpec::klein_four(),
            Some(GroupSpec::Dihedral(1, Axis::Rotated)),
        )
        .unwrap();
        assert!(discriminant_invariance(&bde("y", "x", "-y"), &sg));

        let sg = SymmetryGroup::trivial_eta(GroupSpec::Dihedral(1, Axis::Kx));
        assert!(discriminant_invariance(&bde("1", "y", "1"), &sg));

        // trivial group: always invariant
        let sg = SymmetryGroup::trivial_eta(GroupSpec::trivial());
        assert!(discriminant_invariance(&bde("x", "y", "1"), &sg));
    }

    #[test]
    fn morse_values() {
        assert_eq!(morse_value(&bde("y", "x", "-y")), rat(-4));
        assert_eq!(morse_value(&bde("x", "y^3", "-x")), rat(0));
        assert_eq!(morse_value(&bde("y", "1", "-y")), rat(0));
        assert!(matches!(
            morse_symmetry_candidates(&bde("y", "1", "-y")),
            Err(BdeError::NotMorse)
        ));
    }

    #[test]
    fn morse_candidate_lists() {
        // definite jet: the origin case
        let list = morse_symmetry_candidates(&bde("y", "x", "-y")).unwrap();
        let names: Vec<String> = list.iter().map(|g| g.to_string()).collect();
        assert_eq!(names, vec!["Z3", "Z6[Z3]", "D3", "D3[Z3]", "D6[D3(kx)]"]);

        // indefinite jet: the line-pair case (δ 2-jet = x² − y²)
        let list = morse_symmetry_candidates(&bde("y", "x", "y")).unwrap();
        let names: Vec<String> = list.iter().map(|g| g.to_string()).collect();
        assert_eq!(names, vec!["Z2(kx)", "Z2(kx)[1]", "Z2xZ2[Z2(kx)]"]);
    }

    #[test]
    fn detect_examples() {
        // (y, 1, −y): single reflection κ_x with η = −1
        let r = detect_symmetries(&bde("y", "1", "-y"));
        assert_eq!(r.group.to_string(), "Z2(kx)[1]");
        assert!(r.discriminant_invariant);

        // (y, x, −y): Klein four with kernel Z₂(κ_y)
        let r = detect_symmetries(&bde("y", "x", "-y"));
        assert_eq!(r.group.to_string(), "Z2xZ2[Z2(ky)]");
        assert!(r.discriminant_invariant);

        // (−x, −y, x): D₆[D₃(κ_x)]
        let r = detect_symmetries(&bde("-x", "-y", "x"));
        assert_eq!(r.group.to_string(), "D6[D3(kx)]");
        assert_eq!(r.rotation_part, GroupSpec::Cyclic(6));
        assert_eq!(r.reflection_axes.len(), 6);

        // (1, 0, 1): the constant form is O(2)-equivariant
        let r = detect_symmetries(&bde("1", "0", "1"));
        assert_eq!(r.group.to_string(), "O2");

        // rotation-invariant example detects SO(2)
        let r = detect_symmetries(&bde(
            "1 + y^2 - x^2 + 2*x*y",
            "x^2 - y^2 + 2*x*y",
            "1 + x^2 - y^2 - 2*x*y",
        ));
        assert_eq!(r.group.group, GroupSpec::SO2);
    }

    #[test]
    fn detect_swap_covariance() {
        // swapping x and y swaps the κ_x/κ_y labels
        let r = detect_symmetries(&bde("y", "1", "-y").swap_xy());
        assert_eq!(r.group.to_string(), "Z2(ky)[1]");

        let r = detect_symmetries(&bde("y", "x", "-y").swap_xy());
        assert_eq!(r.group.to_string(), "Z2xZ2[Z2(kx)]");
    }

    #[test]
    fn detected_elements_pass_equivariance() {
        for e in [
            bde("y", "1", "-y"),
            bde("y", "x", "-y"),
            bde("-x", "-y", "x"),
            bde("1", "y", "1"),
        ] {
            let r = detect_symmetries(&e);
            let f = e.complex_form();
            if r.group.group.is_finite() {
                for g in r.group.group.elements().unwrap() {
                    let eps = r.group.eta_value(&g).unwrap();
                    assert!(element_fixes_form(&f, &g, eps), "{e:?} element {g}");
                }
            }
        }
    }

    #[test]
    fn detect_maximality_witness() {
        // enlarging the rotation order by any prime ≤ 2(maxdeg+2), or adding
        // any reflection to a reflection-free detection, must fail
        for e in [bde("-x", "-y", "x"), bde("y", "x", "-y")] {
            let r = detect_symmetries(&e);
            let n = r.rotation_part.rotation_order().unwrap();
            let bound = 2 * (e.max_degree() + 2);
            let f = e.complex_form();
            for p in 2..=bound {
                if !is_prime(p) {
                    continue;
                }
                let bigger = GroupElement::Rotation(Angle::new(2, (n * p) as i64));
                let fixes = element_fixes_form(&f, &bigger, 1)
                    || element_fixes_form(&f, &bigger, -1);
                assert!(!fixes, "rotation order {} times {p} should fail", n);
            }
        }
        // the Z₅-style example has no reflections at all
        let e = bde(
            "1 + y^2 - x^2 - 3*x^2*y + y^3",
            "2*x*y + x^3 - 3*x*y^2",
            "1 + x^2 - y^2 + 3*x^2*y - y^3",
        );
        let r = detect_symmetries(&e);
        assert_eq!(r.group.to_string(), "Z5");
        assert!(r.reflection_axes.is_empty());
    }

    fn is_prime(n: u32) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }
}
