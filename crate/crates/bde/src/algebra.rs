//! Exact sparse polynomial arithmetic in real coordinates (x, y) and in
//! complex coordinates (z, z̄), plus the correspondence between symmetric
//! 2x2 matrix-valued maps and maps w ↦ α(z)w + β(z)w̄.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{g_i, g_one, gauss, rat, rat_string, rat_to_f64, Gaussian, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("polynomial is not real-valued: residue {0} at z^{1} zb^{2}")]
    NotRealValued(String, u32, u32),
}

/// Sparse polynomial in x, y with rational coefficients.
///
/// Terms are keyed by the exponent pair (e_x, e_y); zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RealPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

/// Sparse polynomial in z, z̄ with Gaussian rational coefficients, keyed by
/// (j, k) for the monomial z^j z̄^k.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ComplexPoly {
    terms: BTreeMap<(u32, u32), Gaussian>,
}

impl RealPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn var_x() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn var_y() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn monomial(ex: u32, ey: u32, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(ex, ey, c);
        p
    }

    pub fn add_term(&mut self, ex: u32, ey: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((ex, ey)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(ex, ey));
        }
    }

    pub fn coefficient(&self, ex: u32, ey: u32) -> Rat {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rat)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = Self::zero();
        for ((ex, ey), v) in &self.terms {
            p.add_term(*ex, *ey, v.clone() * c.clone());
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes (x, y) -> (y, x).
    pub fn swap_xy(&self) -> Self {
        let mut p = Self::zero();
        for ((ex, ey), v) in &self.terms {
            p.add_term(*ey, *ex, v.clone());
        }
        p
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for ((ex, ey), v) in &self.terms {
            acc += rat_to_f64(v) * x.powi(*ex as i32) * y.powi(*ey as i32);
        }
        acc
    }

    /// Maximum absolute coefficient value, used for residual scaling.
    pub fn max_abs_coeff_f64(&self) -> f64 {
        self.terms
            .values()
            .map(|v| rat_to_f64(&v.abs()))
            .fold(0.0, f64::max)
    }
}

impl ComplexPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Gaussian) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn one() -> Self {
        Self::constant(g_one())
    }

    /// The monomial c * z^j zb^k.
    pub fn monomial(j: u32, k: u32, c: Gaussian) -> Self {
        let mut p = Self::zero();
        p.add_term(j, k, c);
        p
    }

    pub fn var_z() -> Self {
        Self::monomial(1, 0, g_one())
    }

    pub fn var_zb() -> Self {
        Self::monomial(0, 1, g_one())
    }

    pub fn add_term(&mut self, j: u32, k: u32, c: Gaussian) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((j, k))
            .or_insert_with(crate::rational::g_zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(j, k));
        }
    }

    pub fn coefficient(&self, j: u32, k: u32) -> Gaussian {
        self.terms
            .get(&(j, k))
            .cloned()
            .unwrap_or_else(crate::rational::g_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Gaussian)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut p = Self::zero();
        for ((j, k), v) in &self.terms {
            p.add_term(*j, *k, v.clone() * c.clone());
        }
        p
    }

    pub fn conj(&self) -> Self {
        let mut p = Self::zero();
        for ((j, k), v) in &self.terms {
            p.add_term(*k, *j, v.conj());
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// A polynomial takes real values everywhere iff the coefficient at
    /// (j, k) is the conjugate of the coefficient at (k, j).
    pub fn is_real_valued(&self) -> bool {
        self.terms
            .iter()
            .all(|((j, k), c)| self.coefficient(*k, *j) == c.conj())
    }
}

macro_rules! impl_poly_ops {
    ($ty:ident, $coef:ty) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for ((a, b), v) in &rhs.terms {
                    out.add_term(*a, *b, v.clone());
                }
                out
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for ((a, b), v) in &rhs.terms {
                    out.add_term(*a, *b, -v.clone());
                }
                out
            }
        }

        impl Mul for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                let mut out = $ty::zero();
                for ((a1, b1), v1) in &self.terms {
                    for ((a2, b2), v2) in &rhs.terms {
                        out.add_term(a1 + a2, b1 + b2, v1.clone() * v2.clone());
                    }
                }
                out
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                let mut out = $ty::zero();
                for ((a, b), v) in &self.terms {
                    out.add_term(*a, *b, -v.clone());
                }
                out
            }
        }
    };
}

impl_poly_ops!(RealPoly, Rat);
impl_poly_ops!(ComplexPoly, Gaussian);

/// Canonical text rendering: graded-lex order (total degree descending,
/// then x-exponent descending), explicit `*` and `^`, rationals as `p/q`.
impl fmt::Display for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|(ax, ay), (bx, by)| (bx + by, bx).cmp(&(ax + ay, ax)));
        for (idx, key) in keys.iter().enumerate() {
            let c = &self.terms[*key];
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let (ex, ey) = **key;
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (ex == 0 && ey == 0) {
                factors.push(rat_string(&mag));
            }
            if ex > 0 {
                factors.push(if ex == 1 {
                    "x".to_string()
                } else {
                    format!("x^{ex}")
                });
            }
            if ey > 0 {
                factors.push(if ey == 1 {
                    "y".to_string()
                } else {
                    format!("y^{ey}")
                });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn gaussian_string(c: &Gaussian) -> String {
    if c.im.is_zero() {
        rat_string(&c.re)
    } else if c.re.is_zero() {
        if c.im.is_one() {
            "i".to_string()
        } else if (-c.im.clone()).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", rat_string(&c.im))
        }
    } else {
        let im = if c.im.is_positive() {
            format!("+{}*i", rat_string(&c.im))
        } else {
            format!("{}*i", rat_string(&c.im))
        };
        format!("({}{})", rat_string(&c.re), im)
    }
}

/// Debug rendering with `z` and `zb` for z and z̄.
impl fmt::Display for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|(aj, ak), (bj, bk)| (bj + bk, bj).cmp(&(aj + ak, aj)));
        let mut first = true;
        for key in keys {
            let c = &self.terms[key];
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let (j, k) = *key;
            let mut factors: Vec<String> = Vec::new();
            let is_unit = c.im.is_zero() && c.re.is_one() || c.re.is_zero() && c.im.is_one();
            if !is_unit || (j == 0 && k == 0) {
                factors.push(gaussian_string(c));
            } else if c.re.is_zero() {
                factors.push("i".to_string());
            }
            if j > 0 {
                factors.push(if j == 1 {
                    "z".to_string()
                } else {
                    format!("z^{j}")
                });
            }
            if k > 0 {
                factors.push(if k == 1 {
                    "zb".to_string()
                } else {
                    format!("zb^{k}")
                });
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Substitutes x = (z + z̄)/2 and y = (z − z̄)/(2i); the result is always
/// real-valued as a polynomial in z, z̄.
pub fn real_to_complex(p: &RealPoly) -> ComplexPoly {
    // x = (z + zb)/2, y = -i/2 (z - zb)
    let half = gauss(crate::rational::ratio(1, 2), rat(0));
    let minus_half_i = gauss(rat(0), crate::rational::ratio(-1, 2));
    let zx = (&ComplexPoly::var_z() + &ComplexPoly::var_zb()).scale(&half);
    let zy = (&ComplexPoly::var_z() - &ComplexPoly::var_zb()).scale(&minus_half_i);
    let mut out = ComplexPoly::zero();
    for ((ex, ey), c) in p.terms() {
        let term = (&zx.pow(*ex) * &zy.pow(*ey)).scale(&gauss(c.clone(), rat(0)));
        out = &out + &term;
    }
    out
}

/// Substitutes z = x + iy, z̄ = x − iy; fails if any imaginary residue
/// remains after the substitution.
pub fn complex_to_real(q: &ComplexPoly) -> Result<RealPoly, AlgebraError> {
    let wx = RealPoly::var_x();
    let wy = RealPoly::var_y();
    // Track real and imaginary parts separately with real coefficients.
    let mut re_acc = RealPoly::zero();
    let mut im_acc = RealPoly::zero();
    for ((j, k), c) in q.terms() {
        // (x + iy)^j (x - iy)^k expanded as (re, im) pair.
        let (mut tre, mut tim) = (RealPoly::one(), RealPoly::zero());
        for _ in 0..*j {
            let nre = &(&tre * &wx) - &(&tim * &wy);
            let nim = &(&tre * &wy) + &(&tim * &wx);
            tre = nre;
            tim = nim;
        }
        for _ in 0..*k {
            let nre = &(&tre * &wx) + &(&tim * &wy);
            let nim = &(&tim * &wx) - &(&tre * &wy);
            tre = nre;
            tim = nim;
        }
        // multiply by coefficient c = cre + i cim
        re_acc = &re_acc + &(&tre.scale(&c.re) - &tim.scale(&c.im));
        im_acc = &im_acc + &(&tre.scale(&c.im) + &tim.scale(&c.re));
    }
    if !im_acc.is_zero() {
        let ((j, k), _) = im_acc.terms().next().map(|(a, b)| (*a, b.clone())).unwrap();
        return Err(AlgebraError::NotRealValued(format!("{im_acc}"), j, k));
    }
    Ok(re_acc)
}

/// The map w ↦ α(z)·w + β(z)·w̄ on tangent vectors; it corresponds to a
/// symmetric real matrix exactly when Im(α) vanishes identically.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ComplexMapForm {
    pub alpha: ComplexPoly,
    pub beta: ComplexPoly,
}

impl ComplexMapForm {
    pub fn new(alpha: ComplexPoly, beta: ComplexPoly) -> Self {
        Self { alpha, beta }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    pub fn total_degree(&self) -> u32 {
        self.alpha.total_degree().max(self.beta.total_degree())
    }

    pub fn scale_poly(&self, p: &ComplexPoly) -> Self {
        Self {
            alpha: &self.alpha * p,
            beta: &self.beta * p,
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        Self {
            alpha: self.alpha.scale(c),
            beta: self.beta.scale(c),
        }
    }
}

impl Add for &ComplexMapForm {
    type Output = ComplexMapForm;
    fn add(self, rhs: &ComplexMapForm) -> ComplexMapForm {
        ComplexMapForm {
            alpha: &self.alpha + &rhs.alpha,
            beta: &self.beta + &rhs.beta,
        }
    }
}

impl Sub for &ComplexMapForm {
    type Output = ComplexMapForm;
    fn sub(self, rhs: &ComplexMapForm) -> ComplexMapForm {
        ComplexMapForm {
            alpha: &self.alpha - &rhs.alpha,
            beta: &self.beta - &rhs.beta,
        }
    }
}

impl fmt::Display for ComplexMapForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})w + ({})wb", self.alpha, self.beta)
    }
}

impl fmt::Debug for ComplexMapForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Encodes the triple (a, b, c) of ω = a dy² + 2b dxdy + c dx² as the map
/// w ↦ αw + βw̄ with α = (a+c)/2 and β = (c−a)/2 + i·b.
pub fn triple_to_complex_form(a: &RealPoly, b: &RealPoly, c: &RealPoly) -> ComplexMapForm {
    let half = crate::rational::ratio(1, 2);
    let alpha_re = (&(a + c)).scale(&half);
    let beta_re = (&(c - a)).scale(&half);
    let alpha = real_to_complex(&alpha_re);
    let beta = &real_to_complex(&beta_re) + &real_to_complex(b).scale(&g_i());
    ComplexMapForm::new(alpha, beta)
}

/// Recovers (a, b, c) from a map form by the symmetrization B = (M + Mᵗ)/2:
/// a = Re(α) − Re(β), b = Im(β), c = Re(α) + Re(β). Any Im(α) component is
/// annihilated, matching the projection of a non-symmetric matrix onto its
/// symmetric part.
pub fn complex_form_to_triple(f: &ComplexMapForm) -> (RealPoly, RealPoly, RealPoly) {
    let re = |q: &ComplexPoly| -> RealPoly {
        // Re(q) = (q + conj(q))/2 is real-valued by construction.
        let sym = (&(q + &q.conj())).scale(&gauss(crate::rational::ratio(1, 2), rat(0)));
        complex_to_real(&sym).expect("symmetrized polynomial is real-valued")
    };
    let im = |q: &ComplexPoly| -> RealPoly {
        // Im(q) = (q - conj(q))/(2i)
        let anti =
            (&(q - &q.conj())).scale(&gauss(rat(0), crate::rational::ratio(-1, 2)));
        complex_to_real(&anti).expect("anti-symmetrized polynomial is real-valued")
    };
    let alpha_re = re(&f.alpha);
    let beta_re = re(&f.beta);
    let beta_im = im(&f.beta);
    let a = &alpha_re - &beta_re;
    let c = &alpha_re + &beta_re;
    (a, beta_im, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{gauss_i64, ratio};

    fn x() -> RealPoly {
        RealPoly::var_x()
    }
    fn y() -> RealPoly {
        RealPoly::var_y()
    }

    #[test]
    fn real_to_complex_x() {
        // x -> (1/2)z + (1/2)zb
        let q = real_to_complex(&x());
        assert_eq!(q.coefficient(1, 0), gauss(ratio(1, 2), rat(0)));
        assert_eq!(q.coefficient(0, 1), gauss(ratio(1, 2), rat(0)));
        assert!(q.is_real_valued());
    }

    #[test]
    fn real_to_complex_circle() {
        // x² + y² -> z·zb (the Hilbert basis element u₁)
        let p = &(&x() * &x()) + &(&y() * &y());
        let q = real_to_complex(&p);
        assert_eq!(q, ComplexPoly::monomial(1, 1, g_one()));
    }

    #[test]
    fn real_to_complex_harmonic_cubic() {
        // x³ − 3xy² = Re(z³) -> (1/2)z³ + (1/2)zb³
        let p = &x().pow(3) - &(&x() * &y().pow(2)).scale(&rat(3));
        let q = real_to_complex(&p);
        let mut expected = ComplexPoly::zero();
        expected.add_term(3, 0, gauss(ratio(1, 2), rat(0)));
        expected.add_term(0, 3, gauss(ratio(1, 2), rat(0)));
        assert_eq!(q, expected);
    }

    #[test]
    fn complex_to_real_examples() {
        // z·zb -> x² + y²
        let q = ComplexPoly::monomial(1, 1, g_one());
        let p = complex_to_real(&q).unwrap();
        let expected = &x().pow(2) + &y().pow(2);
        assert_eq!(p, expected);

        // z³ + zb³ -> 2x³ − 6xy²  (binomial expansion oracle)
        let mut q = ComplexPoly::zero();
        q.add_term(3, 0, g_one());
        q.add_term(0, 3, g_one());
        let p = complex_to_real(&q).unwrap();
        let expected = &x().pow(3).scale(&rat(2)) - &(&x() * &y().pow(2)).scale(&rat(6));
        assert_eq!(p, expected);

        // i·z alone is not real-valued
        let q = ComplexPoly::monomial(1, 0, g_i());
        assert!(matches!(
            complex_to_real(&q),
            Err(AlgebraError::NotRealValued(..))
        ));
    }

    #[test]
    fn round_trips() {
        let p = &(&x().pow(3) - &(&x() * &y()).scale(&ratio(7, 3))) + &RealPoly::constant(rat(5));
        assert_eq!(complex_to_real(&real_to_complex(&p)).unwrap(), p);
    }

    #[test]
    fn ring_homomorphism() {
        let p1 = &x().pow(2) - &y();
        let p2 = &(&x() * &y()) + &RealPoly::constant(ratio(1, 2));
        let lhs = real_to_complex(&(&p1 * &p2));
        let rhs = &real_to_complex(&p1) * &real_to_complex(&p2);
        assert_eq!(lhs, rhs);
        let lhs = real_to_complex(&(&p1 + &p2));
        let rhs = &real_to_complex(&p1) + &real_to_complex(&p2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn triple_form_lemon() {
        // (y, x, -y) -> α = 0, β = i·z
        let f = triple_to_complex_form(&y(), &x(), &(-&y()));
        assert!(f.alpha.is_zero());
        assert_eq!(f.beta, ComplexPoly::monomial(1, 0, g_i()));
    }

    #[test]
    fn triple_form_star() {
        // (-x, -y, x) -> α = 0, β = zb
        let f = triple_to_complex_form(&(-&x()), &(-&y()), &x());
        assert!(f.alpha.is_zero());
        assert_eq!(f.beta, ComplexPoly::monomial(0, 1, g_one()));
    }

    #[test]
    fn triple_form_identity() {
        // (1, 0, 1) -> α = 1, β = 0
        let one = RealPoly::one();
        let f = triple_to_complex_form(&one, &RealPoly::zero(), &one);
        assert_eq!(f.alpha, ComplexPoly::one());
        assert!(f.beta.is_zero());
    }

    #[test]
    fn form_to_triple_annihilates_imaginary_alpha() {
        // α = i, β = 0 projects to (0, 0, 0): the generator M₂(z)w = iw
        // disappears under symmetrization.
        let f = ComplexMapForm::new(ComplexPoly::constant(g_i()), ComplexPoly::zero());
        let (a, b, c) = complex_form_to_triple(&f);
        assert!(a.is_zero() && b.is_zero() && c.is_zero());
    }

    #[test]
    fn form_to_triple_z_squared() {
        // α = 0, β = z² -> a = −(x²−y²), b = 2xy, c = x²−y²
        let f = ComplexMapForm::new(ComplexPoly::zero(), ComplexPoly::monomial(2, 0, g_one()));
        let (a, b, c) = complex_form_to_triple(&f);
        let x2y2 = &x().pow(2) - &y().pow(2);
        assert_eq!(a, -&x2y2);
        assert_eq!(b, (&x() * &y()).scale(&rat(2)));
        assert_eq!(c, x2y2);
    }

    #[test]
    fn form_triple_round_trip() {
        let a = &x().pow(2) - &y();
        let b = (&x() * &y()).scale(&ratio(-3, 2));
        let c = RealPoly::constant(rat(4));
        let f = triple_to_complex_form(&a, &b, &c);
        assert!(f.alpha.is_real_valued());
        let (a2, b2, c2) = complex_form_to_triple(&f);
        assert_eq!((a2, b2, c2), (a, b, c));
    }

    #[test]
    fn display_canonical() {
        let p = &(&y().pow(2) - &x().pow(2)) + &(&x() * &y()).scale(&rat(2));
        assert_eq!(p.to_string(), "-x^2 + 2*x*y + y^2");
        let q = &x().pow(2) - &RealPoly::constant(ratio(1, 2));
        assert_eq!(q.to_string(), "x^2 - 1/2");
        assert_eq!(RealPoly::zero().to_string(), "0");
        let c = gauss_i64(0, -1);
        assert_eq!(ComplexPoly::monomial(1, 1, c).to_string(), "-1*i*z*zb");
    }
}
