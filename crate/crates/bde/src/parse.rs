//! Recursive-descent parser for polynomial expressions over exact
//! rationals, the group-name syntax, and BDE JSON documents.

use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::algebra::RealPoly;
use crate::equivariance::Bde;
use crate::groups::{validate_eta, Axis, GroupError, GroupSpec, SymmetryGroup};
use crate::rational::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {0}: {1}")]
    Syntax(usize, String),
    #[error("negative exponent at position {0}")]
    NegativeExponent(usize),
    #[error("zero denominator at position {0}")]
    ZeroDenominator(usize),
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(s: &'a str) -> Self {
        Self {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::Syntax(start, "expected digits".into()));
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }
}

/// Parses the grammar
///   poly     := ['-'] term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := base ('^' uint)?
///   base     := 'x' | 'y' | rational | '(' poly ')'
///   rational := ['-'] uint ('/' uint)?
/// with explicit `*` between factors and whitespace ignored.
pub fn parse_poly(text: &str) -> Result<RealPoly, ParseError> {
    let mut lx = Lexer::new(text);
    let p = parse_sum(&mut lx)?;
    lx.skip_ws();
    if lx.pos != lx.bytes.len() {
        return Err(ParseError::Syntax(lx.pos, "unexpected trailing input".into()));
    }
    Ok(p)
}

fn parse_sum(lx: &mut Lexer) -> Result<RealPoly, ParseError> {
    let mut acc = if lx.eat(b'-') {
        -&parse_term(lx)?
    } else {
        parse_term(lx)?
    };
    loop {
        match lx.peek() {
            Some(b'+') => {
                lx.bump();
                acc = &acc + &parse_term(lx)?;
            }
            Some(b'-') => {
                lx.bump();
                acc = &acc - &parse_term(lx)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_term(lx: &mut Lexer) -> Result<RealPoly, ParseError> {
    let mut acc = parse_factor(lx)?;
    while lx.eat(b'*') {
        acc = &acc * &parse_factor(lx)?;
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer) -> Result<RealPoly, ParseError> {
    let base = parse_base(lx)?;
    if lx.eat(b'^') {
        let pos = lx.pos;
        if lx.peek() == Some(b'-') {
            return Err(ParseError::NegativeExponent(pos));
        }
        let e = lx.uint()?;
        let e: u32 = e
            .try_into()
            .map_err(|_| ParseError::Syntax(pos, "exponent too large".into()))?;
        return Ok(base.pow(e));
    }
    Ok(base)
}

fn parse_base(lx: &mut Lexer) -> Result<RealPoly, ParseError> {
    match lx.peek() {
        Some(b'x') => {
            lx.bump();
            Ok(RealPoly::var_x())
        }
        Some(b'y') => {
            lx.bump();
            Ok(RealPoly::var_y())
        }
        Some(b'(') => {
            lx.bump();
            let p = parse_sum(lx)?;
            if !lx.eat(b')') {
                return Err(ParseError::Syntax(lx.pos, "expected ')'".into()));
            }
            Ok(p)
        }
        Some(c) if c.is_ascii_digit() || c == b'-' => {
            let neg = lx.eat(b'-');
            let num = lx.uint()?;
            let den = if lx.eat(b'/') {
                let pos = lx.pos;
                let d = lx.uint()?;
                if d.is_zero() {
                    return Err(ParseError::ZeroDenominator(pos));
                }
                d
            } else {
                BigInt::one()
            };
            let mut r = Rat::new(num, den);
            if neg {
                r = -r;
            }
            Ok(RealPoly::constant(r))
        }
        _ => Err(ParseError::Syntax(
            lx.pos,
            "expected 'x', 'y', a rational, or '('".into(),
        )),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupParseError {
    #[error("group syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Parses the group syntax `Z<n>`, `D<n>`, `D<n>(kx|ky|rot)`, `Z2xZ2`,
/// `Z2(kx|ky|-I)`, `SO2`, `O2`, with an optional kernel suffix in brackets
/// such as `Z6[Z3]`, `D6[D3(kx)]`, `Z2[1]`, `Z2xZ2[Z2(-I)]`, `O2[SO2]`.
///
/// A bare `Z2` denotes the reflection group generated by κ_x (the usage of
/// the catalog tables); the rotation group {±I} is written `Z2(-I)`. In
/// kernel position inside a cyclic group, `Z<m>` always means the rotation
/// subgroup.
pub fn parse_group(text: &str) -> Result<SymmetryGroup, GroupParseError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (base_str, kernel_str) = match s.find('[') {
        Some(i) => {
            if !s.ends_with(']') {
                return Err(GroupParseError::Syntax("expected closing ']'".into()));
            }
            (&s[..i], Some(&s[i + 1..s.len() - 1]))
        }
        None => (&s[..], None),
    };
    let group = parse_group_spec(base_str, None)?;
    let kernel = match kernel_str {
        None => None,
        Some(k) => Some(parse_group_spec(k, Some(&group))?),
    };
    Ok(validate_eta(group, kernel)?)
}

fn parse_group_spec(
    s: &str,
    kernel_of: Option<&GroupSpec>,
) -> Result<GroupSpec, GroupParseError> {
    let err = |m: &str| GroupParseError::Syntax(format!("{m}: '{s}'"));
    if s == "SO2" {
        return Ok(GroupSpec::SO2);
    }
    if s == "O2" {
        return Ok(GroupSpec::O2);
    }
    if s == "1" {
        return Ok(GroupSpec::trivial());
    }
    if s == "Z2xZ2" {
        return Ok(GroupSpec::klein_four());
    }
    let (head, rest) = s.split_at(1);
    let (num_str, qual) = match rest.find('(') {
        Some(i) => {
            if !rest.ends_with(')') {
                return Err(err("expected closing ')'"));
            }
            (&rest[..i], Some(&rest[i + 1..rest.len() - 1]))
        }
        None => (rest, None),
    };
    let n: u32 = num_str.parse().map_err(|_| err("expected a group order"))?;
    if n == 0 {
        return Err(err("group order must be positive"));
    }
    match head {
        "Z" => match (n, qual) {
            (_, Some("-I")) if n == 2 => Ok(GroupSpec::Cyclic(2)),
            (2, Some("kx")) => Ok(GroupSpec::Dihedral(1, Axis::Kx)),
            (2, Some("ky")) => Ok(GroupSpec::Dihedral(1, Axis::Rotated)),
            (2, None) => {
                // In kernel position inside a cyclic group, Z2 is the
                // rotation subgroup {±I}; elsewhere the bare name denotes
                // the reflection group of the catalog tables.
                if matches!(kernel_of, Some(GroupSpec::Cyclic(_))) {
                    Ok(GroupSpec::Cyclic(2))
                } else {
                    Ok(GroupSpec::Dihedral(1, Axis::Kx))
                }
            }
            (_, None) => Ok(GroupSpec::Cyclic(n)),
            _ => Err(err("unsupported qualifier")),
        },
        "D" => {
            let axis = match qual {
                None | Some("kx") => Axis::Kx,
                Some("ky") => {
                    if n % 2 == 1 {
                        Axis::Rotated
                    } else {
                        // for even n the y-axis lies in the κ_x class
                        Axis::Kx
                    }
                }
                Some("rot") => Axis::Rotated,
                _ => return Err(err("unsupported axis qualifier")),
            };
            if n == 2 && axis == Axis::Kx {
                return Ok(GroupSpec::klein_four());
            }
            Ok(GroupSpec::Dihedral(n, axis))
        }
        _ => Err(err("expected Z<n>, D<n>, Z2xZ2, SO2 or O2")),
    }
}

/// Canonical rendering of a group spec; `kernel_of` switches to the
/// kernel-position conventions (`1` for the trivial group, `Z2` for the
/// rotation subgroup of a cyclic group).
pub fn format_group_spec(spec: &GroupSpec, kernel_of: Option<&GroupSpec>) -> String {
    match spec {
        GroupSpec::SO2 => "SO2".into(),
        GroupSpec::O2 => "O2".into(),
        GroupSpec::Cyclic(1) => {
            if kernel_of.is_some() {
                "1".into()
            } else {
                "Z1".into()
            }
        }
        GroupSpec::Cyclic(2) => {
            if matches!(kernel_of, Some(GroupSpec::Cyclic(_))) {
                "Z2".into()
            } else {
                "Z2(-I)".into()
            }
        }
        GroupSpec::Cyclic(n) => format!("Z{n}"),
        GroupSpec::Dihedral(1, Axis::Kx) => "Z2(kx)".into(),
        GroupSpec::Dihedral(1, Axis::Rotated) => "Z2(ky)".into(),
        GroupSpec::Dihedral(2, Axis::Kx) => "Z2xZ2".into(),
        GroupSpec::Dihedral(2, Axis::Rotated) => "D2(rot)".into(),
        GroupSpec::Dihedral(n, Axis::Kx) => {
            if kernel_of.is_some() {
                format!("D{n}(kx)")
            } else {
                format!("D{n}")
            }
        }
        GroupSpec::Dihedral(n, Axis::Rotated) => {
            if n % 2 == 1 {
                format!("D{n}(ky)")
            } else {
                format!("D{n}(rot)")
            }
        }
    }
}

pub fn format_symmetry_group(sg: &SymmetryGroup) -> String {
    let base = format_group_spec(&sg.group, None);
    match &sg.eta {
        crate::groups::EtaSpec::Trivial => base,
        crate::groups::EtaSpec::Kernel(k) => {
            format!("{base}[{}]", format_group_spec(k, Some(&sg.group)))
        }
    }
}

#[derive(Debug, Error)]
pub enum BdeParseError {
    #[error("invalid BDE document: {0}")]
    Document(String),
    #[error(transparent)]
    Poly(#[from] ParseError),
    #[error("degenerate equation: {0}")]
    Degenerate(#[from] crate::equivariance::BdeError),
}

/// Parses the BDE JSON document `{"a": "...", "b": "...", "c": "..."}`.
/// The key `b` holds the half coefficient of the mixed term (the 2b
/// convention); `b_total` may be used instead and is halved on input.
pub fn parse_bde_json(text: &str) -> Result<Bde, BdeParseError> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| BdeParseError::Document(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| BdeParseError::Document("expected a JSON object".into()))?;
    let get = |key: &str| -> Result<Option<RealPoly>, BdeParseError> {
        match obj.get(key) {
            None => Ok(None),
            Some(serde_json::Value::String(s)) => Ok(Some(parse_poly(s)?)),
            Some(_) => Err(BdeParseError::Document(format!(
                "field '{key}' must be a string"
            ))),
        }
    };
    let a = get("a")?.unwrap_or_else(RealPoly::zero);
    let c = get("c")?.unwrap_or_else(RealPoly::zero);
    let b = match (get("b")?, get("b_total")?) {
        (Some(_), Some(_)) => {
            return Err(BdeParseError::Document(
                "give either 'b' or 'b_total', not both".into(),
            ))
        }
        (Some(b), None) => b,
        (None, Some(bt)) => bt.scale(&crate::rational::ratio(1, 2)),
        (None, None) => RealPoly::zero(),
    };
    Ok(Bde::new(a, b, c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    #[test]
    fn poly_examples() {
        let p = parse_poly("y^2 - x^2 + 2*x*y").unwrap();
        assert_eq!(p.coefficient(0, 2), rat(1));
        assert_eq!(p.coefficient(2, 0), rat(-1));
        assert_eq!(p.coefficient(1, 1), rat(2));

        let p = parse_poly("1/2*x").unwrap();
        assert_eq!(p.coefficient(1, 0), ratio(1, 2));

        assert_eq!(parse_poly("x^-1"), Err(ParseError::NegativeExponent(2)));
        assert!(matches!(parse_poly("1/0"), Err(ParseError::ZeroDenominator(_))));
        assert!(matches!(parse_poly("x y"), Err(ParseError::Syntax(..))));
        assert!(matches!(parse_poly(""), Err(ParseError::Syntax(..))));
    }

    #[test]
    fn poly_parenthesized() {
        let p = parse_poly("(x + y)^2 - (x - y)^2").unwrap();
        assert_eq!(p, parse_poly("4*x*y").unwrap());
    }

    #[test]
    fn poly_print_parse_round_trip() {
        for s in [
            "x^2 + 2*x*y - 1/2",
            "-x^3 + y",
            "0",
            "5",
            "-2/3",
            "x*y^2 - 7*x",
        ] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p, "round trip {s}");
        }
    }

    #[test]
    fn group_examples() {
        let g = parse_group("Z6[Z3]").unwrap();
        assert_eq!(g.group, GroupSpec::Cyclic(6));
        assert_eq!(g.kernel_group(), GroupSpec::Cyclic(3));

        let g = parse_group("D6[D3(kx)]").unwrap();
        assert_eq!(g.group, GroupSpec::Dihedral(6, Axis::Kx));
        assert_eq!(g.kernel_group(), GroupSpec::Dihedral(3, Axis::Kx));

        assert!(matches!(
            parse_group("SO2[1]"),
            Err(GroupParseError::Group(GroupError::NotAdmissible(_)))
        ));

        // bare Z2 is the reflection group; Z4[Z2] has the rotation kernel
        assert_eq!(parse_group("Z2").unwrap().group, GroupSpec::Dihedral(1, Axis::Kx));
        assert_eq!(
            parse_group("Z4[Z2]").unwrap().kernel_group(),
            GroupSpec::Cyclic(2)
        );
        assert_eq!(
            parse_group("Z2xZ2[Z2(-I)]").unwrap().kernel_group(),
            GroupSpec::Cyclic(2)
        );
        assert_eq!(
            parse_group("Z2xZ2[Z2(ky)]").unwrap().kernel_group(),
            GroupSpec::Dihedral(1, Axis::Rotated)
        );
        assert_eq!(parse_group("O2[SO2]").unwrap().kernel_group(), GroupSpec::SO2);
        assert_eq!(
            parse_group("D6[D3(ky)]").unwrap().kernel_group(),
            GroupSpec::Dihedral(3, Axis::Rotated)
        );
    }

    #[test]
    fn group_format_round_trip() {
        for s in [
            "Z1", "Z2(kx)", "Z2(ky)", "Z2(-I)", "Z2xZ2", "Z3", "Z5", "D3", "D6",
            "SO2", "O2", "Z6[Z3]", "Z4[Z2]", "D6[D3(kx)]", "D6[D3(ky)]", "D5[Z5]",
            "Z2(kx)[1]", "Z2xZ2[Z2(-I)]", "Z2xZ2[Z2(kx)]", "Z2xZ2[Z2(ky)]", "O2[SO2]",
        ] {
            let g = parse_group(s).unwrap();
            let printed = format_symmetry_group(&g);
            let reparsed = parse_group(&printed).unwrap();
            assert_eq!(g, reparsed, "round trip {s} -> {printed}");
        }
    }

    #[test]
    fn bde_json() {
        let e = parse_bde_json(r#"{"a": "1", "b": "y", "c": "1"}"#).unwrap();
        assert_eq!(*e.b(), parse_poly("y").unwrap());

        // b_total is halved
        let e = parse_bde_json(r#"{"a": "1", "b_total": "2*y", "c": "1"}"#).unwrap();
        assert_eq!(*e.b(), parse_poly("y").unwrap());

        assert!(parse_bde_json(r#"{"a": "0", "b": "0", "c": "0"}"#).is_err());
        assert!(parse_bde_json(r#"{"a": "1", "b": "y", "b_total": "y", "c": "1"}"#).is_err());
    }
}
