//! Exact arithmetic in the Grothendieck ring of graded representations
//! of (Z/5)^2, i.e. Z[q,x,y]/(x^5-1, y^5-1) with a tracked bound on the
//! q-degree.
//!
//! Invariants:
//! - no stored zero coefficients (canonical sparse form)
//! - every stored q-degree is <= `q_bound`
//! - exponents of x and y are always normalized into {0,..,4}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Order of each cyclic factor of the acting group.
pub const GROUP_ORDER: u8 = 5;

/// A character of (Z/5)^2, written `[i,j]`: the character sending the first
/// generator to zeta^i and the second to zeta^j.
///
/// Components are always stored normalized in {0,..,4}; the group law is
/// componentwise addition mod 5.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    i: u8,
    j: u8,
}

impl Character {
    pub const TRIVIAL: Character = Character { i: 0, j: 0 };

    /// Builds a character from arbitrary integers, reducing mod 5.
    pub fn new(i: i64, j: i64) -> Character {
        Character {
            i: i.rem_euclid(GROUP_ORDER as i64) as u8,
            j: j.rem_euclid(GROUP_ORDER as i64) as u8,
        }
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    pub fn is_trivial(&self) -> bool {
        *self == Character::TRIVIAL
    }

    /// Scalar multiple mod 5.
    pub fn scale(self, k: i64) -> Character {
        Character::new(k * self.i as i64, k * self.j as i64)
    }

    /// All 25 characters in lexicographic order.
    pub fn all() -> impl Iterator<Item = Character> {
        (0..GROUP_ORDER).flat_map(|i| (0..GROUP_ORDER).map(move |j| Character { i, j }))
    }
}

impl std::ops::Add for Character {
    type Output = Character;

    /// Componentwise sum mod 5 (the group law of the dual group).
    fn add(self, other: Character) -> Character {
        Character::new(self.i as i64 + other.i as i64, self.j as i64 + other.j as i64)
    }
}

impl std::ops::Sub for Character {
    type Output = Character;

    fn sub(self, other: Character) -> Character {
        Character::new(self.i as i64 - other.i as i64, self.j as i64 - other.j as i64)
    }
}

impl std::ops::Neg for Character {
    type Output = Character;

    /// The inverse character.
    fn neg(self) -> Character {
        Character::new(-(self.i as i64), -(self.j as i64))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.i, self.j)
    }
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.i, self.j].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [i, j] = <[i64; 2]>::deserialize(deserializer)?;
        Ok(Character::new(i, j))
    }
}

/// The class of a Z_+-graded representation of (Z/5)^2: a sparse polynomial
/// in q, x, y with x^5 = y^5 = 1 and q-degree bounded by `q_bound`.
///
/// Terms are kept in the canonical order (q, then i, then j ascending), with
/// no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharPoly {
    terms: BTreeMap<(u32, Character), i64>,
    q_bound: u32,
}

impl GradedCharPoly {
    /// The zero polynomial with the given q-degree bound.
    pub fn zero(q_bound: u32) -> GradedCharPoly {
        GradedCharPoly {
            terms: BTreeMap::new(),
            q_bound,
        }
    }

    /// The unit of the ring (trivial character in degree 0).
    pub fn one(q_bound: u32) -> GradedCharPoly {
        GradedCharPoly::monomial(q_bound, 0, Character::TRIVIAL, 1)
    }

    /// A single term `c * q^a * x^i * y^j`. Panics if `q > q_bound`.
    pub fn monomial(q_bound: u32, q: u32, chi: Character, c: i64) -> GradedCharPoly {
        assert!(q <= q_bound, "q-degree {q} exceeds bound {q_bound}");
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((q, chi), c);
        }
        GradedCharPoly { terms, q_bound }
    }

    /// Builds a polynomial from explicit terms, validating the q-bound and
    /// collapsing repeated keys.
    pub fn from_terms<I>(q_bound: u32, terms: I) -> Result<GradedCharPoly, Error>
    where
        I: IntoIterator<Item = (u32, Character, i64)>,
    {
        let mut p = GradedCharPoly::zero(q_bound);
        for (q, chi, c) in terms {
            if q > q_bound {
                return Err(Error::QDegreeExceedsBound { q, q_bound });
            }
            p.add_term(q, chi, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, q: u32, chi: Character, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry((q, chi)).or_insert(0);
        *slot = slot.checked_add(c).expect("coefficient overflow in add");
        if *slot == 0 {
            self.terms.remove(&(q, chi));
        }
    }

    pub fn q_bound(&self) -> u32 {
        self.q_bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, Character, i64)> + '_ {
        self.terms.iter().map(|(&(q, chi), &c)| (q, chi, c))
    }

    /// Returns a copy with the stated q-bound. Fails if a stored term
    /// already exceeds it.
    pub fn with_q_bound(&self, q_bound: u32) -> Result<GradedCharPoly, Error> {
        GradedCharPoly::from_terms(q_bound, self.iter())
    }

    /// Coefficientwise sum; the result bound is the max of the input bounds.
    pub fn add(&self, other: &GradedCharPoly) -> GradedCharPoly {
        let mut out = self.clone();
        out.q_bound = self.q_bound.max(other.q_bound);
        for (q, chi, c) in other.iter() {
            out.add_term(q, chi, c);
        }
        out
    }

    /// Coefficientwise difference.
    pub fn sub(&self, other: &GradedCharPoly) -> GradedCharPoly {
        let mut out = self.clone();
        out.q_bound = self.q_bound.max(other.q_bound);
        for (q, chi, c) in other.iter() {
            out.add_term(q, chi, -c);
        }
        out
    }

    /// Convolution product: q-degrees add, characters multiply (exponents
    /// add mod 5). The result bound is the sum of the input bounds.
    ///
    /// Coefficient arithmetic is checked; an overflow is reported rather
    /// than wrapped.
    pub fn mul(&self, other: &GradedCharPoly) -> Result<GradedCharPoly, Error> {
        let q_bound = self
            .q_bound
            .checked_add(other.q_bound)
            .ok_or(Error::Overflow)?;
        let mut terms: BTreeMap<(u32, Character), i64> = BTreeMap::new();
        for (q1, chi1, c1) in self.iter() {
            for (q2, chi2, c2) in other.iter() {
                let key = (q1 + q2, chi1 + chi2);
                let prod = c1.checked_mul(c2).ok_or(Error::Overflow)?;
                let slot = terms.entry(key).or_insert(0);
                *slot = slot.checked_add(prod).ok_or(Error::Overflow)?;
            }
        }
        terms.retain(|_, c| *c != 0);
        Ok(GradedCharPoly { terms, q_bound })
    }

    /// The class of the dual representation: substitutes x -> x^4, y -> y^4
    /// (negates every character). The q-grading is untouched.
    pub fn dual(&self) -> GradedCharPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&(q, chi), &c)| ((q, -chi), c))
            .collect();
        GradedCharPoly {
            terms,
            q_bound: self.q_bound,
        }
    }

    /// The ring homomorphism determined by x -> image_of_x, y -> image_of_y
    /// on characters; q is untouched.
    pub fn substitute(&self, image_of_x: Character, image_of_y: Character) -> GradedCharPoly {
        let mut out = GradedCharPoly::zero(self.q_bound);
        for (q, chi, c) in self.iter() {
            let image = image_of_x.scale(chi.i() as i64) + image_of_y.scale(chi.j() as i64);
            out.add_term(q, image, c);
        }
        out
    }

    /// Multiplies every term's character by `chi` (the class of the twisted
    /// representation W[i,j]).
    pub fn twist(&self, chi: Character) -> GradedCharPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&(q, term_chi), &c)| ((q, term_chi + chi), c))
            .collect();
        GradedCharPoly {
            terms,
            q_bound: self.q_bound,
        }
    }

    /// The stored coefficient of `q^q_degree * x^i * y^j`, or 0.
    pub fn coefficient(&self, q_degree: u32, chi: Character) -> i64 {
        self.terms.get(&(q_degree, chi)).copied().unwrap_or(0)
    }

    /// The set of characters appearing with nonzero coefficient in any
    /// q-degree.
    pub fn character_support(&self) -> BTreeSet<Character> {
        self.terms.keys().map(|&(_, chi)| chi).collect()
    }

    /// Total dimension per q-degree (evaluation at x = y = 1), as a list of
    /// length `q_bound + 1`.
    pub fn dims_by_degree(&self) -> Vec<i64> {
        let mut dims = vec![0i64; self.q_bound as usize + 1];
        for (q, _, c) in self.iter() {
            dims[q as usize] = dims[q as usize]
                .checked_add(c)
                .expect("dimension overflow");
        }
        dims
    }

    /// The slice of terms in a single q-degree, as a polynomial with the
    /// same q-bound.
    pub fn q_slice(&self, q: u32) -> GradedCharPoly {
        let terms = self
            .terms
            .iter()
            .filter(|&(&(tq, _), _)| tq == q)
            .map(|(&k, &c)| (k, c))
            .collect();
        GradedCharPoly {
            terms,
            q_bound: self.q_bound,
        }
    }

    /// Parses the canonical text form produced by `Display`, e.g.
    /// `3+3q`, `q*x^4*y^4`, `1+y+x`. A `*` after the coefficient is
    /// accepted but not produced.
    pub fn parse(text: &str, q_bound: u32) -> Result<GradedCharPoly, Error> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::ParsePoly {
                pos: 0,
                msg: "empty input".into(),
            });
        }
        let mut p = GradedCharPoly::zero(q_bound);
        if compact == "0" {
            return Ok(p);
        }
        let bytes = compact.as_bytes();
        let mut pos = 0usize;
        let mut sign = 1i64;
        // Leading sign.
        if bytes[0] == b'-' {
            sign = -1;
            pos = 1;
        } else if bytes[0] == b'+' {
            pos = 1;
        }
        while pos < bytes.len() {
            let (term_q, chi, coeff, next) = parse_term(&compact, pos)?;
            if term_q > q_bound {
                return Err(Error::QDegreeExceedsBound {
                    q: term_q,
                    q_bound,
                });
            }
            p.add_term(term_q, chi, sign * coeff);
            pos = next;
            if pos < bytes.len() {
                match bytes[pos] {
                    b'+' => sign = 1,
                    b'-' => sign = -1,
                    other => {
                        return Err(Error::ParsePoly {
                            pos,
                            msg: format!("expected '+' or '-', found '{}'", other as char),
                        })
                    }
                }
                pos += 1;
            }
        }
        Ok(p)
    }
}

fn parse_term(text: &str, mut pos: usize) -> Result<(u32, Character, i64, usize), Error> {
    let bytes = text.as_bytes();
    let start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    let mut coeff = 1i64;
    let mut saw_any = false;
    if pos > start {
        coeff = text[start..pos].parse().map_err(|_| Error::ParsePoly {
            pos: start,
            msg: "bad integer".into(),
        })?;
        saw_any = true;
        // Optional '*' between coefficient and variables.
        if pos < bytes.len() && bytes[pos] == b'*' && pos + 1 < bytes.len() {
            pos += 1;
        }
    }
    let mut q = 0u32;
    let mut xi = 0i64;
    let mut yj = 0i64;
    loop {
        let var_pos = pos;
        let var = match bytes.get(pos) {
            Some(b'q') | Some(b'x') | Some(b'y') => bytes[pos],
            _ => break,
        };
        pos += 1;
        let mut exp = 1i64;
        if bytes.get(pos) == Some(&b'^') {
            pos += 1;
            let estart = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            exp = text[estart..pos].parse().map_err(|_| Error::ParsePoly {
                pos: estart,
                msg: "bad exponent".into(),
            })?;
        }
        match var {
            b'q' => q += exp as u32,
            b'x' => xi += exp,
            b'y' => yj += exp,
            _ => unreachable!(),
        }
        saw_any = true;
        let _ = var_pos;
        if bytes.get(pos) == Some(&b'*') {
            pos += 1;
        } else {
            break;
        }
    }
    if !saw_any {
        return Err(Error::ParsePoly {
            pos,
            msg: "expected a term".into(),
        });
    }
    Ok((q, Character::new(xi, yj), coeff, pos))
}

impl fmt::Display for GradedCharPoly {
    /// Canonical text form: terms in (q, i, j) ascending order, unit
    /// exponents and unit coefficients omitted, variable parts joined with
    /// `*`, e.g. `3+3q`, `q*x^4*y^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (q, chi, c) in self.iter() {
            let mut parts: Vec<String> = Vec::new();
            if q == 1 {
                parts.push("q".into());
            } else if q > 1 {
                parts.push(format!("q^{q}"));
            }
            if chi.i() == 1 {
                parts.push("x".into());
            } else if chi.i() > 1 {
                parts.push(format!("x^{}", chi.i()));
            }
            if chi.j() == 1 {
                parts.push("y".into());
            } else if chi.j() > 1 {
                parts.push(format!("y^{}", chi.j()));
            }
            let magnitude = c.unsigned_abs();
            let mut term = String::new();
            if parts.is_empty() {
                term.push_str(&magnitude.to_string());
            } else {
                if magnitude != 1 {
                    term.push_str(&magnitude.to_string());
                }
                term.push_str(&parts.join("*"));
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                write!(f, "{term}")?;
                first = false;
            } else if c < 0 {
                write!(f, "-{term}")?;
            } else {
                write!(f, "+{term}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    q: u32,
    x: u8,
    y: u8,
    c: i64,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    q_bound: u32,
    terms: Vec<TermRecord>,
}

impl Serialize for GradedCharPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let record = PolyRecord {
            q_bound: self.q_bound,
            terms: self
                .iter()
                .map(|(q, chi, c)| TermRecord {
                    q,
                    x: chi.i(),
                    y: chi.j(),
                    c,
                })
                .collect(),
        };
        record.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GradedCharPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = PolyRecord::deserialize(deserializer)?;
        GradedCharPoly::from_terms(
            record.q_bound,
            record
                .terms
                .into_iter()
                .map(|t| (t.q, Character::new(t.x as i64, t.y as i64), t.c)),
        )
        .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(i: i64, j: i64) -> Character {
        Character::new(i, j)
    }

    fn poly(q_bound: u32, terms: &[(u32, i64, i64, i64)]) -> GradedCharPoly {
        GradedCharPoly::from_terms(
            q_bound,
            terms.iter().map(|&(q, i, j, c)| (q, chi(i, j), c)),
        )
        .unwrap()
    }

    #[test]
    fn character_normalization_and_group_law() {
        assert_eq!(chi(7, -3), chi(2, 2));
        assert_eq!(chi(1, 2) + chi(4, 3), Character::TRIVIAL);
        assert_eq!(chi(3, 3).scale(2), chi(1, 1));
        assert_eq!(-chi(1, 4), chi(4, 1));
        assert_eq!(Character::all().count(), 25);
    }

    #[test]
    fn add_disjoint_supports() {
        let p = poly(0, &[(0, 1, 0, 1), (0, 0, 1, 1)]); // x + y
        let one = GradedCharPoly::one(0);
        let sum = p.add(&one);
        assert_eq!(sum, poly(0, &[(0, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]));
    }

    #[test]
    fn add_identity_and_cancellation() {
        let p = poly(0, &[(0, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]);
        assert_eq!(p.add(&GradedCharPoly::zero(0)), p);
        let t = poly(1, &[(1, 4, 4, 1)]);
        let minus_t = poly(1, &[(1, 4, 4, -1)]);
        let sum = t.add(&minus_t);
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn mul_ring_relations() {
        // x^2 y * x^3 y^4 = 1
        let a = poly(0, &[(0, 2, 1, 1)]);
        let b = poly(0, &[(0, 3, 4, 1)]);
        assert_eq!(a.mul(&b).unwrap(), GradedCharPoly::one(0));
    }

    #[test]
    fn mul_square_of_sections() {
        // (1 + x + y)^2 expanded by hand: 1 + 2x + 2y + x^2 + 2xy + y^2
        let p = poly(0, &[(0, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]);
        let expected = poly(
            0,
            &[
                (0, 0, 0, 1),
                (0, 1, 0, 2),
                (0, 0, 1, 2),
                (0, 2, 0, 1),
                (0, 1, 1, 2),
                (0, 0, 2, 1),
            ],
        );
        assert_eq!(p.mul(&p).unwrap(), expected);
    }

    #[test]
    fn mul_detects_overflow() {
        let big = poly(0, &[(0, 0, 0, i64::MAX)]);
        let two = poly(0, &[(0, 0, 0, 2)]);
        assert!(matches!(big.mul(&two), Err(Error::Overflow)));
    }

    #[test]
    fn dual_negates_characters() {
        assert_eq!(poly(0, &[(0, 1, 2, 1)]).dual(), poly(0, &[(0, 4, 3, 1)]));
        let sections = poly(0, &[(0, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]);
        assert_eq!(
            sections.dual(),
            poly(0, &[(0, 0, 0, 1), (0, 4, 0, 1), (0, 0, 4, 1)])
        );
    }

    #[test]
    fn dual_is_involution_and_homomorphism() {
        let p = poly(1, &[(0, 1, 2, 2), (1, 3, 0, 1)]);
        let r = poly(1, &[(0, 2, 2, 1), (1, 0, 4, 3)]);
        assert_eq!(p.dual().dual(), p);
        assert_eq!(
            p.mul(&r).unwrap().dual(),
            p.dual().mul(&r.dual()).unwrap()
        );
    }

    #[test]
    fn substitute_examples() {
        let x = poly(0, &[(0, 1, 0, 1)]);
        assert_eq!(
            x.substitute(chi(2, 1), chi(4, 3)),
            poly(0, &[(0, 2, 1, 1)])
        );
        let p = poly(1, &[(0, 1, 2, 2), (1, 3, 0, 1)]);
        assert_eq!(p.substitute(chi(1, 0), chi(0, 1)), p);
    }

    #[test]
    fn twist_examples() {
        let sections = poly(0, &[(0, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]);
        let twisted = sections.twist(chi(3, 3));
        assert_eq!(
            twisted,
            poly(0, &[(0, 3, 3, 1), (0, 4, 3, 1), (0, 3, 4, 1)])
        );
        let p = poly(1, &[(0, 1, 2, 2), (1, 3, 0, 1)]);
        assert_eq!(p.twist(Character::TRIVIAL), p);
        assert_eq!(p.twist(chi(1, 2)).twist(chi(4, 3)), p);
    }

    #[test]
    fn coefficient_lookup() {
        let p = poly(1, &[(1, 4, 4, 1)]);
        assert_eq!(p.coefficient(1, chi(4, 4)), 1);
        assert_eq!(p.coefficient(0, chi(4, 4)), 0);
        assert_eq!(GradedCharPoly::zero(2).coefficient(1, chi(0, 0)), 0);
    }

    #[test]
    fn support_and_dims() {
        assert!(GradedCharPoly::zero(1).character_support().is_empty());
        let single = poly(2, &[(2, 1, 0, 1)]);
        assert_eq!(
            single.character_support().into_iter().collect::<Vec<_>>(),
            vec![chi(1, 0)]
        );
        assert_eq!(single.dims_by_degree(), vec![0, 0, 1]);
        assert_eq!(GradedCharPoly::zero(2).dims_by_degree(), vec![0, 0, 0]);
    }

    #[test]
    fn display_canonical_form() {
        let p = poly(1, &[(0, 0, 0, 3), (1, 0, 0, 3)]);
        assert_eq!(p.to_string(), "3+3q");
        let t = poly(1, &[(1, 4, 4, 1)]);
        assert_eq!(t.to_string(), "q*x^4*y^4");
        assert_eq!(GradedCharPoly::zero(0).to_string(), "0");
        let neg = poly(0, &[(0, 0, 0, -2), (0, 1, 0, 1)]);
        assert_eq!(neg.to_string(), "-2+x");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["3+3q", "q*x^4*y^4", "1+y+x", "0", "-2+x", "2q*x^2*y"] {
            let p = GradedCharPoly::parse(text, 2).unwrap();
            assert_eq!(p.to_string(), text.replace(' ', ""));
        }
        // '*' after the coefficient is accepted on input.
        assert_eq!(
            GradedCharPoly::parse("3+3*q", 1).unwrap().to_string(),
            "3+3q"
        );
        assert!(GradedCharPoly::parse("3q^2", 1).is_err());
        assert!(GradedCharPoly::parse("", 1).is_err());
        assert!(GradedCharPoly::parse("3&x", 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = poly(2, &[(0, 1, 2, 2), (1, 3, 0, 1), (2, 0, 0, 5)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"q_bound":2,"terms":[{"q":0,"x":1,"y":2,"c":2},{"q":1,"x":3,"y":0,"c":1},{"q":2,"x":0,"y":0,"c":5}]}"#
        );
        let back: GradedCharPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn from_terms_rejects_excess_degree() {
        let err = GradedCharPoly::from_terms(1, [(2, chi(0, 0), 1)]).unwrap_err();
        assert!(matches!(err, Error::QDegreeExceedsBound { q: 2, q_bound: 1 }));
    }
}
