//! The Picard model of the Beauville surface: line bundle classes in the
//! O- and K-bases, Kunneth products, cohomology ranks, intersection form,
//! Serre duality and Hochschild cohomology.
//!
//! Pic(S) = Z^2 (+) dual group: a class is a bidegree plus a torsion
//! character. The K-basis differs from the O-basis by the torsion offset
//! [3i+3j, 3i+2j] built from the square roots of the two curve canonical
//! classes.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::charpoly::{Character, GradedCharPoly};
use crate::curve::{self, CurveAction};
use crate::{Error, Fault};

/// Which presentation a `LineBundleClass` is stored in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    O,
    K,
}

/// Torsion offset between the bases: K(i,j) = O(i,j)(offset(i,j)).
fn k_to_o_offset(i: i64, j: i64) -> Character {
    Character::new(3 * (i % 5) + 3 * (j % 5), 3 * (i % 5) + 2 * (j % 5))
}

/// A class in Pic(S): a bidegree plus a torsion character, tagged with the
/// basis it is written in. Equality, ordering and hashing always compare
/// the O-basis normal form, so `K(1,1)[0,0] == O(1,1)[1,0]`.
#[derive(Clone, Copy, Debug)]
pub struct LineBundleClass {
    a: i64,
    b: i64,
    chi: Character,
    basis: Basis,
}

impl LineBundleClass {
    pub fn o(a: i64, b: i64, chi: Character) -> LineBundleClass {
        LineBundleClass {
            a,
            b,
            chi,
            basis: Basis::O,
        }
    }

    pub fn k(a: i64, b: i64, chi: Character) -> LineBundleClass {
        LineBundleClass {
            a,
            b,
            chi,
            basis: Basis::K,
        }
    }

    /// The structure sheaf.
    pub fn trivial() -> LineBundleClass {
        LineBundleClass::o(0, 0, Character::TRIVIAL)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn chi(&self) -> Character {
        self.chi
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Same Picard class re-expressed in the O-basis.
    pub fn to_o_basis(&self) -> LineBundleClass {
        match self.basis {
            Basis::O => *self,
            Basis::K => LineBundleClass::o(
                self.a,
                self.b,
                self.chi + k_to_o_offset(self.a, self.b),
            ),
        }
    }

    /// Same Picard class re-expressed in the K-basis.
    pub fn to_k_basis(&self) -> LineBundleClass {
        match self.basis {
            Basis::O => LineBundleClass::k(
                self.a,
                self.b,
                self.chi - k_to_o_offset(self.a, self.b),
            ),
            Basis::K => *self,
        }
    }

    /// Re-expresses the class in the given basis.
    pub fn in_basis(&self, basis: Basis) -> LineBundleClass {
        match basis {
            Basis::O => self.to_o_basis(),
            Basis::K => self.to_k_basis(),
        }
    }

    /// Tensor product; the result is in the left operand's basis.
    pub fn tensor(&self, other: &LineBundleClass) -> LineBundleClass {
        let rhs = other.in_basis(self.basis);
        LineBundleClass {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            chi: self.chi + rhs.chi,
            basis: self.basis,
        }
    }

    /// Inverse (dual) class, in the same basis.
    pub fn inverse(&self) -> LineBundleClass {
        LineBundleClass {
            a: -self.a,
            b: -self.b,
            chi: -self.chi,
            basis: self.basis,
        }
    }

    fn key(&self) -> (i64, i64, u8, u8) {
        let o = self.to_o_basis();
        (o.a, o.b, o.chi.i(), o.chi.j())
    }

    /// Parses the bundle grammar `O(a,b)[i,j]` / `K(a,b)[i,j]`; the
    /// character suffix is optional and defaults to [0,0], characters are
    /// normalized mod 5.
    pub fn parse(text: &str) -> Result<LineBundleClass, Error> {
        Parser::new(text).bundle()
    }
}

impl PartialEq for LineBundleClass {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for LineBundleClass {}

impl PartialOrd for LineBundleClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LineBundleClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for LineBundleClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.basis {
            Basis::O => "O",
            Basis::K => "K",
        };
        write!(f, "{letter}({},{})", self.a, self.b)?;
        if !self.chi.is_trivial() {
            write!(f, "[{},{}]", self.chi.i(), self.chi.j())?;
        }
        Ok(())
    }
}

impl Serialize for LineBundleClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LineBundleClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        LineBundleClass::parse(&text).map_err(D::Error::custom)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn fail<T>(&self, msg: &str) -> Result<T, Error> {
        Err(Error::ParseBundle {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), Error> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("expected '{}'", byte as char))
        }
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse().or_else(|_| {
            self.pos = start;
            self.fail("expected an integer")
        })
    }

    fn bundle(&mut self) -> Result<LineBundleClass, Error> {
        self.skip_ws();
        let basis = match self.bytes.get(self.pos) {
            Some(b'O') => Basis::O,
            Some(b'K') => Basis::K,
            _ => return self.fail("expected 'O' or 'K'"),
        };
        self.pos += 1;
        self.expect(b'(')?;
        let a = self.integer()?;
        self.expect(b',')?;
        let b = self.integer()?;
        self.expect(b')')?;
        self.skip_ws();
        let chi = if self.bytes.get(self.pos) == Some(&b'[') {
            self.pos += 1;
            let i = self.integer()?;
            self.expect(b',')?;
            let j = self.integer()?;
            self.expect(b']')?;
            Character::new(i, j)
        } else {
            Character::TRIVIAL
        };
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.fail("trailing input");
        }
        let bundle = LineBundleClass { a, b, chi, basis };
        Ok(bundle)
    }
}

/// Euler characteristic of a line bundle on S: (a-1)(b-1), independent of
/// basis and torsion.
pub fn euler_char(bundle: &LineBundleClass) -> i64 {
    (bundle.a - 1)
        .checked_mul(bundle.b - 1)
        .expect("Euler characteristic overflow")
}

/// Intersection pairing: a1*b2 + b1*a2, torsion ignored.
pub fn intersection(l1: &LineBundleClass, l2: &LineBundleClass) -> i64 {
    let p1 = l1.a.checked_mul(l2.b).expect("intersection overflow");
    let p2 = l1.b.checked_mul(l2.a).expect("intersection overflow");
    p1.checked_add(p2).expect("intersection overflow")
}

/// The canonical class of S: K(2,2) = O(2,2)[2,0].
pub fn canonical_class() -> LineBundleClass {
    LineBundleClass::k(2, 2, Character::TRIVIAL)
}

/// Serre dual: omega_S (x) L^*. In K-coordinates K(i,j)(chi) goes to
/// K(2-i,2-j)(-chi). Returned in the input's basis.
pub fn serre_dual(bundle: &LineBundleClass) -> LineBundleClass {
    let k = bundle.to_k_basis();
    LineBundleClass::k(2 - k.a, 2 - k.b, -k.chi).in_basis(bundle.basis)
}

/// The three cohomology ranks of a line bundle on S.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CohomologyRanks {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
}

impl CohomologyRanks {
    pub fn new(h0: i64, h1: i64, h2: i64) -> CohomologyRanks {
        CohomologyRanks { h0, h1, h2 }
    }

    pub fn euler(&self) -> i64 {
        self.h0 - self.h1 + self.h2
    }

    pub fn is_zero(&self) -> bool {
        self.h0 == 0 && self.h1 == 0 && self.h2 == 0
    }

    pub fn reversed(&self) -> CohomologyRanks {
        CohomologyRanks {
            h0: self.h2,
            h1: self.h1,
            h2: self.h0,
        }
    }

    pub fn as_triple(&self) -> [i64; 3] {
        [self.h0, self.h1, self.h2]
    }

    /// Lowest degree with a nonzero rank, if any.
    pub fn min_nonzero_degree(&self) -> Option<u32> {
        if self.h0 != 0 {
            Some(0)
        } else if self.h1 != 0 {
            Some(1)
        } else if self.h2 != 0 {
            Some(2)
        } else {
            None
        }
    }
}

impl fmt::Display for CohomologyRanks {
    /// Rank polynomial h0 + h1 q + h2 q^2 rendered like `3+3q`, `q+3q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (rank, var) in [(self.h0, ""), (self.h1, "q"), (self.h2, "q^2")] {
            if rank == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            if var.is_empty() {
                write!(f, "{rank}")?;
            } else if rank == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{rank}{var}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for CohomologyRanks {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.as_triple().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CohomologyRanks {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [h0, h1, h2] = <[i64; 3]>::deserialize(deserializer)?;
        Ok(CohomologyRanks { h0, h1, h2 })
    }
}

/// A rectangular box of bidegrees, used by table and enumeration commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidegreeRange {
    pub imin: i64,
    pub imax: i64,
    pub jmin: i64,
    pub jmax: i64,
}

impl Default for BidegreeRange {
    fn default() -> BidegreeRange {
        BidegreeRange {
            imin: -5,
            imax: 7,
            jmin: -5,
            jmax: 7,
        }
    }
}

impl BidegreeRange {
    /// Parses `imin:imax,jmin:jmax`.
    pub fn parse(text: &str) -> Result<BidegreeRange, Error> {
        let bad = || Error::ParseRange(text.to_string());
        let (is, js) = text.split_once(',').ok_or_else(bad)?;
        let parse_pair = |s: &str| -> Result<(i64, i64), Error> {
            let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        };
        let (imin, imax) = parse_pair(is)?;
        let (jmin, jmax) = parse_pair(js)?;
        Ok(BidegreeRange {
            imin,
            imax,
            jmin,
            jmax,
        })
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        (self.imin..=self.imax).contains(&i) && (self.jmin..=self.jmax).contains(&j)
    }

    pub fn is_empty(&self) -> bool {
        self.imin > self.imax || self.jmin > self.jmax
    }
}

impl fmt::Display for BidegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}:{}", self.imin, self.imax, self.jmin, self.jmax)
    }
}

/// The cohomology engine for a product-quotient surface built from two
/// curve actions with a free diagonal action. All methods are pure; the
/// struct is freely shareable across threads.
#[derive(Clone, Copy, Debug)]
pub struct Surface {
    first: CurveAction,
    second: CurveAction,
    fault: Fault,
}

impl Surface {
    /// The Beauville surface built from the two standard actions.
    pub fn beauville() -> Surface {
        Surface::new(curve::C, curve::CPRIME)
    }

    pub fn new(first: CurveAction, second: CurveAction) -> Surface {
        Surface {
            first,
            second,
            fault: Fault::None,
        }
    }

    /// A deliberately corrupted engine, for validating the verification
    /// harness. See [`Fault`](crate::Fault).
    pub fn beauville_with_fault(fault: Fault) -> Surface {
        Surface {
            fault,
            ..Surface::beauville()
        }
    }

    pub fn fault(&self) -> Fault {
        self.fault
    }

    pub fn first_action(&self) -> &CurveAction {
        &self.first
    }

    pub fn second_action(&self) -> &CurveAction {
        &self.second
    }

    /// Curve-level cohomology through the engine, so fault injection is
    /// visible to the verification harness.
    pub fn curve_cohomology(
        &self,
        action: &CurveAction,
        n: i64,
        chi: Character,
    ) -> GradedCharPoly {
        curve::cohomology_poly_inj(action, n, chi, self.fault)
    }

    /// Curve-level sections (q-degree 0 part only).
    pub fn curve_h0(&self, action: &CurveAction, n: i64) -> GradedCharPoly {
        curve::h0_poly_inj(action, n, self.fault)
    }

    pub fn curve_canonical_character(&self, action: &CurveAction) -> Character {
        curve::canonical_character_inj(action, self.fault)
    }

    pub fn curve_k_character(&self, action: &CurveAction) -> Character {
        curve::k_character_inj(action, self.fault)
    }

    /// Torsion offset used for K(i,j) on this surface, built from the two
    /// square-root characters.
    fn k_offset(&self, i: i64, j: i64) -> Character {
        let (kf, ks) = if self.fault == Fault::WrongTorsionOffset {
            // Deliberately swapped.
            (
                curve::k_character_inj(&self.second, self.fault),
                curve::k_character_inj(&self.first, self.fault),
            )
        } else {
            (
                curve::k_character_inj(&self.first, self.fault),
                curve::k_character_inj(&self.second, self.fault),
            )
        };
        kf.scale(i) + ks.scale(j)
    }

    /// Bidegree and O-basis character as this surface interprets the class.
    fn o_data(&self, bundle: &LineBundleClass) -> (i64, i64, Character) {
        match bundle.basis {
            Basis::O => (bundle.a, bundle.b, bundle.chi),
            Basis::K => (
                bundle.a,
                bundle.b,
                bundle.chi + self.k_offset(bundle.a, bundle.b),
            ),
        }
    }

    /// Class of H^*(T, pull-back of the bundle): the product of the two
    /// curve cohomology polynomials with the torsion character applied
    /// once. q_bound = 2.
    pub fn kunneth_poly(&self, bundle: &LineBundleClass) -> GradedCharPoly {
        let (a, b, chi) = self.o_data(bundle);
        let f1 = curve::cohomology_poly_inj(&self.first, a, Character::TRIVIAL, self.fault);
        let f2 = curve::cohomology_poly_inj(&self.second, b, Character::TRIVIAL, self.fault);
        f1.mul(&f2)
            .expect("curve cohomology coefficients stay far from overflow")
            .twist(chi)
    }

    /// Cohomology ranks on S: the invariant (trivial-character) part of
    /// the Kunneth class in each q-degree.
    pub fn cohomology(&self, bundle: &LineBundleClass) -> CohomologyRanks {
        let poly = self.kunneth_poly(bundle);
        CohomologyRanks {
            h0: poly.coefficient(0, Character::TRIVIAL),
            h1: poly.coefficient(1, Character::TRIVIAL),
            h2: poly.coefficient(2, Character::TRIVIAL),
        }
    }

    /// Hochschild cohomology HH^k(S) = sum over p+q=k of h^p(Lambda^q T_S).
    ///
    /// The tangent bundle of the product descends: Lambda^0 = O,
    /// Lambda^1 = K(-2,0) (+) K(0,-2), Lambda^2 = K(-2,-2).
    pub fn hochschild_cohomology(&self) -> [i64; 5] {
        let o = self.cohomology(&LineBundleClass::trivial());
        let t1 = self.cohomology(&LineBundleClass::k(-2, 0, Character::TRIVIAL));
        let t2 = self.cohomology(&LineBundleClass::k(0, -2, Character::TRIVIAL));
        let top = self.cohomology(&LineBundleClass::k(-2, -2, Character::TRIVIAL));
        [
            o.h0,
            o.h1 + t1.h0 + t2.h0,
            o.h2 + t1.h1 + t2.h1 + top.h0,
            t1.h2 + t2.h2 + top.h1,
            top.h2,
        ]
    }

    /// Rank table over a bidegree box, in the layout of the printed grid:
    /// rows j descending, columns i ascending. Bundles are K(i,j).
    pub fn ranks_table(&self, range: &BidegreeRange) -> Vec<(i64, i64, CohomologyRanks)> {
        let mut rows = Vec::new();
        if range.is_empty() {
            return rows;
        }
        for j in (range.jmin..=range.jmax).rev() {
            for i in range.imin..=range.imax {
                let ranks = self.cohomology(&LineBundleClass::k(i, j, Character::TRIVIAL));
                rows.push((i, j, ranks));
            }
        }
        rows
    }
}
