//! Equivariant cohomology of line bundles on (Z/5)^2-equivariant Fermat
//! quintics, plus stabilizer and freeness checks for diagonal actions.
//!
//! An action is a 2x3 exponent matrix: entry (g, c) is the exponent of
//! zeta_5 by which generator g scales the homogeneous coordinate c. The
//! quintic X^5 + Y^5 + Z^5 itself is scaled by zeta^(5k) = 1 under any such
//! matrix, so every exponent matrix acts on the curve.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charpoly::{Character, GradedCharPoly};
use crate::{Error, Fault};

/// Inverse of 2 mod 5, used to halve characters.
const HALF: i64 = 3;

/// A diagonal (Z/5)^2-action on the plane Fermat quintic, as a 2x3 exponent
/// matrix over Z/5. Row = generator (e1, e2), column = coordinate (X, Y, Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveAction {
    rows: [[u8; 3]; 2],
}

/// The first of the two standard actions: e1 scales X, e2 scales Y.
pub const C: CurveAction = CurveAction {
    rows: [[1, 0, 0], [0, 1, 0]],
};

/// The second standard action, giving the same curve a different
/// equivariant structure.
pub const CPRIME: CurveAction = CurveAction {
    rows: [[2, 4, 0], [1, 3, 0]],
};

impl CurveAction {
    pub fn new(rows: [[i64; 3]; 2]) -> CurveAction {
        let reduce = |v: i64| v.rem_euclid(5) as u8;
        CurveAction {
            rows: [
                [reduce(rows[0][0]), reduce(rows[0][1]), reduce(rows[0][2])],
                [reduce(rows[1][0]), reduce(rows[1][1]), reduce(rows[1][2])],
            ],
        }
    }

    /// Resolves the named built-in constants used on the command line.
    pub fn by_name(name: &str) -> Result<CurveAction, Error> {
        match name {
            "C" => Ok(C),
            "Cprime" | "C'" => Ok(CPRIME),
            other => Err(Error::UnknownCurve(other.to_string())),
        }
    }

    pub fn rows(&self) -> [[u8; 3]; 2] {
        self.rows
    }

    /// Character by which the group scales the monomial X^i Y^j Z^k.
    pub fn monomial_character(&self, i: i64, j: i64, k: i64) -> Character {
        let e1 = self.rows[0][0] as i64 * i + self.rows[0][1] as i64 * j + self.rows[0][2] as i64 * k;
        let e2 = self.rows[1][0] as i64 * i + self.rows[1][1] as i64 * j + self.rows[1][2] as i64 * k;
        Character::new(e1, e2)
    }

    /// Character of a single coordinate (0 = X, 1 = Y, 2 = Z).
    fn column_character(&self, c: usize) -> Character {
        Character::new(self.rows[0][c] as i64, self.rows[1][c] as i64)
    }

    /// Whether the induced action on the projective plane is faithful:
    /// the only group element scaling all three coordinates equally is 0.
    pub fn is_faithful(&self) -> bool {
        // Kernel of the projective action = common kernel of the two forms
        // (col X - col Z) and (col Y - col Z) on (Z/5)^2.
        let fx = form_between(self, 0, 2);
        let fy = form_between(self, 1, 2);
        (fx.0 as i64 * fy.1 as i64 - fx.1 as i64 * fy.0 as i64) % 5 != 0
    }
}

impl fmt::Display for CurveAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{},{}],[{},{},{}]]",
            self.rows[0][0], self.rows[0][1], self.rows[0][2], self.rows[1][0], self.rows[1][1], self.rows[1][2]
        )
    }
}

/// The linear form on the group measuring the difference in scaling between
/// coordinates c1 and c2; returned as coefficients (of e1, of e2) mod 5.
fn form_between(action: &CurveAction, c1: usize, c2: usize) -> (u8, u8) {
    let u = (action.rows[0][c1] as i64 - action.rows[0][c2] as i64).rem_euclid(5) as u8;
    let v = (action.rows[1][c1] as i64 - action.rows[1][c2] as i64).rem_euclid(5) as u8;
    (u, v)
}

/// A stabilizer subgroup of (Z/5)^2: cyclic of order 1 or 5, stored as a
/// normalized generator (first nonzero component scaled to 1), or (0,0)
/// for the trivial subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StabilizerSubgroup {
    generator: (u8, u8),
}

impl StabilizerSubgroup {
    fn from_generator(a: i64, b: i64) -> StabilizerSubgroup {
        let (mut a, mut b) = (a.rem_euclid(5), b.rem_euclid(5));
        // Normalize so the first nonzero component is 1.
        let lead = if a != 0 { a } else { b };
        if lead != 0 {
            let inv = [0i64, 1, 3, 2, 4][lead as usize]; // inverses mod 5
            a = (a * inv).rem_euclid(5);
            b = (b * inv).rem_euclid(5);
        }
        StabilizerSubgroup {
            generator: (a as u8, b as u8),
        }
    }

    pub fn generator(&self) -> (u8, u8) {
        self.generator
    }

    pub fn order(&self) -> u8 {
        if self.generator == (0, 0) {
            1
        } else {
            5
        }
    }

    /// Whether the two subgroups intersect only in the identity.
    pub fn meets_trivially(&self, other: &StabilizerSubgroup) -> bool {
        let (a, b) = self.generator;
        let (c, d) = other.generator;
        if (a, b) == (0, 0) || (c, d) == (0, 0) {
            return true;
        }
        // Two order-5 subgroups coincide iff their generators are
        // proportional.
        (a as i64 * d as i64 - b as i64 * c as i64) % 5 != 0
    }
}

impl fmt::Display for StabilizerSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}e1+{}e2>", self.generator.0, self.generator.1)
    }
}

/// Class of the sections of O(m) on the ambient plane: all monomials
/// X^i Y^j Z^(m-i-j). Zero for m < 0.
fn plane_sections(action: &CurveAction, m: i64) -> GradedCharPoly {
    let mut p = GradedCharPoly::zero(0);
    if m < 0 {
        return p;
    }
    for i in 0..=m {
        for j in 0..=(m - i) {
            let term = GradedCharPoly::monomial(0, 0, action.monomial_character(i, j, m - i - j), 1);
            p = p.add(&term);
        }
    }
    p
}

pub(crate) fn h0_poly_inj(action: &CurveAction, n: i64, fault: Fault) -> GradedCharPoly {
    if n < 0 {
        return GradedCharPoly::zero(0);
    }
    // Sections of O(n) on the curve: plane sections modulo the degree-5
    // relation, which is invariant under every exponent-matrix action.
    let threshold = if fault == Fault::RestrictionOffByOne { 6 } else { 5 };
    let ambient = plane_sections(action, n);
    if n >= threshold {
        ambient.sub(&plane_sections(action, n - 5))
    } else {
        ambient
    }
}

/// Class of H^0 of O(n) on the curve, in q-degree 0.
pub fn h0_poly(action: &CurveAction, n: i64) -> GradedCharPoly {
    h0_poly_inj(action, n, Fault::None)
}

pub(crate) fn canonical_character_inj(action: &CurveAction, fault: Fault) -> Character {
    let chi =
        action.column_character(0) + action.column_character(1) + action.column_character(2);
    if fault == Fault::WrongCanonicalCharacter {
        chi + Character::new(1, 0)
    } else {
        chi
    }
}

/// Character kappa such that the canonical bundle of the curve is
/// O(2)(kappa): the determinant of the coordinate representation.
pub fn canonical_character(action: &CurveAction) -> Character {
    canonical_character_inj(action, Fault::None)
}

pub(crate) fn k_character_inj(action: &CurveAction, fault: Fault) -> Character {
    // The unique square root: 2 is invertible mod 5.
    canonical_character_inj(action, fault).scale(HALF)
}

/// Character eta with 2*eta = canonical_character; K(m) := O(m)(m*eta) is
/// the unique equivariant square root of the canonical class, twisted.
pub fn k_character(action: &CurveAction) -> Character {
    k_character_inj(action, Fault::None)
}

pub(crate) fn h1_poly_inj(action: &CurveAction, n: i64, fault: Fault) -> GradedCharPoly {
    // Equivariant Serre duality: H^1(O(n)) = (H^0(O(2-n)(kappa)))^*,
    // i.e. the dual of H^0(O(2-n)) twisted by -kappa, placed in q-degree 1.
    let kappa = canonical_character_inj(action, fault);
    let dual_part = h0_poly_inj(action, 2 - n, fault).dual().twist(-kappa);
    GradedCharPoly::from_terms(1, dual_part.iter().map(|(_, chi, c)| (1, chi, c)))
        .expect("q-degree 1 within bound")
}

/// Class of H^1 of O(n) on the curve, in q-degree 1.
pub fn h1_poly(action: &CurveAction, n: i64) -> GradedCharPoly {
    h1_poly_inj(action, n, Fault::None)
}

pub(crate) fn cohomology_poly_inj(
    action: &CurveAction,
    n: i64,
    chi: Character,
    fault: Fault,
) -> GradedCharPoly {
    let h0 = h0_poly_inj(action, n, fault)
        .with_q_bound(1)
        .expect("widening the q-bound");
    h0.add(&h1_poly_inj(action, n, fault)).twist(chi)
}

/// Class of H^*(O(n)(chi)) on the curve: H^0 in q-degree 0, H^1 in
/// q-degree 1.
pub fn cohomology_poly(action: &CurveAction, n: i64, chi: Character) -> GradedCharPoly {
    cohomology_poly_inj(action, n, chi, Fault::None)
}

/// Class of H^*(K(m)) where K(1) is the square root of the canonical class.
pub fn k_cohomology_poly(action: &CurveAction, m: i64) -> GradedCharPoly {
    cohomology_poly(action, m, k_character(action).scale(m))
}

/// Stabilizer of the points of the ramification orbit D_i (i = 1, 2, 3:
/// the orbit where X, Y, Z respectively vanishes).
///
/// The stabilizer is the kernel of the form comparing how the two residual
/// coordinates are scaled. Panics if that form vanishes identically, which
/// only happens for non-faithful actions.
pub fn stabilizer(action: &CurveAction, ramification_index: u8) -> StabilizerSubgroup {
    assert!(
        (1..=3).contains(&ramification_index),
        "ramification index must be 1, 2 or 3"
    );
    let vanishing = (ramification_index - 1) as usize;
    let residual: Vec<usize> = (0..3).filter(|&c| c != vanishing).collect();
    let (u, v) = form_between(action, residual[0], residual[1]);
    assert!(
        (u, v) != (0, 0),
        "residual coordinates are scaled identically: action is not faithful"
    );
    // Kernel of u*a + v*b = 0 is generated by (v, -u).
    StabilizerSubgroup::from_generator(v as i64, -(u as i64))
}

/// Whether the diagonal action on the product of the two curves is free.
///
/// Non-free points of the product only occur over ramification orbits, so
/// it suffices that all nine pairs of stabilizers meet trivially.
pub fn diagonal_action_is_free(a1: &CurveAction, a2: &CurveAction) -> bool {
    (1..=3).all(|i| (1..=3).all(|j| stabilizer(a1, i).meets_trivially(&stabilizer(a2, j))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(i: i64, j: i64) -> Character {
        Character::new(i, j)
    }

    fn terms(pairs: &[(u32, i64, i64, i64)]) -> Vec<(u32, Character, i64)> {
        pairs.iter().map(|&(q, i, j, c)| (q, chi(i, j), c)).collect()
    }

    #[test]
    fn built_in_actions_are_faithful() {
        assert!(C.is_faithful());
        assert!(CPRIME.is_faithful());
        assert!(!CurveAction::new([[0, 0, 0], [0, 0, 0]]).is_faithful());
        assert!(!CurveAction::new([[1, 1, 1], [2, 2, 2]]).is_faithful());
    }

    #[test]
    fn by_name_resolves_constants() {
        assert_eq!(CurveAction::by_name("C").unwrap(), C);
        assert_eq!(CurveAction::by_name("Cprime").unwrap(), CPRIME);
        assert!(CurveAction::by_name("D").is_err());
    }

    #[test]
    fn action_json_is_a_2x3_array() {
        assert_eq!(serde_json::to_string(&C).unwrap(), "[[1,0,0],[0,1,0]]");
        let back: CurveAction = serde_json::from_str("[[2,4,0],[1,3,0]]").unwrap();
        assert_eq!(back, CPRIME);
    }

    #[test]
    fn h0_small_degrees() {
        assert_eq!(
            h0_poly(&C, 1),
            GradedCharPoly::from_terms(0, terms(&[(0, 0, 0, 1), (0, 1, 0, 1), (0, 0, 1, 1)]))
                .unwrap()
        );
        assert!(h0_poly(&C, -3).is_zero());
        // Triangle counts for 0 <= n <= 4: (n+1)(n+2)/2 terms, coefficient 1.
        for n in 0..=4 {
            let p = h0_poly(&C, n);
            assert_eq!(p.num_terms() as i64, (n + 1) * (n + 2) / 2);
            assert!(p.iter().all(|(_, _, c)| c == 1));
        }
    }

    #[test]
    fn h0_degree_five_subtracts_the_relation() {
        let p = h0_poly(&C, 5);
        assert_eq!(p.dims_by_degree(), vec![20]);
        // Chars (0,0) arises from Z^5, X^5, Y^5 minus the relation class.
        assert_eq!(p.coefficient(0, chi(0, 0)), 2);
    }

    #[test]
    fn canonical_characters() {
        assert_eq!(canonical_character(&C), chi(1, 1));
        assert_eq!(canonical_character(&CPRIME), chi(1, 4));
        assert_eq!(
            canonical_character(&CurveAction::new([[0, 0, 0], [0, 0, 0]])),
            chi(0, 0)
        );
    }

    #[test]
    fn k_characters_are_square_roots() {
        assert_eq!(k_character(&C), chi(3, 3));
        assert_eq!(k_character(&CPRIME), chi(3, 2));
        for action in [&C, &CPRIME] {
            assert_eq!(
                k_character(action).scale(2),
                canonical_character(action)
            );
        }
    }

    #[test]
    fn h1_values_from_duality() {
        assert_eq!(
            h1_poly(&C, 2),
            GradedCharPoly::from_terms(1, terms(&[(1, 4, 4, 1)])).unwrap()
        );
        assert!(h1_poly(&C, 3).is_zero());
        assert_eq!(
            h1_poly(&C, 0),
            GradedCharPoly::from_terms(
                1,
                terms(&[
                    (1, 4, 4, 1),
                    (1, 4, 3, 1),
                    (1, 3, 4, 1),
                    (1, 4, 2, 1),
                    (1, 3, 3, 1),
                    (1, 2, 4, 1),
                ])
            )
            .unwrap()
        );
    }

    #[test]
    fn k_twisted_cohomology_on_both_curves() {
        // H^*(C, K(1))
        assert_eq!(
            cohomology_poly(&C, 1, chi(3, 3)),
            GradedCharPoly::from_terms(
                1,
                terms(&[
                    (0, 4, 3, 1),
                    (0, 3, 4, 1),
                    (0, 3, 3, 1),
                    (1, 2, 2, 1),
                    (1, 2, 1, 1),
                    (1, 1, 2, 1),
                ])
            )
            .unwrap()
        );
        // H^*(C', K(2)) with 2 * [3,2] = [1,4]
        assert_eq!(
            cohomology_poly(&CPRIME, 2, chi(1, 4)),
            GradedCharPoly::from_terms(
                1,
                terms(&[
                    (0, 2, 3, 1),
                    (0, 1, 4, 1),
                    (0, 4, 0, 1),
                    (0, 3, 0, 1),
                    (0, 0, 2, 1),
                    (0, 0, 1, 1),
                    (1, 0, 0, 1),
                ])
            )
            .unwrap()
        );
        assert_eq!(
            cohomology_poly(&C, 0, Character::TRIVIAL).coefficient(0, Character::TRIVIAL),
            1
        );
    }

    #[test]
    fn stabilizers_of_ramification_orbits() {
        assert_eq!(stabilizer(&C, 1).generator(), (1, 0));
        assert_eq!(stabilizer(&C, 2).generator(), (0, 1));
        assert_eq!(stabilizer(&C, 3).generator(), (1, 1));
        assert_eq!(stabilizer(&CPRIME, 1).generator(), (1, 2));
        assert_eq!(stabilizer(&CPRIME, 2).generator(), (1, 3));
        assert_eq!(stabilizer(&CPRIME, 3).generator(), (1, 4));
    }

    #[test]
    fn stabilizers_are_order_five_and_distinct_per_action() {
        for action in [&C, &CPRIME] {
            let subs: Vec<_> = (1..=3).map(|i| stabilizer(action, i)).collect();
            assert!(subs.iter().all(|s| s.order() == 5));
            assert!(subs[0].meets_trivially(&subs[1]));
            assert!(subs[0].meets_trivially(&subs[2]));
            assert!(subs[1].meets_trivially(&subs[2]));
        }
    }

    #[test]
    fn freeness_of_the_diagonal_action() {
        assert!(diagonal_action_is_free(&C, &CPRIME));
        assert!(!diagonal_action_is_free(&C, &C));
        assert!(!diagonal_action_is_free(&CPRIME, &CPRIME));
    }

    #[test]
    fn curve_riemann_roch() {
        // Degree-5n bundle on a genus-6 curve: h0 - h1 = 5n - 5.
        for action in [&C, &CPRIME] {
            for n in -10..=10 {
                let dims = cohomology_poly(action, n, Character::TRIVIAL).dims_by_degree();
                assert_eq!(dims[0] - dims[1], 5 * n - 5, "n = {n}");
            }
        }
    }

    #[test]
    fn serre_symmetry_of_curve_cohomology() {
        for action in [&C, &CPRIME] {
            let kappa = canonical_character(action);
            for n in -6..=8 {
                let a = cohomology_poly(action, n, Character::TRIVIAL);
                let b = cohomology_poly(action, 2 - n, kappa);
                // H^0 of one is dual to H^1 of the other, and vice versa.
                for q in 0..=1u32 {
                    let lhs = a.q_slice(q);
                    for (_, chi_b, c) in b.q_slice(1 - q).iter() {
                        assert_eq!(lhs.coefficient(q, -chi_b), c);
                    }
                    assert_eq!(
                        lhs.dims_by_degree()[q as usize],
                        b.dims_by_degree()[1 - q as usize]
                    );
                }
            }
        }
    }

    #[test]
    fn substitution_law_between_the_two_actions() {
        for n in -10..=10 {
            let via_subst =
                cohomology_poly(&C, n, Character::TRIVIAL).substitute(chi(2, 1), chi(4, 3));
            assert_eq!(via_subst, cohomology_poly(&CPRIME, n, Character::TRIVIAL));
        }
    }

    #[test]
    fn faults_perturb_only_their_target() {
        assert_eq!(
            canonical_character_inj(&C, Fault::WrongCanonicalCharacter),
            chi(2, 1)
        );
        assert_eq!(h0_poly_inj(&C, 4, Fault::RestrictionOffByOne), h0_poly(&C, 4));
        let faulty = h0_poly_inj(&C, 5, Fault::RestrictionOffByOne);
        assert_eq!(faulty.dims_by_degree(), vec![21]);
    }
}
