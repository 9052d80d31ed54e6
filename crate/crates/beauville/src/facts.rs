//! The embedded verification harness: a checked-in list of published
//! reference values, each with a citation string and a named engine query,
//! re-computed and compared on every `paper-check` run.

use std::cell::OnceCell;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::charpoly::{Character, GradedCharPoly};
use crate::collections::{
    self, anticanonical_height, ext_matrix, ext_table, group_into_helices, lattice_span_check,
    quasi_phantom_report, Helix, NumericalType, SearchOutcome, K0_FREE_RANK, K0_TORSION_ORDER,
};
use crate::curve::{self, CurveAction};
use crate::surface::{canonical_class, euler_char, intersection, BidegreeRange, LineBundleClass, Surface};
use crate::Fault;

/// One reference fact: a named engine query plus its published value.
#[derive(Clone, Debug, Deserialize)]
pub struct PaperFact {
    pub id: String,
    pub description: String,
    /// Names the published table or formula the expected value is read
    /// from, as an audit trail.
    pub citation: String,
    pub producer: Producer,
    pub expected: Value,
}

/// The engine query a fact exercises.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Producer {
    /// Full curve cohomology class of O(n) twisted by a character.
    CurveCohomology { curve: String, n: i64, twist: [i64; 2] },
    /// Sections-only class of O(n) on a curve.
    CurveSections { curve: String, n: i64 },
    CurveCanonical { curve: String },
    CurveKCharacter { curve: String },
    CurveStabilizer { curve: String, divisor: u8 },
    DiagonalFreeness,
    SurfaceRanks { bundle: String },
    EulerChar { bundle: String },
    Intersection { lhs: String, rhs: String },
    CanonicalClass,
    Hochschild,
    AcyclicSet { i: i64, j: i64 },
    AcyclicCount,
    SearchCount,
    SearchCollection { index: usize },
    HelixCount,
    HelixTypeSequence { helix: String },
    ExtMatrix { helix: String },
    ExtTable { collection_type: String },
    Height { helix: String },
    Phantom { helix: String },
    LatticeSpan,
    K0Surface,
}

/// Outcome of re-computing one fact.
#[derive(Clone, Debug, Serialize)]
pub struct FactResult {
    pub id: String,
    pub description: String,
    pub citation: String,
    pub passed: bool,
    pub expected: Value,
    pub computed: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub results: Vec<FactResult>,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| !r.passed).count()
    }
}

/// The checked-in reference data.
pub fn load_facts() -> Vec<PaperFact> {
    serde_json::from_str(include_str!("../data/paper_facts.json"))
        .expect("embedded fact data is well-formed")
}

/// Lazily computed search state shared by the search-level facts.
struct SearchState {
    outcome: SearchOutcome,
    helices: Vec<Helix>,
}

struct FactEngine<'a> {
    surface: &'a Surface,
    search: OnceCell<Result<SearchState, String>>,
}

impl<'a> FactEngine<'a> {
    fn new(surface: &'a Surface) -> FactEngine<'a> {
        FactEngine {
            surface,
            search: OnceCell::new(),
        }
    }

    fn search_state(&self) -> Result<&SearchState, String> {
        self.search
            .get_or_init(|| {
                let outcome = collections::search(self.surface).map_err(|e| e.to_string())?;
                let helices = group_into_helices(self.surface, &outcome.collections)
                    .map_err(|e| e.to_string())?;
                Ok(SearchState { outcome, helices })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn helix(&self, name: &str) -> Result<&Helix, String> {
        let state = self.search_state()?;
        Helix::by_name(&state.helices, name).map_err(|e| e.to_string())
    }

    /// Computes the fact's value and canonicalizes its expected value so
    /// equivalent spellings (term order, character normalization) compare
    /// equal.
    fn evaluate(&self, fact: &PaperFact) -> Result<(Value, Value), String> {
        fn to_value<T: Serialize>(v: T) -> Result<Value, String> {
            serde_json::to_value(v).map_err(|e| e.to_string())
        }
        let action = |name: &str| CurveAction::by_name(name).map_err(|e| e.to_string());
        let bundle = |text: &str| LineBundleClass::parse(text).map_err(|e| e.to_string());
        match &fact.producer {
            Producer::CurveCohomology { curve, n, twist } => {
                let poly = self.surface.curve_cohomology(
                    &action(curve)?,
                    *n,
                    Character::new(twist[0], twist[1]),
                );
                Ok((to_value(poly)?, canonical_poly(&fact.expected)?))
            }
            Producer::CurveSections { curve, n } => {
                let poly = self.surface.curve_h0(&action(curve)?, *n);
                Ok((to_value(poly)?, canonical_poly(&fact.expected)?))
            }
            Producer::CurveCanonical { curve } => Ok((
                to_value(self.surface.curve_canonical_character(&action(curve)?))?,
                fact.expected.clone(),
            )),
            Producer::CurveKCharacter { curve } => Ok((
                to_value(self.surface.curve_k_character(&action(curve)?))?,
                fact.expected.clone(),
            )),
            Producer::CurveStabilizer { curve, divisor } => Ok((
                to_value(curve::stabilizer(&action(curve)?, *divisor))?,
                fact.expected.clone(),
            )),
            Producer::DiagonalFreeness => Ok((
                to_value(curve::diagonal_action_is_free(
                    self.surface.first_action(),
                    self.surface.second_action(),
                ))?,
                fact.expected.clone(),
            )),
            Producer::SurfaceRanks { bundle: text } => Ok((
                to_value(self.surface.cohomology(&bundle(text)?))?,
                fact.expected.clone(),
            )),
            Producer::EulerChar { bundle: text } => {
                Ok((to_value(euler_char(&bundle(text)?))?, fact.expected.clone()))
            }
            Producer::Intersection { lhs, rhs } => Ok((
                to_value(intersection(&bundle(lhs)?, &bundle(rhs)?))?,
                fact.expected.clone(),
            )),
            Producer::CanonicalClass => Ok((
                to_value(canonical_class().to_o_basis().to_string())?,
                canonical_bundle_string(&fact.expected)?,
            )),
            Producer::Hochschild => Ok((
                to_value(self.surface.hochschild_cohomology())?,
                fact.expected.clone(),
            )),
            Producer::AcyclicSet { i, j } => {
                let set = collections::acyclic_set(self.surface, *i, *j);
                let computed: Vec<Character> = set.characters.into_iter().collect();
                Ok((to_value(computed)?, canonical_character_set(&fact.expected)?))
            }
            Producer::AcyclicCount => {
                let bundles =
                    collections::enumerate_acyclic_bundles(self.surface, &BidegreeRange::default())
                        .map_err(|e| e.to_string())?;
                Ok((to_value(bundles.len())?, fact.expected.clone()))
            }
            Producer::SearchCount => {
                let state = self.search_state()?;
                Ok((
                    to_value(state.outcome.collections.len())?,
                    fact.expected.clone(),
                ))
            }
            Producer::SearchCollection { index } => {
                let state = self.search_state()?;
                let coll = state
                    .outcome
                    .collections
                    .get(*index)
                    .ok_or_else(|| format!("no collection at index {index}"))?;
                let normalized = coll.normalized();
                let computed = json!({
                    "type": collections::numerical_type(coll)
                        .map(|t| t.to_string())
                        .unwrap_or_else(|| "none".to_string()),
                    "entries": normalized
                        .entries()
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>(),
                });
                Ok((computed, canonical_collection(&fact.expected)?))
            }
            Producer::HelixCount => {
                let state = self.search_state()?;
                Ok((to_value(state.helices.len())?, fact.expected.clone()))
            }
            Producer::HelixTypeSequence { helix } => {
                let h = self.helix(helix)?;
                let seq: Vec<String> = h.type_sequence().iter().map(|t| t.to_string()).collect();
                Ok((to_value(seq)?, canonical_type_sequence(&fact.expected)?))
            }
            Producer::ExtMatrix { helix } => {
                let m = ext_matrix(self.surface, self.helix(helix)?);
                Ok((to_value(m.rows)?, fact.expected.clone()))
            }
            Producer::ExtTable { collection_type } => {
                let state = self.search_state()?;
                let wanted: NumericalType =
                    collection_type.parse().map_err(|e: String| e)?;
                let coll = state
                    .outcome
                    .collections
                    .iter()
                    .find(|c| collections::numerical_type(c) == Some(wanted))
                    .ok_or_else(|| format!("no collection of type {wanted}"))?;
                Ok((
                    to_value(ext_table(self.surface, coll))?,
                    fact.expected.clone(),
                ))
            }
            Producer::Height { helix } => Ok((
                to_value(anticanonical_height(self.surface, self.helix(helix)?))?,
                fact.expected.clone(),
            )),
            Producer::Phantom { helix } => {
                let report = quasi_phantom_report(self.surface, self.helix(helix)?);
                let computed = json!({
                    "k0_torsion_order": report.k0_torsion_order,
                    "hh_homology_dim": report.hh_homology_dim,
                    "hh0_dim": report.hh0_dim,
                });
                Ok((computed, fact.expected.clone()))
            }
            Producer::LatticeSpan => {
                let state = self.search_state()?;
                Ok((
                    to_value(lattice_span_check(&state.outcome.collections))?,
                    fact.expected.clone(),
                ))
            }
            Producer::K0Surface => Ok((
                json!({
                    "free_rank": K0_FREE_RANK,
                    "torsion_order": K0_TORSION_ORDER,
                }),
                fact.expected.clone(),
            )),
        }
    }
}

/// Expected polynomial spelled as {"q_bound": N, "terms": [[q,x,y,c], ..]}
/// in any term order; canonicalized through the polynomial type itself.
fn canonical_poly(expected: &Value) -> Result<Value, String> {
    #[derive(Deserialize)]
    struct Spelled {
        q_bound: u32,
        terms: Vec<[i64; 4]>,
    }
    let spelled: Spelled =
        serde_json::from_value(expected.clone()).map_err(|e| format!("bad expected poly: {e}"))?;
    let poly = GradedCharPoly::from_terms(
        spelled.q_bound,
        spelled
            .terms
            .iter()
            .map(|&[q, x, y, c]| (q as u32, Character::new(x, y), c)),
    )
    .map_err(|e| e.to_string())?;
    serde_json::to_value(poly).map_err(|e| e.to_string())
}

fn canonical_character_set(expected: &Value) -> Result<Value, String> {
    let pairs: Vec<[i64; 2]> =
        serde_json::from_value(expected.clone()).map_err(|e| format!("bad character set: {e}"))?;
    let set: std::collections::BTreeSet<Character> = pairs
        .iter()
        .map(|&[i, j]| Character::new(i, j))
        .collect();
    serde_json::to_value(set.into_iter().collect::<Vec<_>>()).map_err(|e| e.to_string())
}

fn canonical_bundle_string(expected: &Value) -> Result<Value, String> {
    let text: String =
        serde_json::from_value(expected.clone()).map_err(|e| format!("bad bundle: {e}"))?;
    let bundle = LineBundleClass::parse(&text).map_err(|e| e.to_string())?;
    serde_json::to_value(bundle.to_o_basis().to_string()).map_err(|e| e.to_string())
}

fn canonical_collection(expected: &Value) -> Result<Value, String> {
    #[derive(Deserialize)]
    struct Spelled {
        #[serde(rename = "type")]
        type_label: String,
        entries: Vec<String>,
    }
    let spelled: Spelled =
        serde_json::from_value(expected.clone()).map_err(|e| format!("bad collection: {e}"))?;
    let type_label: NumericalType = spelled.type_label.parse()?;
    let entries: Result<Vec<String>, String> = spelled
        .entries
        .iter()
        .map(|t| {
            LineBundleClass::parse(t)
                .map(|l| l.to_k_basis().to_string())
                .map_err(|e| e.to_string())
        })
        .collect();
    Ok(json!({
        "type": type_label.to_string(),
        "entries": entries?,
    }))
}

fn canonical_type_sequence(expected: &Value) -> Result<Value, String> {
    let labels: Vec<String> =
        serde_json::from_value(expected.clone()).map_err(|e| format!("bad type sequence: {e}"))?;
    let parsed: Result<Vec<String>, String> = labels
        .iter()
        .map(|l| l.parse::<NumericalType>().map(|t| t.to_string()))
        .collect();
    serde_json::to_value(parsed?).map_err(|e| e.to_string())
}

/// Re-computes every fact against the given engine and reports each one.
pub fn run_checks(surface: &Surface, facts: &[PaperFact]) -> CheckReport {
    let engine = FactEngine::new(surface);
    let results = facts
        .iter()
        .map(|fact| match engine.evaluate(fact) {
            Ok((computed, expected)) => FactResult {
                id: fact.id.clone(),
                description: fact.description.clone(),
                citation: fact.citation.clone(),
                passed: computed == expected,
                expected,
                computed,
            },
            Err(message) => FactResult {
                id: fact.id.clone(),
                description: fact.description.clone(),
                citation: fact.citation.clone(),
                passed: false,
                expected: fact.expected.clone(),
                computed: json!({ "error": message }),
            },
        })
        .collect();
    CheckReport { results }
}

/// Runs the full embedded fact list against a fresh engine, optionally
/// corrupted by a fault.
pub fn paper_check(fault: Fault) -> CheckReport {
    let surface = Surface::beauville_with_fault(fault);
    run_checks(&surface, &load_facts())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facts_load_and_are_numerous() {
        let facts = load_facts();
        assert!(facts.len() >= 60, "only {} facts", facts.len());
        // Unique ids.
        let mut ids: Vec<&str> = facts.iter().map(|f| f.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), facts.len());
        // Every fact carries a citation.
        assert!(facts.iter().all(|f| !f.citation.is_empty()));
    }

    #[test]
    fn clean_engine_passes_every_fact() {
        let report = paper_check(Fault::None);
        let failed: Vec<&FactResult> = report.results.iter().filter(|r| !r.passed).collect();
        assert!(
            failed.is_empty(),
            "failing facts: {:#?}",
            failed
                .iter()
                .map(|r| (&r.id, &r.expected, &r.computed))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn every_fault_is_detected() {
        for fault in [
            Fault::WrongCanonicalCharacter,
            Fault::WrongTorsionOffset,
            Fault::RestrictionOffByOne,
        ] {
            let report = paper_check(fault);
            assert!(
                report.failures() > 0,
                "fault {fault:?} was not detected by any fact"
            );
        }
    }
}
