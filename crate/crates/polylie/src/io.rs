//! JSON input formats and deterministic JSON serialization of reports.
//!
//! Inputs are plain serde structs; outputs are built as `serde_json::Value`
//! trees with ordered maps so that identical computations print identical
//! bytes. Series coefficients are emitted as decimal strings because
//! tensor-algebra ranks overflow 64-bit integers well before cap 64.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::freelie::{BracketWord, Leaf};
use crate::nilcert::{Factor, GroupSpec, Provenance};
use crate::polyprod::{FactorEntry, PairKind, PolyProdInstance};
use crate::series::PoincareSeries;
use crate::simplicial::{BettiVector, FieldTag, SimplicialComplex};
use crate::wedge::{Atom, FormalWedge, SmashWord, SpaceAssignment};

fn malformed(context: &str, err: impl std::fmt::Display) -> Error {
    Error::MalformedInput(format!("{context}: {err}"))
}

// ---- complexes --------------------------------------------------------

/// `{"m": int, "facets": [[int,...],...]}`, vertices 1-indexed.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub m: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| malformed("complex file", e))
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.m, &self.facets)
    }
}

// ---- space assignments ------------------------------------------------

/// Per-index space data: either `{"sphere": d}` or
/// `{"reduced_series": [c_1,...]}`, optionally with
/// `{"loop_reduced_series": [...]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    pub sphere: Option<usize>,
    pub reduced_series: Option<Vec<i64>>,
    pub loop_reduced_series: Option<Vec<i64>>,
}

fn series_from_tail(tail: &[i64], cap: usize) -> PoincareSeries {
    // The file lists c_1, c_2, ...; degree 0 of a reduced series is 0.
    let mut coeffs = vec![0i64];
    coeffs.extend_from_slice(tail);
    PoincareSeries::from_ints(&coeffs, cap)
}

/// Build a `SpaceAssignment` from a JSON map keyed by decimal indices.
pub fn assignment_from_json(
    spaces: &BTreeMap<String, SpaceJson>,
    cap: usize,
) -> Result<SpaceAssignment> {
    let mut out = SpaceAssignment::new(cap);
    for (key, space) in spaces {
        let i: usize = key
            .parse()
            .map_err(|e| malformed(&format!("space index {key:?}"), e))?;
        match (&space.sphere, &space.reduced_series) {
            (Some(d), None) => out.assign_sphere(i, *d),
            (None, Some(tail)) => out.assign_series(i, series_from_tail(tail, cap)),
            _ => {
                return Err(Error::MalformedInput(format!(
                    "space {i}: exactly one of \"sphere\" or \"reduced_series\" required"
                )))
            }
        }
        if let Some(tail) = &space.loop_reduced_series {
            out.assign_loop_series(i, series_from_tail(tail, cap))?;
        }
    }
    Ok(out)
}

// ---- polyhedral-product instances ------------------------------------

/// A full polyhedral-product instance file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub complex: ComplexJson,
    /// `"cone_on_base"` (default) or `"base_over_point"`.
    pub pair: Option<String>,
    pub spaces: BTreeMap<String, SpaceJson>,
    #[serde(default)]
    pub fillable_asserted: bool,
    #[serde(default)]
    pub loop_atoms: bool,
    pub torsion_primes: Option<Vec<u64>>,
}

impl InstanceJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| malformed("instance file", e))
    }

    pub fn to_instance(&self, cap: usize) -> Result<PolyProdInstance> {
        let complex = self.complex.to_complex()?;
        let assignment = assignment_from_json(&self.spaces, cap)?;
        let mut instance = match self.pair.as_deref() {
            None | Some("cone_on_base") => PolyProdInstance::cone_on_base(complex, assignment),
            Some("base_over_point") => PolyProdInstance::base_over_point(complex, assignment),
            Some(other) => {
                return Err(Error::MalformedInput(format!(
                    "unknown pair kind {other:?}"
                )))
            }
        };
        instance.fillable_asserted = self.fillable_asserted;
        instance.loop_atoms = self.loop_atoms;
        if let Some(primes) = &self.torsion_primes {
            instance.torsion_primes = primes.clone();
        }
        Ok(instance)
    }
}

/// A fiber-decomposition instance: spaces indexed `1..=m`, plus an
/// optional vertex split used by the Ganea computation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberJson {
    pub m: usize,
    pub spaces: BTreeMap<String, SpaceJson>,
    pub split: Option<Vec<usize>>,
}

impl FiberJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| malformed("fiber file", e))
    }

    pub fn assignment(&self, cap: usize) -> Result<SpaceAssignment> {
        let out = assignment_from_json(&self.spaces, cap)?;
        for i in 1..=self.m {
            out.base_reduced(i)?;
        }
        Ok(out)
    }
}

// ---- bracket words ----------------------------------------------------

/// Nested arrays with integer leaves: `[[1,2],3]` is `[[v1,v2],v3]`.
pub fn bracket_word_from_value(v: &Value) -> Result<BracketWord> {
    match v {
        Value::Number(n) => {
            let i = n
                .as_u64()
                .ok_or_else(|| Error::MalformedInput(format!("bad generator index {n}")))?;
            Ok(BracketWord::gen(i as usize))
        }
        Value::Array(items) if items.len() == 2 => Ok(BracketWord::bracket(
            bracket_word_from_value(&items[0])?,
            bracket_word_from_value(&items[1])?,
        )),
        other => Err(Error::MalformedInput(format!(
            "bracket word must be an integer or a pair, got {other}"
        ))),
    }
}

/// `{"words": [nested arrays]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordsJson {
    pub words: Vec<Value>,
}

impl WordsJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| malformed("words file", e))
    }

    pub fn to_words(&self) -> Result<Vec<BracketWord>> {
        self.words.iter().map(bracket_word_from_value).collect()
    }
}

// ---- group specs ------------------------------------------------------

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorJson {
    sphere: Option<u64>,
    b: Option<Vec<u64>>,
}

/// `{"name": "...", "p": 11, "factors": [{"sphere": 11}, {"b": [3,23]}]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub name: String,
    pub p: u64,
    #[serde(default)]
    factors: Vec<FactorJson>,
}

impl GroupJson {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| malformed("group file", e))
    }

    pub fn to_spec(&self) -> Result<GroupSpec> {
        let mut factors = Vec::new();
        for f in &self.factors {
            match (&f.sphere, &f.b) {
                (Some(d), None) => factors.push(Factor::Sphere(*d)),
                (None, Some(lh)) if lh.len() == 2 => factors.push(Factor::B(lh[0], lh[1])),
                _ => {
                    return Err(Error::MalformedInput(
                        "factor must be {\"sphere\": d} or {\"b\": [l,h]}".to_string(),
                    ))
                }
            }
        }
        GroupSpec::new(&self.name, self.p, factors, Provenance::User)
    }
}

// ---- output builders --------------------------------------------------

pub fn bigint_value(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

/// Coefficients `c_0..c_cap` as decimal strings.
pub fn series_value(s: &PoincareSeries) -> Value {
    Value::Array(s.coeffs().iter().map(bigint_value).collect())
}

pub fn field_value(field: FieldTag) -> Value {
    match field {
        FieldTag::Rational => json!("q"),
        FieldTag::ModP(p) => json!(format!("f{p}")),
    }
}

pub fn betti_value(b: &BettiVector) -> Value {
    Value::Array(
        b.ranks
            .iter()
            .map(|&(d, r)| json!([d, r]))
            .collect(),
    )
}

pub fn atom_value(atom: Atom) -> Value {
    match atom {
        Atom::Base(i) => json!({ "base": i }),
        Atom::LoopBase(i) => json!({ "loop_base": i }),
        Atom::Sphere(d) => json!({ "sphere": d }),
    }
}

pub fn word_value(word: &SmashWord) -> Value {
    json!({
        "susp": word.susp(),
        "atoms": word.atoms().iter().map(|&a| atom_value(a)).collect::<Vec<_>>(),
        "support": word.support().into_iter().collect::<Vec<_>>(),
    })
}

pub fn wedge_words_value(wedge: &FormalWedge) -> Value {
    Value::Array(
        wedge
            .words()
            .map(|(w, mult)| {
                let mut v = word_value(w);
                v.as_object_mut()
                    .unwrap()
                    .insert("multiplicity".to_string(), bigint_value(mult));
                v
            })
            .collect(),
    )
}

pub fn leaf_value(leaf: Leaf) -> Value {
    match leaf {
        Leaf::Gen(i) => json!({ "kind": "v", "i": i }),
        Leaf::S(i) => json!({ "kind": "s", "i": i }),
        Leaf::T(i) => json!({ "kind": "t", "i": i }),
        Leaf::IncBase => json!({ "kind": "i" }),
        Leaf::Ev => json!({ "kind": "ev" }),
    }
}

/// Nested two-element arrays with leaf objects at the leaves.
pub fn label_value(word: &BracketWord) -> Value {
    match word {
        BracketWord::Leaf(l) => leaf_value(*l),
        BracketWord::Bracket(a, b) => json!([label_value(a), label_value(b)]),
    }
}

pub fn factor_entry_value(entry: &FactorEntry) -> Value {
    match entry {
        FactorEntry::Trivial => json!("trivial"),
        FactorEntry::Space(i) => json!({ "space": i }),
        FactorEntry::Wedge(w) => json!({ "wedge": wedge_words_value(w) }),
        FactorEntry::Unavailable(reason) => json!({ "unavailable": reason }),
    }
}

pub fn pair_value(kind: PairKind) -> Value {
    match kind {
        PairKind::ConeOnBase => json!("cone_on_base"),
        PairKind::BaseOverPoint => json!("base_over_point"),
    }
}

/// An object with insertion-ordered keys (serde_json's map preserves
/// insertion order only with the default feature set, so order keys here).
pub fn ordered(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_roundtrip() {
        let c = ComplexJson::parse(r#"{"m": 4, "facets": [[1,2],[2,3],[3,4],[1,4]]}"#).unwrap();
        let k = c.to_complex().unwrap();
        assert_eq!(k.vertex_count(), 4);
        assert!(ComplexJson::parse(r#"{"m": 2}"#).is_err());
    }

    #[test]
    fn assignment_parsing() {
        let mut spaces = BTreeMap::new();
        spaces.insert(
            "1".to_string(),
            SpaceJson {
                sphere: Some(2),
                reduced_series: None,
                loop_reduced_series: None,
            },
        );
        spaces.insert(
            "2".to_string(),
            SpaceJson {
                sphere: None,
                reduced_series: Some(vec![0, 1, 1]),
                loop_reduced_series: Some(vec![1, 1, 1, 1]),
            },
        );
        let a = assignment_from_json(&spaces, 4).unwrap();
        assert_eq!(a.base_reduced(1).unwrap().coeff(2), 1.into());
        assert_eq!(a.loop_reduced(2).unwrap().coeff(3), 1.into());
        // Both or neither representation is rejected.
        spaces.get_mut("1").unwrap().reduced_series = Some(vec![1]);
        assert!(assignment_from_json(&spaces, 4).is_err());
    }

    #[test]
    fn bracket_word_parsing() {
        let v: Value = serde_json::from_str("[[1,2],3]").unwrap();
        let w = bracket_word_from_value(&v).unwrap();
        assert_eq!(w.to_string(), "[[v1,v2],v3]");
        let bad: Value = serde_json::from_str("[1,2,3]").unwrap();
        assert!(bracket_word_from_value(&bad).is_err());
    }

    #[test]
    fn group_parsing() {
        let g = GroupJson::parse(
            r#"{"name": "F4", "p": 7, "factors": [{"b": [3,15]}, {"b": [11,23]}]}"#,
        )
        .unwrap();
        let spec = g.to_spec().unwrap();
        assert_eq!(spec.type_of(), vec![2, 6, 8, 12]);
    }

    #[test]
    fn series_values_are_decimal_strings() {
        let s = PoincareSeries::from_ints(&[1, 0, 2, 5], 3);
        assert_eq!(series_value(&s), json!(["1", "0", "2", "5"]));
    }
}
