//! JSON mirrors of the core types. Rationals are written as `"p/q"` strings
//! and every document parses back into the type it was emitted from.

use std::collections::BTreeMap;

use lotus_core::kite::{CordKind, SailShape};
use lotus_core::lotus2d::{Petal, Symbol, Triangulation};
use lotus_core::ndlotus::{DimensionDrop, Terminal, TieBreak};
use lotus_core::{
    build_kite, AstreId, AstreRecord, CfSeq, Constellation, DualGraph, EdgeKind, EnriquesDiagram,
    Flavor, Kite, LatticeVec, NdSheathResult, Point2Q, Projective, Rational, SheathResult,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error("bad astre name: {0}")]
    Name(#[from] lotus_core::ConstellationError),
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("bad symbol {0:?}")]
    Symbol(char),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(e: impl ToString) -> JsonError {
    JsonError::Invalid(e.to_string())
}

fn name(s: &str) -> Result<AstreId, JsonError> {
    Ok(AstreId::new(s)?)
}

pub fn rational_to_string(r: Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, JsonError> {
    let bad = || JsonError::Rational(s.to_owned());
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.trim().parse().map_err(|_| bad())?;
    let d: i64 = d.trim().parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn projective_to_string(p: Projective) -> String {
    match p {
        Projective::Finite(r) => rational_to_string(r),
        Projective::Infinity => "inf".to_owned(),
    }
}

fn parse_projective(s: &str) -> Result<Projective, JsonError> {
    if s == "inf" {
        Ok(Projective::Infinity)
    } else {
        parse_rational(s).map(Projective::Finite)
    }
}

fn pair(v: LatticeVec) -> [i64; 2] {
    [v.a, v.b]
}

fn vec2(p: [i64; 2]) -> LatticeVec {
    LatticeVec::new(p[0], p[1])
}

fn point(p: Point2Q) -> [String; 2] {
    [rational_to_string(p.x), rational_to_string(p.y)]
}

fn parse_point(p: &[String; 2]) -> Result<Point2Q, JsonError> {
    Ok(Point2Q::new(parse_rational(&p[0])?, parse_rational(&p[1])?))
}

fn to_string<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

// constellations

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct RecordDto {
    id: String,
    p_d: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    p_i: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct ConstellationDto {
    astres: Vec<RecordDto>,
}

fn constellation_dto(c: &Constellation) -> ConstellationDto {
    let astres = c
        .non_base()
        .iter()
        .map(|r| RecordDto {
            id: r.id.to_string(),
            p_d: r.direct.to_string(),
            p_i: r.indirect.as_ref().map(ToString::to_string),
        })
        .collect();
    ConstellationDto { astres }
}

fn constellation_from_dto(dto: &ConstellationDto) -> Result<Constellation, JsonError> {
    let records = dto
        .astres
        .iter()
        .map(|r| {
            Ok(AstreRecord {
                id: name(&r.id)?,
                direct: name(&r.p_d)?,
                indirect: r.p_i.as_deref().map(name).transpose()?,
            })
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    Ok(Constellation::from_records(records)?)
}

pub fn constellation_to_json(c: &Constellation) -> String {
    to_string(&constellation_dto(c))
}

/// Structural checks only; run `validate` on the result for the geometric ones.
pub fn constellation_from_json(s: &str) -> Result<Constellation, JsonError> {
    constellation_from_dto(&serde_json::from_str(s)?)
}

// Enriques diagrams

#[derive(Serialize, Deserialize)]
struct EnriquesEdgeDto {
    from: String,
    to: String,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    aligned: Option<bool>,
}

#[derive(Serialize, Deserialize)]
struct EnriquesDto {
    vertices: Vec<String>,
    edges: Vec<EnriquesEdgeDto>,
    runs: Vec<Vec<String>>,
}

pub fn enriques_to_json(d: &EnriquesDiagram) -> String {
    let dto = EnriquesDto {
        vertices: d.vertices().map(ToString::to_string).collect(),
        edges: d
            .edges()
            .map(|e| EnriquesEdgeDto {
                from: e.from.to_string(),
                to: e.to.to_string(),
                kind: e.kind.to_string(),
                aligned: e.aligned_with_incoming,
            })
            .collect(),
        runs: d.straight_runs().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
    };
    to_string(&dto)
}

pub fn enriques_from_json(s: &str) -> Result<EnriquesDiagram, JsonError> {
    let dto: EnriquesDto = serde_json::from_str(s)?;
    let vertices = dto.vertices.iter().map(|v| name(v)).collect::<Result<Vec<_>, _>>()?;
    let edges = dto
        .edges
        .iter()
        .map(|e| {
            let kind = match e.kind.as_str() {
                "curved" => EdgeKind::Curved,
                "straight" => EdgeKind::Straight,
                other => return Err(invalid(format!("unknown edge kind {other:?}"))),
            };
            Ok(lotus_core::enriques::EnriquesEdge {
                from: name(&e.from)?,
                to: name(&e.to)?,
                kind,
                aligned_with_incoming: e.aligned,
            })
        })
        .collect::<Result<Vec<_>, JsonError>>()?;
    EnriquesDiagram::from_parts(vertices, edges).map_err(invalid)
}

// dual graphs

#[derive(Serialize, Deserialize)]
struct DualDto {
    weights: BTreeMap<String, i64>,
    edges: Vec<[String; 2]>,
}

pub fn dual_to_json(g: &DualGraph) -> String {
    let dto = DualDto {
        weights: g.weights().iter().map(|(a, w)| (a.to_string(), *w)).collect(),
        edges: g.edges().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
    };
    to_string(&dto)
}

pub fn dual_from_json(s: &str) -> Result<DualGraph, JsonError> {
    let dto: DualDto = serde_json::from_str(s)?;
    let weights = dto.weights.iter().map(|(a, w)| Ok((name(a)?, *w))).collect::<Result<Vec<_>, JsonError>>()?;
    let edges = dto.edges.iter().map(|[a, b]| Ok((name(a)?, name(b)?))).collect::<Result<Vec<_>, JsonError>>()?;
    Ok(DualGraph::new(weights, edges))
}

// kites

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct CompleteSailDto {
    root: String,
    members: Vec<String>,
    chart: BTreeMap<String, [i64; 2]>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct ElementarySailDto {
    astre: String,
    shape: String,
    bases: Vec<String>,
    complete_sail: usize,
    star: [String; 2],
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct CordDto {
    from: String,
    to: String,
    kind: String,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct KiteDto {
    constellation: ConstellationDto,
    complete_sails: Vec<CompleteSailDto>,
    elementary_sails: Vec<ElementarySailDto>,
    cords: Vec<CordDto>,
    lateral_sides: Vec<[String; 2]>,
}

fn kite_dto(k: &Kite, c: &Constellation) -> KiteDto {
    KiteDto {
        constellation: constellation_dto(c),
        complete_sails: k
            .complete_sails()
            .iter()
            .map(|s| CompleteSailDto {
                root: s.root().to_string(),
                members: s.members().iter().map(ToString::to_string).collect(),
                chart: s.chart().iter().map(|(a, v)| (a.to_string(), pair(*v))).collect(),
            })
            .collect(),
        elementary_sails: k
            .elementary_sails()
            .map(|s| {
                let (shape, bases) = match &s.shape {
                    SailShape::Half { base } => ("half", vec![base.to_string()]),
                    SailShape::Simple { first_base, second_base } => {
                        ("simple", vec![first_base.to_string(), second_base.to_string()])
                    }
                };
                ElementarySailDto {
                    astre: s.astre.to_string(),
                    shape: shape.to_owned(),
                    bases,
                    complete_sail: s.complete_sail,
                    star: point(s.star),
                }
            })
            .collect(),
        cords: k
            .cords()
            .map(|c| CordDto {
                from: c.from.to_string(),
                to: c.astre.to_string(),
                kind: match c.kind {
                    CordKind::Libre => "libre",
                    CordKind::Satellite => "satellite",
                }
                .to_owned(),
            })
            .collect(),
        lateral_sides: k.lateral_sides().map(|((a, b), _)| [a.to_string(), b.to_string()]).collect(),
    }
}

pub fn kite_to_json(k: &Kite, c: &Constellation) -> String {
    to_string(&kite_dto(k, c))
}

/// Rebuilds the kite from the embedded constellation and checks that every
/// recorded chart, sail, cord and side agrees with it.
pub fn kite_from_json(s: &str) -> Result<(Kite, Constellation), JsonError> {
    let dto: KiteDto = serde_json::from_str(s)?;
    let c = constellation_from_dto(&dto.constellation)?;
    let k = build_kite(&c).map_err(invalid)?;
    for sail in &dto.elementary_sails {
        parse_point(&sail.star)?;
    }
    if kite_dto(&k, &c) != dto {
        return Err(invalid("kite data does not match its constellation"));
    }
    Ok((k, c))
}

// continued fractions

#[derive(Serialize, Deserialize)]
struct CfDto {
    flavor: String,
    terms: Vec<i64>,
    value: String,
}

fn flavor_name(f: Flavor) -> &'static str {
    match f {
        Flavor::Plus => "plus",
        Flavor::Minus => "minus",
    }
}

pub fn cf_to_json(seq: &CfSeq, value: Projective) -> String {
    let dto = CfDto {
        flavor: flavor_name(seq.flavor()).to_owned(),
        terms: seq.terms().to_vec(),
        value: projective_to_string(value),
    };
    to_string(&dto)
}

pub fn cf_from_json(s: &str) -> Result<(CfSeq, Projective), JsonError> {
    let dto: CfDto = serde_json::from_str(s)?;
    let flavor = match dto.flavor.as_str() {
        "plus" => Flavor::Plus,
        "minus" => Flavor::Minus,
        other => return Err(invalid(format!("unknown flavor {other:?}"))),
    };
    let seq = CfSeq::new(flavor, dto.terms).map_err(invalid)?;
    Ok((seq, parse_projective(&dto.value)?))
}

// sheaths

#[derive(Serialize, Deserialize)]
struct SheathDto {
    endpoint: [i64; 2],
    petals: Vec<[[i64; 2]; 2]>,
    symbols: String,
    runs: Vec<usize>,
    p1: Vec<[i64; 2]>,
    p2: Vec<[i64; 2]>,
}

pub fn sheath_to_json(s: &SheathResult) -> String {
    let dto = SheathDto {
        endpoint: pair(s.endpoint),
        petals: s.petals.iter().map(|p| [pair(p.u), pair(p.w)]).collect(),
        symbols: s.symbols.iter().map(|s| s.as_char()).collect(),
        runs: s.runs.clone(),
        p1: s.p1.iter().copied().map(pair).collect(),
        p2: s.p2.iter().copied().map(pair).collect(),
    };
    to_string(&dto)
}

pub fn sheath_from_json(s: &str) -> Result<SheathResult, JsonError> {
    let dto: SheathDto = serde_json::from_str(s)?;
    let symbols = dto
        .symbols
        .chars()
        .map(|c| Symbol::from_char(c).ok_or(JsonError::Symbol(c)))
        .collect::<Result<Vec<_>, _>>()?;
    let result = SheathResult {
        petals: dto.petals.iter().map(|[u, w]| Petal { u: vec2(*u), w: vec2(*w) }).collect(),
        symbols,
        runs: dto.runs,
        endpoint: vec2(dto.endpoint),
        p1: dto.p1.into_iter().map(vec2).collect(),
        p2: dto.p2.into_iter().map(vec2).collect(),
    };
    if result.symbols.len() != result.petals.len() || result.runs.iter().sum::<usize>() != result.petals.len() {
        return Err(invalid("symbols, runs and petals disagree in length"));
    }
    Ok(result)
}

// zero sequences

#[derive(Serialize, Deserialize)]
pub struct ZeroSeqDto {
    pub sequence: Vec<i64>,
    pub admissible: bool,
    pub represents_zero: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vectors: Option<Vec<[i64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub triangles: Option<Vec<[usize; 3]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counts: Option<Vec<i64>>,
}

pub struct ZeroSeqReport {
    pub sequence: Vec<i64>,
    pub admissible: bool,
    pub represents_zero: bool,
    pub vectors: Option<Vec<LatticeVec>>,
    pub triangulation: Option<Triangulation>,
}

pub fn zeroseq_to_json(r: &ZeroSeqReport) -> String {
    let dto = ZeroSeqDto {
        sequence: r.sequence.clone(),
        admissible: r.admissible,
        represents_zero: r.represents_zero,
        vectors: r.vectors.as_ref().map(|v| v.iter().copied().map(pair).collect()),
        triangles: r.triangulation.as_ref().map(|t| t.triangles.clone()),
        counts: r.triangulation.as_ref().map(|t| t.counts.clone()),
    };
    to_string(&dto)
}

pub fn zeroseq_from_json(s: &str) -> Result<ZeroSeqReport, JsonError> {
    let dto: ZeroSeqDto = serde_json::from_str(s)?;
    let triangulation = match (dto.triangles, dto.counts) {
        (Some(triangles), Some(counts)) => Some(Triangulation { triangles, counts }),
        (None, None) => None,
        _ => return Err(invalid("triangles and counts come together")),
    };
    Ok(ZeroSeqReport {
        sequence: dto.sequence,
        admissible: dto.admissible,
        represents_zero: dto.represents_zero,
        vectors: dto.vectors.map(|v| v.into_iter().map(vec2).collect()),
        triangulation,
    })
}

// n-dimensional sheaths

#[derive(Serialize, Deserialize)]
struct DropDto {
    step: usize,
    labels: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct NdSheathDto {
    arrangements: Vec<Vec<usize>>,
    dimension_drops: Vec<DropDto>,
    terminal: String,
    tie_break: String,
}

pub fn nd_sheath_to_json(r: &NdSheathResult) -> String {
    let dto = NdSheathDto {
        arrangements: r.arrangements.iter().map(|a| a.labels().to_vec()).collect(),
        dimension_drops: r
            .dimension_drops
            .iter()
            .map(|d| DropDto { step: d.step, labels: d.labels.clone() })
            .collect(),
        terminal: match r.terminal {
            Terminal::Apex => "apex",
            Terminal::FaceDescent => "face-descent",
            Terminal::DepthLimit => "depth-limit",
        }
        .to_owned(),
        tie_break: match r.tie_break {
            TieBreak::LabelAscending => "label-ascending",
        }
        .to_owned(),
    };
    to_string(&dto)
}

pub fn nd_sheath_from_json(s: &str) -> Result<NdSheathResult, JsonError> {
    let dto: NdSheathDto = serde_json::from_str(s)?;
    let terminal = match dto.terminal.as_str() {
        "apex" => Terminal::Apex,
        "face-descent" => Terminal::FaceDescent,
        "depth-limit" => Terminal::DepthLimit,
        other => return Err(invalid(format!("unknown terminal {other:?}"))),
    };
    let tie_break = match dto.tie_break.as_str() {
        "label-ascending" => TieBreak::LabelAscending,
        other => return Err(invalid(format!("unknown tie break {other:?}"))),
    };
    Ok(NdSheathResult {
        arrangements: dto.arrangements.into_iter().map(lotus_core::Arrangement::new).collect(),
        dimension_drops: dto
            .dimension_drops
            .into_iter()
            .map(|d| DimensionDrop { step: d.step, labels: d.labels })
            .collect(),
        terminal,
        tie_break,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("7/5").unwrap(), Rational::new(7, 5));
        assert_eq!(parse_rational("-3").unwrap(), Rational::from_integer(-3));
        assert_eq!(parse_rational("4/6").unwrap(), Rational::new(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_to_string(Rational::from_integer(2)), "2/1");
        assert_eq!(parse_projective("inf").unwrap(), Projective::Infinity);
    }

    #[test]
    fn tampered_kite_is_rejected() {
        let c = crate::text::parse("A1 O\nA2 A1 O\n").unwrap();
        let k = build_kite(&c).unwrap();
        let json = kite_to_json(&k, &c);
        assert!(kite_from_json(&json).is_ok());
        let bad = json.replacen("\"1/2\"", "\"1/3\"", 1);
        assert!(kite_from_json(&bad).is_err());
    }
}
