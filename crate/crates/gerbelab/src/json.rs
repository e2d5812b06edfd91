//! JSON files for nerves, cochains and gerbes.
//!
//! ```json
//! {"vertices": 3,
//!  "simplices": {"1": [[0,1],[0,2],[1,2]]},
//!  "cochains": {"b": {"degree": 1, "ring": "Z", "values": [0, -1, 0]}}}
//! ```
//!
//! Vertices are implied by `"vertices"`. Instead of `"simplices"` a file may
//! name a `"cover"`, whose nerve is then built. A gerbe file adds a circle
//! 2-cochain (named `g` unless it is the only one); non-constant data goes
//! in `"samples"` under the same name.

use std::collections::BTreeMap;
use std::path::Path;

use gerbelab_core::cech::{build_nerve, ArcCover, CochainValues};
use gerbelab_core::homology::IntMatrix;
use gerbelab_core::{CechGerbe, Cochain, Cover, Nerve, Ring, SampledCochain};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simplices: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverDto>,
    /// Highest simplex degree kept in the nerve.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default)]
    pub cochains: BTreeMap<String, CochainDto>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub samples: BTreeMap<String, SampledDto>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CochainDto {
    pub degree: usize,
    pub ring: RingTag,
    pub values: Vec<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingTag {
    #[serde(rename = "Z")]
    Int,
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "R/Z")]
    Circle,
}

/// Lifted values of a non-constant circle cochain: one per simplex, then
/// `degree + 2` face values per `(degree + 1)`-simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledDto {
    pub degree: usize,
    pub reference: Vec<f64>,
    pub blocks: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum CoverDto {
    Arcs {
        count: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        overlap: Option<f64>,
    },
    Torus3 {
        count: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        overlap: Option<f64>,
    },
    Octahedral,
    Product {
        left: Box<CoverDto>,
        right: Box<CoverDto>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDto {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<i128>,
}

impl From<&IntMatrix> for MatrixDto {
    fn from(m: &IntMatrix) -> Self {
        Self { rows: m.rows(), cols: m.cols(), entries: m.entries().to_vec() }
    }
}

impl TryFrom<&MatrixDto> for IntMatrix {
    type Error = CliError;

    fn try_from(m: &MatrixDto) -> Result<Self, CliError> {
        IntMatrix::new(m.rows, m.cols, m.entries.clone()).map_err(|e| CliError::Input(e.to_string()))
    }
}

impl CoverDto {
    pub fn to_cover(&self) -> Result<Cover, CliError> {
        let core = |e: gerbelab_core::cech::CechError| CliError::Input(e.to_string());
        Ok(match self {
            CoverDto::Arcs { count, overlap: None } => Cover::circle(*count).map_err(core)?,
            CoverDto::Arcs { count, overlap: Some(o) } => Cover::Arcs(ArcCover::with_overlap(*count, *o).map_err(core)?),
            CoverDto::Torus3 { count, overlap: None } => Cover::torus3(*count).map_err(core)?,
            CoverDto::Torus3 { count, overlap: Some(o) } => Cover::torus3_with_overlap(*count, *o).map_err(core)?,
            CoverDto::Octahedral => Cover::Octahedral,
            CoverDto::Product { left, right } => Cover::product(left.to_cover()?, right.to_cover()?),
        })
    }
}

pub fn load(path: &Path) -> Result<ComplexFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn save(path: &Path, file: &ComplexFile) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(file).map_err(|e| CliError::Input(e.to_string()))?;
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn number(v: &Value) -> Result<f64, CliError> {
    v.as_f64().ok_or_else(|| CliError::Input(format!("expected a number, got {v}")))
}

impl ComplexFile {
    /// The nerve, from the simplex lists or else from the cover.
    pub fn nerve(&self) -> Result<Nerve, CliError> {
        let core = |e: gerbelab_core::cech::CechError| CliError::Input(e.to_string());
        if self.simplices.is_empty() {
            if let Some(c) = &self.cover {
                let cover = c.to_cover()?;
                if cover.index_count() != self.vertices {
                    return Err(CliError::Input(format!(
                        "cover has {} sets but the file declares {} vertices",
                        cover.index_count(),
                        self.vertices
                    )));
                }
                return build_nerve(&cover, self.max_degree.unwrap_or(4)).map_err(core);
            }
        }
        let mut top = 0;
        let mut levels: Vec<Vec<Vec<usize>>> = Vec::new();
        for (k, list) in &self.simplices {
            let p: usize = k.parse().map_err(|_| CliError::Input(format!("simplex degree key {k:?} is not a number")))?;
            if levels.len() <= p {
                levels.resize(p + 1, Vec::new());
            }
            levels[p].extend(list.iter().cloned());
            if !list.is_empty() {
                top = top.max(p);
            }
        }
        let cap = self.max_degree.unwrap_or((top + 1).max(4));
        Nerve::from_simplices(self.vertices, levels, cap).map_err(core)
    }

    pub fn cover(&self) -> Result<Option<Cover>, CliError> {
        self.cover.as_ref().map(CoverDto::to_cover).transpose()
    }

    pub fn cochain(&self, name: &str, nerve: &Nerve) -> Result<Cochain, CliError> {
        let dto = self.cochains.get(name).ok_or_else(|| CliError::Input(format!("no cochain named {name:?}")))?;
        let vals: Vec<f64> = dto.values.iter().map(number).collect::<Result<_, _>>()?;
        let c = match dto.ring {
            RingTag::Int => {
                if vals.iter().any(|v| v.fract() != 0.0) {
                    return Err(CliError::Input(format!("cochain {name:?} is declared integral")));
                }
                Cochain::int(dto.degree, vals.iter().map(|&v| v as i64).collect())
            }
            RingTag::Real => Cochain::real(dto.degree, vals),
            RingTag::Circle => Cochain::circle(dto.degree, vals),
        };
        if dto.degree > nerve.max_degree() || c.len() != nerve.count(dto.degree) {
            return Err(CliError::Input(format!(
                "cochain {name:?} has {} values for {} simplices of degree {}",
                c.len(),
                if dto.degree > nerve.max_degree() { 0 } else { nerve.count(dto.degree) },
                dto.degree
            )));
        }
        Ok(c)
    }

    /// Name of the gerbe cochain: `g`, or the only circle 2-cochain.
    fn gerbe_name(&self) -> Result<String, CliError> {
        if self.cochains.contains_key("g") || self.samples.contains_key("g") {
            return Ok("g".into());
        }
        let mut names = self
            .cochains
            .iter()
            .filter(|(_, c)| c.degree == 2 && c.ring != RingTag::Int)
            .map(|(k, _)| k.clone())
            .chain(self.samples.iter().filter(|(_, s)| s.degree == 2).map(|(k, _)| k.clone()))
            .collect::<Vec<_>>();
        names.dedup();
        match names.len() {
            1 => Ok(names.remove(0)),
            0 => Err(CliError::Input("file has no circle 2-cochain".into())),
            _ => Err(CliError::Input("several 2-cochains; name the gerbe cochain \"g\"".into())),
        }
    }

    pub fn gerbe(&self) -> Result<CechGerbe, CliError> {
        let nerve = self.nerve()?;
        let name = self.gerbe_name()?;
        let core = |e: gerbelab_core::cech::CechError| CliError::Input(e.to_string());
        let g = if let Some(s) = self.samples.get(&name) {
            let sampled = SampledCochain::new(&nerve, s.degree, s.reference.clone(), s.blocks.clone()).map_err(core)?;
            CechGerbe::from_sampled(nerve, sampled).map_err(core)?
        } else {
            let c = self.cochain(&name, &nerve)?;
            CechGerbe::from_cocycle(nerve, &c).map_err(core)?
        };
        match self.cover()? {
            Some(cover) => g.with_cover(cover).map_err(core),
            None => Ok(g),
        }
    }

    /// A file listing every simplex of `nerve` in degrees `1..`.
    pub fn from_nerve(nerve: &Nerve) -> Self {
        let mut simplices = BTreeMap::new();
        for p in 1..=nerve.max_degree() {
            if nerve.count(p) > 0 {
                simplices.insert(p.to_string(), nerve.simplices(p).map(<[usize]>::to_vec).collect());
            }
        }
        Self {
            vertices: nerve.vertex_count(),
            simplices,
            cover: None,
            max_degree: Some(nerve.max_degree()),
            cochains: BTreeMap::new(),
            samples: BTreeMap::new(),
        }
    }

    pub fn insert_cochain(&mut self, name: &str, c: &Cochain) {
        let (ring, values) = match c.values() {
            CochainValues::Int(v) => (RingTag::Int, v.iter().map(|&x| Value::from(x)).collect()),
            CochainValues::Real(v) => (RingTag::Real, v.iter().map(|&x| Value::from(x)).collect()),
            CochainValues::Circle(v) => (RingTag::Circle, v.iter().map(|&x| Value::from(x)).collect()),
        };
        self.cochains.insert(name.into(), CochainDto { degree: c.degree(), ring, values });
    }

    /// Store a gerbe under the name `g`, with samples when it is not locally constant.
    pub fn insert_gerbe(&mut self, g: &CechGerbe) {
        self.insert_cochain("g", &g.circle_values());
        if !g.is_locally_constant() {
            let s = g.sampled();
            let blocks = (0..s.block_count()).flat_map(|i| s.block(i).to_vec()).collect();
            self.samples.insert("g".into(), SampledDto { degree: 2, reference: s.reference().to_vec(), blocks });
        }
    }
}

impl RingTag {
    pub fn of(r: Ring) -> Self {
        match r {
            Ring::Int => RingTag::Int,
            Ring::Real => RingTag::Real,
            Ring::Circle => RingTag::Circle,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_round_trip() {
        let text = r#"{"vertices": 3, "simplices": {"1": [[0,1],[1,2],[0,2]]},
            "cochains": {"b": {"degree": 1, "ring": "Z", "values": [0, 0, -1]}}}"#;
        let f: ComplexFile = serde_json::from_str(text).unwrap();
        let nerve = f.nerve().unwrap();
        assert_eq!((nerve.count(0), nerve.count(1), nerve.count(2)), (3, 3, 0));
        let b = f.cochain("b", &nerve).unwrap();
        // lexicographic order puts (0,2) before (1,2)
        assert_eq!(b.as_int().unwrap(), &[0, 0, -1]);
        let mut back = ComplexFile::from_nerve(&nerve);
        back.insert_cochain("b", &b);
        let again: ComplexFile = serde_json::from_str(&serde_json::to_string(&back).unwrap()).unwrap();
        assert_eq!(again.cochain("b", &again.nerve().unwrap()).unwrap(), b);
    }

    #[test]
    fn cover_files_build_nerves() {
        let text = r#"{"vertices": 27, "cover": {"type": "torus3", "count": 3}}"#;
        let f: ComplexFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.nerve().unwrap().count(4), 1512);
    }

    #[test]
    fn rejects_bad_lengths() {
        let text = r#"{"vertices": 3, "simplices": {"1": [[0,1]]},
            "cochains": {"b": {"degree": 1, "ring": "Z", "values": [0, 1]}}}"#;
        let f: ComplexFile = serde_json::from_str(text).unwrap();
        assert!(f.cochain("b", &f.nerve().unwrap()).is_err());
    }
}
