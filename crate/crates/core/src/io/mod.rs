//! Instance files, generators and command reports.
//!
//! Every scalar is stored as an exact string: an integer or `num/den` over
//! the rationals, a residue over `GF(p)`.

mod generate;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;
use std::sync::Arc;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::algebra::Algebra;
use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::kstheory::{
    ks_decompose, ks_decompose_seeded, split_by_idempotent, split_by_idempotent_in_basis, Decomposition,
    DirectSumDiagram, RawDirectSum, SplittingDatum, Twist,
};
use crate::linalg::{Field, Matrix, Scalar};

pub use generate::{generate, parse_factor, scramble, FactorSpec, GenerateKind};
pub use report::{CommandReport, Timing};

pub type Vector = Vec<String>;
pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDef {
    /// `structure_constants[i][j][k]` is the coefficient of `b_k` in `b_i b_j`.
    pub structure_constants: Vec<Vec<Vector>>,
    pub unit: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleDef {
    pub left: String,
    pub right: String,
    pub dim: usize,
    /// One matrix (list of rows) per basis element of the left algebra.
    pub left_action: Vec<Rows>,
    pub right_action: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDef {
    pub source: String,
    pub target: String,
    pub matrix: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdempotentDef {
    pub algebra: String,
    pub coords: Vector,
}

/// The summand cut out by a central idempotent, optionally in another basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingDef {
    pub idempotent: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Rows>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Counit,
    Unit,
    Middle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistDef {
    pub summand: usize,
    pub kind: TwistKind,
    pub element: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDef {
    pub algebra: String,
    pub summands: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<TwistDef>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionDef {
    pub algebra: String,
    /// Absent: canonical order and bases. Present: seeded shuffle and rebasing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The on-disk format. Names are unique across all sections.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub field: String,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDef>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub bimodules: BTreeMap<String, BimoduleDef>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub maps: BTreeMap<String, MapDef>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub idempotents: BTreeMap<String, IdempotentDef>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub splittings: BTreeMap<String, SplittingDef>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub diagrams: BTreeMap<String, DiagramDef>,
    #[serde(default, deserialize_with = "unique_keys", skip_serializing_if = "BTreeMap::is_empty")]
    pub decompositions: BTreeMap<String, DecompositionDef>,
}

/// serde_json lets a later duplicate key win; we refuse instead.
fn unique_keys<'de, D, V>(d: D) -> std::result::Result<BTreeMap<String, V>, D::Error>
where
    D: Deserializer<'de>,
    V: Deserialize<'de>,
{
    struct Unique<V>(PhantomData<V>);
    impl<'de, V: Deserialize<'de>> Visitor<'de> for Unique<V> {
        type Value = BTreeMap<String, V>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map with unique names")
        }
        fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> std::result::Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some((k, v)) = m.next_entry::<String, V>()? {
                if out.contains_key(&k) {
                    return Err(serde::de::Error::custom(format!("duplicate name `{k}`")));
                }
                out.insert(k, v);
            }
            Ok(out)
        }
    }
    d.deserialize_map(Unique(PhantomData))
}

pub fn scalar_string(s: &Scalar) -> String {
    s.to_string()
}

pub fn vector_strings(v: &[Scalar]) -> Vector {
    v.iter().map(scalar_string).collect()
}

pub fn matrix_rows(m: &Matrix) -> Rows {
    m.to_rows().iter().map(|r| vector_strings(r)).collect()
}

pub fn algebra_def(a: &Algebra) -> AlgebraDef {
    AlgebraDef {
        structure_constants: a
            .structure_constants()
            .iter()
            .map(|row| row.iter().map(|v| vector_strings(v)).collect())
            .collect(),
        unit: vector_strings(a.unit()),
    }
}

fn parse_vector(field: Field, v: &[String], what: &str) -> Result<Vec<Scalar>> {
    v.iter()
        .map(|s| field.parse(s))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Instance(format!("{what}: {e}")))
}

fn parse_matrix(field: Field, rows: &[Vec<String>], n: usize, m: usize, what: &str) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != m) {
        return Err(Error::Instance(format!("{what}: expected a {n}x{m} matrix")));
    }
    let rows = rows
        .iter()
        .map(|r| parse_vector(field, r, what))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, m, rows)
}

impl InstanceFile {
    pub fn new(field: Field) -> InstanceFile {
        InstanceFile {
            field: field.to_string(),
            ..InstanceFile::default()
        }
    }

    pub fn from_json(s: &str) -> Result<InstanceFile> {
        let f: InstanceFile = serde_json::from_str(s).map_err(|e| Error::Instance(format!("malformed instance: {e}")))?;
        f.check_names()?;
        Ok(f)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<InstanceFile> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Instance(format!("cannot read {}: {e}", path.display())))?;
        InstanceFile::from_json(&s)
    }

    /// Writes through a temporary file in the same directory, then renames.
    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        write_atomically(path.as_ref(), &self.to_json()?)
    }

    pub fn add_algebra(&mut self, name: &str, a: &Algebra) -> &mut Self {
        self.algebras.insert(name.to_string(), algebra_def(a));
        self
    }

    pub fn add_bimodule(&mut self, name: &str, left: &str, right: &str, m: &Bimodule) -> &mut Self {
        self.bimodules.insert(
            name.to_string(),
            BimoduleDef {
                left: left.to_string(),
                right: right.to_string(),
                dim: m.dim(),
                left_action: (0..m.left_algebra().dim()).map(|i| matrix_rows(m.left_action(i))).collect(),
                right_action: (0..m.right_algebra().dim()).map(|i| matrix_rows(m.right_action(i))).collect(),
            },
        );
        self
    }

    pub fn add_map(&mut self, name: &str, source: &str, target: &str, f: &BimoduleMap) -> &mut Self {
        self.maps.insert(
            name.to_string(),
            MapDef {
                source: source.to_string(),
                target: target.to_string(),
                matrix: matrix_rows(f.matrix()),
            },
        );
        self
    }

    pub fn add_idempotent(&mut self, name: &str, algebra: &str, e: &[Scalar]) -> &mut Self {
        self.idempotents.insert(
            name.to_string(),
            IdempotentDef {
                algebra: algebra.to_string(),
                coords: vector_strings(e),
            },
        );
        self
    }

    pub fn add_decomposition(&mut self, name: &str, algebra: &str, seed: Option<u64>) -> &mut Self {
        self.decompositions.insert(
            name.to_string(),
            DecompositionDef {
                algebra: algebra.to_string(),
                seed,
            },
        );
        self
    }

    fn names(&self) -> Vec<(&'static str, &String)> {
        let mut out = Vec::new();
        out.extend(self.algebras.keys().map(|k| ("algebra", k)));
        out.extend(self.bimodules.keys().map(|k| ("bimodule", k)));
        out.extend(self.maps.keys().map(|k| ("map", k)));
        out.extend(self.idempotents.keys().map(|k| ("idempotent", k)));
        out.extend(self.splittings.keys().map(|k| ("splitting", k)));
        out.extend(self.diagrams.keys().map(|k| ("diagram", k)));
        out.extend(self.decompositions.keys().map(|k| ("decomposition", k)));
        out
    }

    fn check_names(&self) -> Result<()> {
        let mut seen: BTreeMap<&String, &str> = BTreeMap::new();
        for (kind, name) in self.names() {
            if let Some(prev) = seen.insert(name, kind) {
                return Err(Error::Instance(format!("name `{name}` used for both a {prev} and a {kind}")));
            }
        }
        Ok(())
    }

    /// Parses and validates everything. Splittings, diagrams and
    /// decompositions are only reference-checked here and built on demand.
    pub fn load(&self) -> Result<Instance> {
        self.check_names()?;
        let field: Field = self.field.parse().map_err(|e| Error::Instance(format!("field: {e}")))?;
        let mut inst = Instance {
            field,
            file: self.clone(),
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            maps: BTreeMap::new(),
            idempotents: BTreeMap::new(),
        };
        for (name, def) in &self.algebras {
            let what = format!("algebra `{name}`");
            let n = def.unit.len();
            let unit = parse_vector(field, &def.unit, &what)?;
            let mut mul = Vec::with_capacity(n);
            for row in &def.structure_constants {
                if row.len() != n {
                    return Err(Error::Instance(format!("{what}: structure constants are not {n}x{n}x{n}")));
                }
                mul.push(row.iter().map(|v| parse_vector(field, v, &what)).collect::<Result<Vec<_>>>()?);
            }
            let a = Algebra::new(field, mul, unit).map_err(|e| Error::Instance(format!("{what}: {e}")))?;
            inst.algebras.insert(name.clone(), Arc::new(a));
        }
        for (name, def) in &self.bimodules {
            let what = format!("bimodule `{name}`");
            let left = inst.algebra(&def.left)?.clone();
            let right = inst.algebra(&def.right)?.clone();
            let acts = |ms: &[Rows], count: usize| -> Result<Vec<Matrix>> {
                if ms.len() != count {
                    return Err(Error::Instance(format!("{what}: expected {count} action matrices")));
                }
                ms.iter().map(|m| parse_matrix(field, m, def.dim, def.dim, &what)).collect()
            };
            let la = acts(&def.left_action, left.dim())?;
            let ra = acts(&def.right_action, right.dim())?;
            let m = Bimodule::new(left, right, def.dim, la, ra).map_err(|e| Error::Instance(format!("{what}: {e}")))?;
            inst.bimodules.insert(name.clone(), Arc::new(m));
        }
        for (name, def) in &self.maps {
            let what = format!("map `{name}`");
            let s = inst.bimodule(&def.source)?.clone();
            let t = inst.bimodule(&def.target)?.clone();
            let m = parse_matrix(field, &def.matrix, t.dim(), s.dim(), &what)?;
            let f = BimoduleMap::new(s, t, m).map_err(|e| Error::Instance(format!("{what}: {e}")))?;
            inst.maps.insert(name.clone(), f);
        }
        for (name, def) in &self.idempotents {
            let what = format!("idempotent `{name}`");
            let a = inst.algebra(&def.algebra)?;
            let e = parse_vector(field, &def.coords, &what)?;
            if e.len() != a.dim() {
                return Err(Error::Instance(format!("{what}: expected {} coordinates", a.dim())));
            }
            if !a.is_idempotent(&e) || !a.is_central(&e) {
                return Err(Error::Instance(format!("{what}: not a central idempotent")));
            }
            inst.idempotents.insert(name.clone(), e);
        }
        for (name, def) in &self.splittings {
            let what = format!("splitting `{name}`");
            let (alg, e) = inst.idempotent_of(&def.idempotent)?;
            if let Some(b) = &def.basis {
                let d = inst.algebras[alg].left_mult(e).rank();
                let g = parse_matrix(field, b, d, d, &what)?;
                if !g.is_invertible() {
                    return Err(Error::Instance(format!("{what}: basis matrix is singular")));
                }
            }
        }
        for (name, def) in &self.diagrams {
            let what = format!("diagram `{name}`");
            let a = inst.algebra(&def.algebra)?;
            for s in &def.summands {
                let sd = self
                    .splittings
                    .get(s)
                    .ok_or_else(|| Error::Instance(format!("{what}: unknown splitting `{s}`")))?;
                if self.idempotents[&sd.idempotent].algebra != def.algebra {
                    return Err(Error::Instance(format!("{what}: splitting `{s}` is of another algebra")));
                }
            }
            for t in &def.twists {
                if t.summand >= def.summands.len() {
                    return Err(Error::Instance(format!("{what}: twist of missing summand {}", t.summand)));
                }
                let v = parse_vector(field, &t.element, &what)?;
                if t.kind == TwistKind::Unit && v.len() != a.dim() {
                    return Err(Error::Instance(format!("{what}: unit twist needs {} coordinates", a.dim())));
                }
            }
        }
        for (name, def) in &self.decompositions {
            inst.algebra(&def.algebra)
                .map_err(|e| Error::Instance(format!("decomposition `{name}`: {e}")))?;
        }
        Ok(inst)
    }
}

pub(crate) fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file = path
        .file_name()
        .ok_or_else(|| Error::Instance(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", file.to_string_lossy(), std::process::id()));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// A loaded, validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub field: Field,
    pub file: InstanceFile,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub bimodules: BTreeMap<String, Arc<Bimodule>>,
    pub maps: BTreeMap<String, BimoduleMap>,
    pub idempotents: BTreeMap<String, Vec<Scalar>>,
}

fn unknown(kind: &str, name: &str) -> Error {
    Error::Instance(format!("unknown {kind} `{name}`"))
}

impl Instance {
    pub fn read(path: impl AsRef<Path>) -> Result<Instance> {
        InstanceFile::read(path)?.load()
    }

    pub fn algebra(&self, name: &str) -> Result<&Arc<Algebra>> {
        self.algebras.get(name).ok_or_else(|| unknown("algebra", name))
    }

    pub fn bimodule(&self, name: &str) -> Result<&Arc<Bimodule>> {
        self.bimodules.get(name).ok_or_else(|| unknown("bimodule", name))
    }

    pub fn map(&self, name: &str) -> Result<&BimoduleMap> {
        self.maps.get(name).ok_or_else(|| unknown("map", name))
    }

    /// The algebra name and coordinates of a named idempotent.
    pub fn idempotent_of(&self, name: &str) -> Result<(&str, &[Scalar])> {
        let e = self.idempotents.get(name).ok_or_else(|| unknown("idempotent", name))?;
        Ok((self.file.idempotents[name].algebra.as_str(), e))
    }

    /// A named idempotent of `algebra`, or literal comma-separated coordinates.
    pub fn idempotent_arg(&self, algebra: &str, arg: &str) -> Result<Vec<Scalar>> {
        if let Ok((a, e)) = self.idempotent_of(arg) {
            if a != algebra {
                return Err(Error::Instance(format!("idempotent `{arg}` belongs to `{a}`, not `{algebra}`")));
            }
            return Ok(e.to_vec());
        }
        let parts: Vec<String> = arg.split(',').map(|s| s.trim().to_string()).collect();
        let e = parse_vector(self.field, &parts, "idempotent").map_err(|_| unknown("idempotent", arg))?;
        if e.len() != self.algebra(algebra)?.dim() {
            return Err(Error::Instance(format!("idempotent needs {} coordinates", self.algebra(algebra)?.dim())));
        }
        Ok(e)
    }

    pub fn splitting(&self, name: &str) -> Result<SplittingDatum> {
        let def = self.file.splittings.get(name).ok_or_else(|| unknown("splitting", name))?;
        let (alg, e) = self.idempotent_of(&def.idempotent)?;
        let x = self.algebras[alg].clone();
        match &def.basis {
            None => Ok(split_by_idempotent(&x, e)?.0),
            Some(b) => {
                let d = x.left_mult(e).rank();
                let g = parse_matrix(self.field, b, d, d, name)?;
                split_by_idempotent_in_basis(&x, e, &g)
            }
        }
    }

    /// The diagram before any twists.
    pub fn diagram(&self, name: &str) -> Result<DirectSumDiagram> {
        let def = self.file.diagrams.get(name).ok_or_else(|| unknown("diagram", name))?;
        let x = self.algebra(&def.algebra)?.clone();
        let summands = def.summands.iter().map(|s| self.splitting(s)).collect::<Result<Vec<_>>>()?;
        DirectSumDiagram::new(x, summands)
    }

    /// The diagram with its twists applied.
    pub fn raw_diagram(&self, name: &str) -> Result<RawDirectSum> {
        let def = self.file.diagrams.get(name).ok_or_else(|| unknown("diagram", name))?;
        let d = self.diagram(name)?;
        let mut raw = RawDirectSum::from_diagram(&d);
        for t in &def.twists {
            let v = parse_vector(self.field, &t.element, name)?;
            let tw = match t.kind {
                TwistKind::Counit => Twist::Counit(v),
                TwistKind::Unit => Twist::Unit(v),
                TwistKind::Middle => Twist::Middle(v),
            };
            raw.twist(t.summand, &tw)?;
        }
        Ok(raw)
    }

    pub fn decomposition_def(&self, name: &str) -> Result<&DecompositionDef> {
        self.file.decompositions.get(name).ok_or_else(|| unknown("decomposition", name))
    }

    pub fn decomposition(&self, name: &str) -> Result<Decomposition> {
        let def = self.decomposition_def(name)?;
        let x = self.algebra(&def.algebra)?;
        match def.seed {
            None => ks_decompose(x),
            Some(s) => ks_decompose_seeded(x, s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_resolve() {
        let q = Field::Rationals;
        let a = Algebra::matrix(q, 2).unwrap();
        let mut f = InstanceFile::new(q);
        f.add_algebra("M2", &a)
            .add_idempotent("one", "M2", a.unit())
            .add_decomposition("D", "M2", None);
        let back = InstanceFile::from_json(&f.to_json().unwrap()).unwrap();
        assert_eq!(back, f);
        let inst = back.load().unwrap();
        assert_eq!(**inst.algebra("M2").unwrap(), a);
        assert_eq!(inst.decomposition("D").unwrap().len(), 1);
    }

    #[test]
    fn duplicate_and_clashing_names() {
        let dup = r#"{"field":"Q","algebras":{"A":{"structure_constants":[[["1"]]],"unit":["1"]},
                      "A":{"structure_constants":[[["1"]]],"unit":["1"]}}}"#;
        assert!(InstanceFile::from_json(dup).is_err());
        let clash = r#"{"field":"Q","algebras":{"A":{"structure_constants":[[["1"]]],"unit":["1"]}},
                        "decompositions":{"A":{"algebra":"A"}}}"#;
        assert!(InstanceFile::from_json(clash).is_err());
    }

    #[test]
    fn bad_references_are_refused() {
        let s = r#"{"field":"GF(3)","decompositions":{"D":{"algebra":"nope"}}}"#;
        assert!(InstanceFile::from_json(s).unwrap().load().is_err());
        let s = r#"{"field":"GF(3)","algebras":{"A":{"structure_constants":[[["2"]]],"unit":["1"]}}}"#;
        assert!(InstanceFile::from_json(s).unwrap().load().is_err());
    }
}
