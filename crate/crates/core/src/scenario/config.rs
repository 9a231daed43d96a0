use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::matrix::{AffineMap, Matrix};
use crate::scalar::{self, Scalar};

/// Problems with a scenario file, reported before any computation runs.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{0}")]
    Toml(#[from] toml::de::Error),

    #[error("invalid value for `{key}`: {source}")]
    Value { key: String, source: Error },

    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
}

impl ConfigError {
    pub(crate) fn value(key: impl Into<String>, source: Error) -> Self {
        ConfigError::Value { key: key.into(), source }
    }

    pub(crate) fn invalid(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Invalid { key: key.into(), message: message.into() }
    }
}

/// A scalar written either as a TOML integer or as a string such as `"3/2"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    pub fn to_scalar(&self) -> Result<Scalar, Error> {
        match self {
            ScalarText::Int(v) => Ok(scalar::int(*v)),
            ScalarText::Text(s) => scalar::parse_scalar(s),
        }
    }
}

pub(crate) fn scalars(key: &str, xs: &[ScalarText]) -> Result<Vec<Scalar>, ConfigError> {
    xs.iter().map(|x| x.to_scalar().map_err(|e| ConfigError::value(key, e))).collect()
}

pub(crate) fn matrix(key: &str, rows: &[Vec<ScalarText>]) -> Result<Matrix, ConfigError> {
    let rows = rows.iter().map(|r| scalars(key, r)).collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).map_err(|e| ConfigError::value(key, e))
}

/// Work units of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Invariants,
    Nullcone,
    Stabilizer,
    Reductivity,
    Fiber,
    CheckMap,
}

impl Task {
    pub const ALL: [Task; 6] =
        [Task::Invariants, Task::Nullcone, Task::Stabilizer, Task::Reductivity, Task::Fiber, Task::CheckMap];

    pub fn name(self) -> &'static str {
        match self {
            Task::Invariants => "invariants",
            Task::Nullcone => "nullcone",
            Task::Stabilizer => "stabilizer",
            Task::Reductivity => "reductivity",
            Task::Fiber => "fiber",
            Task::CheckMap => "check-map",
        }
    }

    pub fn from_name(name: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.name() == name)
    }
}

/// Where the invariant generators come from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// Diagonal action; weights are listed per coordinate.
    Weights {
        variables: Vec<String>,
        #[serde(default)]
        torus_rank: usize,
        #[serde(default)]
        cyclic_orders: Vec<u64>,
        weights: Vec<Vec<i64>>,
    },
    /// Contractions on `pW + qW*` with `dim W = n`.
    Contraction { n: usize, p: usize, q: usize },
    /// Trace powers on `sl_n`.
    AdjointSl { n: usize },
    /// Trace powers on `gl_n`.
    AdjointGl { n: usize },
    /// `det S` and `v^t adj(S) v` on `S^2 Q^n + Q^n`.
    Sym2Vector { n: usize },
    /// The Pfaffian on `Λ^2 Q^4 + Q^4`.
    PfaffianSl4,
    Explicit { variables: Vec<String>, polynomials: Vec<String> },
}

/// A homogeneous membership query against the null-cone ideal, or a
/// truncated one against the fiber ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberQuery {
    pub polynomial: String,
    #[serde(default)]
    pub expect: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KoszulExpect {
    Reduced,
    NotKoszul,
}

/// Input to a Koszul reduction: coefficients `a_j` of `f = sum a_j (p_j - c_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoszulSpec {
    pub coefficients: Vec<String>,
    pub target_degree: usize,
    #[serde(default)]
    pub expect: Option<KoszulExpect>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberSpec {
    /// Values `c_j`; alternatively give `point` and the constants are the
    /// generator values there.
    #[serde(default)]
    pub constants: Option<Vec<ScalarText>>,
    #[serde(default)]
    pub point: Option<Vec<ScalarText>>,
    /// Overrides the scenario headroom for fiber work.
    #[serde(default)]
    pub headroom: Option<usize>,
    #[serde(default)]
    pub comparison_bound: Option<usize>,
    #[serde(default)]
    pub regular_bound: Option<usize>,
    #[serde(default)]
    pub members: Vec<MemberQuery>,
    #[serde(default)]
    pub jacobian_point: Option<Vec<ScalarText>>,
    #[serde(default)]
    pub koszul: Option<KoszulSpec>,
    #[serde(default = "yes")]
    pub affine: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapTarget {
    #[default]
    Nullcone,
    Fiber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapExpect {
    Preserved,
    NotPreserved,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapPreset {
    /// `X -> X^t` on adjoint coordinates.
    Transposition,
}

/// An explicit map given by exactly one of `linear`, `permutation`, `preset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub name: String,
    #[serde(default)]
    pub target: MapTarget,
    #[serde(default)]
    pub linear: Option<Vec<Vec<ScalarText>>>,
    #[serde(default)]
    pub translation: Option<Vec<ScalarText>>,
    #[serde(default)]
    pub permutation: Option<Vec<usize>>,
    #[serde(default)]
    pub preset: Option<MapPreset>,
    #[serde(default)]
    pub expect: Option<MapExpect>,
}

impl MapSpec {
    pub(crate) fn build(&self, spec: &GeneratorSpec, n: usize) -> Result<AffineMap, ConfigError> {
        let key = format!("maps.{}", self.name);
        let given = [self.linear.is_some(), self.permutation.is_some(), self.preset.is_some()];
        if given.iter().filter(|&&g| g).count() != 1 {
            return Err(ConfigError::invalid(key, "give exactly one of `linear`, `permutation`, `preset`"));
        }
        let mut map = if let Some(rows) = &self.linear {
            AffineMap::linear(matrix(&key, rows)?)
        } else if let Some(perm) = &self.permutation {
            let mut seen = vec![false; perm.len()];
            for &i in perm {
                if i >= perm.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(ConfigError::invalid(key, "not a permutation"));
                }
            }
            AffineMap::permutation(perm)
        } else {
            match (spec, self.preset) {
                (GeneratorSpec::AdjointSl { n }, Some(MapPreset::Transposition)) => {
                    crate::invariants::transposition_map(*n, true)
                }
                (GeneratorSpec::AdjointGl { n }, Some(MapPreset::Transposition)) => {
                    crate::invariants::transposition_map(*n, false)
                }
                _ => return Err(ConfigError::invalid(key, "transposition needs adjoint generators")),
            }
        };
        if map.dim() != n {
            return Err(ConfigError::value(key, Error::DimensionMismatch { expected: n, found: map.dim() }));
        }
        if let Some(t) = &self.translation {
            map = AffineMap::new(map.linear, scalars(&key, t)?).map_err(|e| ConfigError::value(&key, e))?;
        }
        Ok(map)
    }
}

/// Half-open index ranges that must contain every nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Support {
    pub rows: [usize; 2],
    pub cols: [usize; 2],
}

impl Support {
    pub fn admits(&self, m: &Matrix) -> bool {
        use num_traits::Zero;
        let n = m.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                m.get(i, j).is_zero()
                    || (self.rows[0] <= i && i < self.rows[1] && self.cols[0] <= j && j < self.cols[1])
            })
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictName {
    Reductive,
    NonReductive,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularName {
    Regular,
    NotRegular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComparisonName {
    Equal,
    Witness,
}

/// Expected values; every field is optional and checked exactly.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub generators: Option<Vec<String>>,
    pub generation_complete: Option<bool>,
    pub invariant: Option<bool>,
    /// `[degree, dimension of the ideal piece]` pairs.
    pub piece_dims: Option<Vec<[usize; 2]>>,

    pub g0_dim: Option<usize>,
    pub h0_dim: Option<usize>,
    pub h0_contains: Option<Vec<Vec<Vec<ScalarText>>>>,
    pub commutant: Option<bool>,

    pub g0_verdict: Option<VerdictName>,
    pub h0_verdict: Option<VerdictName>,
    pub g0_radical_dim: Option<usize>,
    pub h0_radical_dim: Option<usize>,
    pub h0_radical_contains: Option<Vec<Vec<Vec<ScalarText>>>>,
    pub g0_nilpotent_dim: Option<usize>,
    pub h0_nilpotent_dim: Option<usize>,
    pub g0_witness_support: Option<Support>,
    pub h0_witness_support: Option<Support>,

    pub regular: Option<RegularName>,
    /// `[degree, expected, actual]`.
    pub regular_witness: Option<[i64; 3]>,
    pub comparison: Option<ComparisonName>,
    pub comparison_witness_degree: Option<usize>,
    pub comparison_witness_form: Option<String>,
    pub jacobian_rank: Option<usize>,
    pub affine_dim: Option<usize>,
    pub affine_vanishing_dim: Option<usize>,
    pub affine_effective_dim: Option<usize>,
    pub affine_translation_rank: Option<usize>,
    pub affine_effective_translation_rank: Option<usize>,
    pub affine_stable: Option<bool>,
    pub linear_fiber_dim: Option<usize>,
}

/// One scenario file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(default = "default_degree_bound")]
    pub degree_bound: usize,
    #[serde(default)]
    pub headroom: Option<usize>,
    /// Empty means every task the scenario has data for.
    #[serde(default)]
    pub tasks: Vec<Task>,
    pub generators: GeneratorSpec,
    /// Isotypic blocks `[dimension, multiplicity]`, copy by copy.
    #[serde(default)]
    pub blocks: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    pub members: Vec<MemberQuery>,
    #[serde(default)]
    pub fiber: Option<FiberSpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
    #[serde(default)]
    pub expect: Expect,
}

fn default_degree_bound() -> usize {
    6
}

impl Scenario {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text)
    }

    /// Tasks to run: the declared list (duplicates dropped), or every task
    /// the scenario has data for.
    pub fn effective_tasks(&self) -> Vec<Task> {
        if self.tasks.is_empty() {
            return Task::ALL
                .into_iter()
                .filter(|t| match t {
                    Task::Fiber => self.fiber.is_some(),
                    Task::CheckMap => !self.maps.is_empty(),
                    _ => true,
                })
                .collect();
        }
        let mut out = Vec::new();
        for &t in &self.tasks {
            if !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_minimal_scenario() {
        let s = Scenario::from_toml(
            r#"
            name = "t"
            [generators]
            kind = "contraction"
            n = 2
            p = 1
            q = 1
            "#,
        )
        .unwrap();
        assert_eq!(s.generators, GeneratorSpec::Contraction { n: 2, p: 1, q: 1 });
        assert_eq!(s.degree_bound, 6);
        assert_eq!(s.effective_tasks(), vec![Task::Invariants, Task::Nullcone, Task::Stabilizer, Task::Reductivity]);
    }

    #[test]
    fn unknown_keys_are_named() {
        let err = Scenario::from_toml("name = \"t\"\nbogus = 1\n[generators]\nkind = \"pfaffian_sl4\"\n").unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = Scenario::from_toml("name = \"t\"\n[generators]\nkind = \"adjoint_sl\"\nn = 2\nm = 3\n").unwrap_err();
        assert!(err.to_string().contains('m'), "{err}");
        let err = Scenario::from_toml("name = \"t\"\n[generators]\nkind = \"adjoint_sl\"\nn = 2\n[expect]\nh0_dimension = 3\n")
            .unwrap_err();
        assert!(err.to_string().contains("h0_dimension"), "{err}");
    }

    #[test]
    fn scalar_text() {
        assert_eq!(ScalarText::Int(3).to_scalar().unwrap(), scalar::int(3));
        assert_eq!(ScalarText::Text("-3/2".into()).to_scalar().unwrap(), scalar::ratio(-3, 2));
        assert!(ScalarText::Text("x".into()).to_scalar().is_err());
    }

    #[test]
    fn support_ranges() {
        let s = Support { rows: [1, 2], cols: [0, 1] };
        assert!(s.admits(&Matrix::unit(2, 1, 0)));
        assert!(!s.admits(&Matrix::identity(2)));
    }
}
