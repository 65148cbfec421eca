//! Algebra and module files, builtin references and module shorthands.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use hhlab_core::algebra::{builtin, enveloping, opposite};
use hhlab_core::module::{regular_bimodule, regular_left, regular_right};
use hhlab_core::random::random_module;
use hhlab_core::{Algebra, Bimodule, LeftModule, Mat, PrimeField, RightModule};

use crate::CliError;

/// Prime used for builtins when `--p` is absent.
pub const DEFAULT_P: u64 = 101;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub p: u64,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<i64>,
    pub mul: Vec<[i64; 4]>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraFile {
            p: u64::from(a.field().p()),
            dim: a.dim(),
            basis: a.labels().to_vec(),
            unit: a.unit().iter().map(|&x| i64::from(x)).collect(),
            mul: a
                .mul_triplets()
                .into_iter()
                .map(|(i, j, k, c)| [i as i64, j as i64, k as i64, i64::from(c)])
                .collect(),
        }
    }

    /// Builds the algebra, reducing constants modulo `p_override` when given.
    pub fn build(&self, p_override: Option<u64>) -> Result<Algebra, CliError> {
        let input = |msg: String| CliError::Input(msg);
        if self.basis.len() != self.dim {
            return Err(input(format!("basis has {} labels but dim is {}", self.basis.len(), self.dim)));
        }
        if self.unit.len() != self.dim {
            return Err(input(format!("unit has {} entries but dim is {}", self.unit.len(), self.dim)));
        }
        let p = self.p as i64;
        let index = |x: i64, what: &str| -> Result<usize, CliError> {
            usize::try_from(x)
                .ok()
                .filter(|&i| i < self.dim)
                .ok_or_else(|| input(format!("{what} index {x} out of range for dim {}", self.dim)))
        };
        let f = PrimeField::new(p_override.unwrap_or(self.p))?;
        PrimeField::new(self.p)?;
        let mut mul = Vec::with_capacity(self.mul.len());
        for &[i, j, k, c] in &self.mul {
            if !(0..p).contains(&c) {
                return Err(input(format!("coefficient {c} at ({i},{j},{k}) not in [0,{p})")));
            }
            mul.push((index(i, "mul")?, index(j, "mul")?, index(k, "mul")?, f.reduce(c)));
        }
        for &u in &self.unit {
            if !(0..p).contains(&u) {
                return Err(input(format!("unit coefficient {u} not in [0,{p})")));
            }
        }
        let unit = self.unit.iter().map(|&u| f.reduce(u)).collect();
        Ok(Algebra::new(f, self.basis.clone(), &mul, unit)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Bimodule,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Bimodule => "bimodule",
        })
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum AlgebraRef {
    Inline(AlgebraFile),
    Named(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    algebra: AlgebraRef,
    dim: usize,
    action: Vec<Vec<Vec<i64>>>,
    side: Option<Side>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, path: &Path) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// `builtin:name(params)` or the path of an algebra file.
pub fn load_algebra(spec: &str, p_override: Option<u64>) -> Result<Algebra, CliError> {
    load_algebra_from(spec, p_override, Path::new("."))
}

fn load_algebra_from(spec: &str, p_override: Option<u64>, base: &Path) -> Result<Algebra, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return Ok(builtin(name, p_override.unwrap_or(DEFAULT_P))?);
    }
    let path = base.join(spec);
    let file: AlgebraFile = parse_json(&read(&path)?, &path)?;
    file.build(p_override)
}

/// The module argument kinds accepted by `--M`, `--N` and `--coeff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    Regular,
    Random(usize),
    File(PathBuf),
}

impl ModuleSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        if s == "regular" {
            return Ok(ModuleSpec::Regular);
        }
        if let Some(d) = s.strip_prefix("random:") {
            return d
                .parse()
                .ok()
                .filter(|&d: &usize| d >= 1)
                .map(ModuleSpec::Random)
                .ok_or_else(|| CliError::Input(format!("`{s}`: random modules need a positive dimension")));
        }
        Ok(ModuleSpec::File(PathBuf::from(s)))
    }
}

fn load_module_file(path: &Path, a: &Algebra, p_override: Option<u64>, want: Side) -> Result<LeftModule, CliError> {
    let file: ModuleFile = parse_json(&read(path)?, path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let own = match &file.algebra {
        AlgebraRef::Inline(f) => f.build(p_override)?,
        AlgebraRef::Named(s) => load_algebra_from(s, p_override, base)?,
    };
    if own != *a {
        return Err(CliError::Input(format!(
            "{}: module algebra differs from the algebra argument",
            path.display()
        )));
    }
    let side = file.side.unwrap_or(Side::Left);
    if side != want {
        return Err(CliError::Input(format!("{}: expected a {want} module, file declares {side}", path.display())));
    }
    let f = a.field();
    let d = a.dim();
    let mut mats = Vec::with_capacity(file.action.len());
    for (i, rows) in file.action.iter().enumerate() {
        let m = if rows.is_empty() {
            Mat::zeros(f, 0, 0)
        } else {
            Mat::from_rows(f, rows)?
        };
        if m.rows() != file.dim || m.cols() != file.dim {
            return Err(CliError::Input(format!(
                "{}: action matrix {i} is {}x{}, expected {}x{}",
                path.display(),
                m.rows(),
                m.cols(),
                file.dim,
                file.dim
            )));
        }
        mats.push(m);
    }
    let over = match side {
        Side::Left => a.clone(),
        Side::Right => opposite(a),
        Side::Bimodule => enveloping(a),
    };
    if side == Side::Bimodule && mats.len() == 2 * d {
        // left actions followed by right actions
        let (l, r) = mats.split_at(d);
        mats = l.iter().flat_map(|x| r.iter().map(move |y| x.mul(y))).collect();
    }
    if mats.len() != over.dim() {
        return Err(CliError::Input(format!(
            "{}: {side} module needs {} action matrices, found {}",
            path.display(),
            over.dim(),
            mats.len()
        )));
    }
    Ok(LeftModule::new(over, file.dim, mats)?)
}

pub struct Loader<'a> {
    pub algebra: &'a Algebra,
    pub p_override: Option<u64>,
    pub seed: u64,
}

impl Loader<'_> {
    fn spec(s: Option<&str>) -> Result<ModuleSpec, CliError> {
        s.map_or(Ok(ModuleSpec::Regular), ModuleSpec::parse)
    }

    /// `salt` separates the random streams of different module slots.
    pub fn left(&self, s: Option<&str>, salt: u64) -> Result<LeftModule, CliError> {
        Ok(match Self::spec(s)? {
            ModuleSpec::Regular => regular_left(self.algebra),
            ModuleSpec::Random(d) => random_module(self.algebra, d, self.seed.wrapping_add(salt)),
            ModuleSpec::File(p) => load_module_file(&p, self.algebra, self.p_override, Side::Left)?,
        })
    }

    pub fn right(&self, s: Option<&str>, salt: u64) -> Result<RightModule, CliError> {
        Ok(match Self::spec(s)? {
            ModuleSpec::Regular => regular_right(self.algebra),
            ModuleSpec::Random(d) => {
                RightModule::from_opposite(random_module(&opposite(self.algebra), d, self.seed.wrapping_add(salt)))
            }
            ModuleSpec::File(p) => {
                RightModule::from_opposite(load_module_file(&p, self.algebra, self.p_override, Side::Right)?)
            }
        })
    }

    pub fn bimodule(&self, s: Option<&str>, salt: u64) -> Result<Bimodule, CliError> {
        Ok(match Self::spec(s)? {
            ModuleSpec::Regular => regular_bimodule(self.algebra),
            ModuleSpec::Random(d) => {
                Bimodule::from_left(random_module(&enveloping(self.algebra), d, self.seed.wrapping_add(salt)))?
            }
            ModuleSpec::File(p) => Bimodule::from_left(load_module_file(&p, self.algebra, self.p_override, Side::Bimodule)?)?,
        })
    }
}
