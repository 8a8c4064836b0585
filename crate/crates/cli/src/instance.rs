use ballpoly_core::geom::Point3;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::Path;

/// On-disk instance description: generating centers with an optional input
/// scale. When `radius` is present the coordinates are divided by it on
/// load, so the balls become unit.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    pub centers: Vec<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug)]
pub enum InstanceError {
    Io(std::io::Error),
    Parse(String),
    Invalid(String),
}

impl std::fmt::Display for InstanceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InstanceError::Io(e) => write!(f, "io error: {e}"),
            InstanceError::Parse(e) => write!(f, "parse error: {e}"),
            InstanceError::Invalid(e) => write!(f, "invalid instance: {e}"),
        }
    }
}

impl std::error::Error for InstanceError {}

impl InstanceFile {
    pub fn new(centers: Vec<Point3>) -> Self {
        InstanceFile {
            version: 1,
            radius: None,
            centers: centers.iter().map(|c| [c.x, c.y, c.z]).collect(),
            labels: None,
        }
    }

    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        let text = fs::read_to_string(path).map_err(InstanceError::Io)?;
        let file: InstanceFile =
            serde_json::from_str(&text).map_err(|e| InstanceError::Parse(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.version != 1 {
            return Err(InstanceError::Invalid(format!(
                "unsupported version {}",
                self.version
            )));
        }
        if self.centers.is_empty() {
            return Err(InstanceError::Invalid("no centers".to_string()));
        }
        if let Some(r) = self.radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(InstanceError::Invalid(format!(
                    "radius {r} must be positive"
                )));
            }
        }
        if self
            .centers
            .iter()
            .any(|c| c.iter().any(|x| !x.is_finite()))
        {
            return Err(InstanceError::Invalid("non-finite coordinate".to_string()));
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.centers.len() {
                return Err(InstanceError::Invalid(format!(
                    "{} labels for {} centers",
                    labels.len(),
                    self.centers.len()
                )));
            }
        }
        Ok(())
    }

    /// Centers rescaled to unit-ball units.
    pub fn unit_centers(&self) -> Vec<Point3> {
        let scale = self.radius.unwrap_or(1.0);
        self.centers
            .iter()
            .map(|c| Point3::new(c[0] / scale, c[1] / scale, c[2] / scale))
            .collect()
    }
}

/// Write a file atomically: to a temporary sibling first, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), std::io::Error> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let tmp = dir.join(format!(
        ".{}.tmp-{}",
        path.file_name()
            .map(|n| n.to_string_lossy().to_string())
            .unwrap_or_default(),
        std::process::id()
    ));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}
