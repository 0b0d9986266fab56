//! The JSON surface-description file.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{BaseField, FibreDesc, HorizontalField, SurfaceModel, ZetaMode};

/// `{"genus", "base", "fibres", "horizontals", "p_max"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFile {
    pub genus: u32,
    pub base: BaseField,
    pub fibres: Vec<FibreDesc>,
    #[serde(default)]
    pub horizontals: Vec<HorizontalField>,
    pub p_max: u64,
    #[serde(default, skip_serializing_if = "is_truncated")]
    pub zeta_mode: ZetaMode,
}

fn is_truncated(m: &ZetaMode) -> bool {
    *m == ZetaMode::Truncated
}

impl TryFrom<SurfaceFile> for SurfaceModel {
    type Error = Error;

    fn try_from(f: SurfaceFile) -> Result<Self> {
        SurfaceModel::new(f.genus, f.base, f.fibres, f.horizontals, f.p_max)?.with_zeta_mode(f.zeta_mode)
    }
}

impl From<&SurfaceModel> for SurfaceFile {
    fn from(m: &SurfaceModel) -> Self {
        Self {
            genus: m.genus,
            base: m.base.clone(),
            fibres: m.fibres.clone(),
            horizontals: m.horizontals.clone(),
            p_max: m.p_max,
            zeta_mode: m.zeta_mode,
        }
    }
}

/// Line of the first `"p": <p>` entry in the document.
fn fibre_line(text: &str, p: u64) -> Option<usize> {
    let needle = format!("\"p\": {p}");
    let compact = format!("\"p\":{p}");
    text.lines().position(|l| {
        [&needle, &compact].iter().any(|n| {
            l.find(n.as_str())
                .map(|i| !l[i + n.len()..].starts_with(|c: char| c.is_ascii_digit()))
                .unwrap_or(false)
        })
    })
    .map(|i| i + 1)
}

fn fibre_of(e: &Error) -> Option<u64> {
    match e {
        Error::GenusMismatch { fibre, .. } => Some(*fibre),
        Error::Validation(msg) => msg
            .strip_prefix("fibre over ")
            .and_then(|r| r.split(':').next())
            .and_then(|n| n.parse().ok()),
        _ => None,
    }
}

/// Parses and validates a surface file; errors carry a line number.
pub fn load_surface(text: &str) -> Result<SurfaceModel> {
    let file: SurfaceFile = serde_json::from_str(text).map_err(|e| {
        Error::Validation(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    SurfaceModel::try_from(file).map_err(|e| match fibre_of(&e).and_then(|p| fibre_line(text, p)) {
        Some(line) => Error::Validation(format!("line {line}: {e}")),
        None => e,
    })
}

/// Pretty JSON with a trailing newline.
pub fn save_surface(m: &SurfaceModel) -> String {
    let mut s = serde_json::to_string_pretty(&SurfaceFile::from(m)).expect("serializable");
    s.push('\n');
    s
}
