//! Where an arrangement comes from: a file or the builtin catalog.

use std::path::PathBuf;

use arrcheck_core::arrangement::{builtin, BuiltinName, BuiltinParam, BUILTIN_NAMES};
use arrcheck_core::parse::{load_arrangement, parse_linear_form, LoadError};
use arrcheck_core::{ArrangementError, DynArrangement};
use clap::Args;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("give either a file or --builtin, not both")]
    Ambiguous,
    #[error("no input: give a file or --builtin NAME (one of {})", BUILTIN_NAMES.join(", "))]
    Missing,
    #[error("--param only applies to --builtin Lt")]
    StrayParam,
}

impl InputError {
    /// Exit 2 territory: the text parsed but the lines do not form a valid arrangement.
    pub fn is_invalid_arrangement(&self) -> bool {
        match self {
            InputError::Load(e) => e.is_invalid_arrangement(),
            InputError::Arrangement(e) => !matches!(
                e,
                ArrangementError::UnknownBuiltin(_) | ArrangementError::DegenerateParameter(_)
            ),
            _ => false,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Arrangement file (JSON).
    pub path: Option<PathBuf>,
    /// One of L6, L7, L8, L9, L9prime, Lt.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Value of t for Lt: a rational number or "generic".
    #[arg(long, allow_hyphen_values = true)]
    pub param: Option<String>,
}

impl InputArgs {
    /// Loads the arrangement and names it for the report.
    pub fn load(&self) -> Result<(String, DynArrangement), InputError> {
        match (&self.path, &self.builtin) {
            (Some(_), Some(_)) => Err(InputError::Ambiguous),
            (None, None) => Err(InputError::Missing),
            (Some(path), None) => {
                if self.param.is_some() {
                    return Err(InputError::StrayParam);
                }
                Ok((path.display().to_string(), load_arrangement(path)?))
            }
            (None, Some(name)) => load_builtin(name, self.param.as_deref(), None),
        }
    }
}

/// Resolves a catalog name. `corrupt` names a builtin whose last line is
/// dropped, which the claim harness uses to test itself.
pub fn load_builtin(
    name: &str,
    param: Option<&str>,
    corrupt: Option<&str>,
) -> Result<(String, DynArrangement), InputError> {
    let which: BuiltinName = name.parse()?;
    let param: Option<BuiltinParam> = match param {
        Some(_) if which != BuiltinName::Lt => return Err(InputError::StrayParam),
        Some(p) => Some(p.parse()?),
        None => None,
    };
    let label = match &param {
        Some(BuiltinParam::Value(t)) => format!("builtin:Lt(t={t})"),
        _ => format!("builtin:{}", which.as_str()),
    };
    if corrupt == Some(which.as_str()) {
        let descriptor = which.descriptor();
        let forms = which.forms();
        let kept = forms[..forms.len() - 1]
            .iter()
            .map(|s| parse_linear_form(s, &descriptor).expect("catalog forms parse"))
            .collect();
        return Ok((label, DynArrangement::from_scalars(kept, descriptor)?));
    }
    Ok((label, builtin(which, param.as_ref())?))
}

/// A builtin name when it is one, otherwise a file path.
pub fn load_named(spec: &str) -> Result<(String, DynArrangement), InputError> {
    if BUILTIN_NAMES.contains(&spec) {
        load_builtin(spec, None, None)
    } else {
        let path = PathBuf::from(spec);
        Ok((spec.to_string(), load_arrangement(&path)?))
    }
}
