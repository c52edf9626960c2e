//! Named arrangements with only double and triple points.

use std::fmt;
use std::str::FromStr;

use super::{ArrangementError, DynArrangement};
use crate::field::{FieldDescriptor, Rational};
use crate::parse::{parse_linear_form, parse_scalar};

/// Six lines, `(6; 9, 2)`.
const L6: &[&str] = &["y", "x-z", "y-x-2z", "y+x-2z", "y-x+2z", "y+x+2z"];

/// Seven lines, `(7; 9, 4)`.
const L7: &[&str] = &["x", "y", "x-z", "y-x-2z", "x+y-2z", "y-x+2z", "x+y+2z"];

/// Eight lines, `(8; 7, 7)`.
const L8: &[&str] = &["y", "y-2z", "y+2z", "y-x-2z", "y+x-2z", "y-x+2z", "y+x+2z", "y+x-6z"];

/// Nine lines, `(9; 6, 10)`, real member of the one-parameter family below.
const L9: &[&str] = &["y", "y-z", "y+z", "y-x", "y+x", "y-x-2z", "y-x+2z", "y+x-2z", "y+x+2z"];

/// Nine lines over `Q(e)`, `e² + 1 = 0`, same weak combinatorics as `L9`.
const L9_PRIME: &[&str] = &["x", "y", "z", "x+y", "x+z", "y-z", "x+y+ez", "x-ey+z", "x-ey+ez"];

/// The 3-net family over `Q(t)`.
const LT: &[&str] = &[
    "x",
    "y",
    "z",
    "y+z",
    "x+y+z",
    "x+ty",
    "(t-1)x+(t-1)y+tz",
    "(t-1)x+tz",
    "(t-1)x+t(t-1)y+t^2z",
];

pub const BUILTIN_NAMES: [&str; 6] = ["L6", "L7", "L8", "L9", "L9prime", "Lt"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinName {
    L6,
    L7,
    L8,
    L9,
    L9Prime,
    Lt,
}

impl BuiltinName {
    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::L6 => "L6",
            BuiltinName::L7 => "L7",
            BuiltinName::L8 => "L8",
            BuiltinName::L9 => "L9",
            BuiltinName::L9Prime => "L9prime",
            BuiltinName::Lt => "Lt",
        }
    }

    pub fn forms(self) -> &'static [&'static str] {
        match self {
            BuiltinName::L6 => L6,
            BuiltinName::L7 => L7,
            BuiltinName::L8 => L8,
            BuiltinName::L9 => L9,
            BuiltinName::L9Prime => L9_PRIME,
            BuiltinName::Lt => LT,
        }
    }

    pub fn descriptor(self) -> FieldDescriptor {
        match self {
            BuiltinName::L9Prime => FieldDescriptor::gaussian(),
            BuiltinName::Lt => FieldDescriptor::rational_functions("t"),
            _ => FieldDescriptor::Rationals,
        }
    }
}

impl fmt::Display for BuiltinName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinName {
    type Err = ArrangementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L6" => Ok(BuiltinName::L6),
            "L7" => Ok(BuiltinName::L7),
            "L8" => Ok(BuiltinName::L8),
            "L9" => Ok(BuiltinName::L9),
            "L9prime" | "L9'" => Ok(BuiltinName::L9Prime),
            "Lt" => Ok(BuiltinName::Lt),
            other => Err(ArrangementError::UnknownBuiltin(other.to_string())),
        }
    }
}

/// Parameter for the `Lt` family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinParam {
    /// Work over `Q(t)`.
    Generic,
    Value(Rational),
}

impl FromStr for BuiltinParam {
    type Err = ArrangementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "generic" {
            return Ok(BuiltinParam::Generic);
        }
        match parse_scalar(s, &FieldDescriptor::Rationals) {
            Ok(crate::field::FieldScalar::Rational(r)) => Ok(BuiltinParam::Value(r)),
            _ => Err(ArrangementError::DegenerateParameter(format!(
                "expected a rational number or \"generic\", got {s:?}"
            ))),
        }
    }
}

/// Builds a catalog arrangement. `Lt` needs a parameter; the others ignore it.
///
/// A rational `t` is accepted only if the specialized arrangement still has
/// nine distinct lines and weak combinatorics `(9; 6, 10)`.
pub fn builtin(name: BuiltinName, param: Option<&BuiltinParam>) -> Result<DynArrangement, ArrangementError> {
    let descriptor = name.descriptor();
    let forms = name
        .forms()
        .iter()
        .map(|s| parse_linear_form(s, &descriptor).expect("catalog forms parse"))
        .collect();
    let generic = DynArrangement::from_scalars(forms, descriptor)?;
    if name != BuiltinName::Lt {
        return Ok(generic);
    }
    match param.unwrap_or(&BuiltinParam::Generic) {
        BuiltinParam::Generic => Ok(generic),
        BuiltinParam::Value(t0) => {
            if t0.is_one() || *t0 == Rational::zero() {
                return Err(ArrangementError::DegenerateParameter(format!("t = {t0} is excluded")));
            }
            let DynArrangement::Function(family) = generic else {
                unreachable!("Lt is defined over Q(t)")
            };
            let special = family.specialize(t0)?;
            let wc = special.weak_combinatorics();
            if wc.counts != [6, 10] {
                return Err(ArrangementError::DegenerateParameter(format!(
                    "t = {t0} gives weak combinatorics {wc}, not (9; 6, 10)"
                )));
            }
            Ok(DynArrangement::Rational(special))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes_and_fields() {
        for name in BUILTIN_NAMES {
            let n: BuiltinName = name.parse().unwrap();
            let a = builtin(n, None).unwrap();
            assert_eq!(a.len(), n.forms().len());
        }
        assert!(matches!(
            builtin(BuiltinName::L9Prime, None).unwrap(),
            DynArrangement::Quadratic(_)
        ));
        assert!(matches!(
            builtin(BuiltinName::Lt, None).unwrap(),
            DynArrangement::Function(_)
        ));
        assert!(matches!(
            builtin(BuiltinName::L6, None).unwrap(),
            DynArrangement::Rational(_)
        ));
        assert!("L10".parse::<BuiltinName>().is_err());
    }

    #[test]
    fn excluded_parameters() {
        for t in ["0", "1"] {
            let p: BuiltinParam = t.parse().unwrap();
            assert!(matches!(
                builtin(BuiltinName::Lt, Some(&p)),
                Err(ArrangementError::DegenerateParameter(_))
            ));
        }
        let p: BuiltinParam = "2".parse().unwrap();
        assert!(matches!(
            builtin(BuiltinName::Lt, Some(&p)).unwrap(),
            DynArrangement::Rational(_)
        ));
        assert!("abc".parse::<BuiltinParam>().is_err());
    }
}
