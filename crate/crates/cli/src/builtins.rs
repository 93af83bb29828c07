//! Named Hopf algebras addressable as `builtin:<name>`.

use invtwist::constructions::{group_algebra, sweedler_h4, FiniteGroup};
use invtwist::{Field, HopfAlgebra};

use crate::error::{CliError, CliResult};

pub struct Builtin {
    pub name: &'static str,
    pub description: &'static str,
    pub labels: &'static [&'static str],
}

pub const BUILTINS: &[Builtin] = &[
    Builtin { name: "kC2", description: "group algebra of the cyclic group of order 2", labels: &["1", "g"] },
    Builtin {
        name: "kC2xC2",
        description: "group algebra of the Klein four-group",
        labels: &["1", "a", "b", "ab"],
    },
    Builtin {
        name: "H4",
        description: "Sweedler's four-dimensional Hopf algebra (char ≠ 2)",
        labels: &["1", "g", "x", "gx"],
    },
];

pub fn lookup(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

pub fn hopf(name: &str, field: Field) -> CliResult<HopfAlgebra> {
    let c2 = || FiniteGroup::cyclic(2).expect("C2");
    match name {
        "kC2" => Ok(group_algebra(&c2(), field)),
        "kC2xC2" => Ok(group_algebra(&c2().direct_product(&c2())?, field)),
        "H4" => Ok(sweedler_h4(field)?),
        _ => {
            let known: Vec<_> = BUILTINS.iter().map(|b| b.name).collect();
            Err(CliError::Usage(format!("unknown builtin {name:?}; known: {}", known.join(", "))))
        }
    }
}
