//! Programmatic builders for the worked geometric datasets, parametrized
//! by truncation and geometric parameters (actions, fiber level r,
//! holonomies, index windows). Every builder produces structures that pass
//! the full verification suite on their core windows, and the closed-form
//! answers the datasets are known to satisfy live in the tests next to
//! each builder.

mod conifold;
mod cotangent;
mod i1;
mod pop;
mod torus;

pub use conifold::{build_conifold, ConifoldWindow};
pub use cotangent::build_cotangent_circle;
pub use i1::{build_i1, I1Window};
pub use pop::{build_pair_of_pants, build_pop_circle};
pub use torus::build_torus;

use num::BigRational;

use crate::scalar::EnergyCutoff;

/// Common dataset parameters.
#[derive(Clone, Debug)]
pub struct DatasetParams {
    pub cutoff: EnergyCutoff,
    /// Actions by generator name.
    pub actions: std::collections::BTreeMap<String, BigRational>,
    /// Fiber level r (cotangent-circle family).
    pub r: BigRational,
    /// Λ_U holonomies by variable name.
    pub holonomies: std::collections::BTreeMap<String, crate::scalar::NovikovScalar>,
}

impl Default for DatasetParams {
    fn default() -> Self {
        DatasetParams {
            cutoff: EnergyCutoff::default_window(),
            actions: Default::default(),
            r: BigRational::from_integer(0.into()),
            holonomies: Default::default(),
        }
    }
}

/// Names of the built-in datasets, as exposed by the CLI.
pub fn builder_names() -> Vec<&'static str> {
    vec!["torus1", "torus2", "torus3", "ts1", "i1", "pop", "pop-circle", "conifold"]
}
