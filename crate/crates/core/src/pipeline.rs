//! The full computation for one instance, stage by stage.

use crate::error::Result;
use crate::git::{git_decomposition, real_fiber_fan, ChamberDecomposition, RealFiberFan};
use crate::hilbert::{hilbert_fan, universal_family_fan, HilbertFan};
use crate::instance::ToricInstance;
use crate::polyhedral::{Fan, Polyhedron};

#[derive(Debug, Clone)]
pub struct Analysis {
    pub instance: ToricInstance,
    pub chambers: ChamberDecomposition,
    pub real: RealFiberFan,
    pub hilbert: HilbertFan,
}

impl Analysis {
    pub fn compute(instance: ToricInstance) -> Result<Self> {
        let chambers = git_decomposition(&instance)?;
        let real = real_fiber_fan(&instance, &chambers)?;
        let hilbert = hilbert_fan(&instance, &chambers, &real)?;
        Ok(Analysis {
            instance,
            chambers,
            real,
            hilbert,
        })
    }

    pub fn hilbert_fan(&self) -> &Fan {
        &self.hilbert.fan
    }

    pub fn real_fan(&self) -> &Fan {
        &self.real.fan
    }

    /// One polyhedron per class of equivalent representatives, followed by
    /// `P_R`. Their Minkowski sum has the Hilbert fan as normal fan.
    pub fn class_polyhedra(&self) -> Vec<&Polyhedron> {
        self.hilbert
            .classes
            .iter()
            .map(|c| &c.polyhedron)
            .chain(std::iter::once(&self.real.polyhedron))
            .collect()
    }

    pub fn family_fan(&self) -> Result<Fan> {
        universal_family_fan(&self.instance, &self.hilbert.fan)
    }
}
