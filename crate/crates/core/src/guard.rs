use crate::error::{Error, Result};

/// Desk-scale limits on exhaustive computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest group order for residue enumeration and elementary tests.
    pub group_order: u64,
    /// Largest point configuration for exhaustive triangulation enumeration.
    pub enumeration_points: u64,
    /// Largest box scanned when enumerating dual-lattice candidates.
    pub dual_box: u64,
    /// Largest ambient dimension for hulls and volumes.
    pub polytope_dim: u64,
    /// Largest ambient dimension for mixed volumes.
    pub mixed_volume_dim: u64,
    /// Largest number of rays for primitive-collection search.
    pub collection_rays: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            group_order: 10_000,
            enumeration_points: 14,
            dual_box: 2_000_000,
            polytope_dim: 4,
            mixed_volume_dim: 3,
            collection_rays: 12,
        }
    }
}

impl Guards {
    /// No limits at all.
    pub fn unlimited() -> Self {
        Guards {
            group_order: u64::MAX,
            enumeration_points: u64::MAX,
            dual_box: u64::MAX,
            polytope_dim: u64::MAX,
            mixed_volume_dim: u64::MAX,
            collection_rays: u64::MAX,
        }
    }

    pub(crate) fn check(what: &'static str, value: u64, limit: u64) -> Result<()> {
        if value > limit {
            Err(Error::GuardExceeded { what, value, limit })
        } else {
            Ok(())
        }
    }
}
