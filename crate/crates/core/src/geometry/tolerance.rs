use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by the kernel, the operators and the harness.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative tolerance for hull reduction and deduplication.
    pub hull_eps: f64,
    /// Inclusion tolerance as a multiple of the circumradius.
    pub inclusion_eps: f64,
    pub hausdorff_grid_2d: usize,
    pub hausdorff_grid_3d: usize,
    pub slice_count: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            hull_eps: 1e-9,
            inclusion_eps: 1e-7,
            hausdorff_grid_2d: 4096,
            hausdorff_grid_3d: 8192,
            slice_count: 256,
        }
    }
}

impl ToleranceConfig {
    pub fn hausdorff_grid(&self, dim: usize) -> usize {
        if dim == 2 {
            self.hausdorff_grid_2d
        } else {
            self.hausdorff_grid_3d
        }
    }

    /// Absolute inclusion tolerance for a body of the given circumradius.
    pub fn inclusion_abs(&self, circumradius: f64) -> f64 {
        self.inclusion_eps * circumradius.max(1e-12)
    }

    pub fn is_valid(&self) -> bool {
        self.hull_eps > 0.0
            && self.inclusion_eps > 0.0
            && self.hausdorff_grid_2d > 0
            && self.hausdorff_grid_3d > 0
            && self.slice_count > 0
    }
}
