//! Feasibility grids over `(beta_2, alpha_2)` shared by both information models.

use std::fmt::Debug;

use crate::{Error, Result};

/// Verdicts for one `(beta_2, alpha_2)` point.
///
/// `non_truthful` is the alpha-GSP verdict under complete information and the
/// alpha-GFP verdict under incomplete information.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionCell<T> {
    pub beta2: T,
    pub alpha2: T,
    pub non_truthful: bool,
    pub vcg: bool,
}

/// Smallest feasible `alpha_2` on one `beta_2` row.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundary<T> {
    pub beta2: T,
    pub non_truthful: Option<T>,
    pub vcg: Option<T>,
}

/// Row-major grid: `beta2` is the outer axis, `alpha2` the inner one, both ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid<T> {
    pub beta2: Vec<T>,
    pub alpha2: Vec<T>,
    pub cells: Vec<RegionCell<T>>,
}

impl<T: Clone> RegionGrid<T> {
    pub fn cell(&self, beta_idx: usize, alpha_idx: usize) -> &RegionCell<T> {
        &self.cells[beta_idx * self.alpha2.len() + alpha_idx]
    }

    pub fn row(&self, beta_idx: usize) -> &[RegionCell<T>] {
        let w = self.alpha2.len();
        &self.cells[beta_idx * w..(beta_idx + 1) * w]
    }

    pub fn boundaries(&self) -> Vec<Boundary<T>> {
        (0..self.beta2.len())
            .map(|b| {
                let row = self.row(b);
                Boundary {
                    beta2: self.beta2[b].clone(),
                    non_truthful: row
                        .iter()
                        .find(|c| c.non_truthful)
                        .map(|c| c.alpha2.clone()),
                    vcg: row.iter().find(|c| c.vcg).map(|c| c.alpha2.clone()),
                }
            })
            .collect()
    }
}

/// Rejects empty grids and grids that are not strictly ascending.
pub fn validate_grid<T: PartialOrd + Debug>(name: &str, grid: &[T]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid(format!("{name} grid is empty")));
    }
    if let Some(i) = grid
        .windows(2)
        .position(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less))
    {
        return Err(Error::InvalidGrid(format!(
            "{name} grid must be strictly ascending: {:?} then {:?}",
            grid[i],
            grid[i + 1]
        )));
    }
    Ok(())
}
