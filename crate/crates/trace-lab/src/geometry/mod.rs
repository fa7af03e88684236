//! Pixel-grid representation of planar sets of finite perimeter.
//!
//! A set is a boolean occupancy mask on a uniform square lattice with physical
//! spacing `h`. Two boundary metrics are supported: `L1` counts exposed unit
//! edges (exact integer arithmetic, used by every identity test and by the
//! exhaustive oracles) and `Crofton16` weights crossings over a 16-neighborhood
//! by Cauchy-Crofton angle quotas (used whenever a value is compared against
//! Euclidean geometry). Cells outside the grid are always empty, so the grid
//! bounding box behaves like a hard wall of background.

mod algebra;
pub mod pbm;

pub use algebra::{set_algebra, EdgeClassification, SetAlgebra};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("mask has {got} entries, expected {expected} ({width}x{height})")]
    MaskSize {
        got: usize,
        expected: usize,
        width: usize,
        height: usize,
    },
    #[error("spacing must be positive, got {0}")]
    InvalidSpacing(f64),
    #[error("grids have different dimensions: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("subset mask has cells outside the parent domain")]
    NotASubset,
    #[error("query radius {radius} is below the 2h resolution floor (h = {spacing})")]
    RadiusBelowResolution { radius: f64, spacing: f64 },
}

/// Boundary-length metric for masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// 4-neighbor exposed-edge count times h. Exact: every measure is an
    /// integer number of edges.
    L1,
    /// 16-neighborhood Cauchy-Crofton estimate of Euclidean length.
    Crofton16,
}

/// The eight undirected crossing directions of the 16-neighborhood.
pub const CROFTON_DIRS: [(i64, i64); 8] = [
    (1, 0),
    (0, 1),
    (1, 1),
    (1, -1),
    (2, 1),
    (1, 2),
    (2, -1),
    (1, -2),
];

/// Per-direction crossing weights: half the angular Voronoi quota of the
/// direction divided by the lattice line spacing sqrt(p^2+q^2). Summed against
/// transition counts this discretizes (1/2) * integral of n(theta, rho).
pub fn crofton_weights() -> [f64; 8] {
    let mut angles: Vec<f64> = CROFTON_DIRS
        .iter()
        .map(|&(p, q)| (q as f64).atan2(p as f64).rem_euclid(std::f64::consts::PI))
        .collect();
    let order = {
        let mut idx: Vec<usize> = (0..8).collect();
        idx.sort_by(|&a, &b| angles[a].partial_cmp(&angles[b]).unwrap());
        idx
    };
    let sorted: Vec<f64> = order.iter().map(|&i| angles[i]).collect();
    let mut w = [0.0f64; 8];
    for (rank, &i) in order.iter().enumerate() {
        let prev = if rank == 0 {
            sorted[7] - std::f64::consts::PI
        } else {
            sorted[rank - 1]
        };
        let next = if rank == 7 {
            sorted[0] + std::f64::consts::PI
        } else {
            sorted[rank + 1]
        };
        let quota = 0.5 * (next - prev);
        let (p, q) = CROFTON_DIRS[i];
        w[i] = quota / (2.0 * ((p * p + q * q) as f64).sqrt());
    }
    angles.clear();
    w
}

/// Axis-aligned cell-index window. An edge or crossing belongs to the window
/// iff both incident cells (ghost cells included, addressed by their would-be
/// indices) lie inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub x0: i64,
    pub y0: i64,
    /// exclusive
    pub x1: i64,
    /// exclusive
    pub y1: i64,
}

impl Window {
    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= self.x0 && x < self.x1 && y >= self.y0 && y < self.y1
    }
}

/// Binary occupancy mask on a uniform lattice with physical spacing.
#[derive(Debug, Clone)]
pub struct GridDomain {
    width: usize,
    height: usize,
    spacing: f64,
    mask: Vec<bool>,
    metric: Metric,
}

/// A competitor subset of a [`GridDomain`]; construction enforces cellwise
/// containment in the parent mask.
#[derive(Debug, Clone)]
pub struct GridSubset {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl GridDomain {
    pub fn new(
        width: usize,
        height: usize,
        spacing: f64,
        mask: Vec<bool>,
        metric: Metric,
    ) -> Result<Self, GeometryError> {
        if mask.len() != width * height {
            return Err(GeometryError::MaskSize {
                got: mask.len(),
                expected: width * height,
                width,
                height,
            });
        }
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(GeometryError::InvalidSpacing(spacing));
        }
        Ok(GridDomain {
            width,
            height,
            spacing,
            mask,
            metric,
        })
    }

    /// Rasterize a physical-plane membership predicate. Cell (i, j) belongs to
    /// the set iff its center `origin + ((i+0.5)h, (j+0.5)h)` does.
    pub fn rasterize(
        width: usize,
        height: usize,
        spacing: f64,
        origin: (f64, f64),
        metric: Metric,
        f: impl Fn(f64, f64) -> bool,
    ) -> Result<Self, GeometryError> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(GeometryError::InvalidSpacing(spacing));
        }
        let mut mask = vec![false; width * height];
        for j in 0..height {
            let y = origin.1 + (j as f64 + 0.5) * spacing;
            for i in 0..width {
                let x = origin.0 + (i as f64 + 0.5) * spacing;
                mask[j * width + i] = f(x, y);
            }
        }
        GridDomain::new(width, height, spacing, mask, metric)
    }

    /// Unit disk on a grid with `resolution` cells per unit length (h = 1/N)
    /// and a 4-cell empty pad ring, centered so that the column reflection
    /// x -> -x is an exact mask symmetry.
    pub fn rasterize_unit_disk(resolution: usize, metric: Metric) -> Result<Self, GeometryError> {
        let h = 1.0 / resolution as f64;
        let n = 2 * resolution + 8;
        let half = n as f64 * h / 2.0;
        GridDomain::rasterize(n, n, h, (-half, -half), metric, |x, y| x * x + y * y < 1.0)
    }

    pub fn width(&self) -> usize {
        self.width
    }
    pub fn height(&self) -> usize {
        self.height
    }
    pub fn spacing(&self) -> f64 {
        self.spacing
    }
    pub fn metric(&self) -> Metric {
        self.metric
    }
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
    pub fn cell(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            false
        } else {
            self.mask[y as usize * self.width + x as usize]
        }
    }
    /// Physical coordinates of the center of cell (i, j) relative to the grid
    /// corner at the origin used by `rasterize`; plain index arithmetic here.
    pub fn cell_count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn with_metric(&self, metric: Metric) -> Self {
        let mut d = self.clone();
        d.metric = metric;
        d
    }

    /// Build a subset after checking cellwise containment.
    pub fn subset(&self, mask: Vec<bool>) -> Result<GridSubset, GeometryError> {
        if mask.len() != self.mask.len() {
            return Err(GeometryError::MaskSize {
                got: mask.len(),
                expected: self.mask.len(),
                width: self.width,
                height: self.height,
            });
        }
        if mask.iter().zip(&self.mask).any(|(&f, &e)| f && !e) {
            return Err(GeometryError::NotASubset);
        }
        Ok(GridSubset {
            width: self.width,
            height: self.height,
            mask,
        })
    }

    /// Exact area h^2 * popcount.
    pub fn area(&self) -> f64 {
        self.spacing * self.spacing * self.cell_count() as f64
    }

    /// Perimeter of the domain mask in the active metric.
    pub fn perimeter(&self) -> f64 {
        perimeter_of(&self.mask, self.width, self.height, self.spacing, self.metric, None)
    }

    /// Relative perimeter restricted to a cell-index window.
    pub fn perimeter_in(&self, window: Window) -> f64 {
        perimeter_of(
            &self.mask,
            self.width,
            self.height,
            self.spacing,
            self.metric,
            Some(window),
        )
    }

    /// |D ∩ B(center, radius)| / |B(center, radius)| by cell-center inclusion.
    /// `center` is in the physical frame of `rasterize` (origin at the grid
    /// corner passed there); callers that built the grid themselves know it.
    pub fn density_ratio(
        &self,
        origin: (f64, f64),
        center: (f64, f64),
        radius: f64,
    ) -> Result<f64, GeometryError> {
        if radius < 2.0 * self.spacing {
            return Err(GeometryError::RadiusBelowResolution {
                radius,
                spacing: self.spacing,
            });
        }
        let h = self.spacing;
        let r2 = radius * radius;
        // only sweep the bounding box of the ball
        let i0 = (((center.0 - radius - origin.0) / h).floor() as i64).max(0);
        let i1 = (((center.0 + radius - origin.0) / h).ceil() as i64).min(self.width as i64);
        let j0 = (((center.1 - radius - origin.1) / h).floor() as i64).max(0);
        let j1 = (((center.1 + radius - origin.1) / h).ceil() as i64).min(self.height as i64);
        let mut hits = 0u64;
        for j in j0..j1 {
            let y = origin.1 + (j as f64 + 0.5) * h - center.1;
            for i in i0..i1 {
                let x = origin.0 + (i as f64 + 0.5) * h - center.0;
                if x * x + y * y < r2 && self.mask[j as usize * self.width + i as usize] {
                    hits += 1;
                }
            }
        }
        Ok(hits as f64 * h * h / (std::f64::consts::PI * r2))
    }
}

impl GridSubset {
    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
    pub fn width(&self) -> usize {
        self.width
    }
    pub fn height(&self) -> usize {
        self.height
    }
    pub fn cell(&self, x: i64, y: i64) -> bool {
        if x < 0 || y < 0 || x >= self.width as i64 || y >= self.height as i64 {
            false
        } else {
            self.mask[y as usize * self.width + x as usize]
        }
    }
    pub fn cell_count(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }
}

/// Perimeter of an arbitrary mask slice under either metric.
pub fn perimeter_of(
    mask: &[bool],
    width: usize,
    height: usize,
    spacing: f64,
    metric: Metric,
    window: Option<Window>,
) -> f64 {
    match metric {
        Metric::L1 => {
            l1_boundary_edges(mask, width, height, window) as f64 * spacing
        }
        Metric::Crofton16 => {
            let w = crofton_weights();
            let mut total = 0.0;
            for (k, &(p, q)) in CROFTON_DIRS.iter().enumerate() {
                total += w[k] * crossings(mask, width, height, p, q, window) as f64;
            }
            total * spacing
        }
    }
}

/// Number of exposed 4-neighbor edges (window-restricted), exact.
pub fn l1_boundary_edges(
    mask: &[bool],
    width: usize,
    height: usize,
    window: Option<Window>,
) -> u64 {
    crossings(mask, width, height, 1, 0, window) + crossings(mask, width, height, 0, 1, window)
}

/// Count of unordered cell pairs {a, a+(p,q)} whose mask values differ; ghost
/// cells outside the grid count as empty. A pair is inside a window iff both
/// incident cell indices are.
pub fn crossings(
    mask: &[bool],
    width: usize,
    height: usize,
    p: i64,
    q: i64,
    window: Option<Window>,
) -> u64 {
    let at = |x: i64, y: i64| -> bool {
        if x < 0 || y < 0 || x >= width as i64 || y >= height as i64 {
            false
        } else {
            mask[y as usize * width + x as usize]
        }
    };
    let in_win = |x: i64, y: i64| -> bool { window.map_or(true, |w| w.contains(x, y)) };
    let mut count = 0u64;
    // sweep every pair once: for each lattice point a (including a one-ring of
    // ghosts on the negative side so pairs entering the grid are seen exactly
    // once), compare with a+(p,q)
    let x_lo = -p.max(0) - 2;
    let y_lo = -q.abs() - 2;
    for y in y_lo..height as i64 + 2 {
        for x in x_lo..width as i64 + 2 {
            let a = at(x, y);
            let b = at(x + p, y + q);
            if a != b && in_win(x, y) && in_win(x + p, y + q) {
                count += 1;
            }
        }
    }
    count
}

/// Interface measure H(∂*E ∩ ∂*F) for F ⊆ E: the shared boundary crossings
/// (necessarily with equal outward normal).
pub fn interface_measure(domain: &GridDomain, subset: &GridSubset) -> Result<f64, GeometryError> {
    if domain.width != subset.width || domain.height != subset.height {
        return Err(GeometryError::DimensionMismatch(
            domain.width,
            domain.height,
            subset.width,
            subset.height,
        ));
    }
    Ok(interface_edges_weighted(domain, subset.mask()) * domain.spacing)
}

/// Weighted count of crossings (a in F, b outside E); multiply by h for length.
pub(crate) fn interface_edges_weighted(domain: &GridDomain, f_mask: &[bool]) -> f64 {
    let w = domain.width as i64;
    let h = domain.height as i64;
    let fat = |x: i64, y: i64| -> bool {
        if x < 0 || y < 0 || x >= w || y >= h {
            false
        } else {
            f_mask[y as usize * domain.width + x as usize]
        }
    };
    match domain.metric {
        Metric::L1 => {
            let mut count = 0u64;
            for y in 0..h {
                for x in 0..w {
                    if !fat(x, y) {
                        continue;
                    }
                    for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                        if !domain.cell(x + dx, y + dy) {
                            count += 1;
                        }
                    }
                }
            }
            count as f64
        }
        Metric::Crofton16 => {
            let wts = crofton_weights();
            let mut total = 0.0;
            for y in 0..h {
                for x in 0..w {
                    if !fat(x, y) {
                        continue;
                    }
                    for (k, &(p, q)) in CROFTON_DIRS.iter().enumerate() {
                        if !domain.cell(x + p, y + q) {
                            total += wts[k];
                        }
                        if !domain.cell(x - p, y - q) {
                            total += wts[k];
                        }
                    }
                }
            }
            total
        }
    }
}

/// Perimeter of the symmetric difference AΔB in the active metric of `a`.
pub fn symmetric_difference_perimeter(a: &GridDomain, b: &GridDomain) -> Result<f64, GeometryError> {
    if a.width != b.width || a.height != b.height {
        return Err(GeometryError::DimensionMismatch(
            a.width, a.height, b.width, b.height,
        ));
    }
    let xor: Vec<bool> = a
        .mask
        .iter()
        .zip(&b.mask)
        .map(|(&x, &y)| x != y)
        .collect();
    Ok(perimeter_of(&xor, a.width, a.height, a.spacing, a.metric, None))
}

/// 4-connectivity check on the occupied cells.
pub fn is_connected(mask: &[bool], width: usize, height: usize) -> bool {
    let total = mask.iter().filter(|&&b| b).count();
    if total == 0 {
        return false;
    }
    let start = mask.iter().position(|&b| b).unwrap();
    let mut seen = vec![false; mask.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut reached = 0usize;
    while let Some(i) = stack.pop() {
        reached += 1;
        let x = (i % width) as i64;
        let y = (i / width) as i64;
        for (dx, dy) in [(1i64, 0i64), (-1, 0), (0, 1), (0, -1)] {
            let (nx, ny) = (x + dx, y + dy);
            if nx < 0 || ny < 0 || nx >= width as i64 || ny >= height as i64 {
                continue;
            }
            let j = ny as usize * width + nx as usize;
            if mask[j] && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    reached == total
}
