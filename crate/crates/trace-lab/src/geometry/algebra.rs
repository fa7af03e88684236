//! Set algebra on masks with exact per-edge bookkeeping.
//!
//! Everything here is L1: edge counts are integers, the three relative-perimeter
//! identities for intersection, difference and union hold with zero residual
//! edge by edge, and re-running in any cell order returns identical numbers.

use super::{GeometryError, GridDomain, GridSubset, Window};

/// Classification of the boundary edges of a competitor F against a carrier E,
/// in length units. The four classes partition ∂F, so the counts sum to P(F).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeClassification {
    /// ∂F edges not on ∂E with both incident cells inside E.
    pub interior_only: f64,
    /// ∂F edges not on ∂E with both incident cells outside E.
    pub exterior_only: f64,
    /// shared edges with equal outward normal (the set {nu_E = nu_F})
    pub same_normal: f64,
    /// shared edges with opposite normals (the set {nu_E = -nu_F})
    pub opposite_normal: f64,
}

impl EdgeClassification {
    pub fn total(&self) -> f64 {
        self.interior_only + self.exterior_only + self.same_normal + self.opposite_normal
    }
}

/// Result of [`set_algebra`]: combined masks, the edge classification of F
/// against E, the five window-relative perimeters, and the integer residuals
/// of the three set-operation identities (always zero; kept as evidence).
#[derive(Debug, Clone)]
pub struct SetAlgebra {
    pub intersection: Vec<bool>,
    pub union: Vec<bool>,
    pub difference: Vec<bool>,
    pub classification: EdgeClassification,
    /// relative perimeters in the window: E, F, E∩F, E∪F, E∖F
    pub perimeter_e: f64,
    pub perimeter_f: f64,
    pub perimeter_intersection: f64,
    pub perimeter_union: f64,
    pub perimeter_difference: f64,
    /// identity residuals in integer edge units:
    /// [P(E∩F;G) - P(E;F1∩G) - P(F;E1∩G) - H(same∩G),
    ///  P(E∖F;G) - P(E;F0∩G) - P(F;E1∩G) - H(opp∩G),
    ///  P(E∪F;G) - P(E;F0∩G) - P(F;E0∩G) - H(same∩G)]
    pub residuals: [i64; 3],
}

/// Evaluate the three perimeter identities for masks `e`, `f` on the same grid
/// in exact integer edge arithmetic, restricted to `window` if given.
pub fn set_algebra(
    e: &GridDomain,
    f_mask: &[bool],
    window: Option<Window>,
) -> Result<SetAlgebra, GeometryError> {
    let (w, h) = (e.width(), e.height());
    if f_mask.len() != w * h {
        return Err(GeometryError::MaskSize {
            got: f_mask.len(),
            expected: w * h,
            width: w,
            height: h,
        });
    }
    let spacing = e.spacing();
    let fat = |x: i64, y: i64| -> bool {
        if x < 0 || y < 0 || x >= w as i64 || y >= h as i64 {
            false
        } else {
            f_mask[y as usize * w + x as usize]
        }
    };
    let in_win = |x: i64, y: i64| -> bool { window.map_or(true, |win| win.contains(x, y)) };

    // accumulators, integer edge units
    let mut p_e = 0i64;
    let mut p_f = 0i64;
    let mut p_int = 0i64;
    let mut p_uni = 0i64;
    let mut p_dif = 0i64;
    let mut p_e_in_f1 = 0i64;
    let mut p_e_in_f0 = 0i64;
    let mut p_f_in_e1 = 0i64;
    let mut p_f_in_e0 = 0i64;
    let mut h_same = 0i64;
    let mut h_opp = 0i64;
    // classification of ∂F (unwindowed): partition of P(F)
    let mut cls_interior = 0i64;
    let mut cls_exterior = 0i64;
    let mut cls_same = 0i64;
    let mut cls_opp = 0i64;

    // Each undirected edge between lattice cell a=(x,y) and b=a+dir is visited
    // once, with dir in {(1,0),(0,1)} and a ranging over a ghost-padded box.
    for dir in [(1i64, 0i64), (0i64, 1i64)] {
        for y in -1..=h as i64 {
            for x in -1..=w as i64 {
                let (bx, by) = (x + dir.0, y + dir.1);
                let ea = e.cell(x, y);
                let eb = e.cell(bx, by);
                let fa = fat(x, y);
                let fb = fat(bx, by);
                if !(ea || eb || fa || fb) {
                    continue;
                }
                let de = ea != eb;
                let df = fa != fb;
                if df {
                    // unwindowed classification of ∂F against E
                    if de {
                        if ea == fa {
                            cls_same += 1;
                        } else {
                            cls_opp += 1;
                        }
                    } else if ea && eb {
                        cls_interior += 1;
                    } else {
                        cls_exterior += 1;
                    }
                }
                if !(in_win(x, y) && in_win(bx, by)) {
                    continue;
                }
                if de {
                    p_e += 1;
                    if fa && fb {
                        p_e_in_f1 += 1;
                    }
                    if !fa && !fb {
                        p_e_in_f0 += 1;
                    }
                }
                if df {
                    p_f += 1;
                    if ea && eb {
                        p_f_in_e1 += 1;
                    }
                    if !ea && !eb {
                        p_f_in_e0 += 1;
                    }
                }
                if de && df {
                    if ea == fa {
                        h_same += 1;
                    } else {
                        h_opp += 1;
                    }
                }
                if (ea && fa) != (eb && fb) {
                    p_int += 1;
                }
                if (ea || fa) != (eb || fb) {
                    p_uni += 1;
                }
                if (ea && !fa) != (eb && !fb) {
                    p_dif += 1;
                }
            }
        }
    }

    let residuals = [
        p_int - p_e_in_f1 - p_f_in_e1 - h_same,
        p_dif - p_e_in_f0 - p_f_in_e1 - h_opp,
        p_uni - p_e_in_f0 - p_f_in_e0 - h_same,
    ];

    let emask = e.mask();
    let mut intersection = vec![false; w * h];
    let mut union = vec![false; w * h];
    let mut difference = vec![false; w * h];
    for i in 0..w * h {
        intersection[i] = emask[i] && f_mask[i];
        union[i] = emask[i] || f_mask[i];
        difference[i] = emask[i] && !f_mask[i];
    }

    Ok(SetAlgebra {
        intersection,
        union,
        difference,
        classification: EdgeClassification {
            interior_only: cls_interior as f64 * spacing,
            exterior_only: cls_exterior as f64 * spacing,
            same_normal: cls_same as f64 * spacing,
            opposite_normal: cls_opp as f64 * spacing,
        },
        perimeter_e: p_e as f64 * spacing,
        perimeter_f: p_f as f64 * spacing,
        perimeter_intersection: p_int as f64 * spacing,
        perimeter_union: p_uni as f64 * spacing,
        perimeter_difference: p_dif as f64 * spacing,
        residuals,
    })
}

/// Convenience: the classification of a subset's boundary against its parent.
pub fn classify_subset(
    e: &GridDomain,
    f: &GridSubset,
) -> Result<EdgeClassification, GeometryError> {
    if e.width() != f.width() || e.height() != f.height() {
        return Err(GeometryError::DimensionMismatch(
            e.width(),
            e.height(),
            f.width(),
            f.height(),
        ));
    }
    Ok(set_algebra(e, f.mask(), None)?.classification)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{perimeter_of, Metric};

    fn domain(w: usize, h: usize, cells: &[(usize, usize)]) -> GridDomain {
        let mut mask = vec![false; w * h];
        for &(x, y) in cells {
            mask[y * w + x] = true;
        }
        GridDomain::new(w, h, 1.0, mask, Metric::L1).unwrap()
    }

    #[test]
    fn disjoint_dominoes() {
        // E = left domino, F = right domino of a 2x2 square
        let e = domain(2, 2, &[(0, 0), (0, 1)]);
        let mut f = vec![false; 4];
        f[1] = true;
        f[3] = true;
        let r = set_algebra(&e, &f, None).unwrap();
        assert_eq!(r.perimeter_intersection, 0.0);
        assert_eq!(r.perimeter_union, 8.0);
        assert_eq!(r.residuals, [0, 0, 0]);
    }

    #[test]
    fn identical_sets_all_same_normal() {
        let e = domain(3, 2, &[(0, 0), (1, 0), (1, 1)]);
        let r = set_algebra(&e, e.mask(), None).unwrap();
        assert_eq!(r.perimeter_intersection, r.perimeter_e);
        assert_eq!(r.classification.same_normal, r.perimeter_f);
        assert_eq!(r.classification.interior_only, 0.0);
        assert_eq!(r.classification.opposite_normal, 0.0);
        assert_eq!(r.residuals, [0, 0, 0]);
    }

    #[test]
    fn classification_partitions_pf() {
        let e = domain(4, 4, &[(1, 1), (2, 1), (1, 2), (2, 2)]);
        // F overlaps E partially and pokes outside
        let mut f = vec![false; 16];
        for &(x, y) in &[(2usize, 1usize), (2, 2), (3, 1)] {
            f[y * 4 + x] = true;
        }
        let r = set_algebra(&e, &f, None).unwrap();
        let pf = perimeter_of(&f, 4, 4, 1.0, Metric::L1, None);
        assert_eq!(r.classification.total(), pf);
        assert_eq!(r.residuals, [0, 0, 0]);
    }

    #[test]
    fn windowed_identities_hold() {
        let e = domain(4, 4, &[(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (2, 2)]);
        let mut f = vec![false; 16];
        for &(x, y) in &[(1usize, 0usize), (1, 1), (1, 2), (0, 2)] {
            f[y * 4 + x] = true;
        }
        for win in [
            Window { x0: 0, y0: 0, x1: 2, y1: 2 },
            Window { x0: 1, y0: 1, x1: 4, y1: 4 },
            Window { x0: -1, y0: -1, x1: 5, y1: 5 },
        ] {
            let r = set_algebra(&e, &f, Some(win)).unwrap();
            assert_eq!(r.residuals, [0, 0, 0], "window {win:?}");
        }
    }

    #[test]
    fn exhaustive_2x2_pairs() {
        // all 16x16 mask pairs on a 2x2 grid, zero residuals
        for ebits in 0..16u32 {
            let emask: Vec<bool> = (0..4).map(|i| ebits >> i & 1 == 1).collect();
            let e = GridDomain::new(2, 2, 1.0, emask, Metric::L1).unwrap();
            for fbits in 0..16u32 {
                let f: Vec<bool> = (0..4).map(|i| fbits >> i & 1 == 1).collect();
                let r = set_algebra(&e, &f, None).unwrap();
                assert_eq!(r.residuals, [0, 0, 0], "e={ebits:04b} f={fbits:04b}");
            }
        }
    }
}
