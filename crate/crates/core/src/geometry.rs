//! Points, lines and parallel classes of the Euclidean geometry EG(m,q).
//!
//! Orderings are canonical and deterministic: points by their base-q index
//! (most significant coordinate first), directions by the index of their
//! normalized vector, lines by (class id, base index). These orderings define
//! matrix row and column indices everywhere downstream (ordering_version = 1).

use crate::field::{FieldElement, FieldError, FieldSpec};
use thiserror::Error;

/// Ordering convention version exported with every matrix.
pub const ORDERING_VERSION: u32 = 1;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum GeometryError {
    #[error("DimensionTooSmall: m must be >= 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("CoincidentPoints: two distinct points are required")]
    CoincidentPoints,
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<FieldElement>,
    pub index: usize,
}

/// A line of EG(m,q) in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub class_id: usize,
    /// Normalized so the first nonzero coordinate is 1.
    pub direction: Vec<FieldElement>,
    /// The q point indices on the line, ascending.
    pub points: Vec<usize>,
}

impl Line {
    /// The point on the line with the smallest index.
    pub fn base(&self) -> usize {
        self.points[0]
    }

    pub fn contains(&self, point_index: usize) -> bool {
        self.points.binary_search(&point_index).is_ok()
    }

    pub fn through_origin(&self) -> bool {
        self.base() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass {
    pub class_id: usize,
    pub direction: Vec<FieldElement>,
    /// q^{m-1} pairwise disjoint lines, ordered by base index.
    pub lines: Vec<Line>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometryStats {
    pub n_points: usize,
    pub n_lines: usize,
    pub n_classes: usize,
    pub lines_per_point: usize,
    pub points_per_line: usize,
    pub parallels_per_line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometrySpec {
    m: usize,
    field: FieldSpec,
}

impl GeometrySpec {
    pub fn new(m: usize, field: FieldSpec) -> Result<GeometrySpec, GeometryError> {
        if m < 2 {
            return Err(GeometryError::DimensionTooSmall(m));
        }
        Ok(GeometrySpec { m, field })
    }

    /// Convenience constructor from a prime-power order.
    pub fn for_order(m: usize, q: u32) -> Result<GeometrySpec, GeometryError> {
        GeometrySpec::new(m, FieldSpec::of_order(q)?)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.field.q() as usize
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n_points(&self) -> usize {
        self.q().pow(self.m as u32)
    }

    pub fn n_classes(&self) -> usize {
        (self.n_points() - 1) / (self.q() - 1)
    }

    pub fn n_lines(&self) -> usize {
        self.q().pow(self.m as u32 - 1) * self.n_classes()
    }

    pub fn stats(&self) -> GeometryStats {
        GeometryStats {
            n_points: self.n_points(),
            n_lines: self.n_lines(),
            n_classes: self.n_classes(),
            lines_per_point: self.n_classes(),
            points_per_line: self.q(),
            parallels_per_line: self.q().pow(self.m as u32 - 1) - 1,
        }
    }

    /// index = sum code(coords[i]) * q^{m-1-i}.
    pub fn point_index(&self, coords: &[FieldElement]) -> usize {
        let q = self.q();
        coords
            .iter()
            .fold(0usize, |acc, c| acc * q + c.code() as usize)
    }

    pub fn point(&self, index: usize) -> Point {
        let q = self.q();
        debug_assert!(index < self.n_points());
        let mut coords = vec![FieldElement::ZERO; self.m];
        let mut rest = index;
        for c in coords.iter_mut().rev() {
            *c = FieldElement((rest % q) as u32);
            rest /= q;
        }
        Point { coords, index }
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.n_points()).map(|i| self.point(i)).collect()
    }

    fn add_vec(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect()
    }

    fn scale_vec(&self, c: FieldElement, a: &[FieldElement]) -> Vec<FieldElement> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    /// Normalize a nonzero vector so its first nonzero coordinate is 1.
    fn normalize(&self, v: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let first = v.iter().find(|c| !c.is_zero())?;
        let inv = self.field.inv(*first).expect("nonzero element");
        Some(self.scale_vec(inv, v))
    }

    /// Normalized directions, ascending by point index of the vector.
    pub fn directions(&self) -> Vec<Vec<FieldElement>> {
        (1..self.n_points())
            .map(|i| self.point(i).coords)
            .filter(|v| v.iter().find(|c| !c.is_zero()).map(|c| c.code()) == Some(1))
            .collect()
    }

    fn direction_index(&self, normalized: &[FieldElement]) -> usize {
        let target = self.point_index(normalized);
        (1..target)
            .filter(|&i| {
                let v = self.point(i).coords;
                v.iter().find(|c| !c.is_zero()).map(|c| c.code()) == Some(1)
            })
            .count()
    }

    /// The canonical line with the given direction through the given point.
    fn line_from(&self, class_id: usize, direction: &[FieldElement], through: &Point) -> Line {
        let mut points: Vec<usize> = self
            .field
            .elements()
            .map(|c| {
                let p = self.add_vec(&through.coords, &self.scale_vec(c, direction));
                self.point_index(&p)
            })
            .collect();
        points.sort_unstable();
        points.dedup();
        debug_assert_eq!(points.len(), self.q());
        Line {
            class_id,
            direction: direction.to_vec(),
            points,
        }
    }

    pub fn parallel_classes(&self) -> Vec<ParallelClass> {
        self.directions()
            .into_iter()
            .enumerate()
            .map(|(class_id, direction)| {
                let mut covered = vec![false; self.n_points()];
                let mut lines = Vec::with_capacity(self.n_points() / self.q());
                for idx in 0..self.n_points() {
                    if covered[idx] {
                        continue;
                    }
                    let line = self.line_from(class_id, &direction, &self.point(idx));
                    for &p in &line.points {
                        covered[p] = true;
                    }
                    lines.push(line);
                }
                ParallelClass {
                    class_id,
                    direction,
                    lines,
                }
            })
            .collect()
    }

    /// All lines, ordered by (class id, base index).
    pub fn lines(&self) -> Vec<Line> {
        self.parallel_classes()
            .into_iter()
            .flat_map(|c| c.lines)
            .collect()
    }

    pub fn line_through(&self, a: &Point, b: &Point) -> Result<Line, GeometryError> {
        let diff: Vec<FieldElement> = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| self.field.sub(y, x))
            .collect();
        let direction = self
            .normalize(&diff)
            .ok_or(GeometryError::CoincidentPoints)?;
        let class_id = self.direction_index(&direction);
        Ok(self.line_from(class_id, &direction, a))
    }

    pub fn lines_through_point(&self, a: &Point) -> Vec<Line> {
        self.lines()
            .into_iter()
            .filter(|l| l.contains(a.index))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eg(m: usize, q: u32) -> GeometrySpec {
        GeometrySpec::for_order(m, q).unwrap()
    }

    #[test]
    fn eg22_points_match_example() {
        let g = eg(2, 2);
        let pts: Vec<Vec<u32>> = g
            .points()
            .iter()
            .map(|p| p.coords.iter().map(|c| c.code()).collect())
            .collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn point_counts() {
        assert_eq!(eg(2, 3).points().len(), 9);
        let g = eg(3, 2);
        let pts = g.points();
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[0].index, 0);
        assert!(pts[0].coords.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn eg22_lines_match_example() {
        let g = eg(2, 2);
        let lines = g.lines();
        // class-major order: l1, l4, l2, l5, l3, l6 in the standard labeling
        let sets: Vec<Vec<usize>> = lines.iter().map(|l| l.points.clone()).collect();
        assert_eq!(
            sets,
            vec![
                vec![0, 1],
                vec![2, 3],
                vec![0, 2],
                vec![1, 3],
                vec![0, 3],
                vec![1, 2]
            ]
        );
    }

    #[test]
    fn line_counts() {
        assert_eq!(eg(2, 3).lines().len(), 12);
        assert_eq!(eg(3, 2).lines().len(), 28);
    }

    #[test]
    fn line_through_examples() {
        let g = eg(2, 2);
        let l = g.line_through(&g.point(1), &g.point(3)).unwrap();
        assert_eq!(l.points, vec![1, 3]);
        let l = g.line_through(&g.point(0), &g.point(3)).unwrap();
        assert_eq!(l.points, vec![0, 3]);
        assert_eq!(
            g.line_through(&g.point(2), &g.point(2)).unwrap_err(),
            GeometryError::CoincidentPoints
        );

        // brute-force oracle on EG(2,3): the unique line containing both points
        let g = eg(2, 3);
        let (a, b) = (g.point(1), g.point(2));
        let expected: Vec<Line> = g
            .lines()
            .into_iter()
            .filter(|l| l.contains(a.index) && l.contains(b.index))
            .collect();
        assert_eq!(expected.len(), 1);
        let got = g.line_through(&a, &b).unwrap();
        assert_eq!(got, expected[0]);
        assert!(got.through_origin());
        assert_eq!(
            got.direction.iter().map(|c| c.code()).collect::<Vec<_>>(),
            vec![0, 1]
        );
    }

    #[test]
    fn lines_through_point_counts() {
        let g = eg(2, 2);
        for p in g.points() {
            assert_eq!(g.lines_through_point(&p).len(), 3);
        }
        let g = eg(2, 3);
        let through_origin = g.lines_through_point(&g.point(0));
        assert_eq!(through_origin.len(), 4);
        assert!(through_origin.iter().all(|l| l.base() == 0));
        let g = eg(3, 2);
        assert_eq!(g.lines_through_point(&g.point(5)).len(), 7);
    }

    #[test]
    fn eg22_parallel_classes_match_example() {
        let g = eg(2, 2);
        let classes = g.parallel_classes();
        assert_eq!(classes.len(), 3);
        let grouped: Vec<Vec<Vec<usize>>> = classes
            .iter()
            .map(|c| c.lines.iter().map(|l| l.points.clone()).collect())
            .collect();
        assert_eq!(
            grouped,
            vec![
                vec![vec![0, 1], vec![2, 3]],
                vec![vec![0, 2], vec![1, 3]],
                vec![vec![0, 3], vec![1, 2]],
            ]
        );
    }

    #[test]
    fn parallel_class_partition() {
        for (m, q) in [(2usize, 3u32), (3, 2), (2, 4)] {
            let g = eg(m, q);
            let classes = g.parallel_classes();
            assert_eq!(classes.len(), g.n_classes());
            for c in &classes {
                assert_eq!(c.lines.len(), g.n_points() / g.q());
                let mut seen = vec![false; g.n_points()];
                for l in &c.lines {
                    for &p in &l.points {
                        assert!(!seen[p], "classes must partition the points");
                        seen[p] = true;
                    }
                }
                assert!(seen.iter().all(|&s| s));
            }
        }
    }

    #[test]
    fn two_lines_meet_in_at_most_one_point() {
        for (m, q) in [(2usize, 2u32), (2, 3), (2, 4), (3, 2)] {
            let lines = eg(m, q).lines();
            for (i, a) in lines.iter().enumerate() {
                for b in &lines[i + 1..] {
                    let common = a.points.iter().filter(|p| b.contains(**p)).count();
                    assert!(common <= 1);
                }
            }
        }
    }

    #[test]
    fn two_points_lie_on_exactly_one_line() {
        for (m, q) in [(2usize, 3u32), (3, 2)] {
            let g = eg(m, q);
            let lines = g.lines();
            for i in 0..g.n_points() {
                for j in i + 1..g.n_points() {
                    let count = lines
                        .iter()
                        .filter(|l| l.contains(i) && l.contains(j))
                        .count();
                    assert_eq!(count, 1);
                }
            }
        }
    }

    #[test]
    fn canonicalization_is_idempotent() {
        for (m, q) in [(2usize, 3u32), (3, 2), (2, 4)] {
            let g = eg(m, q);
            for line in g.lines() {
                for &p in &line.points {
                    let again = g.line_from(line.class_id, &line.direction, &g.point(p));
                    assert_eq!(again, line);
                }
            }
        }
    }
}
