//! Lattice topology and agent occupancy.
//!
//! Coordinates are `(x, y)` with `0 <= x < width`, `0 <= y < height`, stored
//! row-major. Rectangular lattices use the four von Neumann neighbours.
//! Triangular lattices add the two diagonals `(1,-1)` and `(-1,1)`, giving
//! six neighbours in axial coordinates. Hexagonal (honeycomb) lattices have
//! three neighbours: `(±1,0)` plus `(0,1)` on sites with even `x+y` and
//! `(0,-1)` on odd ones. A periodic honeycomb with an odd side breaks this
//! parity at the seam, so some links there are one-way.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::agent::AgentId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    Rectangular,
    Triangular,
    Hexagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryRule {
    /// Agents stepping off the arena are removed.
    Absorbing,
    /// Coordinates wrap around the lattice edges.
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArenaShape {
    Rectangular,
    /// Sites within axial distance `(min(w, h) - 1) / 2` of the lattice
    /// centre.
    Hexagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LayerSpec {
    pub lattice: LatticeKind,
    pub width: usize,
    pub height: usize,
    pub arena: ArenaShape,
    pub boundary: BoundaryRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub const fn new(x: i64, y: i64) -> Coord {
        Coord { x, y }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Where one neighbour step leads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Site(Coord),
    /// Off the arena under an absorbing boundary.
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbor {
    /// Lattice step before wrapping.
    pub delta: (i64, i64),
    pub target: Target,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayerError {
    #[error("lattice dimensions must be positive, got {width}x{height}")]
    Empty { width: usize, height: usize },
    #[error("{0} is outside the arena")]
    OutsideArena(Coord),
    #[error("{site} is already occupied by agent {by}")]
    Occupied { site: Coord, by: AgentId },
    #[error("agent {0} is not on the layer")]
    NotPlaced(AgentId),
}

const VON_NEUMANN: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const TRIANGULAR: [(i64, i64); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];
const HONEYCOMB_EVEN: [(i64, i64); 3] = [(1, 0), (-1, 0), (0, 1)];
const HONEYCOMB_ODD: [(i64, i64); 3] = [(1, 0), (-1, 0), (0, -1)];

#[derive(Debug, Clone)]
pub struct Layer {
    spec: LayerSpec,
    in_arena: Vec<bool>,
    cells: Vec<Option<AgentId>>,
    positions: BTreeMap<AgentId, Coord>,
}

impl Layer {
    pub fn new(spec: LayerSpec) -> Result<Layer, LayerError> {
        if spec.width == 0 || spec.height == 0 {
            return Err(LayerError::Empty {
                width: spec.width,
                height: spec.height,
            });
        }
        let size = spec.width * spec.height;
        let mut layer = Layer {
            spec,
            in_arena: vec![true; size],
            cells: vec![None; size],
            positions: BTreeMap::new(),
        };
        if spec.arena == ArenaShape::Hexagonal {
            let (w, h) = (spec.width as i64, spec.height as i64);
            let radius = (w.min(h) - 1) / 2;
            let centre = Coord::new((w - 1) / 2, (h - 1) / 2);
            for y in 0..h {
                for x in 0..w {
                    let (dq, dr) = (x - centre.x, y - centre.y);
                    let distance = (dq.abs() + dr.abs() + (dq + dr).abs()) / 2;
                    let i = layer.index(Coord::new(x, y));
                    layer.in_arena[i] = distance <= radius;
                }
            }
        }
        Ok(layer)
    }

    pub fn spec(&self) -> &LayerSpec {
        &self.spec
    }

    pub fn width(&self) -> usize {
        self.spec.width
    }

    pub fn height(&self) -> usize {
        self.spec.height
    }

    fn index(&self, c: Coord) -> usize {
        c.y as usize * self.spec.width + c.x as usize
    }

    fn on_lattice(&self, c: Coord) -> bool {
        (0..self.spec.width as i64).contains(&c.x) && (0..self.spec.height as i64).contains(&c.y)
    }

    pub fn in_arena(&self, c: Coord) -> bool {
        self.on_lattice(c) && self.in_arena[self.index(c)]
    }

    pub fn arena_size(&self) -> usize {
        self.in_arena.iter().filter(|&&a| a).count()
    }

    pub fn offsets(&self, c: Coord) -> &'static [(i64, i64)] {
        match self.spec.lattice {
            LatticeKind::Rectangular => &VON_NEUMANN,
            LatticeKind::Triangular => &TRIANGULAR,
            LatticeKind::Hexagonal if (c.x + c.y).rem_euclid(2) == 0 => &HONEYCOMB_EVEN,
            LatticeKind::Hexagonal => &HONEYCOMB_ODD,
        }
    }

    /// Neighbour steps from `c` after applying the boundary rule. Under a
    /// periodic boundary a wrapped site outside the arena is dropped.
    pub fn neighbors(&self, c: Coord) -> Vec<Neighbor> {
        let (w, h) = (self.spec.width as i64, self.spec.height as i64);
        self.offsets(c)
            .iter()
            .filter_map(|&delta| {
                let raw = Coord::new(c.x + delta.0, c.y + delta.1);
                let target = match self.spec.boundary {
                    BoundaryRule::Periodic => {
                        let wrapped = Coord::new(raw.x.rem_euclid(w), raw.y.rem_euclid(h));
                        if !self.in_arena(wrapped) {
                            return None;
                        }
                        Target::Site(wrapped)
                    }
                    BoundaryRule::Absorbing if self.in_arena(raw) => Target::Site(raw),
                    BoundaryRule::Absorbing => Target::Outside,
                };
                Some(Neighbor { delta, target })
            })
            .collect()
    }

    pub fn occupant(&self, c: Coord) -> Option<AgentId> {
        if self.on_lattice(c) {
            self.cells[self.index(c)]
        } else {
            None
        }
    }

    pub fn position(&self, agent: AgentId) -> Option<Coord> {
        self.positions.get(&agent).copied()
    }

    pub fn occupied_count(&self) -> usize {
        self.positions.len()
    }

    pub fn agents(&self) -> impl Iterator<Item = (AgentId, Coord)> + '_ {
        self.positions.iter().map(|(a, c)| (*a, *c))
    }

    /// Vacant arena sites in row-major order.
    pub fn vacant_sites(&self) -> Vec<Coord> {
        let w = self.spec.width;
        (0..self.cells.len())
            .filter(|&i| self.in_arena[i] && self.cells[i].is_none())
            .map(|i| Coord::new((i % w) as i64, (i / w) as i64))
            .collect()
    }

    pub fn place(&mut self, agent: AgentId, c: Coord) -> Result<(), LayerError> {
        if !self.in_arena(c) {
            return Err(LayerError::OutsideArena(c));
        }
        let i = self.index(c);
        if let Some(by) = self.cells[i] {
            return Err(LayerError::Occupied { site: c, by });
        }
        if let Some(old) = self.positions.insert(agent, c) {
            let j = self.index(old);
            self.cells[j] = None;
        }
        self.cells[i] = Some(agent);
        Ok(())
    }

    pub fn remove(&mut self, agent: AgentId) -> Result<Coord, LayerError> {
        let c = self.positions.remove(&agent).ok_or(LayerError::NotPlaced(agent))?;
        let i = self.index(c);
        self.cells[i] = None;
        Ok(c)
    }

    /// Agents on sites adjacent to `c`, in neighbour order.
    pub fn adjacent_agents(&self, c: Coord) -> Vec<AgentId> {
        self.neighbors(c)
            .into_iter()
            .filter_map(|n| match n.target {
                Target::Site(s) => self.occupant(s),
                Target::Outside => None,
            })
            .collect()
    }

    /// Row-major raster with `class_of(agent)` on occupied sites and 0
    /// elsewhere.
    pub fn raster(&self, mut class_of: impl FnMut(AgentId) -> u8) -> Vec<u8> {
        self.cells.iter().map(|c| c.map_or(0, &mut class_of)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(lattice: LatticeKind, arena: ArenaShape, boundary: BoundaryRule, w: usize, h: usize) -> Layer {
        Layer::new(LayerSpec {
            lattice,
            width: w,
            height: h,
            arena,
            boundary,
        })
        .unwrap()
    }

    fn rect(boundary: BoundaryRule) -> Layer {
        layer(LatticeKind::Rectangular, ArenaShape::Rectangular, boundary, 32, 32)
    }

    #[test]
    fn periodic_wraps_left_edge() {
        let l = rect(BoundaryRule::Periodic);
        let n = l.neighbors(Coord::new(0, 5));
        assert!(n.contains(&Neighbor {
            delta: (-1, 0),
            target: Target::Site(Coord::new(31, 5)),
        }));
        assert_eq!(n.len(), 4);
    }

    #[test]
    fn absorbing_corner_has_two_exits() {
        let l = rect(BoundaryRule::Absorbing);
        let outside = l
            .neighbors(Coord::new(0, 0))
            .iter()
            .filter(|n| n.target == Target::Outside)
            .count();
        assert_eq!(outside, 2);
    }

    #[test]
    fn hexagonal_arena_is_symmetric_and_bounded() {
        let l = layer(LatticeKind::Triangular, ArenaShape::Hexagonal, BoundaryRule::Absorbing, 7, 7);
        // Radius 3 hexagon: 3*3*(3+1)+1 sites.
        assert_eq!(l.arena_size(), 37);
        assert!(l.in_arena(Coord::new(3, 3)));
        assert!(!l.in_arena(Coord::new(0, 0)));
        assert!(l.in_arena(Coord::new(6, 0)));
        assert!(l.vacant_sites().iter().all(|c| l.in_arena(*c)));
    }

    #[test]
    fn honeycomb_neighbours_are_symmetric() {
        let l = layer(LatticeKind::Hexagonal, ArenaShape::Rectangular, BoundaryRule::Absorbing, 6, 6);
        for site in l.vacant_sites() {
            let ns = l.neighbors(site);
            assert!(ns.len() <= 3);
            for n in ns {
                if let Target::Site(t) = n.target {
                    let back = l.neighbors(t);
                    assert!(back.iter().any(|b| b.target == Target::Site(site)), "{site} -> {t}");
                }
            }
        }
    }

    #[test]
    fn occupancy_is_a_bijection() {
        let mut l = rect(BoundaryRule::Absorbing);
        let a = AgentId(1);
        let b = AgentId(2);
        l.place(a, Coord::new(1, 1)).unwrap();
        assert!(matches!(l.place(b, Coord::new(1, 1)), Err(LayerError::Occupied { .. })));
        l.place(a, Coord::new(1, 2)).unwrap();
        assert_eq!(l.occupant(Coord::new(1, 1)), None);
        assert_eq!(l.position(a), Some(Coord::new(1, 2)));
        assert_eq!(l.remove(a).unwrap(), Coord::new(1, 2));
        assert_eq!(l.occupied_count(), 0);
        assert!(matches!(l.place(b, Coord::new(40, 0)), Err(LayerError::OutsideArena(_))));
    }

    #[test]
    fn raster_marks_occupied_cells() {
        let mut l = layer(LatticeKind::Rectangular, ArenaShape::Rectangular, BoundaryRule::Absorbing, 2, 2);
        l.place(AgentId(0), Coord::new(0, 0)).unwrap();
        assert_eq!(l.raster(|_| 1), vec![1, 0, 0, 0]);
    }

    #[test]
    fn zero_sized_layer_is_rejected() {
        let spec = LayerSpec {
            lattice: LatticeKind::Rectangular,
            width: 0,
            height: 3,
            arena: ArenaShape::Rectangular,
            boundary: BoundaryRule::Periodic,
        };
        assert!(Layer::new(spec).is_err());
    }
}
