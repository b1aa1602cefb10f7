use super::OutputError;
use crate::runtime::World;

/// Occupancy snapshot. `cells` is row-major; 0 is vacant and `k` is the
/// class index of the occupant.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub time: f64,
    pub width: usize,
    pub height: usize,
    pub cells: Vec<u8>,
    /// Number of agent classes the model can create.
    pub classes: u8,
}

impl Frame {
    pub fn occupied(&self) -> usize {
        self.cells.iter().filter(|&&c| c != 0).count()
    }

    pub fn cell(&self, x: usize, y: usize) -> u8 {
        self.cells[y * self.width + x]
    }

    /// Grey level per cell: 255 for occupied sites, or evenly spaced levels
    /// when the model has several agent classes.
    pub fn grey_levels(&self) -> Vec<u8> {
        let n = u32::from(self.classes.max(1));
        self.cells
            .iter()
            .map(|&k| match k {
                0 => 0,
                _ if n == 1 => 255,
                k => ((255 * u32::from(k) + n / 2) / n).min(255) as u8,
            })
            .collect()
    }
}

/// Receives frames as the run produces them.
pub trait FrameSink {
    fn accept(&mut self, frame: &Frame) -> Result<(), OutputError>;
}

#[derive(Debug, Default)]
pub struct MemorySink {
    pub frames: Vec<Frame>,
}

impl FrameSink for MemorySink {
    fn accept(&mut self, frame: &Frame) -> Result<(), OutputError> {
        self.frames.push(frame.clone());
        Ok(())
    }
}

/// Discards frames.
#[derive(Debug, Default, Clone, Copy)]
pub struct NullSink;

impl FrameSink for NullSink {
    fn accept(&mut self, _: &Frame) -> Result<(), OutputError> {
        Ok(())
    }
}

/// Snapshot of the world's layer at the current clock.
pub fn capture_frame(world: &World) -> Frame {
    let layer = world.layer();
    Frame {
        time: world.clock(),
        width: layer.width(),
        height: layer.height(),
        cells: layer.raster(|a| world.agent(a).map_or(1, |agent| agent.class)),
        classes: world.agent_classes(),
    }
}
