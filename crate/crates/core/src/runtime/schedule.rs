//! Discrete-event queue.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ScheduleError {
    #[error("cannot schedule at {time}: the clock is already at {clock}")]
    InThePast { time: f64, clock: f64 },
    #[error("event time must be a finite number, got {0}")]
    NotFinite(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scheduled<E> {
    pub time: f64,
    pub seq: u64,
    pub event: E,
}

struct Entry<E>(Scheduled<E>);

impl<E> PartialEq for Entry<E> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<E> Eq for Entry<E> {}

impl<E> PartialOrd for Entry<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E> Ord for Entry<E> {
    // Reversed: BinaryHeap is a max-heap and we pop the earliest event.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .time
            .total_cmp(&self.0.time)
            .then_with(|| other.0.seq.cmp(&self.0.seq))
    }
}

/// Events ordered by time, ties broken by insertion order.
pub struct Schedule<E> {
    heap: BinaryHeap<Entry<E>>,
    clock: f64,
    next_seq: u64,
}

impl<E> Default for Schedule<E> {
    fn default() -> Self {
        Schedule {
            heap: BinaryHeap::new(),
            clock: 0.0,
            next_seq: 0,
        }
    }
}

impl<E> Schedule<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn at(&mut self, time: f64, event: E) -> Result<u64, ScheduleError> {
        if !time.is_finite() {
            return Err(ScheduleError::NotFinite(time));
        }
        if time < self.clock {
            return Err(ScheduleError::InThePast {
                time,
                clock: self.clock,
            });
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.heap.push(Entry(Scheduled { time, seq, event }));
        Ok(seq)
    }

    /// Schedules `delay` time units after the current clock.
    pub fn after(&mut self, delay: f64, event: E) -> Result<u64, ScheduleError> {
        self.at(self.clock + delay, event)
    }

    pub fn peek_time(&self) -> Option<f64> {
        self.heap.peek().map(|e| e.0.time)
    }

    /// Removes the earliest event and advances the clock to its time.
    pub fn pop(&mut self) -> Option<Scheduled<E>> {
        let Entry(next) = self.heap.pop()?;
        self.clock = next.time;
        Some(next)
    }

    /// Drops every pending event for which `keep` is false.
    pub fn retain(&mut self, mut keep: impl FnMut(&E) -> bool) {
        self.heap.retain(|e| keep(&e.0.event));
    }

    pub fn any(&self, mut pred: impl FnMut(&E) -> bool) -> bool {
        self.heap.iter().any(|e| pred(&e.0.event))
    }
}
