//! Static 2-d orthogonal range reporting with payloads (merge-sort tree).
//!
//! Points are sorted by `x`; level `k` stores, for every aligned block of
//! `2^k` consecutive points, their indices sorted by `y`. A query splits the
//! `x` range into `O(lg n)` aligned blocks and binary-searches `y` in each.

use crate::codec::{Reader, Writer};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: u64,
    pub y: u64,
    pub payload: (u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Grid {
    points: Vec<Point>,
    /// `levels[k][i]`: index into `points`, sorted by `y` within blocks of `2^k`.
    levels: Vec<Vec<u32>>,
}

impl Grid {
    pub fn build(mut points: Vec<Point>) -> Self {
        points.sort_unstable();
        let n = points.len();
        let mut levels: Vec<Vec<u32>> = vec![(0..n as u32).collect()];
        let mut width = 1;
        while width < n {
            let prev = levels.last().unwrap();
            let mut next = Vec::with_capacity(n);
            for start in (0..n).step_by(2 * width) {
                let mid = (start + width).min(n);
                let end = (start + 2 * width).min(n);
                let (mut i, mut j) = (start, mid);
                while i < mid || j < end {
                    let take_left = j >= end
                        || (i < mid && points[prev[i] as usize].y <= points[prev[j] as usize].y);
                    if take_left {
                        next.push(prev[i]);
                        i += 1;
                    } else {
                        next.push(prev[j]);
                        j += 1;
                    }
                }
            }
            levels.push(next);
            width *= 2;
        }
        Self { points, levels }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Stored machine words (coordinates, payloads and level arrays).
    pub fn words(&self) -> usize {
        self.points.len() * 4 + self.levels.iter().map(Vec::len).sum::<usize>()
    }

    /// Payloads of all points in the closed rectangle `[x_lo, x_hi] x [y_lo, y_hi]`.
    pub fn query(&self, x_lo: u64, x_hi: u64, y_lo: u64, y_hi: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        self.query_with(x_lo, x_hi, y_lo, y_hi, |p| out.push(p.payload));
        out
    }

    pub fn query_with(
        &self,
        x_lo: u64,
        x_hi: u64,
        y_lo: u64,
        y_hi: u64,
        mut report: impl FnMut(&Point),
    ) {
        if x_lo > x_hi || y_lo > y_hi {
            return;
        }
        let a = self.points.partition_point(|p| p.x < x_lo);
        let b = self.points.partition_point(|p| p.x <= x_hi);
        let mut p = a;
        while p < b {
            let mut k = if p == 0 {
                self.levels.len() - 1
            } else {
                (p.trailing_zeros() as usize).min(self.levels.len() - 1)
            };
            while p + (1 << k) > b {
                k -= 1;
            }
            let block = &self.levels[k][p..p + (1 << k)];
            let lo = block.partition_point(|&i| self.points[i as usize].y < y_lo);
            for &i in &block[lo..] {
                let pt = &self.points[i as usize];
                if pt.y > y_hi {
                    break;
                }
                report(pt);
            }
            p += 1 << k;
        }
    }

    pub fn write(&self, w: &mut Writer) {
        w.usize(self.points.len());
        for p in &self.points {
            w.u64(p.x);
            w.u64(p.y);
            w.u64(p.payload.0);
            w.u64(p.payload.1);
        }
    }

    pub fn read(r: &mut Reader) -> Result<Self> {
        let n = r.len_prefix(usize::MAX)?;
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            points.push(Point {
                x: r.u64()?,
                y: r.u64()?,
                payload: (r.u64()?, r.u64()?),
            });
        }
        Ok(Self::build(points))
    }
}
