//! Pixel coordinates and small raster helpers shared across stages.

use std::fmt;

/// Integer pixel coordinate, `x` to the right and `y` down, origin top-left.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pixel {
    pub x: i32,
    pub y: i32,
}

impl Pixel {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for Pixel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Which hand a cluster or template belongs to.
///
/// `Left` is the cluster with the smaller centroid x in image coordinates.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HandSide {
    Left,
    Right,
    Only,
}

impl fmt::Display for HandSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HandSide::Left => "left",
            HandSide::Right => "right",
            HandSide::Only => "only",
        })
    }
}

/// Dense membership bitmap over the bounding box of a pixel set, padded by
/// one pixel on every side so neighbour lookups never leave the buffer.
#[derive(Clone, Debug)]
pub(crate) struct Bitmap {
    origin_x: i32,
    origin_y: i32,
    width: i32,
    height: i32,
    bits: Vec<bool>,
}

impl Bitmap {
    pub(crate) fn from_pixels(pixels: &[Pixel]) -> Self {
        let (mut min_x, mut min_y, mut max_x, mut max_y) = (i32::MAX, i32::MAX, i32::MIN, i32::MIN);
        for p in pixels {
            min_x = min_x.min(p.x);
            min_y = min_y.min(p.y);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
        if pixels.is_empty() {
            (min_x, min_y, max_x, max_y) = (0, 0, -1, -1);
        }
        let origin_x = min_x - 1;
        let origin_y = min_y - 1;
        let width = max_x - min_x + 3;
        let height = max_y - min_y + 3;
        let mut bits = vec![false; (width.max(0) * height.max(0)) as usize];
        for p in pixels {
            bits[((p.y - origin_y) * width + (p.x - origin_x)) as usize] = true;
        }
        Self { origin_x, origin_y, width, height, bits }
    }

    #[inline]
    fn index(&self, p: Pixel) -> Option<usize> {
        let lx = p.x - self.origin_x;
        let ly = p.y - self.origin_y;
        if lx < 0 || ly < 0 || lx >= self.width || ly >= self.height {
            None
        } else {
            Some((ly * self.width + lx) as usize)
        }
    }

    #[inline]
    pub(crate) fn contains(&self, p: Pixel) -> bool {
        self.index(p).is_some_and(|i| self.bits[i])
    }

    pub(crate) fn clear(&mut self, p: Pixel) {
        if let Some(i) = self.index(p) {
            self.bits[i] = false;
        }
    }
}

/// 8-neighbourhood offsets in clockwise screen order starting at west.
pub(crate) const NEIGHBORS_CW: [(i32, i32); 8] = [
    (-1, 0),  // W
    (-1, -1), // NW
    (0, -1),  // N
    (1, -1),  // NE
    (1, 0),   // E
    (1, 1),   // SE
    (0, 1),   // S
    (-1, 1),  // SW
];

/// Pixels of a filled disk: every integer point within `radius` of `center`.
pub fn raster_disk(center: Pixel, radius: f64) -> Vec<Pixel> {
    let r = radius.ceil() as i32;
    let r2 = radius * radius;
    let mut out = Vec::new();
    for dy in -r..=r {
        for dx in -r..=r {
            if f64::from(dx * dx + dy * dy) <= r2 {
                out.push(Pixel::new(center.x + dx, center.y + dy));
            }
        }
    }
    out
}

/// Pixels of a filled axis-aligned rectangle with top-left corner `origin`.
pub fn raster_rect(origin: Pixel, width: i32, height: i32) -> Vec<Pixel> {
    let mut out = Vec::with_capacity((width * height).max(0) as usize);
    for y in origin.y..origin.y + height {
        for x in origin.x..origin.x + width {
            out.push(Pixel::new(x, y));
        }
    }
    out
}

/// Squared distance from `(px, py)` to the segment `a`-`b`.
pub(crate) fn segment_distance_sq(px: f64, py: f64, a: (f64, f64), b: (f64, f64)) -> f64 {
    let (vx, vy) = (b.0 - a.0, b.1 - a.1);
    let (wx, wy) = (px - a.0, py - a.1);
    let len2 = vx * vx + vy * vy;
    let t = if len2 > 0.0 { ((wx * vx + wy * vy) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let (dx, dy) = (wx - t * vx, wy - t * vy);
    dx * dx + dy * dy
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitmap_membership_and_padding() {
        let px = [Pixel::new(3, 4), Pixel::new(5, 4)];
        let mut bm = Bitmap::from_pixels(&px);
        assert!(bm.contains(Pixel::new(3, 4)));
        assert!(!bm.contains(Pixel::new(4, 4)));
        assert!(!bm.contains(Pixel::new(2, 3)));
        assert!(!bm.contains(Pixel::new(-100, 50)));
        bm.clear(Pixel::new(3, 4));
        assert!(!bm.contains(Pixel::new(3, 4)));
    }

    #[test]
    fn disk_and_rect_counts() {
        assert_eq!(raster_rect(Pixel::new(0, 0), 10, 5).len(), 50);
        // radius 1: centre plus 4-neighbours
        assert_eq!(raster_disk(Pixel::new(0, 0), 1.0).len(), 5);
    }

    #[test]
    fn segment_distance() {
        assert_eq!(segment_distance_sq(0.0, 3.0, (-1.0, 0.0), (1.0, 0.0)), 9.0);
        assert_eq!(segment_distance_sq(4.0, 0.0, (-1.0, 0.0), (1.0, 0.0)), 9.0);
    }
}
