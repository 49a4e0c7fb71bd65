//! Depth frames: the data model, DFR/PGM file I/O, and a seeded synthetic
//! gesture renderer that stands in for a live depth sensor.
//!
//! DFR layout, all integers little-endian:
//!
//! ```text
//! "DFR1" | width: u32 | height: u32 | width*height depths: u16, row-major
//! ```
//!
//! PGM frames are binary `P5` with maxval 4095 and big-endian 16-bit
//! samples. Depth 0 means "no reading" everywhere downstream.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::{segment_distance_sq, HandSide, Pixel};

/// Largest valid depth layer.
pub const MAX_DEPTH: u16 = 4095;
pub const DEFAULT_WIDTH: u32 = 640;
pub const DEFAULT_HEIGHT: u32 = 480;

const DFR_MAGIC: &[u8; 4] = b"DFR1";
const DFR_HEADER_LEN: usize = 12;

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("unrecognised file magic")]
    BadMagic,
    #[error("file truncated: expected {expected} bytes, found {found}")]
    TruncatedFile { expected: usize, found: usize },
    #[error("depth {value} at pixel index {index} exceeds {MAX_DEPTH}")]
    DepthOutOfRange { index: usize, value: u16 },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error("invalid dimensions {width}x{height} for {len} depth values")]
    BadDimensions { width: u32, height: u32, len: usize },
    #[error("invalid synth spec: {0}")]
    InvalidSpec(String),
    #[error("i/o failure: {0}")]
    IoFailure(#[from] std::io::Error),
}

/// A grid of depth layers, row-major with a top-left origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthFrame {
    width: u32,
    height: u32,
    depths: Vec<u16>,
}

impl DepthFrame {
    /// Validates the length and depth range of `depths`.
    pub fn new(width: u32, height: u32, depths: Vec<u16>) -> Result<Self, FrameError> {
        let expected = (width as usize).checked_mul(height as usize);
        if expected != Some(depths.len()) {
            return Err(FrameError::BadDimensions { width, height, len: depths.len() });
        }
        if let Some((index, &value)) = depths.iter().enumerate().find(|(_, &d)| d > MAX_DEPTH) {
            return Err(FrameError::DepthOutOfRange { index, value });
        }
        Ok(Self { width, height, depths })
    }

    /// A frame with every pixel at depth 0 ("no reading").
    pub fn empty(width: u32, height: u32) -> Self {
        Self { width, height, depths: vec![0; width as usize * height as usize] }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn depths(&self) -> &[u16] {
        &self.depths
    }

    pub fn into_depths(self) -> Vec<u16> {
        self.depths
    }

    /// Depth at `(x, y)`, or `None` outside the frame.
    pub fn get(&self, x: i32, y: i32) -> Option<u16> {
        if x < 0 || y < 0 || x >= self.width as i32 || y >= self.height as i32 {
            return None;
        }
        Some(self.depths[y as usize * self.width as usize + x as usize])
    }

    /// Sets the depth at `(x, y)`; out-of-frame writes are dropped and the
    /// value is clamped to [`MAX_DEPTH`].
    pub fn set(&mut self, x: i32, y: i32, depth: u16) {
        if x < 0 || y < 0 || x >= self.width as i32 || y >= self.height as i32 {
            return;
        }
        self.depths[y as usize * self.width as usize + x as usize] = depth.min(MAX_DEPTH);
    }

    /// Zeroes every pixel outside `body`, a per-pixel mask of the same size.
    ///
    /// This is how a caller-supplied body mask gates segmentation.
    pub fn masked(&self, body: &[bool]) -> Result<DepthFrame, FrameError> {
        if body.len() != self.depths.len() {
            return Err(FrameError::BadDimensions {
                width: self.width,
                height: self.height,
                len: body.len(),
            });
        }
        let depths = self
            .depths
            .iter()
            .zip(body)
            .map(|(&d, &keep)| if keep { d } else { 0 })
            .collect();
        Ok(DepthFrame { width: self.width, height: self.height, depths })
    }

    /// Number of pixels with a nonzero reading.
    pub fn nonzero_count(&self) -> usize {
        self.depths.iter().filter(|&&d| d != 0).count()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FrameFormat {
    Dfr,
    Pgm,
}

/// Reads a DFR or binary PGM depth frame, detected by magic bytes.
pub fn read_frame(path: impl AsRef<Path>) -> Result<DepthFrame, FrameError> {
    let bytes = fs::read(path)?;
    decode_frame(&bytes)
}

/// Decodes an in-memory DFR or PGM image.
pub fn decode_frame(bytes: &[u8]) -> Result<DepthFrame, FrameError> {
    if bytes.starts_with(DFR_MAGIC) {
        decode_dfr(bytes)
    } else if bytes.starts_with(b"P5") {
        decode_pgm(bytes)
    } else if bytes.len() >= 2 && bytes[0] == b'P' && bytes[1].is_ascii_digit() {
        Err(FrameError::UnsupportedFormat(format!(
            "netpbm P{} (only binary P5 is read)",
            bytes[1] as char
        )))
    } else {
        Err(FrameError::BadMagic)
    }
}

fn decode_dfr(bytes: &[u8]) -> Result<DepthFrame, FrameError> {
    if bytes.len() < DFR_HEADER_LEN {
        return Err(FrameError::TruncatedFile { expected: DFR_HEADER_LEN, found: bytes.len() });
    }
    let width = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes"));
    let height = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes"));
    let count = (width as usize)
        .checked_mul(height as usize)
        .ok_or(FrameError::BadDimensions { width, height, len: 0 })?;
    let expected = DFR_HEADER_LEN + 2 * count;
    if bytes.len() < expected {
        return Err(FrameError::TruncatedFile { expected, found: bytes.len() });
    }
    let depths = bytes[DFR_HEADER_LEN..expected]
        .chunks_exact(2)
        .map(|c| u16::from_le_bytes([c[0], c[1]]))
        .collect();
    DepthFrame::new(width, height, depths)
}

/// Splits the next whitespace-delimited header token, skipping `#` comments.
fn pgm_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8], FrameError> {
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
            continue;
        }
        break;
    }
    let start = *pos;
    while *pos < bytes.len() && !bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
    if start == *pos {
        return Err(FrameError::TruncatedFile { expected: *pos + 1, found: bytes.len() });
    }
    Ok(&bytes[start..*pos])
}

fn pgm_number(bytes: &[u8], pos: &mut usize) -> Result<u32, FrameError> {
    let tok = pgm_token(bytes, pos)?;
    std::str::from_utf8(tok)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| FrameError::UnsupportedFormat("malformed PGM header".into()))
}

fn decode_pgm(bytes: &[u8]) -> Result<DepthFrame, FrameError> {
    let mut pos = 2;
    let width = pgm_number(bytes, &mut pos)?;
    let height = pgm_number(bytes, &mut pos)?;
    let maxval = pgm_number(bytes, &mut pos)?;
    if maxval == 0 || maxval > 65535 {
        return Err(FrameError::UnsupportedFormat(format!("PGM maxval {maxval}")));
    }
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    let sample = if maxval < 256 { 1 } else { 2 };
    let count = (width as usize)
        .checked_mul(height as usize)
        .ok_or(FrameError::BadDimensions { width, height, len: 0 })?;
    let expected = pos + sample * count;
    if bytes.len() < expected {
        return Err(FrameError::TruncatedFile { expected, found: bytes.len() });
    }
    let raster = &bytes[pos..expected];
    let depths = if sample == 1 {
        raster.iter().map(|&b| u16::from(b)).collect()
    } else {
        raster.chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
    };
    DepthFrame::new(width, height, depths)
}

/// Encodes a frame in the given format.
pub fn encode_frame(frame: &DepthFrame, format: FrameFormat) -> Vec<u8> {
    match format {
        FrameFormat::Dfr => {
            let mut out = Vec::with_capacity(DFR_HEADER_LEN + 2 * frame.depths.len());
            out.extend_from_slice(DFR_MAGIC);
            out.extend_from_slice(&frame.width.to_le_bytes());
            out.extend_from_slice(&frame.height.to_le_bytes());
            for d in &frame.depths {
                out.extend_from_slice(&d.to_le_bytes());
            }
            out
        }
        FrameFormat::Pgm => {
            let header = format!("P5\n{} {}\n{}\n", frame.width, frame.height, MAX_DEPTH);
            let mut out = Vec::with_capacity(header.len() + 2 * frame.depths.len());
            out.extend_from_slice(header.as_bytes());
            for d in &frame.depths {
                out.extend_from_slice(&d.to_be_bytes());
            }
            out
        }
    }
}

pub fn write_frame(
    frame: &DepthFrame,
    path: impl AsRef<Path>,
    format: FrameFormat,
) -> Result<(), FrameError> {
    fs::write(path, encode_frame(frame, format))?;
    Ok(())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HandCount {
    One,
    Two,
}

/// Parameters of one synthetic gesture frame.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthSpec {
    /// Gesture label, 1 to 10.
    pub number: u8,
    pub hands: HandCount,
    pub seed: u64,
    /// Finger length and tip displacement noise, in pixels.
    pub jitter: f64,
    /// Depth layer of the nearest hand surface.
    pub hand_depth: u16,
    pub palm_radius: f64,
    /// One-hand frames: which hand is rendered. Two-hand frames: which
    /// hand shows the larger count.
    pub side: HandSide,
    /// Extra in-plane rotation in degrees, added to the seeded tilt.
    pub rotation_deg: f64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            number: 1,
            hands: HandCount::One,
            seed: 0,
            jitter: 0.0,
            hand_depth: 800,
            palm_radius: 60.0,
            side: HandSide::Right,
            rotation_deg: 0.0,
        }
    }
}

impl SynthSpec {
    /// A spec for `number` using one hand for 1–5 and two hands for 6–10.
    pub fn for_number(number: u8, seed: u64) -> Self {
        let hands = if number >= 6 { HandCount::Two } else { HandCount::One };
        Self { number, hands, seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), FrameError> {
        let bad = |m: String| Err(FrameError::InvalidSpec(m));
        if !(1..=10).contains(&self.number) {
            return bad(format!("number {} outside 1..=10", self.number));
        }
        if self.number >= 6 && self.hands == HandCount::One {
            return bad(format!("number {} needs two hands", self.number));
        }
        if self.number == 1 && self.hands == HandCount::Two {
            return bad("number 1 cannot be shown with two hands".into());
        }
        if !(self.jitter >= 0.0 && self.jitter.is_finite()) {
            return bad(format!("jitter {} must be finite and >= 0", self.jitter));
        }
        if !(MIN_PALM_RADIUS..=MAX_PALM_RADIUS).contains(&self.palm_radius) {
            return bad(format!(
                "palm radius {} outside [{MIN_PALM_RADIUS}, {MAX_PALM_RADIUS}]",
                self.palm_radius
            ));
        }
        if self.hand_depth == 0 || u32::from(self.hand_depth) + TORSO_GAP + TORSO_SPAN > 4095 {
            return bad(format!("hand depth {} leaves no room for the torso", self.hand_depth));
        }
        if !self.rotation_deg.is_finite() {
            return bad("rotation must be finite".into());
        }
        if self.hands == HandCount::One && self.side == HandSide::Only {
            return bad("side must be left or right".into());
        }
        Ok(())
    }

    /// Per-hand finger counts, left hand first.
    pub fn hand_labels(&self) -> Vec<(HandSide, u8)> {
        match self.hands {
            HandCount::One => vec![(self.side, self.number)],
            HandCount::Two => {
                let (big, small) = if self.number >= 6 {
                    (5, self.number - 5)
                } else {
                    (self.number.div_ceil(2), self.number / 2)
                };
                if self.side == HandSide::Left {
                    vec![(HandSide::Left, big), (HandSide::Right, small)]
                } else {
                    vec![(HandSide::Left, small), (HandSide::Right, big)]
                }
            }
        }
    }
}

/// What the renderer put where.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthTruth {
    /// Finger count per hand, left first.
    pub labels: Vec<(HandSide, u8)>,
    /// Rendered pixels per hand, same order as `labels`, row-major sorted.
    pub hand_pixels: Vec<Vec<Pixel>>,
    /// Palm centre per hand.
    pub centers: Vec<(f64, f64)>,
}

const MIN_PALM_RADIUS: f64 = 12.0;
const MAX_PALM_RADIUS: f64 = 80.0;
/// Depth spread across one hand, front to back.
pub const HAND_SLAB: u16 = 60;
const TORSO_GAP: u32 = 400;
const TORSO_SPAN: u32 = 100;
const MAX_TILT_DEG: f64 = 8.0;
const MAX_OFFSET: f64 = 20.0;

/// Finger slot geometry for a right hand at palm radius 1: angle from
/// straight up (positive toward image right) and tip distance from the
/// palm centre.
const FINGER_SLOTS: [(f64, f64); 5] = [
    (70.0, 1.55),  // thumb
    (30.0, 1.9),   // index
    (5.0, 2.0),    // middle
    (-20.0, 1.85), // ring
    (-45.0, 1.6),  // pinky
];
const FINGER_WIDTH: f64 = 0.27;

/// Which slots are extended for a count of 1 to 5.
fn extended_slots(count: u8) -> &'static [usize] {
    match count {
        1 => &[1],
        2 => &[1, 2],
        3 => &[0, 1, 2],
        4 => &[1, 2, 3, 4],
        _ => &[0, 1, 2, 3, 4],
    }
}

struct HandShape {
    center: (f64, f64),
    radius: f64,
    half_width: f64,
    fingers: Vec<((f64, f64), (f64, f64))>,
    reach: f64,
}

impl HandShape {
    fn contains(&self, x: f64, y: f64) -> bool {
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        if dx * dx + dy * dy <= self.radius * self.radius {
            return true;
        }
        let hw2 = self.half_width * self.half_width;
        self.fingers.iter().any(|&(a, b)| segment_distance_sq(x, y, a, b) <= hw2)
    }
}

/// Renders a synthetic gesture frame and returns it with the ground truth.
///
/// Each hand is a filled palm disk plus one capsule per extended finger.
/// A torso slab at least 400 layers behind the hands fills the lower
/// centre of the frame. The seed fixes the hand offset, tilt and finger
/// noise, so the output is a pure function of `spec`.
pub fn synth_frame(spec: &SynthSpec) -> Result<(DepthFrame, SynthTruth), FrameError> {
    spec.validate()?;
    let (w, h) = (DEFAULT_WIDTH as i32, DEFAULT_HEIGHT as i32);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let off_x = rng.gen_range(-MAX_OFFSET..=MAX_OFFSET).round();
    let off_y = rng.gen_range(-MAX_OFFSET..=MAX_OFFSET).round();
    let tilt = rng.gen_range(-MAX_TILT_DEG..=MAX_TILT_DEG) + spec.rotation_deg;

    let labels = spec.hand_labels();
    let base_y = 300.0 + off_y;
    let centers: Vec<(f64, f64)> = match spec.hands {
        HandCount::One => vec![(320.0 + off_x, base_y)],
        HandCount::Two => vec![(170.0 + off_x, base_y), (470.0 + off_x, base_y)],
    };

    let r = spec.palm_radius;
    let shapes: Vec<HandShape> = labels
        .iter()
        .zip(&centers)
        .map(|(&(side, count), &center)| {
            // every hand draws noise for all five slots so the stream stays aligned
            let noise: Vec<(f64, f64)> = (0..5)
                .map(|_| {
                    let dl = rng.gen_range(-1.0..=1.0) * spec.jitter;
                    let dt = rng.gen_range(-1.0..=1.0) * spec.jitter;
                    (dl, dt)
                })
                .collect();
            let mirror = if side == HandSide::Left { -1.0 } else { 1.0 };
            let mut reach = r;
            let fingers = extended_slots(count)
                .iter()
                .map(|&slot| {
                    let (angle_deg, tip) = FINGER_SLOTS[slot];
                    let (dl, dt) = noise[slot];
                    let len = tip * r + dl;
                    reach = reach.max(len);
                    let theta = (mirror * angle_deg + tilt) * PI / 180.0 + dt / len;
                    let tip_pt = (center.0 + len * theta.sin(), center.1 - len * theta.cos());
                    (center, tip_pt)
                })
                .collect();
            HandShape { center, radius: r, half_width: FINGER_WIDTH * r / 2.0, fingers, reach }
        })
        .collect();

    let mut frame = DepthFrame::empty(DEFAULT_WIDTH, DEFAULT_HEIGHT);

    // torso behind the hands, depth grows slightly toward the bottom
    let torso_near = u32::from(spec.hand_depth) + TORSO_GAP;
    for y in 200..h {
        for x in 160..480 {
            let d = torso_near + (TORSO_SPAN * (y - 200) as u32) / (h - 200) as u32;
            frame.set(x, y, d as u16);
        }
    }

    let mut hand_pixels = Vec::with_capacity(shapes.len());
    for shape in &shapes {
        let mut pixels = Vec::new();
        let ext = (shape.reach + shape.half_width + 2.0).ceil() as i32;
        let (cx, cy) = (shape.center.0.round() as i32, shape.center.1.round() as i32);
        for y in (cy - ext).max(0)..=(cy + ext).min(h - 1) {
            for x in (cx - ext).max(0)..=(cx + ext).min(w - 1) {
                let (fx, fy) = (f64::from(x), f64::from(y));
                if shape.contains(fx, fy) {
                    let dist = (fx - shape.center.0).hypot(fy - shape.center.1);
                    let rel = (dist / (2.5 * r)).min(1.0);
                    let depth = spec.hand_depth + (f64::from(HAND_SLAB) * (1.0 - rel)).round() as u16;
                    frame.set(x, y, depth);
                    pixels.push(Pixel::new(x, y));
                }
            }
        }
        hand_pixels.push(pixels);
    }

    Ok((frame, SynthTruth { labels, hand_pixels, centers }))
}
