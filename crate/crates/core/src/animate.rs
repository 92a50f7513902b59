//! Frame ordering and GIF assembly.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use image::{Rgba, RgbaImage};

use crate::backend::write_atomic;
use crate::error::{Error, Result};
use crate::quantize::{median_cut, PaletteMapper, Rgb};
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SortMode {
    #[default]
    AscStr,
    DescStr,
    AscInt,
    DescInt,
    None,
}

impl SortMode {
    pub const ALL: [SortMode; 5] = [
        SortMode::AscStr,
        SortMode::DescStr,
        SortMode::AscInt,
        SortMode::DescInt,
        SortMode::None,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SortMode::AscStr => "asc-str",
            SortMode::DescStr => "desc-str",
            SortMode::AscInt => "asc-int",
            SortMode::DescInt => "desc-int",
            SortMode::None => "none",
        }
    }
}

impl fmt::Display for SortMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SortMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SortMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = SortMode::ALL.iter().map(|m| m.as_str()).collect();
                Error::Config(format!(
                    "unknown sort mode `{s}`; valid modes: {}",
                    valid.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnimationSpec {
    pub fps: f64,
    pub sort_mode: SortMode,
    pub looping: bool,
}

impl Default for AnimationSpec {
    fn default() -> Self {
        AnimationSpec {
            fps: 1.0,
            sort_mode: SortMode::default(),
            looping: true,
        }
    }
}

impl AnimationSpec {
    pub fn new(fps: f64) -> Result<AnimationSpec> {
        if !(fps.is_finite() && fps > 0.0) {
            return Err(Error::Config(format!(
                "fps must be a positive number, got {fps}"
            )));
        }
        Ok(AnimationSpec {
            fps,
            ..AnimationSpec::default()
        })
    }

    pub fn sort_mode(mut self, mode: SortMode) -> Self {
        self.sort_mode = mode;
        self
    }

    pub fn looping(mut self, looping: bool) -> Self {
        self.looping = looping;
        self
    }

    /// Frame delay in centiseconds.
    pub fn delay_cs(&self) -> u16 {
        (100.0 / self.fps).round().clamp(1.0, u16::MAX as f64) as u16
    }
}

/// The integer inside a graph id: the id itself, the argument of a unary
/// function, or the only integer position of a tuple.
pub fn extract_int(id: &Term) -> Option<i64> {
    match id {
        Term::Integer(n) => Some(*n),
        Term::Function(_, args) if args.len() == 1 => args[0].as_int(),
        Term::Tuple(items) => {
            let mut ints = items.iter().filter_map(Term::as_int);
            match (ints.next(), ints.next()) {
                (Some(n), None) => Some(n),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Orders graph ids for animation. The `desc-*` modes are the exact reverse
/// of their `asc-*` counterparts.
pub fn order_frames(ids: &[Term], mode: SortMode) -> Result<Vec<Term>> {
    let mut out = ids.to_vec();
    match mode {
        SortMode::None => return Ok(out),
        SortMode::AscStr | SortMode::DescStr => {
            out.sort_by_cached_key(|t| (t.to_string(), t.clone()));
        }
        SortMode::AscInt | SortMode::DescInt => {
            let mut keyed = Vec::with_capacity(out.len());
            for t in out {
                let n = extract_int(&t).ok_or_else(|| {
                    Error::Sort(format!(
                        "graph id `{t}` does not contain exactly one integer"
                    ))
                })?;
                keyed.push((n, t));
            }
            keyed.sort();
            out = keyed.into_iter().map(|(_, t)| t).collect();
        }
    }
    if matches!(mode, SortMode::DescStr | SortMode::DescInt) {
        out.reverse();
    }
    Ok(out)
}

const WHITE: Rgba<u8> = Rgba([255, 255, 255, 255]);

fn load_frame(path: &Path) -> Result<RgbaImage> {
    let img = image::open(path)
        .map_err(|e| Error::Frame(format!("cannot decode frame {}: {e}", path.display())))?;
    Ok(img.to_rgba8())
}

/// Centers `frame` on a white `width` x `height` canvas, flattening alpha.
fn letterbox(frame: &RgbaImage, width: u32, height: u32) -> RgbaImage {
    let mut canvas = RgbaImage::from_pixel(width, height, WHITE);
    let dx = (width - frame.width()) / 2;
    let dy = (height - frame.height()) / 2;
    for (x, y, px) in frame.enumerate_pixels() {
        let a = px[3] as u32;
        let blend = |c: u8| ((c as u32 * a + 255 * (255 - a) + 127) / 255) as u8;
        canvas.put_pixel(
            x + dx,
            y + dy,
            Rgba([blend(px[0]), blend(px[1]), blend(px[2]), 255]),
        );
    }
    canvas
}

/// Assembles raster frames, in the given order, into an animated GIF at
/// `out`. Frames of different sizes are letterboxed onto the largest
/// canvas. All frames share one median-cut palette.
pub fn assemble_gif(frames: &[PathBuf], spec: &AnimationSpec, out: &Path) -> Result<PathBuf> {
    if frames.is_empty() {
        return Err(Error::Frame("no frames to animate".into()));
    }
    let images = frames
        .iter()
        .map(|p| load_frame(p))
        .collect::<Result<Vec<_>>>()?;
    let width = images
        .iter()
        .map(RgbaImage::width)
        .max()
        .unwrap_or(1)
        .max(1);
    let height = images
        .iter()
        .map(RgbaImage::height)
        .max()
        .unwrap_or(1)
        .max(1);
    if width > u16::MAX as u32 || height > u16::MAX as u32 {
        return Err(Error::Frame(format!(
            "frame size {width}x{height} exceeds GIF limits"
        )));
    }
    let canvases: Vec<RgbaImage> = images.iter().map(|i| letterbox(i, width, height)).collect();

    let mut histogram: HashMap<Rgb, u64> = HashMap::new();
    for c in &canvases {
        for px in c.pixels() {
            *histogram.entry([px[0], px[1], px[2]]).or_default() += 1;
        }
    }
    let mut palette = median_cut(&histogram, 256);
    if palette.len() < 2 {
        palette.push([0, 0, 0]);
    }
    let flat: Vec<u8> = palette.iter().flatten().copied().collect();

    let mut bytes = Vec::new();
    {
        let mut enc = gif::Encoder::new(&mut bytes, width as u16, height as u16, &flat)
            .map_err(|e| Error::Frame(format!("GIF encoding failed: {e}")))?;
        if spec.looping {
            enc.set_repeat(gif::Repeat::Infinite)
                .map_err(|e| Error::Frame(format!("GIF encoding failed: {e}")))?;
        }
        let mut mapper = PaletteMapper::new(&palette);
        for c in &canvases {
            let indices: Vec<u8> = c
                .pixels()
                .map(|p| mapper.index([p[0], p[1], p[2]]))
                .collect();
            let frame = gif::Frame {
                width: width as u16,
                height: height as u16,
                delay: spec.delay_cs(),
                buffer: indices.into(),
                ..gif::Frame::default()
            };
            enc.write_frame(&frame)
                .map_err(|e| Error::Frame(format!("GIF encoding failed: {e}")))?;
        }
    }
    write_atomic(out, &bytes)?;
    Ok(out.to_path_buf())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn ids(s: &[&str]) -> Vec<Term> {
        s.iter().map(|t| parse_term(t).unwrap()).collect()
    }

    #[test]
    fn delays() {
        assert_eq!(AnimationSpec::new(2.0).unwrap().delay_cs(), 50);
        assert_eq!(AnimationSpec::new(3.0).unwrap().delay_cs(), 33);
        assert_eq!(AnimationSpec::new(1000.0).unwrap().delay_cs(), 1);
        assert!(AnimationSpec::new(0.0).is_err());
        assert!(AnimationSpec::new(f64::NAN).is_err());
    }

    #[test]
    fn int_extraction() {
        assert_eq!(extract_int(&parse_term("7").unwrap()), Some(7));
        assert_eq!(extract_int(&parse_term("graph(3)").unwrap()), Some(3));
        assert_eq!(extract_int(&parse_term("(a,-4)").unwrap()), Some(-4));
        assert_eq!(extract_int(&parse_term("(1,2)").unwrap()), None);
        assert_eq!(extract_int(&parse_term("f(1,2)").unwrap()), None);
        assert_eq!(extract_int(&parse_term("a").unwrap()), None);
    }

    #[test]
    fn ordering() {
        let v = ids(&["g(2)", "g(10)"]);
        assert_eq!(
            order_frames(&v, SortMode::AscStr).unwrap(),
            ids(&["g(10)", "g(2)"])
        );
        assert_eq!(
            order_frames(&v, SortMode::AscInt).unwrap(),
            ids(&["g(2)", "g(10)"])
        );
        assert_eq!(
            order_frames(&v, SortMode::DescInt).unwrap(),
            ids(&["g(10)", "g(2)"])
        );
        assert_eq!(order_frames(&v, SortMode::None).unwrap(), v);
        assert!(matches!(
            order_frames(&ids(&["a", "b"]), SortMode::AscInt),
            Err(Error::Sort(_))
        ));
        assert_eq!("desc-str".parse::<SortMode>().unwrap(), SortMode::DescStr);
        assert!("up".parse::<SortMode>().is_err());
    }

    #[test]
    fn no_frames() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("x.gif");
        assert!(matches!(
            assemble_gif(&[], &AnimationSpec::default(), &out),
            Err(Error::Frame(_))
        ));
        let missing = [dir.path().join("nope.png")];
        assert!(matches!(
            assemble_gif(&missing, &AnimationSpec::default(), &out),
            Err(Error::Frame(_))
        ));
        assert!(!out.exists());
    }

    #[test]
    fn letterboxed_frames() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.png");
        let b = dir.path().join("b.png");
        RgbaImage::from_pixel(4, 2, Rgba([255, 0, 0, 255]))
            .save(&a)
            .unwrap();
        RgbaImage::from_pixel(2, 6, Rgba([0, 0, 255, 255]))
            .save(&b)
            .unwrap();
        let out = dir.path().join("m.gif");
        assemble_gif(&[a, b], &AnimationSpec::new(2.0).unwrap(), &out).unwrap();

        let mut opts = gif::DecodeOptions::new();
        opts.set_color_output(gif::ColorOutput::RGBA);
        let mut dec = opts.read_info(std::fs::File::open(&out).unwrap()).unwrap();
        assert_eq!((dec.width(), dec.height()), (4, 6));
        let first = dec.read_next_frame().unwrap().unwrap();
        assert_eq!(first.delay, 50);
        // Top-left corner is letterbox padding.
        assert_eq!(&first.buffer[0..4], &[255, 255, 255, 255]);
        // Row 2 is inside the red frame.
        assert_eq!(&first.buffer[2 * 4 * 4..2 * 4 * 4 + 4], &[255, 0, 0, 255]);
        assert!(dec.read_next_frame().unwrap().is_some());
        assert!(dec.read_next_frame().unwrap().is_none());
    }
}
