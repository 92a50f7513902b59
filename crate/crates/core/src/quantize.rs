//! Median-cut color quantization.

use std::collections::HashMap;

pub type Rgb = [u8; 3];

#[derive(Debug, Clone)]
struct ColorBox {
    colors: Vec<(Rgb, u64)>,
}

impl ColorBox {
    fn range(&self, channel: usize) -> u8 {
        let (lo, hi) = self
            .colors
            .iter()
            .fold((u8::MAX, u8::MIN), |(lo, hi), (c, _)| {
                (lo.min(c[channel]), hi.max(c[channel]))
            });
        hi.saturating_sub(lo)
    }

    fn widest_channel(&self) -> (usize, u8) {
        (0..3)
            .map(|ch| (ch, self.range(ch)))
            .fold((0, 0), |best, cur| if cur.1 > best.1 { cur } else { best })
    }

    fn population(&self) -> u64 {
        self.colors.iter().map(|(_, n)| n).sum()
    }

    fn average(&self) -> Rgb {
        let total = self.population().max(1);
        let mut sum = [0u64; 3];
        for (c, n) in &self.colors {
            for ch in 0..3 {
                sum[ch] += c[ch] as u64 * n;
            }
        }
        sum.map(|s| ((s + total / 2) / total) as u8)
    }

    /// Splits at the population-weighted median of the widest channel.
    fn split(mut self) -> (ColorBox, ColorBox) {
        let (channel, _) = self.widest_channel();
        self.colors.sort_by_key(|(c, _)| (c[channel], *c));
        let half = self.population() / 2;
        let mut acc = 0;
        let mut cut = 1;
        for (i, (_, n)) in self.colors.iter().enumerate() {
            acc += n;
            if acc >= half {
                cut = i + 1;
                break;
            }
        }
        let cut = cut.clamp(1, self.colors.len() - 1);
        let upper = self.colors.split_off(cut);
        (self, ColorBox { colors: upper })
    }
}

/// Builds a palette of at most `max_colors` entries from a color histogram.
/// When the histogram has no more distinct colors than that, the palette is
/// exactly those colors.
pub fn median_cut(histogram: &HashMap<Rgb, u64>, max_colors: usize) -> Vec<Rgb> {
    let mut colors: Vec<(Rgb, u64)> = histogram.iter().map(|(c, n)| (*c, *n)).collect();
    colors.sort();
    if colors.len() <= max_colors {
        return colors.into_iter().map(|(c, _)| c).collect();
    }
    let mut boxes = vec![ColorBox { colors }];
    while boxes.len() < max_colors {
        let Some(idx) = boxes
            .iter()
            .enumerate()
            .filter(|(_, b)| b.colors.len() > 1)
            .max_by_key(|(i, b)| (b.widest_channel().1, b.population(), std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
        else {
            break;
        };
        let (a, b) = boxes.remove(idx).split();
        boxes.push(a);
        boxes.push(b);
    }
    boxes.iter().map(ColorBox::average).collect()
}

/// Maps colors to their nearest palette index, memoizing lookups.
pub struct PaletteMapper<'a> {
    palette: &'a [Rgb],
    cache: HashMap<Rgb, u8>,
}

impl<'a> PaletteMapper<'a> {
    pub fn new(palette: &'a [Rgb]) -> Self {
        assert!(!palette.is_empty() && palette.len() <= 256);
        PaletteMapper {
            palette,
            cache: HashMap::new(),
        }
    }

    pub fn index(&mut self, color: Rgb) -> u8 {
        if let Some(&i) = self.cache.get(&color) {
            return i;
        }
        let dist = |p: &Rgb| -> u32 {
            (0..3)
                .map(|ch| {
                    let d = p[ch] as i32 - color[ch] as i32;
                    (d * d) as u32
                })
                .sum()
        };
        let (i, _) = self
            .palette
            .iter()
            .enumerate()
            .min_by_key(|(i, p)| (dist(p), *i))
            .expect("palette is not empty");
        self.cache.insert(color, i as u8);
        i as u8
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn few_colors_are_kept_exactly() {
        let mut h = HashMap::new();
        h.insert([255, 255, 255], 10);
        h.insert([0, 0, 0], 3);
        let p = median_cut(&h, 256);
        assert_eq!(p, vec![[0, 0, 0], [255, 255, 255]]);
        let mut m = PaletteMapper::new(&p);
        assert_eq!(m.index([250, 250, 250]), 1);
        assert_eq!(m.index([1, 2, 3]), 0);
    }

    #[test]
    fn caps_palette_size() {
        let mut h = HashMap::new();
        for r in 0..32u8 {
            for g in 0..32u8 {
                h.insert([r * 8, g * 8, 128], 1 + r as u64);
            }
        }
        let p = median_cut(&h, 16);
        assert_eq!(p.len(), 16);
        // Deterministic for a fixed histogram.
        assert_eq!(p, median_cut(&h, 16));
    }
}
