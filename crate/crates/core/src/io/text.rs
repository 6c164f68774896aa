//! Fitting label text into the uniform label box.
//!
//! Text width is estimated with a fixed per-character advance; there is no
//! font rasterization.

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitPolicy {
    /// Clip text that does not fit and end it with an ellipsis.
    Truncate,
    /// Keep the text as is. Overflow is absorbed by the engine's overlap
    /// allowance instead.
    Overlap,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TextMetrics {
    /// Horizontal advance of one character, in pixels.
    pub char_width: f64,
    /// Horizontal padding inside the label box, per side.
    pub padding: f64,
}

impl Default for TextMetrics {
    fn default() -> Self {
        TextMetrics { char_width: 7.0, padding: 2.0 }
    }
}

impl TextMetrics {
    pub fn width_of(&self, text: &str) -> f64 {
        text.chars().count() as f64 * self.char_width + 2.0 * self.padding
    }

    /// Characters that fit in `box_width`.
    pub fn capacity(&self, box_width: f64) -> usize {
        let room = box_width - 2.0 * self.padding;
        if room <= 0.0 || self.char_width <= 0.0 {
            return 0;
        }
        (room / self.char_width + 1e-9).floor() as usize
    }
}

pub const ELLIPSIS: char = '…';

/// The text to draw for each label under `policy`.
pub fn truncate_or_flow_labels<S: AsRef<str>>(
    texts: &[S],
    box_width: f64,
    metrics: TextMetrics,
    policy: FitPolicy,
) -> Vec<String> {
    texts
        .iter()
        .map(|t| {
            let t = t.as_ref();
            match policy {
                FitPolicy::Overlap => t.to_string(),
                FitPolicy::Truncate => truncate(t, metrics.capacity(box_width)),
            }
        })
        .collect()
}

fn truncate(text: &str, capacity: usize) -> String {
    let n = text.chars().count();
    if n <= capacity {
        return text.to_string();
    }
    if capacity == 0 {
        return String::new();
    }
    let mut out: String = text.chars().take(capacity - 1).collect();
    out.push(ELLIPSIS);
    out
}
