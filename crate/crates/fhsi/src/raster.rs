//! Minimal raster buffer the pipeline operates on, decoupled from any
//! particular image codec.

use crate::color::RgbPixel;
use crate::error::{Error, Result};

/// A decoded RGB raster in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: u32,
    height: u32,
    pixels: Vec<RgbPixel>,
}

impl Raster {
    pub fn new(width: u32, height: u32, pixels: Vec<RgbPixel>) -> Result<Self> {
        let expected = width as usize * height as usize;
        if pixels.len() != expected {
            return Err(Error::InvalidParameter {
                name: "pixels",
                reason: format!(
                    "expected {expected} pixels for {width}x{height}, got {}",
                    pixels.len()
                ),
            });
        }
        Ok(Raster {
            width,
            height,
            pixels,
        })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> RgbPixel) -> Self {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Raster {
            width,
            height,
            pixels,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[RgbPixel] {
        &self.pixels
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    /// Area-averaging downscale so that neither dimension exceeds `cap`,
    /// preserving aspect ratio. Returns a clone when already small enough.
    ///
    /// Each target pixel averages the exact fractional source box it
    /// covers, accumulated in a fixed row-major order, so the result is
    /// deterministic.
    pub fn downscale_to_fit(&self, cap: u32) -> Raster {
        let long_side = self.width.max(self.height);
        if long_side <= cap || self.pixels.is_empty() || cap == 0 {
            return self.clone();
        }
        let scale = cap as f64 / long_side as f64;
        let tw = ((self.width as f64 * scale).round() as u32).max(1);
        let th = ((self.height as f64 * scale).round() as u32).max(1);
        self.box_resize(tw, th)
    }

    fn box_resize(&self, tw: u32, th: u32) -> Raster {
        let sw = self.width as f64;
        let sh = self.height as f64;
        let mut out = Vec::with_capacity(tw as usize * th as usize);

        for ty in 0..th {
            let y0 = ty as f64 * sh / th as f64;
            let y1 = (ty + 1) as f64 * sh / th as f64;
            for tx in 0..tw {
                let x0 = tx as f64 * sw / tw as f64;
                let x1 = (tx + 1) as f64 * sw / tw as f64;

                let mut rs = 0.0f64;
                let mut gs = 0.0f64;
                let mut bs = 0.0f64;
                let mut area = 0.0f64;

                let sy_start = y0.floor() as u32;
                let sy_end = (y1.ceil() as u32).min(self.height);
                let sx_start = x0.floor() as u32;
                let sx_end = (x1.ceil() as u32).min(self.width);

                for sy in sy_start..sy_end {
                    let cov_y = (y1.min((sy + 1) as f64) - y0.max(sy as f64)).max(0.0);
                    if cov_y == 0.0 {
                        continue;
                    }
                    let row = sy as usize * self.width as usize;
                    for sx in sx_start..sx_end {
                        let cov_x = (x1.min((sx + 1) as f64) - x0.max(sx as f64)).max(0.0);
                        if cov_x == 0.0 {
                            continue;
                        }
                        let w = cov_x * cov_y;
                        let p = self.pixels[row + sx as usize];
                        rs += w * p.r as f64;
                        gs += w * p.g as f64;
                        bs += w * p.b as f64;
                        area += w;
                    }
                }

                let to_u8 = |v: f64| (v / area).round().clamp(0.0, 255.0) as u8;
                out.push(RgbPixel::new(to_u8(rs), to_u8(gs), to_u8(bs)));
            }
        }

        Raster {
            width: tw,
            height: th,
            pixels: out,
        }
    }
}
