//! Crisp color representations: RGB pixels, HSI points, the RGB<->HSI
//! conversions, and the circular hue metric.

/// One 8-bit RGB pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RgbPixel {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl RgbPixel {
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        RgbPixel { r, g, b }
    }
}

/// A point in HSI space: hue in degrees [0, 360), saturation in percent
/// [0, 100], intensity as a level in [0, 255].
///
/// The constructor wraps hue into [0, 360) and clamps the other two
/// attributes into their domains. It does not force hue to 0 for
/// achromatic points; that convention applies to conversion output
/// (see [`rgb_to_hsi`]) and to classification, so that linguistic
/// representatives can carry their nominal hue even at zero saturation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsiPoint {
    pub hue: f64,
    pub saturation: f64,
    pub intensity: f64,
}

impl HsiPoint {
    pub fn new(hue: f64, saturation: f64, intensity: f64) -> Self {
        let mut hue = hue.rem_euclid(360.0);
        if hue >= 360.0 {
            // rem_euclid(360) of e.g. -1e-14 rounds to 360.0 exactly
            hue = 0.0;
        }
        HsiPoint {
            hue,
            saturation: saturation.clamp(0.0, 100.0),
            intensity: intensity.clamp(0.0, 255.0),
        }
    }
}

/// Standard arccos-form RGB -> HSI conversion.
///
/// Intensity is the channel mean on [0, 255], saturation is
/// `(1 - 3*min/(r+g+b)) * 100` (0 for black), and hue comes from the
/// arccos formulation, reflected into (180, 360) when b > g. Achromatic
/// inputs (r = g = b) yield hue 0.
pub fn rgb_to_hsi(p: RgbPixel) -> HsiPoint {
    let r = p.r as f64;
    let g = p.g as f64;
    let b = p.b as f64;
    let sum = r + g + b;

    let intensity = sum / 3.0;

    if sum == 0.0 {
        return HsiPoint {
            hue: 0.0,
            saturation: 0.0,
            intensity: 0.0,
        };
    }

    let min = r.min(g).min(b);
    let saturation = (1.0 - 3.0 * min / sum) * 100.0;

    if r == g && g == b {
        return HsiPoint {
            hue: 0.0,
            saturation: 0.0,
            intensity,
        };
    }

    let num = 0.5 * ((r - g) + (r - b));
    let den = ((r - g) * (r - g) + (r - b) * (g - b)).sqrt();
    // den > 0 whenever the channels are not all equal
    let theta = (num / den).clamp(-1.0, 1.0).acos().to_degrees();
    let mut hue = if b > g { 360.0 - theta } else { theta };
    if hue >= 360.0 {
        hue -= 360.0;
    }

    HsiPoint {
        hue,
        saturation,
        intensity,
    }
}

/// Inverse conversion, used when rendering swatches. Out-of-gamut values
/// (possible for saturated points at high intensity) are clamped per
/// channel.
pub fn hsi_to_rgb(p: HsiPoint) -> RgbPixel {
    let s = p.saturation / 100.0;
    let i = p.intensity;
    let h = p.hue.rem_euclid(360.0);

    let sector = |h: f64| -> (f64, f64, f64) {
        let hr = h.to_radians();
        let x = i * (1.0 - s);
        let y = i * (1.0 + s * hr.cos() / (60.0f64.to_radians() - hr).cos());
        let z = 3.0 * i - (x + y);
        (x, y, z)
    };

    let (r, g, b) = if h < 120.0 {
        let (x, y, z) = sector(h);
        (y, z, x)
    } else if h < 240.0 {
        let (x, y, z) = sector(h - 120.0);
        (x, y, z)
    } else {
        let (x, y, z) = sector(h - 240.0);
        (z, x, y)
    };

    let to_u8 = |v: f64| v.round().clamp(0.0, 255.0) as u8;
    RgbPixel::new(to_u8(r), to_u8(g), to_u8(b))
}

/// Circular distance between two hues in degrees; always in [0, 180].
pub fn hue_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % 360.0;
    d.min(360.0 - d)
}
