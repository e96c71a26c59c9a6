//! 8-bit image files: binary PGM/PPM (`P5`/`P6`, maxval 255) and PNG.
//!
//! Reading maps a stored byte `s` to `s / 255`. Writing quantizes once with
//! `round(v * 255)`, rounding halves away from zero, so a load of a saved
//! image reproduces every sample that was already a multiple of `1/255`.

use std::io::Cursor;
use std::path::Path;

use crate::error::{Error, Result};
use crate::raster::Image;

/// On-disk container.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    /// `P5` for one band, `P6` for three.
    Pnm,
    Png,
}

impl FileFormat {
    /// Picks a format from the file extension; anything but `.png` is
    /// written as PNM.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("png") => FileFormat::Png,
            _ => FileFormat::Pnm,
        }
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    decode_image(&bytes)
}

pub fn save_image(image: &Image, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode_image(image, FileFormat::from_path(path))?;
    std::fs::write(path, bytes).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Decodes PNM or PNG bytes, sniffing the format from the magic number.
pub fn decode_image(bytes: &[u8]) -> Result<Image> {
    if bytes.starts_with(b"\x89PNG") {
        decode_png(bytes)
    } else if bytes.starts_with(b"P5") || bytes.starts_with(b"P6") {
        decode_pnm(bytes)
    } else if bytes.len() >= 2 && bytes[0] == b'P' && bytes[1].is_ascii_digit() {
        Err(Error::UnsupportedFormat(format!(
            "netpbm variant P{} (only binary P5/P6 are supported)",
            bytes[1] as char
        )))
    } else if bytes.is_empty() {
        Err(Error::Truncated("empty file".into()))
    } else {
        Err(Error::UnsupportedFormat("unrecognized magic number".into()))
    }
}

pub fn encode_image(image: &Image, format: FileFormat) -> Result<Vec<u8>> {
    match format {
        FileFormat::Pnm => encode_pnm(image),
        FileFormat::Png => encode_png(image),
    }
}

/// `round(v * 255)` with halves rounded away from zero.
#[inline]
pub fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

fn interleaved_bytes(image: &Image) -> Result<Vec<u8>> {
    let bands = image.bands();
    if bands != 1 && bands != 3 {
        return Err(Error::UnsupportedFormat(format!(
            "{bands}-band images cannot be stored, only 1 or 3 bands"
        )));
    }
    let n = image.width() * image.height();
    let mut out = Vec::with_capacity(n * bands);
    for i in 0..n {
        for b in 0..bands {
            out.push(quantize(image.plane(b)[i]));
        }
    }
    Ok(out)
}

fn from_interleaved(width: usize, height: usize, bands: usize, data: &[u8]) -> Result<Image> {
    let n = width * height;
    let mut planes = vec![Vec::with_capacity(n); bands];
    for px in data[..n * bands].chunks_exact(bands) {
        for (plane, &s) in planes.iter_mut().zip(px) {
            plane.push(f64::from(s) / 255.0);
        }
    }
    Image::from_planes(width, height, planes)
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderReader<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return if self.pos >= self.bytes.len() {
                Err(Error::Truncated(format!("header ends before {what}")))
            } else {
                Err(Error::UnsupportedFormat(format!(
                    "malformed {what} in header"
                )))
            };
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::UnsupportedFormat(format!("{what} out of range")))
    }
}

fn decode_pnm(bytes: &[u8]) -> Result<Image> {
    let bands = if bytes[1] == b'5' { 1 } else { 3 };
    let mut header = HeaderReader { bytes, pos: 2 };
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::ZeroDimensions);
    }
    if maxval != 255 {
        return Err(Error::UnsupportedFormat(format!(
            "maxval {maxval} (only 8-bit maxval 255 is supported)"
        )));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(header.pos) {
        Some(c) if c.is_ascii_whitespace() => header.pos += 1,
        Some(_) => {
            return Err(Error::UnsupportedFormat(
                "missing whitespace after maxval".into(),
            ))
        }
        None => return Err(Error::Truncated("no raster data".into())),
    }
    let needed = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(bands))
        .ok_or_else(|| Error::UnsupportedFormat("dimensions overflow".into()))?;
    let data = &bytes[header.pos..];
    if data.len() < needed {
        return Err(Error::Truncated(format!(
            "expected {needed} raster bytes, found {}",
            data.len()
        )));
    }
    from_interleaved(width, height, bands, data)
}

fn encode_pnm(image: &Image) -> Result<Vec<u8>> {
    let magic = match image.bands() {
        1 => "P5",
        3 => "P6",
        n => {
            return Err(Error::UnsupportedFormat(format!(
                "{n}-band images cannot be stored as PNM"
            )))
        }
    };
    let mut out = format!("{magic}\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend(interleaved_bytes(image)?);
    Ok(out)
}

fn decode_png(bytes: &[u8]) -> Result<Image> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(png_error)?;
    let (w, h) = {
        let info = reader.info();
        (info.width as usize, info.height as usize)
    };
    if w == 0 || h == 0 {
        return Err(Error::ZeroDimensions);
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::UnsupportedFormat("png frame too large".into()))?;
    let mut buf = vec![0; size];
    let frame = reader.next_frame(&mut buf).map_err(png_error)?;
    if frame.bit_depth != png::BitDepth::Eight {
        return Err(Error::UnsupportedFormat(format!(
            "png bit depth {:?} (only 8-bit is supported)",
            frame.bit_depth
        )));
    }
    let bands = match frame.color_type {
        png::ColorType::Grayscale => 1,
        png::ColorType::Rgb => 3,
        png::ColorType::GrayscaleAlpha | png::ColorType::Rgba => {
            return Err(Error::UnsupportedFormat("png with alpha channel".into()))
        }
        other => {
            return Err(Error::UnsupportedFormat(format!(
                "png color type {other:?}"
            )))
        }
    };
    let width = frame.width as usize;
    let height = frame.height as usize;
    let line = frame.line_size;
    let mut packed = Vec::with_capacity(width * height * bands);
    for row in buf.chunks(line).take(height) {
        packed.extend_from_slice(&row[..width * bands]);
    }
    from_interleaved(width, height, bands, &packed)
}

fn png_error(e: png::DecodingError) -> Error {
    match e {
        png::DecodingError::IoError(io) if io.kind() == std::io::ErrorKind::UnexpectedEof => {
            Error::Truncated(io.to_string())
        }
        other => Error::Png(other.to_string()),
    }
}

fn encode_png(image: &Image) -> Result<Vec<u8>> {
    let color = match image.bands() {
        1 => png::ColorType::Grayscale,
        3 => png::ColorType::Rgb,
        n => {
            return Err(Error::UnsupportedFormat(format!(
                "{n}-band images cannot be stored as PNG"
            )))
        }
    };
    let data = interleaved_bytes(image)?;
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, image.width() as u32, image.height() as u32);
        encoder.set_color(color);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder
            .write_header()
            .map_err(|e| Error::Png(e.to_string()))?;
        writer
            .write_image_data(&data)
            .map_err(|e| Error::Png(e.to_string()))?;
        writer.finish().map_err(|e| Error::Png(e.to_string()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgm_scaling() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend([0, 255, 128, 64]);
        let img = decode_image(&bytes).unwrap();
        assert_eq!(img.bands(), 1);
        assert_eq!(img.plane(0), &[0.0, 1.0, 128.0 / 255.0, 64.0 / 255.0]);
    }

    #[test]
    fn ppm_single_pixel() {
        let mut bytes = b"P6 1 1 255\n".to_vec();
        bytes.extend([255, 0, 0]);
        let img = decode_image(&bytes).unwrap();
        assert_eq!(img.bands(), 3);
        assert_eq!(
            (img.get(0, 0, 0), img.get(1, 0, 0), img.get(2, 0, 0)),
            (1.0, 0.0, 0.0)
        );
    }

    #[test]
    fn header_comments_are_skipped() {
        let mut bytes = b"P5\n# made by hand\n1 # width done\n1\n255\n".to_vec();
        bytes.push(51);
        assert_eq!(decode_image(&bytes).unwrap().get(0, 0, 0), 0.2);
    }

    #[test]
    fn distinct_errors() {
        assert!(matches!(
            decode_image(b"P5\n0 4\n255\n"),
            Err(Error::ZeroDimensions)
        ));
        assert!(matches!(
            decode_image(b"P5\n2 2\n255\n\x00\x01"),
            Err(Error::Truncated(_))
        ));
        assert!(matches!(
            decode_image(b"P5\n2 2\n"),
            Err(Error::Truncated(_))
        ));
        assert!(matches!(
            decode_image(b"P2\n1 1\n255\n0"),
            Err(Error::UnsupportedFormat(_))
        ));
        assert!(matches!(
            decode_image(b"P5\n1 1\n65535\n\0\0"),
            Err(Error::UnsupportedFormat(_))
        ));
        assert!(matches!(
            decode_image(b"GIF89a"),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn quantization_rounds_half_away_from_zero() {
        assert_eq!(quantize(0.5), 128);
        assert_eq!(quantize(1.0), 255);
        assert_eq!(quantize(0.0), 0);
    }

    #[test]
    fn png_alpha_is_rejected() {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, 1, 1);
            enc.set_color(png::ColorType::Rgba);
            enc.set_depth(png::BitDepth::Eight);
            let mut w = enc.write_header().unwrap();
            w.write_image_data(&[1, 2, 3, 4]).unwrap();
        }
        assert!(matches!(
            decode_image(&out),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn truncated_png() {
        let img = Image::filled(8, 8, 3, 0.3).unwrap();
        let bytes = encode_image(&img, FileFormat::Png).unwrap();
        let cut = &bytes[..bytes.len() / 2];
        assert!(decode_image(cut).is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(FileFormat::from_path(Path::new("a/b.PNG")), FileFormat::Png);
        assert_eq!(FileFormat::from_path(Path::new("a/b.pgm")), FileFormat::Pnm);
    }

    fn quantized_image() -> impl proptest::strategy::Strategy<Value = Image> {
        use proptest::prelude::*;
        (
            1usize..9,
            1usize..9,
            prop_oneof![Just(1usize), Just(3usize)],
        )
            .prop_flat_map(|(w, h, c)| {
                proptest::collection::vec(proptest::collection::vec(0u8..=255, w * h), c).prop_map(
                    move |planes| {
                        let planes = planes
                            .into_iter()
                            .map(|p| p.into_iter().map(|s| f64::from(s) / 255.0).collect())
                            .collect();
                        Image::from_planes(w, h, planes).unwrap()
                    },
                )
            })
    }

    proptest::proptest! {
        #[test]
        fn round_trip_is_exact(img in quantized_image(), png in proptest::bool::ANY) {
            let fmt = if png { FileFormat::Png } else { FileFormat::Pnm };
            let bytes = encode_image(&img, fmt).unwrap();
            let back = decode_image(&bytes).unwrap();
            proptest::prop_assert_eq!(back.max_abs_diff(&img), Some(0.0));
        }
    }
}
