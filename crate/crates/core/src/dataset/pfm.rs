//! Grayscale PFM (`Pf`) float maps: text header, then rows of `f32` from
//! the bottom row up. A negative scale marks little-endian data.

use std::fs;
use std::path::Path;

use super::image_io::ensure_parent;
use crate::error::{Error, Result};
use crate::imgcore::FloatMap;

fn malformed(reason: impl Into<String>) -> Error {
    Error::Pfm {
        path: None,
        reason: reason.into(),
    }
}

/// Encodes as little-endian `Pf` with scale `-1.0`.
pub fn encode_pfm(map: &FloatMap) -> Vec<u8> {
    let (h, w) = map.dims();
    let mut out = format!("Pf\n{w} {h}\n-1.0\n").into_bytes();
    out.reserve(h * w * 4);
    for y in (0..h).rev() {
        for x in 0..w {
            out.extend_from_slice(&map.get(y, x).to_le_bytes());
        }
    }
    out
}

pub fn decode_pfm(bytes: &[u8]) -> Result<FloatMap> {
    // Header: three whitespace-terminated tokens groups: magic, "w h", scale.
    let mut pos = 0;
    let mut token = || -> Result<&str> {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err(malformed("truncated header"));
        }
        std::str::from_utf8(&bytes[start..pos]).map_err(|_| malformed("non-ASCII header"))
    };
    match token()? {
        "Pf" => {}
        "PF" => return Err(malformed("three-channel PF maps are not supported")),
        other => return Err(malformed(format!("bad magic `{other}`"))),
    }
    let w: usize = token()?.parse().map_err(|_| malformed("bad width"))?;
    let h: usize = token()?.parse().map_err(|_| malformed("bad height"))?;
    let scale: f64 = token()?.parse().map_err(|_| malformed("bad scale"))?;
    if scale == 0.0 || !scale.is_finite() {
        return Err(malformed("scale must be a non-zero number"));
    }
    if w == 0 || h == 0 {
        return Err(malformed("zero dimension"));
    }
    // Exactly one whitespace byte separates the header from the payload.
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(malformed("truncated header"));
    }
    pos += 1;
    let payload = &bytes[pos..];
    let need = w
        .checked_mul(h)
        .and_then(|n| n.checked_mul(4))
        .ok_or_else(|| malformed("dimensions overflow"))?;
    if payload.len() < need {
        return Err(malformed(format!("truncated payload: {} of {need} bytes", payload.len())));
    }
    let little = scale < 0.0;
    let mut map = FloatMap::zeros(h, w);
    for (i, chunk) in payload[..need].chunks_exact(4).enumerate() {
        let b = [chunk[0], chunk[1], chunk[2], chunk[3]];
        let v = if little { f32::from_le_bytes(b) } else { f32::from_be_bytes(b) };
        let (row, x) = (i / w, i % w);
        map.set(h - 1 - row, x, v);
    }
    Ok(map)
}

pub fn write_float_map(map: &FloatMap, path: &Path) -> Result<()> {
    ensure_parent(path)?;
    fs::write(path, encode_pfm(map)).map_err(|e| Error::io(path, e))
}

pub fn read_float_map(path: &Path) -> Result<FloatMap> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_pfm(&bytes).map_err(|e| match e {
        Error::Pfm { reason, .. } => Error::Pfm {
            path: Some(path.to_path_buf()),
            reason,
        },
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golden_two_by_two() {
        let m = FloatMap::new(2, 2, vec![0.0, 1.0, 2.0, 3.0]).unwrap();
        let mut expected = b"Pf\n2 2\n-1.0\n".to_vec();
        // bottom row (2, 3) first, then (0, 1); little-endian IEEE-754
        expected.extend_from_slice(&[0x00, 0x00, 0x00, 0x40, 0x00, 0x00, 0x40, 0x40]);
        expected.extend_from_slice(&[0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x80, 0x3F]);
        assert_eq!(encode_pfm(&m), expected);
        assert_eq!(decode_pfm(&expected).unwrap(), m);
    }

    #[test]
    fn zero_map_and_big_endian() {
        let z = FloatMap::zeros(3, 5);
        assert_eq!(decode_pfm(&encode_pfm(&z)).unwrap(), z);
        let mut be = b"Pf 1 1 1.0\n".to_vec();
        be.extend_from_slice(&2.5f32.to_be_bytes());
        assert_eq!(decode_pfm(&be).unwrap().get(0, 0), 2.5);
    }

    #[test]
    fn malformed_inputs() {
        assert!(decode_pfm(b"P5\n1 1\n255\n").is_err());
        assert!(decode_pfm(b"Pf\n2 2\n-1.0\n\0\0\0\0").is_err());
        assert!(decode_pfm(b"Pf\n2").is_err());
        assert!(decode_pfm(b"PF\n1 1\n-1.0\n000000000000").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(h in 1usize..9, w in 1usize..9, seed in any::<u64>()) {
            let mut s = seed;
            let m = FloatMap::from_fn(h, w, |_, _| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let v = f32::from_bits((s >> 32) as u32);
                if v.is_finite() { v } else { 0.5 }
            });
            let back = decode_pfm(&encode_pfm(&m)).unwrap();
            let bits = |m: &FloatMap| m.as_raw().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
            prop_assert_eq!(bits(&back), bits(&m));
        }
    }
}
