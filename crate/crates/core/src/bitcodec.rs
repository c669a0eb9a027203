//! Integer vectors to exact-length, MSB-first bit streams, and their files.
//!
//! Two encodings are provided. The bitwise encoding concatenates the
//! minimal binary representation of every integer with no padding between
//! them. The byte-aligned encoding starts every integer on a byte boundary,
//! which leaves up to seven leading zero bits per integer; it is kept as a
//! regression mode because those zeros are exactly what a randomness test
//! should pick up.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact number of bits packed most-significant-bit first. Padding bits
/// in the final byte are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitStream {
    bit_length: u64,
    payload: Vec<u8>,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps a payload, checking its size and padding against `bit_length`.
    pub fn from_parts(payload: Vec<u8>, bit_length: u64) -> Result<Self> {
        let expected = bit_length.div_ceil(8);
        if payload.len() as u64 != expected {
            return Err(Error::format(format!(
                "{bit_length} bits need {expected} bytes, payload has {}",
                payload.len()
            )));
        }
        let tail = (bit_length % 8) as u32;
        if tail != 0 && payload[payload.len() - 1] & (0xFF >> tail) != 0 {
            return Err(Error::format("non-zero padding bits after the last bit"));
        }
        Ok(Self {
            bit_length,
            payload,
        })
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut s = Self::new();
        for b in bits {
            s.push_bit(b);
        }
        s
    }

    /// Parses a string of `'0'`/`'1'` characters.
    pub fn from_ascii(text: &str) -> Result<Self> {
        let mut s = Self::new();
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => s.push_bit(false),
                '1' => s.push_bit(true),
                other => {
                    return Err(Error::format(format!(
                        "character {other:?} at offset {i} is not a bit"
                    )))
                }
            }
        }
        Ok(s)
    }

    pub fn bit_length(&self) -> u64 {
        self.bit_length
    }

    pub fn len(&self) -> usize {
        self.bit_length as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bit_length == 0
    }

    pub fn payload(&self) -> &[u8] {
        &self.payload
    }

    pub fn into_payload(self) -> Vec<u8> {
        self.payload
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!((i as u64) < self.bit_length, "bit {i} out of range");
        self.payload[i / 8] & (0x80 >> (i % 8)) != 0
    }

    pub fn bits(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len()).map(move |i| self.bit(i))
    }

    /// One byte per bit, each 0 or 1.
    pub fn to_bit_vec(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        for (k, &byte) in self.payload.iter().enumerate() {
            let take = (self.bit_length - 8 * k as u64).min(8) as u32;
            for s in 0..take {
                out.push((byte >> (7 - s)) & 1);
            }
        }
        out
    }

    pub fn push_bit(&mut self, bit: bool) {
        let off = (self.bit_length % 8) as u32;
        if off == 0 {
            self.payload.push(0);
        }
        if bit {
            *self.payload.last_mut().unwrap() |= 0x80 >> off;
        }
        self.bit_length += 1;
    }

    /// Appends the low `count` bits of `byte`, most significant first.
    fn push_low_bits(&mut self, byte: u8, count: u32) {
        debug_assert!((1..=8).contains(&count));
        let value = byte & (0xFFu16 >> (8 - count)) as u8;
        let off = (self.bit_length % 8) as u32;
        if off == 0 {
            self.payload.push(value << (8 - count));
        } else {
            let free = 8 - off;
            let last = self.payload.last_mut().unwrap();
            if count <= free {
                *last |= value << (free - count);
            } else {
                *last |= value >> (count - free);
                self.payload.push(value << (8 - (count - free)));
            }
        }
        self.bit_length += count as u64;
    }

    /// Appends whole bytes.
    pub fn push_bytes(&mut self, bytes: &[u8]) {
        if self.bit_length.is_multiple_of(8) {
            self.payload.extend_from_slice(bytes);
            self.bit_length += 8 * bytes.len() as u64;
        } else {
            for &b in bytes {
                self.push_low_bits(b, 8);
            }
        }
    }

    pub fn extend(&mut self, other: &BitStream) {
        let full = other.bit_length / 8;
        self.push_bytes(&other.payload[..full as usize]);
        let tail = (other.bit_length % 8) as u32;
        if tail != 0 {
            let last = other.payload[full as usize];
            self.push_low_bits(last >> (8 - tail), tail);
        }
    }

    pub fn concat(mut self, other: &BitStream) -> BitStream {
        self.extend(other);
        self
    }

    /// Bitwise complement over the first `bit_length` bits.
    pub fn complement(&self) -> BitStream {
        let mut payload: Vec<u8> = self.payload.iter().map(|b| !b).collect();
        let tail = (self.bit_length % 8) as u32;
        if tail != 0 {
            *payload.last_mut().unwrap() &= 0xFF << (8 - tail);
        }
        BitStream {
            bit_length: self.bit_length,
            payload,
        }
    }

    pub fn to_ascii(&self) -> String {
        self.bits().map(|b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bit_length <= 64 {
            write!(f, "BitStream({})", self.to_ascii())
        } else {
            write!(f, "BitStream({} bits)", self.bit_length)
        }
    }
}

/// Integers the codec accepts. Negative values are refused rather than
/// given a two's-complement form.
pub trait Encodable {
    fn magnitude_for_encoding(&self) -> Result<&BigUint>;
}

impl Encodable for BigUint {
    fn magnitude_for_encoding(&self) -> Result<&BigUint> {
        Ok(self)
    }
}

impl Encodable for BigInt {
    fn magnitude_for_encoding(&self) -> Result<&BigUint> {
        if self.sign() == Sign::Minus {
            return Err(Error::NegativeComponent {
                index: 0,
                value: self.to_string(),
            });
        }
        Ok(self.magnitude())
    }
}

/// Number of bits in the minimal representation; zero takes one bit.
pub fn bit_len(v: &BigUint) -> u64 {
    v.bits().max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum EncodingMode {
    /// Minimal representations, no padding between integers.
    #[default]
    Bitwise,
    /// Every integer starts on a byte boundary.
    ByteAligned,
}

impl fmt::Display for EncodingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EncodingMode::Bitwise => "bitwise",
            EncodingMode::ByteAligned => "byte-aligned",
        })
    }
}

impl std::str::FromStr for EncodingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "bitwise" => Ok(EncodingMode::Bitwise),
            "byte-aligned" => Ok(EncodingMode::ByteAligned),
            other => Err(Error::InvalidArgument(format!(
                "unknown encoding mode {other:?} (expected bitwise or byte-aligned)"
            ))),
        }
    }
}

fn append_minimal(out: &mut BitStream, v: &BigUint) {
    if v.is_zero() {
        out.push_bit(false);
        return;
    }
    let bytes = v.to_bytes_be();
    let lead = (v.bits() - 8 * (bytes.len() as u64 - 1)) as u32;
    out.push_low_bits(bytes[0], lead);
    out.push_bytes(&bytes[1..]);
}

/// Minimal MSB-first binary representation of `v`.
pub fn encode_integer<T: Encodable>(v: &T) -> Result<BitStream> {
    let mut s = BitStream::new();
    append_minimal(&mut s, v.magnitude_for_encoding()?);
    Ok(s)
}

/// Concatenates the minimal representations with no padding between them.
pub fn encode_vector<T: Encodable>(components: &[T]) -> Result<BitStream> {
    encode_with_mode(components, EncodingMode::Bitwise)
}

/// Left-pads every representation to whole bytes before concatenating.
pub fn encode_vector_byte_aligned<T: Encodable>(components: &[T]) -> Result<BitStream> {
    encode_with_mode(components, EncodingMode::ByteAligned)
}

pub fn encode_with_mode<T: Encodable>(components: &[T], mode: EncodingMode) -> Result<BitStream> {
    let mut s = BitStream::new();
    for (index, c) in components.iter().enumerate() {
        let v = c.magnitude_for_encoding().map_err(|e| match e {
            Error::NegativeComponent { value, .. } => Error::NegativeComponent { index, value },
            other => other,
        })?;
        match mode {
            EncodingMode::Bitwise => append_minimal(&mut s, v),
            EncodingMode::ByteAligned => s.push_bytes(&v.to_bytes_be()),
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StreamFormat {
    /// Payload bytes verbatim, bit length in a sidecar manifest.
    Raw,
    /// One `'0'`/`'1'` character per bit and a trailing newline.
    Ascii,
}

impl fmt::Display for StreamFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StreamFormat::Raw => "raw",
            StreamFormat::Ascii => "ascii",
        })
    }
}

/// Identity and symmetry certificate of the vector a stream was built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct SourceVector {
    /// `fvector` or `hvector`.
    pub kind: String,
    pub components: usize,
    /// SHA-256 of the vector's text serialization.
    pub sha256: String,
    /// `f_j = f_{n-1-j}` on the source f-vector.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetrical: Option<bool>,
    /// `h_i = h_{n-i}` on the h-vector the source was built from.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dehn_sommerville: Option<bool>,
}

/// Sidecar `<name>.manifest.json` written next to a stream file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct StreamManifest {
    pub bit_length: u64,
    pub source_vector: SourceVector,
    pub construction: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
}

impl StreamManifest {
    /// A manifest carrying only the bit length.
    pub fn bare(bit_length: u64) -> Self {
        Self {
            bit_length,
            ..Default::default()
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Format {
            path: Some(path.to_path_buf()),
            message: e.to_string(),
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }
}

/// `stream.bin` -> `stream.manifest.json`
pub fn manifest_path(stream_path: &Path) -> PathBuf {
    stream_path.with_extension("manifest.json")
}

/// Writes `stream` to `path`. Raw output also writes the sidecar manifest;
/// when `manifest` is `None` a bare one is used. Its `bit_length` is always
/// taken from the stream.
pub fn write_stream(
    stream: &BitStream,
    format: StreamFormat,
    path: &Path,
    manifest: Option<&StreamManifest>,
) -> Result<()> {
    match format {
        StreamFormat::Raw => {
            std::fs::write(path, stream.payload()).map_err(|e| Error::io(path, e))?;
            let mut m = manifest.cloned().unwrap_or_default();
            m.bit_length = stream.bit_length();
            m.write(&manifest_path(path))
        }
        StreamFormat::Ascii => {
            let mut text = stream.to_ascii();
            text.push('\n');
            std::fs::write(path, text).map_err(|e| Error::io(path, e))
        }
    }
}

/// Inverse of [`write_stream`].
///
/// A raw file without a manifest is read as whole bytes. ASCII input may end
/// in one newline (`\n` or `\r\n`); any other non-bit character is an error.
pub fn read_stream(path: &Path, format: StreamFormat) -> Result<BitStream> {
    match format {
        StreamFormat::Raw => {
            let payload = std::fs::read(path).map_err(|e| Error::io(path, e))?;
            let mpath = manifest_path(path);
            let bit_length = if mpath.exists() {
                StreamManifest::read(&mpath)?.bit_length
            } else {
                8 * payload.len() as u64
            };
            if (payload.len() as u64) * 8 < bit_length {
                return Err(Error::Format {
                    path: Some(path.to_path_buf()),
                    message: format!(
                        "raw file has {} bytes but the manifest announces {bit_length} bits",
                        payload.len()
                    ),
                });
            }
            BitStream::from_parts(payload, bit_length).map_err(|e| e.with_path(path))
        }
        StreamFormat::Ascii => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let body = text
                .strip_suffix("\r\n")
                .or_else(|| text.strip_suffix('\n'))
                .unwrap_or(&text);
            BitStream::from_ascii(body).map_err(|e| e.with_path(path))
        }
    }
}
