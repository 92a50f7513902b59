//! A minimal GIF block walker. It reads frame delays, the loop extension
//! and the raw compressed bytes of each frame without decoding pixels.

#[derive(Debug, Default)]
pub struct GifInfo {
    pub width: u16,
    pub height: u16,
    pub loops: Option<u16>,
    pub frames: Vec<GifFrame>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GifFrame {
    /// Centiseconds from the preceding graphic control extension.
    pub delay: Option<u16>,
    pub left: u16,
    pub top: u16,
    pub width: u16,
    pub height: u16,
    /// LZW minimum code size followed by the concatenated data sub-blocks.
    pub data: Vec<u8>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], String> {
        let end = self.pos + n;
        let s = self.bytes.get(self.pos..end).ok_or("truncated GIF")?;
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, String> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, String> {
        let b = self.take(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn sub_blocks(&mut self) -> Result<Vec<u8>, String> {
        let mut out = Vec::new();
        loop {
            let len = self.u8()? as usize;
            if len == 0 {
                return Ok(out);
            }
            out.extend_from_slice(self.take(len)?);
        }
    }
}

pub fn read(bytes: &[u8]) -> Result<GifInfo, String> {
    let mut c = Cursor { bytes, pos: 0 };
    let sig = c.take(6)?;
    if sig != b"GIF89a" && sig != b"GIF87a" {
        return Err(format!("bad signature {sig:?}"));
    }
    let mut info = GifInfo {
        width: c.u16()?,
        height: c.u16()?,
        ..GifInfo::default()
    };
    let packed = c.u8()?;
    c.take(2)?;
    if packed & 0x80 != 0 {
        c.take(3 * (1 << ((packed & 7) + 1)))?;
    }
    let mut pending_delay = None;
    loop {
        match c.u8()? {
            0x21 => {
                let label = c.u8()?;
                let body = c.sub_blocks()?;
                match label {
                    0xF9 if body.len() >= 3 => {
                        pending_delay = Some(u16::from_le_bytes([body[1], body[2]]));
                    }
                    0xFF if body.starts_with(b"NETSCAPE2.0") && body.len() >= 14 => {
                        info.loops = Some(u16::from_le_bytes([body[12], body[13]]));
                    }
                    _ => {}
                }
            }
            0x2C => {
                let left = c.u16()?;
                let top = c.u16()?;
                let width = c.u16()?;
                let height = c.u16()?;
                let packed = c.u8()?;
                if packed & 0x80 != 0 {
                    c.take(3 * (1 << ((packed & 7) + 1)))?;
                }
                let mut data = vec![c.u8()?];
                data.extend(c.sub_blocks()?);
                info.frames.push(GifFrame {
                    delay: pending_delay.take(),
                    left,
                    top,
                    width,
                    height,
                    data,
                });
            }
            0x3B => return Ok(info),
            b => return Err(format!("unexpected block 0x{b:02x} at byte {}", c.pos - 1)),
        }
    }
}
