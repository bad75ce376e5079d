//! Defining-polynomial overrides.
//!
//! Config files are UTF-8 lines of the form `m=<int> poly=0x<hex>`; blank
//! lines and `#` comments are ignored, anything else is a hard error.
//! Unknown m falls back to the built-in table.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{default_poly, is_irreducible};

/// Resolved polynomial table: explicit overrides in front of the built-ins.
#[derive(Debug, Clone, Default)]
pub struct PolyTable {
    overrides: BTreeMap<u32, u32>,
}

impl PolyTable {
    pub fn builtin() -> PolyTable {
        PolyTable::default()
    }

    pub fn from_config_str(text: &str) -> Result<PolyTable> {
        let mut overrides = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let s = raw.trim();
            if s.is_empty() || s.starts_with('#') {
                continue;
            }
            let mut m_val: Option<u32> = None;
            let mut poly_val: Option<u32> = None;
            for tok in s.split_whitespace() {
                if let Some(v) = tok.strip_prefix("m=") {
                    m_val = Some(v.parse().map_err(|_| Error::ConfigParse {
                        line,
                        msg: format!("bad m value `{v}`"),
                    })?);
                } else if let Some(v) = tok.strip_prefix("poly=") {
                    let hex = v.strip_prefix("0x").ok_or_else(|| Error::ConfigParse {
                        line,
                        msg: format!("poly `{v}` must start with 0x"),
                    })?;
                    poly_val =
                        Some(u32::from_str_radix(hex, 16).map_err(|_| Error::ConfigParse {
                            line,
                            msg: format!("bad hex in `{v}`"),
                        })?);
                } else {
                    return Err(Error::ConfigParse {
                        line,
                        msg: format!("unrecognized token `{tok}`"),
                    });
                }
            }
            match (m_val, poly_val) {
                (Some(m), Some(poly)) => {
                    if !is_irreducible(poly, m) {
                        return Err(Error::ConfigParse {
                            line,
                            msg: format!("poly {poly:#x} is not irreducible of degree {m}"),
                        });
                    }
                    overrides.insert(m, poly);
                }
                _ => {
                    return Err(Error::ConfigParse {
                        line,
                        msg: "line must contain both m= and poly=".into(),
                    })
                }
            }
        }
        Ok(PolyTable { overrides })
    }

    pub fn poly_for(&self, m: u32) -> Result<u32> {
        if let Some(&p) = self.overrides.get(&m) {
            return Ok(p);
        }
        default_poly(m)
    }
}
