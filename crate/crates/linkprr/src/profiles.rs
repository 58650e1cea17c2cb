//! Built-in radio/channel profiles and their JSON wire formats.
//!
//! Radio JSON (strict; unknown keys rejected):
//!
//! ```json
//! {
//!   "name": "mica2",
//!   "pt_dbm": 5.0,
//!   "pn_dbm": -104.0,
//!   "modulation": "ncfsk",
//!   "frame_bytes": 50,
//!   "preamble_bytes": 2
//! }
//! ```
//!
//! Channel JSON: `{"d0_m": 1.0, "pl_d0_db": 55.0, "n": 4.0, "sigma_db": 4.0}`.

use alloc::string::{String, ToString};

use serde::{Deserialize, Serialize};

use crate::channel::ChannelProfile;
use crate::error::Error;
use crate::link::FrameSpec;
use crate::modem::Modulation;

/// A radio's link-budget parameters plus its modulation and framing.
#[derive(Debug, Clone, PartialEq)]
pub struct RadioProfile {
    pub name: String,
    /// Transmit power, dBm.
    pub pt_dbm: f64,
    /// Noise floor, dBm.
    pub pn_dbm: f64,
    pub modulation: Modulation,
    pub frame: FrameSpec,
}

impl RadioProfile {
    pub fn validate(&self) -> Result<(), Error> {
        if !self.pt_dbm.is_finite() {
            return Err(Error::InvalidProfile {
                field: "pt_dbm",
                reason: alloc::format!("invalid value {}", self.pt_dbm),
            });
        }
        if !self.pn_dbm.is_finite() {
            return Err(Error::InvalidProfile {
                field: "pn_dbm",
                reason: alloc::format!("invalid value {}", self.pn_dbm),
            });
        }
        if self.pt_dbm <= self.pn_dbm {
            return Err(Error::InvalidProfile {
                field: "pt_dbm",
                reason: alloc::format!(
                    "pt_dbm ({}) must exceed pn_dbm ({}); the link has no margin",
                    self.pt_dbm,
                    self.pn_dbm
                ),
            });
        }
        self.frame.validate()
    }

    /// Parse and validate from the strict radio JSON schema.
    pub fn from_json_str(json: &str) -> Result<Self, Error> {
        let dto: RadioProfileJson =
            serde_json::from_str(json).map_err(|e| Error::Json(e.to_string()))?;
        let radio = RadioProfile {
            name: dto.name,
            pt_dbm: dto.pt_dbm,
            pn_dbm: dto.pn_dbm,
            modulation: dto.modulation,
            frame: FrameSpec {
                frame_bytes: dto.frame_bytes,
                preamble_bytes: dto.preamble_bytes,
            },
        };
        radio.validate()?;
        Ok(radio)
    }

    /// Serialize to the radio JSON schema. Output is byte-stable: the same
    /// profile always produces the same text.
    pub fn to_json_string(&self) -> String {
        let dto = RadioProfileJson {
            name: self.name.clone(),
            pt_dbm: self.pt_dbm,
            pn_dbm: self.pn_dbm,
            modulation: self.modulation,
            frame_bytes: self.frame.frame_bytes,
            preamble_bytes: self.frame.preamble_bytes,
        };
        serde_json::to_string_pretty(&dto).expect("radio profile serialization")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RadioProfileJson {
    name: String,
    pt_dbm: f64,
    pn_dbm: f64,
    modulation: Modulation,
    frame_bytes: u32,
    preamble_bytes: u32,
}

/// Parse and validate a channel profile from its JSON schema.
pub fn channel_from_json_str(json: &str) -> Result<ChannelProfile, Error> {
    let ch: ChannelProfile =
        serde_json::from_str(json).map_err(|e| Error::Json(e.to_string()))?;
    ch.validate()?;
    Ok(ch)
}

/// Serialize a channel profile; byte-stable like the radio form.
pub fn channel_to_json_string(ch: &ChannelProfile) -> String {
    serde_json::to_string_pretty(ch).expect("channel profile serialization")
}

/// Look up a built-in radio. Valid names: `"mica2"`, `"tinynode"`.
///
/// Both built-ins default to NCFSK (each device carries an FSK radio) with a
/// 50-byte frame and 2-byte preamble; override via a radio JSON file when a
/// different pairing is wanted.
pub fn builtin_radio(name: &str) -> Result<RadioProfile, Error> {
    match name {
        "mica2" => Ok(RadioProfile {
            name: String::from("mica2"),
            pt_dbm: 5.0,
            pn_dbm: -104.0,
            modulation: Modulation::Ncfsk,
            frame: FrameSpec::default(),
        }),
        "tinynode" => Ok(RadioProfile {
            name: String::from("tinynode"),
            pt_dbm: 12.0,
            pn_dbm: -116.0,
            modulation: Modulation::Ncfsk,
            frame: FrameSpec::default(),
        }),
        other => Err(Error::UnknownRadio(String::from(other))),
    }
}
