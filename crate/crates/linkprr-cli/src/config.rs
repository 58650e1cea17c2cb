//! Radio/channel resolution: built-in names or JSON files on disk.

use std::fs;
use std::path::Path;

use linkprr::profiles::{self, builtin_radio};
use linkprr::{ChannelProfile, RadioProfile};

use crate::CliError;

/// Resolve `--radio`: a built-in name wins, anything else is read as a
/// radio JSON file.
pub fn load_radio(spec: &str) -> Result<RadioProfile, CliError> {
    if let Ok(radio) = builtin_radio(spec) {
        return Ok(radio);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "--radio {spec:?} is neither a built-in profile (mica2, tinynode) \
             nor an existing radio JSON file"
        )));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
    RadioProfile::from_json_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Resolve `--channel`: absent means the built-in default channel.
pub fn load_channel(path: Option<&Path>) -> Result<ChannelProfile, CliError> {
    let Some(path) = path else {
        return Ok(ChannelProfile::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))?;
    profiles::channel_from_json_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}
