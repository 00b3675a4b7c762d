//! `key = value` config files. Keys are flag names without the dashes; the
//! values are spliced in ahead of the command-line flags, which therefore win.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use super::CliError;

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            return iter.next().cloned();
        }
        if let Some(path) = s.strip_prefix("--config=") {
            return Some(path.into());
        }
    }
    None
}

pub(crate) fn parse(text: &str, origin: &Path) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Param(format!("{}:{}: expected `key = value`", origin.display(), n + 1)))?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(CliError::Param(format!("{}:{}: empty key", origin.display(), n + 1)));
        }
        pairs.push((key.to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

pub(crate) fn merge_config(args: &[OsString]) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(args) else {
        return Ok(args.to_vec());
    };
    if args.len() < 2 {
        return Ok(args.to_vec());
    }
    let path = Path::new(&path);
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    let mut merged = args[..2].to_vec();
    for (key, value) in parse(&text, path)? {
        if key == "config" {
            continue;
        }
        merged.push(format!("--{key}").into());
        merged.push(value.into());
    }
    merged.extend_from_slice(&args[2..]);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs() {
        let text = "# comment\nw0 = -5\n\n--emax=80\n";
        let pairs = parse(text, Path::new("x")).unwrap();
        assert_eq!(pairs, vec![("w0".into(), "-5".into()), ("emax".into(), "80".into())]);
        assert!(parse("w0 -5", Path::new("x")).is_err());
    }

    #[test]
    fn no_config_is_identity() {
        let args: Vec<OsString> = ["hc", "bands", "--w0", "1"].iter().map(Into::into).collect();
        assert_eq!(merge_config(&args).unwrap(), args);
    }
}
