use std::io::Write;
use std::path::PathBuf;

use qhopf::ResultTable;

use crate::config::{ExperimentConfig, Format};
use crate::CliError;

/// Directory for output files when `--output` is not given.
pub const OUTPUT_DIR_ENV: &str = "QHOPF_OUTPUT_DIR";

pub fn render(table: &ResultTable, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json(),
    })
}

/// `--output`, else `$QHOPF_OUTPUT_DIR/<subcommand>.<ext>`, else stdout.
pub fn destination(config: &ExperimentConfig) -> Option<PathBuf> {
    if let Some(path) = &config.params.output {
        return Some(path.clone());
    }
    let dir = std::env::var_os(OUTPUT_DIR_ENV)?;
    let name = format!(
        "{}.{}",
        config.subcommand.name(),
        config.format().extension()
    );
    Some(PathBuf::from(dir).join(name))
}

pub fn write(table: &ResultTable, config: &ExperimentConfig) -> Result<(), CliError> {
    let text = render(table, config.format())?;
    match destination(config) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|source| CliError::Io {
                    path: parent.to_path_buf(),
                    source,
                })?;
            }
            std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}
