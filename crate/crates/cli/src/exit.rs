//! Exit-code discipline: 0 success, 2 config error, 3 data error,
//! 4 backend error, 5 partial results.

use popcmt_core::Error as CoreError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_BACKEND: i32 = 4;
pub const EXIT_PARTIAL: i32 = 5;

/// An error already classified with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub err: anyhow::Error,
}

pub type CliResult<T> = Result<T, CliError>;

/// Classify a core error by variant; stage wrappers defer to their cause.
pub fn classify_core(err: &CoreError) -> i32 {
    match err {
        CoreError::InvalidConfig(_) | CoreError::InvalidArgument(_) => EXIT_CONFIG,
        CoreError::Backend { .. }
        | CoreError::Timeout
        | CoreError::Generator(_)
        | CoreError::JudgeUnparseable { .. } => EXIT_BACKEND,
        CoreError::Stage { source, .. } => classify_core(source),
        _ => EXIT_DATA,
    }
}

/// Attach an exit code class to any error type.
pub trait Classify<T> {
    fn config_err(self) -> CliResult<T>;
    fn data_err(self) -> CliResult<T>;
    /// Classify by inspecting the core error variant.
    fn core_err(self) -> CliResult<T>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn config_err(self) -> CliResult<T> {
        self.map_err(|e| CliError {
            code: EXIT_CONFIG,
            err: e.into(),
        })
    }

    fn data_err(self) -> CliResult<T> {
        self.map_err(|e| CliError {
            code: EXIT_DATA,
            err: e.into(),
        })
    }

    fn core_err(self) -> CliResult<T> {
        self.map_err(|e| {
            let err: anyhow::Error = e.into();
            let code = err
                .downcast_ref::<CoreError>()
                .map(classify_core)
                .unwrap_or(EXIT_DATA);
            CliError { code, err }
        })
    }
}
