use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Library(#[from] xfield::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for anything the user can fix in the invocation, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        use xfield::Error as E;
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Library(
                E::UnknownFamily(_)
                | E::InvalidParameter { .. }
                | E::ConformalDegenerate
                | E::DegreeZeroDegenerate
                | E::NotMaximallySymmetric { .. },
            ) => 2,
            CliError::Library(_) | CliError::Json(_) => 1,
        }
    }

    /// Stable machine-readable name of the failure.
    pub fn kind(&self) -> String {
        match self {
            CliError::Config(_) => "Config".into(),
            CliError::Io(_) => "Io".into(),
            CliError::Json(_) => "Json".into(),
            CliError::Library(e) => {
                let debug = format!("{e:?}");
                debug
                    .split(|c: char| !c.is_alphanumeric())
                    .next()
                    .unwrap_or_default()
                    .to_string()
            }
        }
    }
}
