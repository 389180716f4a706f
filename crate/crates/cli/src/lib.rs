//! Command-line front end for `sl2jets`: verification suites, computations and
//! their JSON formats.

pub mod app;
pub mod format;
pub mod report;
pub mod suites;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] sl2jets::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(sl2jets::Error::Usage(_) | sl2jets::Error::Parse(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub const TORUS_FIXTURE: &str = include_str!("../fixtures/torus.json");
pub const SPHERE_FIXTURE: &str = include_str!("../fixtures/sphere.json");
