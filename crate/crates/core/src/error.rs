use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("speed beta = {0} outside the allowed range")]
    InvalidBeta(f64),
    #[error("energy ratio E/m = {0} must be finite and at least 1")]
    InvalidEnergyRatio(f64),
    #[error("mass {0} must be finite and positive")]
    InvalidMass(f64),
    #[error("direction {0} must be finite and nonzero")]
    InvalidDirection(String),
    #[error("measurement direction has norm {0}, expected 1")]
    NotUnit(f64),
    #[error("four-momentum off mass shell: E^2 - |p|^2 = {got}, m^2 = {expected}")]
    OffMassShell { got: f64, expected: f64 },
    #[error("a momentum-conserved pair needs a moving particle, got p = 0")]
    RestMomentum,
    #[error("observable undefined at beta = 1 for a direction perpendicular to the boost")]
    DegenerateObservable,
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
