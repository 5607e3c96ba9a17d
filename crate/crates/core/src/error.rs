use core::fmt;

use crate::Complex64;

/// Which closed-form solution family a packet belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PacketMode {
    /// `Im(B0/A0) < 0`: normalizable Gaussian-type packet.
    Gaussian,
    /// `B0 = 0`: driven plane wave.
    PlaneWave,
}

impl fmt::Display for PacketMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PacketMode::Gaussian => f.write_str("gaussian"),
            PacketMode::PlaneWave => f.write_str("plane-wave"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    NegativeTime {
        t: f64,
    },
    OutOfDomain {
        t: f64,
        min: f64,
        max: f64,
    },
    InvalidProfile(&'static str),
    InvalidParameter(&'static str),
    QuadratureNonConvergence {
        residual: f64,
        tolerance: f64,
    },
    /// `A0 = 0` describes a position eigenstate, which has no packet form here.
    ZeroMomentumCoefficient,
    /// `Im(F0) > 0`: the density grows without bound away from the center.
    UnphysicalInvariant {
        ratio: Complex64,
    },
    /// Real, nonzero `F0`: `A(t)` vanishes at `t = m/F0` and the density diverges there.
    DivergentInvariant {
        ratio: Complex64,
    },
    ModeMismatch {
        expected: PacketMode,
        found: PacketMode,
    },
    SingularIntegrand {
        t: f64,
    },
    InvalidGrid(&'static str),
    DegenerateField,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeTime { t } => write!(f, "negative time t = {t} (all integrals start at 0)"),
            Error::OutOfDomain { t, min, max } => {
                write!(f, "t = {t} outside tabulated range [{min}, {max}]")
            }
            Error::InvalidProfile(msg) => write!(f, "invalid force profile: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::QuadratureNonConvergence { residual, tolerance } => {
                write!(f, "quadrature did not converge: residual {residual:e} above tolerance {tolerance:e}")
            }
            Error::ZeroMomentumCoefficient => f.write_str("unsupported invariant: A0 = 0 (pure position invariant)"),
            Error::UnphysicalInvariant { .. } => f.write_str("unphysical invariant: Im(F0) > 0"),
            Error::DivergentInvariant { ratio } => {
                write!(f, "divergent invariant: Im(F0) = 0 with F0 = {} != 0 (density diverges at t = m/F0)", ratio.re)
            }
            Error::ModeMismatch { expected, found } => {
                write!(f, "mode mismatch: operation needs a {expected} packet, got {found}")
            }
            Error::SingularIntegrand { t } => {
                write!(f, "singular phase integrand: A(t) vanishes near t = {t}")
            }
            Error::InvalidGrid(msg) => write!(f, "invalid grid: {msg}"),
            Error::DegenerateField => f.write_str("degenerate field: zero norm"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 {
        Ok(())
    } else {
        Err(Error::NegativeTime { t })
    }
}
