//! Matrix model of the singular Yoneda dg category on `E` and the
//! comparison `Ψ` with the dg Leavitt algebra.

mod map;
mod oracle;
mod psi;

pub use map::{TensorWordBasis, YonedaContext, YonedaMap};
pub use oracle::{run_oracle, OracleConfig, OracleReport};
pub use psi::{PsiBridge, SYElement};

use std::fmt;
use std::str::FromStr;

/// Places where a sign enters the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignSite {
    Compose,
    ThetaPush,
    Phi,
    Psi,
}

/// A deliberate corruption of one sign, used to check that the oracle
/// notices: `Flip` negates the sign, `Drop` replaces it by `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    FlipCompose,
    DropCompose,
    FlipThetaPush,
    DropThetaPush,
    FlipPhi,
    DropPhi,
    FlipPsi,
    DropPsi,
}

impl Mutation {
    pub const ALL: [Mutation; 8] = [
        Mutation::FlipCompose,
        Mutation::DropCompose,
        Mutation::FlipThetaPush,
        Mutation::DropThetaPush,
        Mutation::FlipPhi,
        Mutation::DropPhi,
        Mutation::FlipPsi,
        Mutation::DropPsi,
    ];

    pub fn site(self) -> SignSite {
        match self {
            Mutation::FlipCompose | Mutation::DropCompose => SignSite::Compose,
            Mutation::FlipThetaPush | Mutation::DropThetaPush => SignSite::ThetaPush,
            Mutation::FlipPhi | Mutation::DropPhi => SignSite::Phi,
            Mutation::FlipPsi | Mutation::DropPsi => SignSite::Psi,
        }
    }

    pub fn is_flip(self) -> bool {
        matches!(
            self,
            Mutation::FlipCompose | Mutation::FlipThetaPush | Mutation::FlipPhi | Mutation::FlipPsi
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Mutation::FlipCompose => "flip-compose",
            Mutation::DropCompose => "drop-compose",
            Mutation::FlipThetaPush => "flip-theta-push",
            Mutation::DropThetaPush => "drop-theta-push",
            Mutation::FlipPhi => "flip-phi",
            Mutation::DropPhi => "drop-phi",
            Mutation::FlipPsi => "flip-psi",
            Mutation::DropPsi => "drop-psi",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Mutation, String> {
        Mutation::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Mutation::ALL.iter().map(|m| m.name()).collect();
            format!("unknown mutation `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[cfg(test)]
mod tests;
