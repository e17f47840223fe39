pub mod basicaffine;
pub mod chamber;
pub mod error;
pub mod implosion;
pub mod numgeom;
pub mod report;
pub mod quantization;
pub mod rootdata;
pub mod su;
pub mod suites;

pub use basicaffine::{ChamberPoint, EmbeddedPoint, ModuleESpec};
pub use chamber::{Face, StarMembership};
pub use error::{Error, Result};
pub use implosion::{GroupPointSUn, Smoothness, Stratum};
pub use numgeom::{TangentSample, Verification};
pub use quantization::{TCharacter, VirtualRep};
pub use rootdata::{parse_group, Isogeny, RootDatum, Weight, WeylCap};
