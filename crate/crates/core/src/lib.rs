//! Exact operadic composition of cooperative games.
//!
//! A [`Game`] is a dense table of rational coalition values over an ordered [`PlayerSet`].
//! Composition ([`operad::partial_compose`]) inserts one game into a player of another; the
//! remaining modules provide the unanimity basis, multilinear extensions, class predicates that
//! are preserved by composition, an exact LP solver, and solution concepts.

pub mod allocation;
pub mod classes;
pub mod coalition;
pub mod error;
pub mod game;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod multilinear;
pub mod operad;
pub mod players;
pub mod random;
pub mod rational;
pub mod solutions;

pub use allocation::Allocation;
pub use coalition::Coalition;
pub use error::{GameError, Result};
pub use game::{max_players, Game, MobiusGame, Permutation, PlayerRef};
pub use multilinear::MultilinearPoly;
pub use operad::{
    partial_compose, partial_compose_nongrounded, partial_tensor, total_compose, GeneratorExpr,
};
pub use players::PlayerSet;
pub use rational::Rational;
