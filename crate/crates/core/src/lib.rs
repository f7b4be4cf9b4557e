//! Exact combinatorics of Bott-Borel-Weil theory for basic classical Lie
//! superalgebras: root and Borel data, Weyl-group actions, characters,
//! genericness, odd reflections, cohomology reports, osp(m|2) blocks and
//! BGG reciprocity.

pub mod bbw;
pub mod borel_moves;
pub mod characters;
pub mod error;
pub mod genericity;
pub mod limits;
pub mod linalg;
pub mod osp_blocks;
pub mod parse;
pub mod reciprocity;
pub mod root_datum;
pub mod weight;
pub mod weyl;

pub use bbw::{solve_bbw, BbwSolver, CohomologyReport, ConstituentKind, Method, Status, Target};
pub use characters::{EvenCharacters, FormalCharacter, VirtualG0Sum, Window};
pub use error::{Error, Result};
pub use genericity::{GenericMode, GenericityReport};
pub use osp_blocks::{BlockContext, BlockReport, ChainIndex, QuiverType};
pub use parse::{parse_algebra, parse_borel, parse_weight};
pub use reciprocity::{verify_reciprocity, ReciprocityContext, ReciprocityReport, Verdict};
pub use root_datum::{
    BorelData, BorelWord, DominanceScope, Family, Parity, RootDatum, SimpleRoot, Symbol, SymbolKind,
};
pub use weight::{q, qq, WeightVector, Q};
pub use weyl::{Chamber, WeylElement, WeylGroup};
