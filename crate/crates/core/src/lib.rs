//! Bigness calculus over Baire-space trees: rank engines and closure
//! operators for upward-closed sets, witness extraction and verification,
//! bad-set forcing conditions, a dense-set-meeting engine with replayable
//! certificates, and exact-dyadic measure utilities.

pub mod strings;
pub mod spectrum;
pub mod sets;
pub mod trees;
pub mod rank;
pub mod witness;
pub mod pairs;
pub mod pair_witness;
pub mod maps;
pub mod cond;

pub use rank::{brute_rank, omega_rank, RankError, RankResult};
pub use sets::{t_plus_complement, SetRep};
pub use spectrum::Spectrum;
pub use strings::{pf_reduce, pointwise_leq, BinStr, PairStr, Str};
pub use trees::{common_branch, GraftTree, LevelSel, TailSpec, ThresholdTree, TreeRep};
pub use witness::{big_dichotomy, extract_witness, verify_witness, BushyWitness, Dichotomy};
