//! SCCs, Streett emptiness with lasso witnesses, language difference and
//! equivalence of deterministic parity automata, residual languages.

mod equiv;
mod scc;
mod streett;

pub use equiv::{dpw_equiv, residual_classes, EquivVerdict};
pub use scc::{closed_subsccs, scc_decompose, Scc};
pub use streett::{
    diff_nonempty, dpw_diff_nonempty, parity_to_streett, product_size, streett_nonempty,
    StreettPair,
};
