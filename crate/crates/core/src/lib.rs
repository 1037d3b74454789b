//! Word maps on finite groups.
//!
//! * [`group`]: tabulated finite groups, lower central series, `exp_r`.
//! * [`word`]: free-group words, word-map tables, admissible words `w_f`.
//! * [`nilpotent`]: formal commutators, Hall bases and collection in free
//!   nilpotent groups.
//! * [`omega`]: exact word-map counts by closure and the associated bounds.

pub mod group;
pub mod nilpotent;
pub mod omega;
pub mod word;
