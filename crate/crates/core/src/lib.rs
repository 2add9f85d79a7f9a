//! Exact enumeration, generating functions, and pattern avoidance for
//! p-ascent sequences.
//!
//! A p-ascent sequence is a word of nonnegative integers starting with 0 in
//! which every letter is at most `p` plus the number of ascents before it.
//! For `p = 1` these are the ascent sequences counted by the Fishburn
//! numbers.

pub mod series;
pub mod sequence;
pub mod gf;
pub mod patterns;
pub mod verify;
