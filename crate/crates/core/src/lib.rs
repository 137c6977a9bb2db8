#![cfg_attr(not(test), no_std)]
#![doc = include_str!("../README.md")]

extern crate alloc;

pub mod canonical;
pub mod flags;
pub mod freealg;
pub mod polyrat;
pub mod roots;
pub mod treediag;
