#![no_std]

extern crate alloc;

pub mod bleistein;
pub mod error;
pub mod numeric;
pub mod pcf;
pub mod residue;
pub mod ring;
pub mod series;
