//! Rational double points on del Pezzo surfaces in positive characteristic.
//!
//! The crate is organized bottom-up: [`algebra`] supplies finite fields and
//! polynomial algebra; [`weierstrass`] handles the sextic model of a rational
//! (quasi-)elliptic surface; [`fibers`] runs Tate's algorithm; [`singularity`]
//! locates and classifies singular points; [`lattice`] works with root
//! subsystems of E8; [`catalog`] re-verifies the shipped classification tables.

#![forbid(unsafe_code)]

pub mod algebra;
pub mod catalog;
pub mod fibers;
pub mod lattice;
pub mod parse;
pub mod pipeline;
pub mod singularity;
pub mod weierstrass;
