//! Binomial trees and hypercubes, plus the schedules that broadcast them in
//! `order` (resp. `dimension`) rounds.

mod binomial;
mod hypercube;

pub use binomial::{binomial_schedule, BinomialTree};
pub use hypercube::{hypercube_schedule, Hypercube};

pub(crate) use binomial::tree_rounds;
pub(crate) use hypercube::sweep_rounds;

pub fn build_binomial(order: u32) -> BinomialTree {
    BinomialTree::new(order)
}

pub fn build_hypercube(dim: u32) -> Hypercube {
    Hypercube::new(dim)
}
