//! Exact computations around the genus-three Prym eigenform loci with two double
//! zeros: boundary prototypes, Euler characteristics, volumes and Siegel–Veech
//! constants, the supporting modular identity, the real-multiplication linear
//! algebra, and an empirical saddle-connection counter on slit-tori surfaces.

mod arith;

pub mod cli;
pub mod eigencheck;
pub mod euler;
pub mod exactq;
pub mod flatcount;
pub mod modforms;
pub mod prototypes;
pub mod svconst;
