//! Fractional-calculus primitives.

mod gamma;
mod grid;
mod power;
mod schemes;
mod weights;

pub use gamma::{gamma_fn, gamma_ratio, gamma_sign, ln_abs_gamma, rgamma, sin_pi};
pub use grid::{Order, Sampled, TimeGrid};
pub use power::{caputo_power, rl_integral_power, PowerTerm};
pub use schemes::{
    backward_difference, caputo_l1, caputo_numeric, inversion_check, rl_integral_num,
    InversionReport,
};
