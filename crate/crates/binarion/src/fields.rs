//! Named pointwise kernels L -> f(L), shared by the CLI and the C API
//! so that both resolve the same names to the same functions.

use crate::algebra::Binarion;
use crate::error::Error;
use crate::functions;

/// A pointwise operator field.
pub type Kernel = fn(Binarion) -> Result<Binarion, Error>;

/// Names accepted by [`named_kernel`], for help text and error messages.
pub const KERNEL_NAMES: [&str; 10] = [
    "identity", "conj", "square", "cube", "exp", "ln", "sin", "cos", "sqrt", "inv",
];

/// Looks up a kernel by name. Partial functions (ln, sqrt, inv, the
/// split-only trig kernels) report their own domain errors when applied.
pub fn named_kernel(name: &str) -> Option<Kernel> {
    Some(match name {
        "identity" => |l| Ok(l),
        "conj" => |l: Binarion| Ok(l.conj()),
        "square" => |l| Ok(l * l),
        "cube" => |l| Ok(l * l * l),
        "exp" => |l| Ok(functions::exp(l)),
        "ln" => functions::ln,
        "sin" => functions::sin,
        "cos" => functions::cos,
        "sqrt" => functions::sqrt,
        "inv" => |l: Binarion| l.inv(),
        _ => return None,
    })
}
