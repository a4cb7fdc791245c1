use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("family {family} does not accept these parameters: {reason}")]
    FamilyMismatch { family: String, reason: String },

    #[error("no closed-form structure function for c(0)·d(0) = {product} (only 1 is tabulated)")]
    NoClosedForm { product: f64 },

    #[error("singular recipe: {function}({index}) = 0")]
    SingularRecipe { function: &'static str, index: i64 },

    #[error("recipe index n = {n} exceeds the cap of {cap}")]
    RecipeCap { n: usize, cap: usize },

    #[error("non-finite value while evaluating at n = {n}")]
    Overflow { n: usize },

    #[error("ratio Φ_X(n)/Φ_ref(n) is undefined at n = 0")]
    UndefinedRatio,

    #[error("structure function is negative at n = {n}: Φ = {value}")]
    NegativePhi { n: usize, value: f64 },

    #[error("pole of the symmetrized structure function at n = {n}, θ = {theta}")]
    Pole { n: usize, theta: f64 },

    #[error(
        "average and factorized symmetrized forms disagree at n = {n}: {average} vs {factorized}"
    )]
    FormMismatch {
        n: usize,
        average: String,
        factorized: String,
    },

    #[error("symmetrized value at n = {n} is not real: imaginary part {imag}")]
    NotReal { n: usize, imag: f64 },

    #[error("no diagonal metric: condition fails at index {index} (mismatch {mismatch})")]
    NoMetric { index: usize, mismatch: f64 },

    #[error("operator is degenerate: zero off-diagonal entry at index {index}")]
    DegenerateOperator { index: usize },
}
