use thiserror::Error;

/// Library-wide error type. Variant names follow the per-operation error
/// contracts; the CLI maps `BadInput`/parse problems to exit code 2 and
/// everything else to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    BadInput(String),

    #[error("sequence rule produced a non-increasing step at index {index}: {prev} -> {next}")]
    NonIncreasing {
        index: usize,
        prev: String,
        next: String,
    },
    #[error("index rule out of domain at n = {index}: {detail}")]
    RuleDomain { index: usize, detail: String },

    #[error("value {0} outside the required range {1}")]
    OutOfRange(String, &'static str),
    #[error("enclosure too wide to decide {0} after refinement; raise the precision cap")]
    PrecisionExhausted(&'static str),

    #[error("index {index} exceeds the generated prefix of length {len}")]
    IndexOutOfPrefix { index: usize, len: usize },
    #[error("prefix too short: needs {needed} terms, has {len}")]
    PrefixTooShort { needed: usize, len: usize },
    #[error("enumeration frontier exceeded the cap of {0} entries")]
    Infeasible(usize),
    #[error("window width {0} exceeds the enumeration limit {1}")]
    WindowTooWide(usize, usize),

    #[error("sequence prefix is not multiplicative: {0} does not divide {1}")]
    NotMultiplicative(String, String),
    #[error("quotient ratio condition fails at subsequence position {0}")]
    RatioConditionFailed(usize),
    #[error("ratio b_{{n+1}}/b_n <= 10 at index {0}; the interval system needs a gap > 10")]
    GapTooSmall(usize),
    #[error("t is an integer; the dichotomy needs t with nonzero fractional part")]
    IntegerT,

    #[error("cutting-and-stacking plans require b_1 = 1, got {0}")]
    BaseNotOne(String),
    #[error("cut count a_{{n}} <= 1 at stage {0}; each stage must cut into at least 2 columns")]
    CutTooSmall(usize),
    #[error("tower word at stage {stage} has {height} symbols, above the cap {cap}")]
    WordTooLarge {
        stage: usize,
        height: String,
        cap: u64,
    },
    #[error("no spacer stage at or after index {0} within the plan")]
    NoSpacerStageAhead(usize),

    #[error("bit-series tail is not summable at the requested precision")]
    TailNotSummable,
    #[error("tree depth {0} exceeds the exact-enumeration limit {1}")]
    DepthTooLarge(usize, usize),
    #[error("tree depth {have} is insufficient for the requested accuracy (needs {need})")]
    DepthInsufficient { have: usize, need: usize },
    #[error("depth n = {n} must exceed the carry length l = {l}")]
    DepthTooSmall { n: usize, l: usize },
    #[error("odometer step undefined on the all-ones word (carry leaves the cylinder)")]
    Overflow,
}

impl Error {
    pub fn bad_input(msg: impl Into<String>) -> Self {
        Error::BadInput(msg.into())
    }
}
