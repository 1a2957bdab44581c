use crate::sequence::Item;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum Error {
    #[error("itemset must contain at least one item")]
    EmptyItemSet,
    #[error("item {0:?} appears more than once in the itemset")]
    DuplicateItem(Item),
    #[error("pattern must contain at least one symbol")]
    EmptyPattern,
    #[error("pattern set contains the same pattern twice")]
    DuplicatePattern,
    #[error(
        "window of length {len} ending at index {index} does not fit in a sequence of length {n}"
    )]
    WindowOutOfRange { index: usize, len: usize, n: usize },
    #[error("item {0:?} is not registered in the book-stack")]
    UnregisteredItem(Item),
    #[error("position {position} is not after the last position {last_seen} of item {item:?}")]
    StalePosition {
        item: Item,
        position: i64,
        last_seen: i64,
    },
    #[error("gap length {length} exceeds sequence length {n}")]
    GapTooLong { length: i64, n: usize },
    #[error("histograms cover different sequence lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("histogram reconstruction gave {value} at window length {x}, outside [0, {max}]")]
    Inconsistent { x: usize, value: i128, max: usize },
    #[error("{count} items exceeds the oracle limit of {max}")]
    TooManyItems { count: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
