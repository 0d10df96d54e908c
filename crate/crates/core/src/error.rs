use thiserror::Error;

use crate::ISet;

/// Everything that can go wrong when building or inspecting sets, codes and maps.
///
/// Sets carried in errors render through their canonical literal text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A multiset has two extensionally equal children somewhere. `path` lists the child
    /// positions from the root down to the offending node; `first`/`second` are the positions
    /// of the duplicated children inside that node.
    #[error("not an iterative set: children {first} and {second} of the node at path {path:?} are equal")]
    NotIterative {
        path: Vec<usize>,
        first: usize,
        second: usize,
    },

    #[error("duplicate element {0}")]
    DuplicateElement(ISet),

    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },

    #[error("{set} is not an ordered pair: {reason}")]
    NotAPair { set: ISet, reason: &'static str },

    #[error("{element} is not in the domain {domain}")]
    NotInDomain { element: ISet, domain: ISet },

    #[error("malformed graph {graph}: {reason}")]
    MalformedGraph { graph: ISet, reason: &'static str },

    #[error("choice at {at} is {value}, which is not a member of its fiber {fiber}")]
    FiberViolation { at: ISet, value: ISet, fiber: ISet },

    #[error("{element} is not a member of {set}")]
    NotAMember { element: ISet, set: ISet },

    #[error("map is not total: no value given for {missing}")]
    NotTotal { missing: ISet },

    #[error("map sends {element} to {value}, which is not in the codomain {codomain}")]
    NotInCodomain {
        element: ISet,
        value: ISet,
        codomain: ISet,
    },

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("slice triangle does not commute at {at}")]
    TriangleViolation { at: ISet },

    #[error("cone legs do not commute with the diagram: {0}")]
    NotACone(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
