use thiserror::Error;

/// Every failure mode of the engine. Variant names double as the diagnostic
/// tokens printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("EmptyLabelSet: a ribbon graph needs at least one edge")]
    EmptyLabelSet,
    #[error("InvalidPermutation: {0}")]
    InvalidPermutation(String),
    #[error("FixedPointInPairing: sigma1 fixes label {0}")]
    FixedPointInPairing(usize),
    #[error("NotInvolution: sigma1 is not an involution at label {0}")]
    NotInvolution(usize),
    #[error("NotInjective: labels {0} and {1} point to the same cell")]
    NotInjective(String, String),
    #[error("DistinguishedPointUncovered: {0} is distinguished but not pointed")]
    DistinguishedPointUncovered(String),
    #[error("NonNegativeEulerComponent: component at label {0} has non-negative Euler characteristic after puncturing")]
    NonNegativeEulerComponent(usize),
    #[error("UnknownCell: {0}")]
    UnknownCell(String),
    #[error("VertexPointed: vertex at label {0} carries a pointing label")]
    VertexPointed(usize),
    #[error("NotBivalent: vertex at label {0} is not bivalent")]
    NotBivalent(usize),
    #[error("IsolatedLoop: bivalent vertex at label {0} is the only vertex of a loop")]
    IsolatedLoop(usize),
    #[error("EmptySubset: edge subset is empty")]
    EmptySubset,
    #[error("FullSubset: edge subset contains every edge")]
    FullSubset,
    #[error("UnknownEdge: {0}")]
    UnknownEdge(usize),
    #[error("PointingCollision: labels {0} and {1} land on the same cell")]
    PointingCollision(String, String),
    #[error("NotNegligible: edge subset is not negligible")]
    NotNegligible,
    #[error("UnorderedComponent: component at label {0} receives no order")]
    UnorderedComponent(usize),
    #[error("BadFaceTarget: {0}")]
    BadFaceTarget(String),
    #[error("InvalidStableData: {0}")]
    InvalidStableData(String),
    #[error("NotNested: level {0} is not contained in the previous level")]
    NotNested(usize),
    #[error("SwallowsComponent: level {0} contains a whole component of the previous level")]
    SwallowsComponent(usize),
    #[error("ShrinksNodeCycle: level {0} contains a whole boundary cycle of the previous level that carries a node")]
    ShrinksNodeCycle(usize),
    #[error("NotInStableCore: level {0}: {1}")]
    NotInStableCore(usize, String),
    #[error("Disconnected: {0}")]
    Disconnected(String),
    #[error("DisconnectedSubgraph: the edge subset does not span a connected subgraph")]
    DisconnectedSubgraph,
    #[error("ZeroOnSubgraph: the metric vanishes on the whole subgraph")]
    ZeroOnSubgraph,
    #[error("InvalidMetric: {0}")]
    InvalidMetric(String),
    #[error("InconsistentLimit: {0}")]
    InconsistentLimit(String),
    #[error("UnstablePair: (g, n) = ({0}, {1}) has 2 - 2g - n >= 0")]
    UnstablePair(usize, usize),
    #[error("ValencyTooLow: vertex at label {0} has valency {1} < 4")]
    ValencyTooLow(usize, usize),
    #[error("Parse: {0}")]
    Parse(String),
}

impl RibbonError {
    /// The bare variant name, used as the first token of CLI diagnostics.
    pub fn name(&self) -> &'static str {
        use RibbonError::*;
        match self {
            EmptyLabelSet => "EmptyLabelSet",
            InvalidPermutation(_) => "InvalidPermutation",
            FixedPointInPairing(_) => "FixedPointInPairing",
            NotInvolution(_) => "NotInvolution",
            NotInjective(..) => "NotInjective",
            DistinguishedPointUncovered(_) => "DistinguishedPointUncovered",
            NonNegativeEulerComponent(_) => "NonNegativeEulerComponent",
            UnknownCell(_) => "UnknownCell",
            VertexPointed(_) => "VertexPointed",
            NotBivalent(_) => "NotBivalent",
            IsolatedLoop(_) => "IsolatedLoop",
            EmptySubset => "EmptySubset",
            FullSubset => "FullSubset",
            UnknownEdge(_) => "UnknownEdge",
            PointingCollision(..) => "PointingCollision",
            NotNegligible => "NotNegligible",
            UnorderedComponent(_) => "UnorderedComponent",
            BadFaceTarget(_) => "BadFaceTarget",
            InvalidStableData(_) => "InvalidStableData",
            NotNested(_) => "NotNested",
            SwallowsComponent(_) => "SwallowsComponent",
            ShrinksNodeCycle(_) => "ShrinksNodeCycle",
            NotInStableCore(..) => "NotInStableCore",
            Disconnected(_) => "Disconnected",
            DisconnectedSubgraph => "DisconnectedSubgraph",
            ZeroOnSubgraph => "ZeroOnSubgraph",
            InvalidMetric(_) => "InvalidMetric",
            InconsistentLimit(_) => "InconsistentLimit",
            UnstablePair(..) => "UnstablePair",
            ValencyTooLow(..) => "ValencyTooLow",
            Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, RibbonError>;
