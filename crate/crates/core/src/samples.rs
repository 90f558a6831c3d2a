//! Small bound quivers used throughout the tests, benches and CLI.

/// Four vertices, arrows `a: 1->2`, `d: 1->3`, `b: 2->3`, `e: 2->4`,
/// `c: 3->4`, zero relations `ba` and `cb`.
pub const EXAMPLE: &str = "\
# worked example: five arrows, two zero relations
vertex 1
vertex 2
vertex 3
vertex 4
arrow a 1 2
arrow d 1 3
arrow b 2 3
arrow e 2 4
arrow c 3 4
relation ba
relation cb
";

/// `1 -> 2`.
pub const A2: &str = "vertex 1\nvertex 2\narrow a 1 2\n";

/// `1 -> 2 -> 3`.
pub const A3: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\n";

/// `K[x]/(x^2)`.
pub const DUAL_NUMBERS: &str = "vertex v\narrow x v v\nrelation xx\n";

/// Commutative square `ba = dc`.
pub const SQUARE: &str = "\
vertex 1
vertex 2
vertex 3
vertex 4
arrow a 1 2
arrow b 2 4
arrow c 1 3
arrow d 3 4
relation ba - dc
";

/// Two parallel arrows `1 => 2`.
pub const KRONECKER: &str = "vertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\n";

/// Grading of the worked example by the free group on `u`, `v`, with
/// `u = a d^-1 b` and `v = e^-1 c b` (tree arrows `a`, `b`, `c`).
pub const EXAMPLE_FREE_GRADING: &str = "\
group free u v
weight d u^-1
weight e v^-1
";

/// The `Z`-grading killing `u`: only `e` carries weight.
pub const EXAMPLE_Z_GRADING: &str = "\
group abelian 1
weight e -1
";

/// `Z`-grading of the dual numbers: the loop has weight 1.
pub const DUAL_Z_GRADING: &str = "\
group abelian 1
weight x 1
";
