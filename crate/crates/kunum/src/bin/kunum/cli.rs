use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "kunum", version, about = "Exact lattice calculus for rank-2 Kuznetsov components")]
pub struct Cli {
    /// Output format; each subcommand accepts a subset.
    #[arg(long, short = 'f', global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Svg,
}

/// Class arguments: `n m`, `n,m`, `(n m)`, or symbolic `2a+b`, `-b-g`,
/// `2α+β`. Put `--` before a symbolic class that starts with `-`.
#[derive(Args, Debug)]
pub struct Classes {
    #[arg(value_name = "CLASS", num_args = 1.., allow_negative_numbers = true)]
    pub tokens: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Euler pairing χ(v, w) of two cubic threefold classes.
    Pairing(Classes),

    /// Pick decomposition v = v₋ + v₊ of a primitive vector.
    Pick {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        /// Cross-check against the exhaustive search.
        #[arg(long)]
        oracle: bool,
    },

    /// Classify an Euler form with a compatible Serre isometry.
    ClassifyForm {
        /// Entries q11,q12,q21,q22 (brackets allowed).
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Entries d11,d12,d21,d22 (brackets allowed).
        #[arg(long, allow_hyphen_values = true)]
        serre: String,
    },

    /// Show the catalog, or one entry such as `2,3`.
    Catalog { entry: Option<String> },

    /// Non-emptiness certificate for one class.
    Certify {
        entry: String,
        #[command(flatten)]
        class: Classes,
        /// Read the two integers as (rank, degree) on a curve entry.
        #[arg(long)]
        rank_degree: bool,
    },

    /// Certify and verify every primitive class up to a norm bound.
    CertifyAll {
        entry: String,
        #[arg(long, default_value_t = 2500)]
        norm_bound: i64,
    },

    /// Dimension and known descriptions of a moduli space.
    ModuliInfo(Classes),

    /// Extension strata of M(nα + mβ).
    Strata {
        #[command(flatten)]
        class: Classes,
    },

    /// Strata of M(mβ).
    StrataBeta { m: i64 },

    /// Local quiver data for the Abel–Jacobi fibre.
    FanoCheck(Classes),

    /// Canonical degree on the exceptional locus of a two-vertex quiver moduli.
    QuiverDegree { a11: i64, a22: i64, a12: i64, a21: i64 },

    /// Exact phase difference φ(w) − φ(v) of two lifted classes.
    PhaseGap {
        #[command(flatten)]
        classes: Classes,
        /// Branch of v; defaults to its principal branch.
        #[arg(long, allow_negative_numbers = true)]
        branch_v: Option<i64>,
        /// Branch of w; defaults to its principal branch.
        #[arg(long, allow_negative_numbers = true)]
        branch_w: Option<i64>,
    },

    /// Codimension of the locus of extensions of w by v.
    ExtLocus(Classes),

    /// Class in Ku(Y3) of I_C(m) for a curve of degree d and genus g.
    HilbertMap {
        #[arg(allow_negative_numbers = true)]
        d: Option<i64>,
        #[arg(allow_negative_numbers = true)]
        g: Option<i64>,
        #[arg(allow_negative_numbers = true)]
        m: Option<i64>,
        /// Recompute the small-degree table.
        #[arg(long, conflicts_with_all = ["d", "g", "m"])]
        table: bool,
    },

    /// Stable-birationality graph.
    Birgraph {
        #[arg(long, default_value_t = 9)]
        sum_bound: i64,
        /// Shortest path between two nodes `a,b` and `c,d`.
        #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
        path: Option<Vec<String>>,
    },

    /// Prime witness linking sums m and m+1.
    PrimeWitness { m: i64 },

    /// SVG drawing of a window of the lattice.
    RenderLattice {
        /// `N0:N1,M0:M1`.
        #[arg(long, default_value = "-3:3,-3:3", allow_hyphen_values = true)]
        window: String,
        #[arg(long, value_enum, default_value = "hexagonal")]
        mode: Mode,
        #[arg(long)]
        no_labels: bool,
    },

    /// Run a brute-force cross-check.
    Oracle {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Suite-specific size: norm bound (pick, exceptional), box radius
        /// (triangle), or sum bound (tree).
        #[arg(long)]
        bound: Option<i64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Hexagonal,
    Euclidean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Pick,
    Triangle,
    Exceptional,
    Tree,
}
