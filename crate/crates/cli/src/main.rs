//! `crepant`: command-line front end of the crepant toolkit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "crepant", version, about = "Quivers, crystals and toric vertex computations for crepant resolutions")]
pub struct Cli {
    /// Seed for every random sampling step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for module-internal parallelism.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Structured JSON output instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// McKay quiver of a diagonal abelian action such as `3:1,1,1`.
    Mckay {
        action: String,
        /// Include the superpotential.
        #[arg(long)]
        potential: bool,
        /// Print the character decomposition table instead of the quiver.
        #[arg(long)]
        table: bool,
    },
    /// Cyclic derivatives of a quiver's potential.
    Relations {
        /// Builtin name, action descriptor or quiver JSON file.
        quiver: String,
    },
    /// Framed quiver with an arrow from a new vertex into `--at`.
    Frame {
        quiver: String,
        #[arg(long, value_name = "VERTEX")]
        at: String,
    },
    /// King stability of a monomial representation.
    Stability {
        quiver: String,
        /// Representation JSON file.
        #[arg(long, value_name = "FILE")]
        rep: PathBuf,
        /// Comma separated parameter, e.g. `-1,-1` or `1/2,-1/2`.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long, value_enum, default_value_t = Convention::SubobjectsNegative)]
        convention: Convention,
    },
    /// Positive roots of a Cartan matrix up to a height.
    Roots {
        #[command(flatten)]
        cartan: CartanArgs,
        #[arg(long, default_value_t = 5)]
        height: u32,
    },
    /// Root walls separating two stability parameters.
    Walls {
        #[command(flatten)]
        cartan: CartanArgs,
        #[arg(long, default_value_t = 5)]
        height: u32,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Crystal-chamber NCDT series: `c3`, `conifold` or an action descriptor.
    Ncdt {
        family: String,
        #[arg(long, default_value_t = 6)]
        order: u32,
        /// `unsigned`, `total` or `linear:c0,c1,...`.
        #[arg(long, default_value = "unsigned")]
        sign: String,
        /// Also print a one-line rendering after the series.
        #[arg(long)]
        pretty: bool,
    },
    /// Unit triangulations of a lattice polygon.
    Triangulate {
        #[command(flatten)]
        polygon: PolygonArgs,
    },
    /// Flop graph of the unit triangulations.
    Flops {
        #[command(flatten)]
        polygon: PolygonArgs,
    },
    /// Dual web of one triangulation.
    Web {
        #[command(flatten)]
        polygon: PolygonArgs,
        /// Index into the sorted list of triangulations.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Topological-vertex partition function.
    Gw {
        #[command(flatten)]
        polygon: PolygonArgs,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 12)]
        t_precision: i64,
        #[arg(long, value_enum, default_value_t = Order::Cached)]
        evaluation: Order,
    },
    /// Gopakumar-Vafa invariants from a partition function.
    Gv {
        #[command(flatten)]
        source: GvSource,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 12)]
        t_precision: i64,
    },
    /// Randomised exact checks of chart gluings and contractions.
    VerifyGeometry {
        /// `conifold`, `laufer1:<k>` or `laufer2:<n>`, optionally `/<variant>`.
        geometry: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Identity::All)]
        identity: Identity,
        /// Override a formula, e.g. `v4:wz=w^2*z1 - w*z2^2`.
        #[arg(long = "set", value_name = "TARGET=EXPR")]
        overrides: Vec<String>,
    },
    /// Side-by-side NCDT and GW series.
    Compare {
        /// `c3`, `conifold` or an action descriptor.
        family: String,
        #[arg(long, default_value_t = 3)]
        truncation: u32,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        /// Variable map such as `q0=-Q0*t^2,q1=t^(-1)`.
        #[arg(long = "map", default_value = "", allow_hyphen_values = true)]
        variable_map: String,
        #[arg(long, default_value = "unsigned")]
        sign: String,
        #[arg(long, default_value_t = 12)]
        t_precision: i64,
        /// Cartan matrix overriding the default roots, e.g. `2,-2;-2,2`.
        #[arg(long, allow_hyphen_values = true)]
        cartan: Option<String>,
        #[arg(long)]
        radius: Option<u32>,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct CartanArgs {
    /// Rows separated by `;`, e.g. `2,-2;-2,2`.
    #[arg(long, allow_hyphen_values = true)]
    pub cartan: Option<String>,
    /// Use the Cartan matrix of a quiver.
    #[arg(long)]
    pub quiver: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct PolygonArgs {
    /// Unit square.
    #[arg(long)]
    pub square: bool,
    /// Triangle `(0,0),(n,0),(0,n)`.
    #[arg(long, value_name = "N")]
    pub triangle: Option<i64>,
    /// Toric diagram of local P2.
    #[arg(long)]
    pub local_p2: bool,
    /// Trapezoid with bottom and top widths `n0,n1`.
    #[arg(long, value_name = "N0,N1")]
    pub trapezoid: Option<String>,
    /// Convex hull of `x,y;x,y;...`.
    #[arg(long, value_name = "POINTS", allow_hyphen_values = true)]
    pub vertices: Option<String>,
    /// Polygon JSON file.
    #[arg(long, value_name = "FILE")]
    pub polygon: Option<PathBuf>,
    /// Junior simplex of an action descriptor.
    #[arg(long, value_name = "ACTION")]
    pub orbifold: Option<String>,
}

#[derive(Args, Debug)]
pub struct GvSource {
    #[command(flatten)]
    pub polygon: Option<PolygonArgs>,
    /// Read the partition function from a series text file.
    #[arg(long, value_name = "FILE", conflicts_with = "PolygonArgs")]
    pub input: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Convention {
    SubobjectsNegative,
    SubobjectsPositive,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Order {
    Cached,
    Rotated,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    All,
    Transition,
    Contraction,
    Equivariance,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
