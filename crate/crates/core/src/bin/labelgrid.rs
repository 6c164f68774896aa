use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use labelgrid::bench;
use labelgrid::datasets;
use labelgrid::io::{self, emit_svg, placement_document, SvgOptions};
use labelgrid::service::{self, ServiceConfig};
use labelgrid::{EngineOptions, Feature, LabelDims, Labeler, Viewport};

#[derive(Parser)]
#[command(name = "labelgrid", version, about = "Point-feature label placement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(clap::Args)]
struct ViewArgs {
    /// View width in pixels.
    #[arg(long, default_value_t = 770)]
    width: u32,
    /// View height in pixels.
    #[arg(long, default_value_t = 840)]
    height: u32,
    #[arg(long, default_value_t = 150.0, allow_negative_numbers = true)]
    label_w: f64,
    #[arg(long, default_value_t = 12.0, allow_negative_numbers = true)]
    label_h: f64,
    /// Label only the features ranked 1..=N.
    #[arg(long)]
    threshold: Option<u32>,
    /// Percentage by which labels may overlap, per axis.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    overlap_pct: f64,
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    prox_weight: f64,
}

impl ViewArgs {
    fn viewport(&self) -> labelgrid::Result<Viewport> {
        Viewport::identity(self.width, self.height)
    }

    fn dims(&self) -> labelgrid::Result<LabelDims> {
        LabelDims::new(self.label_w, self.label_h)
    }

    fn options(&self) -> EngineOptions {
        EngineOptions {
            threshold: self.threshold,
            allowed_overlap_pct: self.overlap_pct,
            prox_weight: self.prox_weight,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Label a point file once.
    Label {
        /// Point file: XML, or plain "x y" lines.
        input: PathBuf,
        #[command(flatten)]
        view: ViewArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Draw the trellis grid in SVG output.
        #[arg(long)]
        trellis: bool,
        /// Write zeros for the timing fields.
        #[arg(long)]
        no_timing: bool,
        /// Print a metrics summary to stderr.
        #[arg(long)]
        metrics: bool,
    },
    /// Time the pipeline over a grid of feature counts and label sizes.
    Bench {
        /// "uniform", "clustered", or a point file (counts then take prefixes).
        #[arg(default_value = "uniform")]
        dataset: String,
        #[arg(long, value_delimiter = ',', default_value = "1000,3000,5000,11000,25000,50000,75000")]
        sizes: Vec<usize>,
        /// Label sizes as WxH.
        #[arg(long, value_delimiter = ',', default_value = "50x8,100x10,150x12,200x14")]
        dims: Vec<String>,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        #[arg(long, default_value_t = 770)]
        width: u32,
        #[arg(long, default_value_t = 840)]
        height: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Precompute placements for a sequence of zoom levels.
    ZoomLadder {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, default_value_t = 1.5)]
        zoom_factor: f64,
        #[arg(long)]
        out_dir: PathBuf,
        #[command(flatten)]
        view: ViewArgs,
    },
    /// Serve the HTTP labeling API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            let head: Vec<&str> = msg.lines().take_while(|l| !l.trim().is_empty()).map(str::trim).collect();
            eprintln!("labelgrid: {}", head.join(" ").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("labelgrid: {e}");
            ExitCode::FAILURE
        }
    }
}

type AnyResult<T> = Result<T, Box<dyn std::error::Error>>;

fn load(path: &Path) -> AnyResult<Vec<Feature>> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    if text.trim_start().starts_with('<') {
        let file = io::parse_feature_xml(&text)?;
        for w in &file.warnings {
            log::warn!("{}: {w}", path.display());
        }
        Ok(file.features)
    } else {
        Ok(datasets::parse_xy(&text)?)
    }
}

fn parse_dims(s: &str) -> AnyResult<LabelDims> {
    let (w, h) = s.split_once('x').ok_or_else(|| format!("label size {s:?} is not WxH"))?;
    Ok(LabelDims::new(w.trim().parse()?, h.trim().parse()?)?)
}

fn write_out(out: Option<&Path>, data: &str) -> AnyResult<()> {
    match out {
        Some(p) => fs::write(p, data).map_err(|e| format!("{}: {e}", p.display()).into()),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> AnyResult<()> {
    match cli.command {
        Command::Label { input, view, format, out, trellis, no_timing, metrics } => {
            let features = load(&input)?;
            let viewport = view.viewport()?;
            let labeler = Labeler::new(view.dims()?, view.options())?;
            let result = labeler.label(&features, &viewport);
            if metrics {
                eprintln!(
                    "processed {}  placed {}  anomalies {}  tests {}  populate {:.3} ms  select {:.3} ms  total {:.3} ms",
                    result.features_processed,
                    result.labels_placed,
                    result.anomaly_count,
                    result.predicate_tests,
                    result.timings.populate_ms,
                    result.timings.traverse_select_ms,
                    result.timings.total_ms
                );
            }
            let text = match format {
                Format::Json => {
                    let doc = placement_document(&result, &features);
                    if no_timing { doc.without_timing() } else { doc }.to_json()
                }
                Format::Svg => {
                    emit_svg(&result, &features, &SvgOptions { show_trellis: trellis, ..Default::default() })
                }
            };
            write_out(out.as_deref(), &text)
        }
        Command::Bench { dataset, sizes, dims, repeat, width, height, seed } => {
            let dims: Vec<LabelDims> = dims.iter().map(|d| parse_dims(d)).collect::<AnyResult<_>>()?;
            let max = sizes.iter().copied().max().unwrap_or(0);
            let pool = match dataset.as_str() {
                "uniform" => datasets::uniform(max, seed),
                "clustered" => datasets::clustered(max, 30, seed),
                other => {
                    let path = Path::new(other);
                    let path = if path.is_file() { path.to_path_buf() } else { datasets::locate(other)? };
                    load(&path)?
                }
            };
            let sets: Vec<Vec<Feature>> = sizes
                .iter()
                .map(|&n| {
                    if n > pool.len() {
                        return Err(format!("dataset has {} points, fewer than {n}", pool.len()));
                    }
                    Ok(pool[..n].to_vec())
                })
                .collect::<Result<_, _>>()?;
            let viewport = Viewport::identity(width, height)?;
            let cells = bench::bench_grid(&sets, &dims, &viewport, &EngineOptions::default(), repeat)?;
            print!("{}", bench::format_grid(&cells));
            Ok(())
        }
        Command::ZoomLadder { input, levels, zoom_factor, out_dir, view } => {
            let features = load(&input)?;
            let ladder =
                bench::zoom_ladder(&features, &view.viewport()?, view.dims()?, &view.options(), levels, zoom_factor)?;
            fs::create_dir_all(&out_dir).map_err(|e| format!("{}: {e}", out_dir.display()))?;
            for level in &ladder.levels {
                let path = out_dir.join(format!("level_{:02}.json", level.level));
                let doc = placement_document(&level.result, &features);
                fs::write(&path, doc.to_json()).map_err(|e| format!("{}: {e}", path.display()))?;
                println!(
                    "level {:>2}  {:>9.3}x{:<9.3} {:>7} labels  {:>8.3} ms",
                    level.level,
                    level.dims.width,
                    level.dims.height,
                    level.result.labels_placed,
                    level.result.timings.total_ms
                );
            }
            println!("total {:.3} s", ladder.total_s);
            Ok(())
        }
        Command::Serve { port, host } => {
            let addr: SocketAddr = format!("{host}:{port}").parse()?;
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(service::serve(addr, ServiceConfig::default()))?;
            Ok(())
        }
    }
}
