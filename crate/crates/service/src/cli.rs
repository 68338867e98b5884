use std::fs::File;
use std::io::{BufReader, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use healthlens_core::corpus::ingest_document;
use healthlens_core::provenance::Taxonomy;
use healthlens_core::views::{compute_tilebar, layout_list, svg, LayoutConfig, Palette};

use crate::analyze::{analyze_log, matrix_view, process_graph, to_pretty_json, LogKind};
use crate::api::{router, AppState};
use crate::config::ServiceConfig;
use crate::library::LibraryStore;
use crate::sessions::SessionStore;

#[derive(Debug, Parser)]
#[command(name = "healthlens", version, about = "Explore health documents across levels of detail and analyze interaction provenance")]
pub struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Directory of document JSON files.
    #[arg(long, global = true)]
    pub library: Option<PathBuf>,
    #[arg(long, global = true)]
    pub port: Option<u16>,
    /// Seed for topic models and layouts.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a document and store it in the library.
    Ingest {
        file: PathBuf,
        /// Validate only; do not write to the library.
        #[arg(long)]
        check: bool,
    },
    /// Run the HTTP service.
    Serve {
        /// Directory for per-session event logs.
        #[arg(long)]
        sessions: Option<PathBuf>,
    },
    /// Compute provenance metrics for a JSONL session log.
    Analyze {
        log: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        min_duration: Option<f64>,
        /// The log holds coded triples rather than events.
        #[arg(long)]
        triples: bool,
    },
    /// Write a view as SVG, DOT or JSON.
    Export {
        #[command(subcommand)]
        view: ExportView,
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExportView {
    /// Process graph of a session log.
    Graph {
        log: PathBuf,
        #[arg(long)]
        triples: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Provenance matrix of a session log.
    Matrix {
        log: PathBuf,
        #[arg(long)]
        triples: bool,
        #[arg(long, value_enum, default_value_t = ImageFormat::Svg)]
        format: ImageFormat,
        #[arg(long)]
        max_visible: Option<usize>,
    },
    /// Word cloud of one chapter.
    Cloud {
        #[arg(long)]
        doc: String,
        #[arg(long)]
        chapter: u32,
        #[arg(long, value_enum, default_value_t = CloudStyle::Wordle)]
        layout: CloudStyle,
        #[arg(long, value_enum, default_value_t = ImageFormat::Svg)]
        format: ImageFormat,
    },
    /// TileBar of a term across a document.
    Tilebar {
        #[arg(long)]
        doc: String,
        #[arg(long)]
        term: String,
        #[arg(long)]
        chunk_size: Option<usize>,
        #[arg(long, value_enum, default_value_t = ImageFormat::Svg)]
        format: ImageFormat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ImageFormat {
    Svg,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CloudStyle {
    Wordle,
    List,
}

/// Defaults, then the config file, then `HEALTHLENS_*` variables, then flags.
pub fn resolve_config<I>(cli: &Cli, env: I) -> anyhow::Result<ServiceConfig>
where
    I: IntoIterator<Item = (String, String)>,
{
    let mut config = match &cli.config {
        Some(path) => ServiceConfig::load(path)?,
        None => ServiceConfig::default(),
    };
    config.apply_env(env)?;
    if let Some(library) = &cli.library {
        config.library = library.clone();
    }
    if let Some(port) = cli.port {
        config.port = port;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Command::Serve { sessions: Some(dir) } = &cli.command {
        config.sessions = Some(dir.clone());
    }
    Ok(config)
}

pub fn load_taxonomy(config: &ServiceConfig) -> anyhow::Result<Taxonomy> {
    match &config.taxonomy {
        None => Ok(Taxonomy::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(Taxonomy::parse_toml(&text)?)
        }
    }
}

fn open_log(path: &Path) -> anyhow::Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| format!("opening {}", path.display()))?))
}

fn log_kind(triples: bool) -> LogKind {
    if triples {
        LogKind::Triples
    } else {
        LogKind::Events
    }
}

fn emit(out: Option<&Path>, content: &str, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content).with_context(|| format!("writing {}", path.display())),
        None => Ok(stdout.write_all(content.as_bytes())?),
    }
}

/// Runs every subcommand except `serve`, writing results to `stdout` unless
/// an output file is given.
pub fn run(cli: &Cli, config: &ServiceConfig, stdout: &mut dyn Write) -> anyhow::Result<()> {
    match &cli.command {
        Command::Ingest { file, check } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let doc = ingest_document(&text).with_context(|| format!("{} is not a valid document", file.display()))?;
            if !check {
                std::fs::create_dir_all(&config.library)?;
                let target = config.library.join(format!("{}.json", doc.id));
                std::fs::write(&target, doc.to_canonical_json()).with_context(|| format!("writing {}", target.display()))?;
            }
            writeln!(stdout, "{}: {} chapters, {} images", doc.id, doc.chapters.len(), doc.image_count())?;
            Ok(())
        }
        Command::Analyze { log, out, min_duration, triples } => {
            let metrics = analyze_log(open_log(log)?, log_kind(*triples), min_duration.unwrap_or(config.min_duration_s))?;
            emit(out.as_deref(), &to_pretty_json(&metrics), stdout)
        }
        Command::Export { view, out } => {
            let content = export(view, config)?;
            emit(out.as_deref(), &content, stdout)
        }
        Command::Serve { .. } => bail!("`serve` runs through `serve()`"),
    }
}

fn export(view: &ExportView, config: &ServiceConfig) -> anyhow::Result<String> {
    let palette = Palette::default();
    match view {
        ExportView::Graph { log, format, triples } => {
            let graph = process_graph(open_log(log)?, log_kind(*triples), config.min_duration_s)?;
            Ok(match format {
                GraphFormat::Dot => graph.to_dot(),
                GraphFormat::Json => to_pretty_json(&graph),
            })
        }
        ExportView::Matrix { log, format, max_visible, triples } => {
            let taxonomy = load_taxonomy(config)?;
            let view = matrix_view(
                open_log(log)?,
                log_kind(*triples),
                config.min_duration_s,
                &taxonomy,
                max_visible.unwrap_or(config.max_visible_transitions),
            )?;
            Ok(match format {
                ImageFormat::Svg => view.to_svg(24, &palette.scale_low, &palette.scale_high),
                ImageFormat::Json => to_pretty_json(&view),
            })
        }
        ExportView::Cloud { doc, chapter, layout, format } => {
            let library = LibraryStore::load_dir(&config.library, config)?;
            let views = library
                .chapter_views(doc, *chapter)
                .with_context(|| format!("no chapter {chapter} in document `{doc}`"))?;
            let placed = match layout {
                CloudStyle::Wordle => views.wordle.clone().map_err(anyhow::Error::msg)?,
                CloudStyle::List => layout_list(&views.cloud, &LayoutConfig::default())?,
            };
            Ok(match format {
                ImageFormat::Svg => svg::cloud_svg(&placed, &palette),
                ImageFormat::Json => to_pretty_json(&placed),
            })
        }
        ExportView::Tilebar { doc, term, chunk_size, format } => {
            let library = LibraryStore::load_dir(&config.library, config)?;
            let document = library.document(doc).with_context(|| format!("no document `{doc}`"))?;
            let grid = compute_tilebar(document, term, chunk_size.unwrap_or(config.chunk_size), library.pipeline());
            Ok(match format {
                ImageFormat::Svg => svg::tilebar_svg(&grid, &palette, 12),
                ImageFormat::Json => to_pretty_json(&grid),
            })
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error("port {0} is already in use")]
    PortInUse(u16),
    #[error("cannot load library: {0}")]
    CorpusLoadFailure(String),
}

pub fn build_state(config: &ServiceConfig) -> anyhow::Result<AppState> {
    let library = LibraryStore::load_dir(&config.library, config).map_err(|e| ServeError::CorpusLoadFailure(e.to_string()))?;
    let sessions = match &config.sessions {
        Some(dir) => SessionStore::open(dir)?,
        None => SessionStore::in_memory(),
    };
    Ok(AppState {
        library: Arc::new(library),
        sessions: Arc::new(sessions),
        taxonomy: Arc::new(load_taxonomy(config)?),
        config: Arc::new(config.clone()),
    })
}

pub async fn serve(config: ServiceConfig) -> anyhow::Result<()> {
    let state = build_state(&config)?;
    tracing::info!(documents = state.library.len(), "library loaded");
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await.map_err(|e| match e.kind() {
        std::io::ErrorKind::AddrInUse => anyhow::Error::new(ServeError::PortInUse(config.port)),
        _ => anyhow::Error::new(e),
    })?;
    tracing::info!(%addr, "listening");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
