//! Document exploration across levels of detail, plus analytics over the
//! interaction provenance users leave behind.
//!
//! * [`corpus`]: structured documents, sentences and token chunks
//! * [`text`]: tokenization, lemmatization and per-chapter topic models
//! * [`views`]: word clouds, TileBars, snippets, image ranking, previews
//! * [`provenance`]: event logs, triples, metrics, process graph and matrix
//!
//! Numeric types are generic over [`Scalar`]; the aliases below fix them to
//! `f64`, which is what the service uses.

pub mod corpus;
pub mod provenance;
pub mod scalar;
pub mod synthetic;
pub mod text;
pub mod views;

pub use scalar::Scalar;

pub type TermVector = text::TermVector<f64>;
pub type LdaConfig = text::LdaConfig<f64>;
pub type TopicModel = text::TopicModel<f64>;
pub type WordCloudSpec = views::WordCloudSpec<f64>;
pub type CloudEntry = views::CloudEntry<f64>;
pub type CloudLayout = views::CloudLayout<f64>;
pub type PlacedWord = views::PlacedWord<f64>;
pub type LayoutConfig = views::LayoutConfig<f64>;
pub type Canvas = views::Canvas<f64>;
pub type InteractionEvent = provenance::InteractionEvent<f64>;
pub type InteractionTriple = provenance::InteractionTriple<f64>;
pub type ProcessGraph = provenance::ProcessGraph<f64>;
pub type MatrixView = provenance::MatrixView<f64>;
