//! Tokenization, stopword filtering, dictionary lemmatization and
//! per-chapter topic modeling.

mod lda;
mod lexicon;
mod pipeline;
mod terms;
mod token;

pub use lda::{fit_lda, top_terms, LdaConfig, TopicModel};
pub use lexicon::{filter_stopwords, lemmatize_and_tag, Lexicon, LexiconEntry, StopwordList};
pub use pipeline::TextPipeline;
pub use terms::{noun_terms, TermVector};
pub use token::{tokenize, Pos, Token};

#[derive(Debug, thiserror::Error)]
pub enum TextError {
    #[error("corpus has no documents or no vocabulary")]
    EmptyCorpus,
    #[error("topic index {index} out of range for {len} topics")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("lexicon line {line}: {reason}")]
    MalformedLexicon { line: usize, reason: String },
}
