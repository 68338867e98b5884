use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ProvenanceError;

pub const DEFAULT_TAXONOMY_TOML: &str = include_str!("../../data/taxonomy.toml");

/// High-level interface components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ToolKind {
    DocumentLibrary,
    #[serde(rename = "TOC")]
    Toc,
    WordCloud,
    HistoryWordCloud,
    TopicBar,
    TileBar,
    ImageSliderSmall,
    ImageSliderLarge,
    Snippets,
    FullText,
    Searchbar,
}

impl ToolKind {
    pub const ALL: [ToolKind; 11] = [
        ToolKind::DocumentLibrary,
        ToolKind::Toc,
        ToolKind::WordCloud,
        ToolKind::HistoryWordCloud,
        ToolKind::TopicBar,
        ToolKind::TileBar,
        ToolKind::ImageSliderSmall,
        ToolKind::ImageSliderLarge,
        ToolKind::Snippets,
        ToolKind::FullText,
        ToolKind::Searchbar,
    ];

    pub fn abbreviation(self) -> &'static str {
        match self {
            ToolKind::DocumentLibrary => "DL",
            ToolKind::Toc => "TOC",
            ToolKind::WordCloud => "WC",
            ToolKind::HistoryWordCloud => "HWC",
            ToolKind::TopicBar => "TopicB",
            ToolKind::TileBar => "TiB",
            ToolKind::ImageSliderSmall => "ISs",
            ToolKind::ImageSliderLarge => "ISl",
            ToolKind::Snippets => "Snps",
            ToolKind::FullText => "FT",
            ToolKind::Searchbar => "Search",
        }
    }
}

/// A tool instance, optionally qualified by the chapter it shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ToolId {
    pub kind: ToolKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chapter: Option<u32>,
}

impl ToolId {
    pub fn global(kind: ToolKind) -> Self {
        Self { kind, chapter: None }
    }

    pub fn in_chapter(kind: ToolKind, chapter: u32) -> Self {
        Self { kind, chapter: Some(chapter) }
    }

    /// The same tool with the chapter qualification dropped.
    pub fn coarse(self) -> Self {
        Self::global(self.kind)
    }
}

impl fmt::Display for ToolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.chapter {
            Some(c) => write!(f, "{}[{c}]", self.kind.abbreviation()),
            None => f.write_str(self.kind.abbreviation()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProcessId(pub String);

impl ProcessId {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ProcessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ProcessId {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProcessCategory {
    Basal,
    Navigational,
    Cognitive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolSpec {
    pub kind: ToolKind,
    /// Abstraction level, 1 (overview) to 5 (close-up).
    pub rank: u8,
    pub chapter_scoped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub name: String,
    pub category: ProcessCategory,
}

/// Tool and process vocabularies. Process column rank is list position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Taxonomy {
    pub chapters: u32,
    pub tools: Vec<ToolSpec>,
    pub processes: Vec<ProcessSpec>,
}

impl Default for Taxonomy {
    fn default() -> Self {
        Self::parse_toml(DEFAULT_TAXONOMY_TOML).expect("bundled taxonomy is valid")
    }
}

impl Taxonomy {
    pub fn parse_toml(source: &str) -> Result<Self, ProvenanceError> {
        let taxonomy: Taxonomy = toml::from_str(source).map_err(|e| ProvenanceError::InvalidTaxonomy(e.to_string()))?;
        taxonomy.validate()?;
        Ok(taxonomy)
    }

    pub fn validate(&self) -> Result<(), ProvenanceError> {
        let mut kinds = HashSet::new();
        for tool in &self.tools {
            if !kinds.insert(tool.kind) {
                return Err(ProvenanceError::InvalidTaxonomy(format!("tool kind {:?} listed twice", tool.kind)));
            }
            if !(1..=5).contains(&tool.rank) {
                return Err(ProvenanceError::InvalidTaxonomy(format!("rank of {:?} must be 1..5", tool.kind)));
            }
        }
        let mut names = HashSet::new();
        for p in &self.processes {
            if p.name.trim().is_empty() || !names.insert(p.name.as_str()) {
                return Err(ProvenanceError::InvalidTaxonomy(format!("process name `{}` empty or duplicated", p.name)));
            }
        }
        Ok(())
    }

    pub fn tool_spec(&self, kind: ToolKind) -> Option<&ToolSpec> {
        self.tools.iter().find(|t| t.kind == kind)
    }

    pub fn rank(&self, kind: ToolKind) -> u8 {
        self.tool_spec(kind).map_or(u8::MAX, |t| t.rank)
    }

    /// 1-based column position of a process, if it is in the taxonomy.
    pub fn process_rank(&self, process: &ProcessId) -> Option<usize> {
        self.processes.iter().position(|p| p.name == process.0).map(|i| i + 1)
    }

    pub fn process_category(&self, process: &ProcessId) -> Option<ProcessCategory> {
        self.processes.iter().find(|p| p.name == process.0).map(|p| p.category)
    }

    /// Checks the kind is known and that chapter qualification matches its scope.
    pub fn validate_tool(&self, tool: &ToolId) -> Result<(), ProvenanceError> {
        let spec = self.tool_spec(tool.kind).ok_or_else(|| ProvenanceError::InvalidTool(format!("{:?} not in taxonomy", tool.kind)))?;
        match (spec.chapter_scoped, tool.chapter) {
            (false, Some(_)) => Err(ProvenanceError::InvalidTool(format!("{:?} cannot be chapter-qualified", tool.kind))),
            (true, Some(c)) if c == 0 || c > self.chapters => {
                Err(ProvenanceError::InvalidTool(format!("chapter {c} outside 1..={}", self.chapters)))
            }
            _ => Ok(()),
        }
    }

    /// Every tool instance: global kinds once, chapter-scoped kinds per chapter.
    pub fn enumerate_tools(&self) -> Vec<ToolId> {
        let mut out = Vec::new();
        for spec in &self.tools {
            if spec.chapter_scoped {
                out.extend((1..=self.chapters).map(|c| ToolId::in_chapter(spec.kind, c)));
            } else {
                out.push(ToolId::global(spec.kind));
            }
        }
        self.sort_tools(&mut out);
        out
    }

    /// Kinds in matrix row order: by rank, then declaration order.
    pub fn kinds_by_rank(&self) -> Vec<ToolKind> {
        let mut kinds: Vec<(u8, usize, ToolKind)> = self.tools.iter().enumerate().map(|(i, t)| (t.rank, i, t.kind)).collect();
        kinds.sort();
        kinds.into_iter().map(|(_, _, k)| k).collect()
    }

    pub fn sort_tools(&self, tools: &mut [ToolId]) {
        let position = |k: ToolKind| self.tools.iter().position(|t| t.kind == k).unwrap_or(usize::MAX);
        tools.sort_by_key(|t| (self.rank(t.kind), position(t.kind), t.chapter));
    }

    /// Maps every chapter-qualified tool to its unqualified kind.
    pub fn coarse_map<'a>(&self, tools: impl IntoIterator<Item = &'a ToolId>) -> BTreeMap<ToolId, ToolId> {
        tools.into_iter().map(|t| (*t, t.coarse())).collect()
    }
}
