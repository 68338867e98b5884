use super::model::{Chapter, TextChunk};

/// Default number of tokens per TileBar chunk.
pub const DEFAULT_CHUNK_SIZE: usize = 200;

/// Splits a chapter's token stream into consecutive chunks of `chunk_size`
/// tokens; the last chunk holds the remainder. A `chunk_size` of zero is
/// treated as one.
pub fn chunk_chapter(chapter: &Chapter, chunk_size: usize) -> Vec<TextChunk> {
    chunk_spans(chapter.token_count(), chunk_size)
        .into_iter()
        .enumerate()
        .map(|(index, token_span)| TextChunk { chapter_number: chapter.number, index, token_span })
        .collect()
}

pub(crate) fn chunk_spans(total_tokens: usize, chunk_size: usize) -> Vec<(usize, usize)> {
    let size = chunk_size.max(1);
    (0..total_tokens.div_ceil(size)).map(|i| (i * size, ((i + 1) * size).min(total_tokens))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::ingest_document;

    fn chapter_with_tokens(n: usize) -> Chapter {
        let words: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let src = format!(
            r#"{{"id": "d", "title": "T", "chapters": [{{"number": 1, "title": "K",
                "sections": [{{"heading": "H", "paragraphs": ["{}"]}}]}}]}}"#,
            words.join(" ")
        );
        ingest_document(&src).unwrap().chapters.remove(0)
    }

    fn sizes(chunks: &[TextChunk]) -> Vec<usize> {
        chunks.iter().map(TextChunk::len).collect()
    }

    #[test]
    fn exact_multiple() {
        assert_eq!(sizes(&chunk_chapter(&chapter_with_tokens(10), 5)), vec![5, 5]);
    }

    #[test]
    fn remainder_chunk() {
        assert_eq!(sizes(&chunk_chapter(&chapter_with_tokens(11), 5)), vec![5, 5, 1]);
    }

    #[test]
    fn chunk_larger_than_chapter() {
        let chunks = chunk_chapter(&chapter_with_tokens(3), 200);
        assert_eq!(sizes(&chunks), vec![3]);
        assert_eq!(chunks[0].chapter_number, 1);
    }

    #[test]
    fn zero_chunk_size_treated_as_one() {
        assert_eq!(chunk_spans(3, 0), vec![(0, 1), (1, 2), (2, 3)]);
        assert!(chunk_spans(0, 5).is_empty());
    }
}
