//! Regenerates `data/corpus.json`.

fn main() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus.json");
    let text = fixedloci_core::corpus::corpus_to_json(&fixedloci_core::corpus::default_corpus());
    std::fs::write(&path, text).expect("write corpus");
}
