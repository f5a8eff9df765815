//! Writes the generated simplicial sets of the corpus.
//!
//! Usage: cargo run -p hocat-cli --example gen_corpus -- corpus/generated.sset

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "corpus/generated.sset".into());
    std::fs::write(&out, hocat_cli::emit::generated_corpus()).expect("write corpus file");
    println!("wrote {out}");
}
