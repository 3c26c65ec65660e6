//! Class functions, character-theoretic functors, exact inner products, and
//! the Dixon-Schneider character table engine.

mod cache;
mod classfun;
mod dixon;

pub use cache::{cache_dir, character_table_cached};
pub use classfun::{
    CharacterTable, CharacterTableJson, ChartabError, ClassFunction, ClassJson,
};
pub use dixon::character_table;
