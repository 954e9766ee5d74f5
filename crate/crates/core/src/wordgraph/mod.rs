//! Word graphs: the word×user incidence matrix, its one-mode projections,
//! eigenvector centrality on the projected word graph and the analyses that
//! build on the selected words.

mod analysis;
mod bipartite;
mod centrality;
mod projection;
mod selection;

pub use analysis::{
    cooccurrence_distribution, word_neighborhood, write_frequency_csv, write_neighborhood_csv,
    FrequencyVector, NeighborEdge, Neighborhood,
};
pub use bipartite::{build_bipartite, BipartiteGraph};
pub use centrality::{eigenvector_centrality, CentralityScores};
pub use projection::{project_users, project_words, Projection, UserGraph, WordGraph};
pub use selection::{load_wordset, read_wordset, select_top_words, write_wordset, WordSet};
