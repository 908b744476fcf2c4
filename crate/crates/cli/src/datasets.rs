//! Datasets known to the benchmark runner and the acceptance suite.

use std::path::{Path, PathBuf};

use ratiocut::{fixtures, InputGraph};

#[derive(Debug, Clone, Copy)]
pub struct Dataset {
    pub name: &'static str,
    /// File name inside the data directory.
    pub file: &'static str,
    pub url: &'static str,
    pub weighted: bool,
}

pub const SNAP: &[Dataset] = &[
    Dataset {
        name: "ego-facebook",
        file: "facebook_combined.txt",
        url: "https://snap.stanford.edu/data/facebook_combined.txt.gz",
        weighted: false,
    },
    Dataset {
        name: "email-Enron",
        file: "Email-Enron.txt",
        url: "https://snap.stanford.edu/data/email-Enron.txt.gz",
        weighted: false,
    },
    Dataset {
        name: "com-dblp",
        file: "com-dblp.ungraph.txt",
        url: "https://snap.stanford.edu/data/bigdata/communities/com-dblp.ungraph.txt.gz",
        weighted: false,
    },
    Dataset {
        name: "soc-Epinions1",
        file: "soc-Epinions1.txt",
        url: "https://snap.stanford.edu/data/soc-Epinions1.txt.gz",
        weighted: false,
    },
];

/// Name of the generated dataset; see [`fixtures::close_cliques`].
pub const CLOSE_CLIQUES: &str = "close-cliques";

pub fn lookup(name: &str) -> Option<&'static Dataset> {
    SNAP.iter().find(|d| d.name == name)
}

/// `$RATIOCUT_DATA_DIR`, or `data/` at the workspace root.
pub fn data_dir() -> PathBuf {
    std::env::var_os("RATIOCUT_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

pub fn generated(name: &str) -> Option<InputGraph> {
    (name == CLOSE_CLIQUES).then(fixtures::close_cliques)
}
