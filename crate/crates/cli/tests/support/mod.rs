#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;

use sirenless_cli::server::{router, AppState, DEFAULT_BODY_LIMIT};
use sirenless_core::{AnalysisConfig, AnalysisStore, Analyzer};

/// Starts the service on an ephemeral port in a background thread and
/// returns its base URL.
pub fn spawn_server(data: &Path, static_dir: Option<PathBuf>) -> String {
    let state = Arc::new(AppState {
        analyzer: Analyzer::new(AnalysisConfig::default()).unwrap(),
        store: AnalysisStore::open(data).unwrap(),
    });
    let app = router(state, DEFAULT_BODY_LIMIT, static_dir);
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build().unwrap();
        runtime.block_on(async move {
            let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
            tx.send(listener.local_addr().unwrap()).unwrap();
            sirenless_cli::server::serve(listener, app).await.unwrap();
        });
    });
    format!("http://{}", rx.recv().unwrap())
}

pub fn article(i: usize) -> String {
    format!(
        "Officials in Town {i} opened a new library on Monday. \"It is a wonderful day,\" said Mayor Ada Stone. \
         Critics think the building was far too expensive. The reading room is bright and quiet.\n\n\
         In 2015 Stone had promised the library to {i} families."
    )
}
