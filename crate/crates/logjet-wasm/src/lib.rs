//! Browser bindings: thin string-typed wrappers over the core crate.

use wasm_bindgen::prelude::*;

/// Crate version, exposed so the demo page can show what it is running.
#[wasm_bindgen]
pub fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}
