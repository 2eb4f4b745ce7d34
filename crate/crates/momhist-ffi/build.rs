fn main() {
    #[cfg(feature = "generate-header")]
    {
        let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
        let config = cbindgen::Config::from_file("cbindgen.toml")
            .expect("cbindgen.toml must exist next to Cargo.toml");
        cbindgen::generate_with_config(&crate_dir, config)
            .expect("header generation failed")
            .write_to_file("include/momhist.h");
    }
}
