fn main() {
    std::process::exit(pronet_geom::cli::main_with_args());
}
