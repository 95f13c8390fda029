fn main() {
    std::process::exit(evenwilf::cli::main());
}
