fn main() {
    torsig::cli::main()
}
