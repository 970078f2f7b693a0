#include <eigenfmt/bench/cli.hpp>

int main(int argc, char** argv) { return eigenfmt::cli::run_cli(argc, argv); }
