#include "cheby/cli.hpp"

int main(int argc, char** argv) { return cheby::cli::run_main(argc, argv); }
