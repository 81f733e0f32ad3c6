#include "cli.hpp"

int main(int argc, char** argv) { return qsync::cli::parse_and_dispatch(argc, argv); }
