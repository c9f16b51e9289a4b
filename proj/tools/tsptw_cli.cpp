#include "tsptw/cli.hpp"

int main(int argc, char** argv) { return tsptw::run_cli(argc, argv); }
