#include "depmine/cli.hpp"

int main(int argc, char** argv) { return depmine::cli::run_main(argc, argv); }
