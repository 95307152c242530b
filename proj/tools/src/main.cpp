#include <iostream>

#include "qhm/cli/cli.hpp"

int main(int argc, char** argv) { return qhm::cli::run_cli(argc, argv, std::cout, std::cerr); }
