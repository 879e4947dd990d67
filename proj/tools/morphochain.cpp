#include <iostream>

#include "morphochain/cli.hpp"

int main(int argc, char** argv) { return morphochain::cli::run_command(argc, argv, std::cin, std::cout, std::cerr); }
