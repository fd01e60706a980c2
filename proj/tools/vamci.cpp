#include <iostream>

#include "vamci/cli/commands.hpp"

int main(int argc, char** argv) { return vamci::cli::run(argc, argv, std::cout, std::cerr); }
