#include <iostream>

#include "nsflow/cli.hpp"

int main(int argc, char** argv) { return nsflow::cli::run(argc, argv, std::cout, std::cerr); }
