#include <iostream>

#include "envdet/cli.hpp"

int main(int argc, char** argv) { return envdet::cli::run(argc, argv, std::cout, std::cerr); }
