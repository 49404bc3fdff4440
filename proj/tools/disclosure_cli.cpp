#include <iostream>

#include "disclosure/cli.hpp"

int main(int argc, char** argv) { return disclosure::cli::run(argc, argv, std::cout, std::cerr); }
