#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ietkit::cli::run(argc, argv, std::cout, std::cerr); }
