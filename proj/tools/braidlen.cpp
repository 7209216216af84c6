#include <iostream>

#include "braidlen/cli.hpp"

int main(int argc, char** argv) { return braidlen::cli::run(argc, argv, std::cout, std::cerr); }
