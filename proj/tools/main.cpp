#include <iostream>

#include "posprop/cli.hpp"

int main(int argc, char** argv) { return posprop::cli::run(argc, argv, std::cout, std::cerr); }
