#include <iostream>

#include "rlab/cli.hpp"

int main(int argc, char** argv) { return rlab::cli::run(argc, argv, std::cout, std::cerr); }
