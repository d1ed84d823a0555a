#include <iostream>

#include "ogs/cli.hpp"

int main(int argc, char** argv) { return ogs::cli::run(argc, argv, std::cout, std::cerr); }
