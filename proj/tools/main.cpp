#include <iostream>

#include "anisoq_cli/cli.hpp"

int main(int argc, char** argv) { return anisoq::cli::run(argc, argv, std::cout, std::cerr); }
