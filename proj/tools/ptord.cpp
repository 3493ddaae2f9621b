#include <iostream>

#include "ptord/cli.hpp"

int main(int argc, char** argv) { return ptord::cli::run(argc, argv, std::cout, std::cerr); }
