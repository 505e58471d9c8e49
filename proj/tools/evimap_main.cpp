#include <iostream>

#include "evimap/cli.hpp"

int main(int argc, char** argv) { return evimap::run_cli(argc, argv, std::cout, std::cerr); }
