#include <iostream>

#include "novikov/cli.hpp"

int main(int argc, char** argv) { return novikov::run_cli(argc, argv, std::cout, std::cerr); }
