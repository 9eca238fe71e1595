#include <iostream>

#include "ehrenfest/cli.hpp"

int main(int argc, char** argv) { return ehrenfest::run_cli(argc, argv, std::cout, std::cerr); }
