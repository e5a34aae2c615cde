#include <iostream>

#include "ppn/cli.hpp"

int main(int argc, char** argv) { return ppn::run_cli(argc, argv, std::cout, std::cerr); }
