#include <iostream>

#include "hierflow/cli.hpp"

int main(int argc, char** argv) { return hierflow::run_cli(argc, argv, std::cout, std::cerr); }
