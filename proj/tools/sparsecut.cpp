#include <iostream>

#include "sparsecut/cli.hpp"

int main(int argc, char** argv) { return sparsecut::cli::dispatch(argc, argv, std::cout, std::cerr); }
