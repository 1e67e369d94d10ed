#include "rankgap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return rankgap::cli::dispatch(argc, argv, std::cout, std::cerr); }
