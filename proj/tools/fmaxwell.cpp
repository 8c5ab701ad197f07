#include <iostream>

#include "fmaxwell/cli.hpp"

int main(int argc, char** argv) { return fmaxwell::cli::run(argc, argv, std::cout, std::cerr); }
