#include <iostream>

#include "report.hpp"

int main(int argc, char** argv) { return jetlie::cli::run(argc, argv, std::cout, std::cerr); }
