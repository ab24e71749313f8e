#include "qsheaf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qsheaf::run(argc, argv, std::cout, std::cerr); }
