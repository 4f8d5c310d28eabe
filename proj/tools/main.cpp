#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return idp::cli::run(argc, argv, std::cerr); }
