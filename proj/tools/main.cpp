#include <iostream>

#include "oddwaring/cli.hpp"

int main(int argc, char** argv) { return oddw::cli::dispatch(argc, argv, std::cout, std::cerr); }
