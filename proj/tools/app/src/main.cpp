#include <iostream>

#include "hyperlip/app/app.hpp"

int main(int argc, char** argv) { return hyperlip::app::main_entry(argc, argv, std::cout, std::cerr); }
