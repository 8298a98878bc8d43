#include "cli.hpp"

int main(int argc, char** argv) { return bcd::cli::main_entry(argc, argv); }
