#include "cli.hpp"

int main(int argc, char** argv) { return mqc::cli::main_entry(argc, argv); }
