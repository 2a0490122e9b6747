#include "stillman/cli.hpp"

int main(int argc, char** argv) { return stillman::cli_main(argc, argv); }
