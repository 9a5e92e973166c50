#include "schwarz/cli.hpp"

int main(int argc, char** argv) { return schwarz::cli::run(argc, argv); }
