#include "rifclark/cli.hpp"

int main(int argc, char** argv) { return rifclark::cli::main(argc, argv); }
