#include "asympartita/cli.hpp"

int main(int argc, char** argv) { return asympartita::cli::main(argc, argv); }
