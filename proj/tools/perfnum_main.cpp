#include "perfnum/cli.hpp"

int main(int argc, char** argv) { return perfnum::cli::run(argc, argv); }
