#include "hashbound/cli.hpp"

int main(int argc, char** argv) { return hashbound::cli::run(argc, argv); }
