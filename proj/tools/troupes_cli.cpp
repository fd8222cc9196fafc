#include "troupes/cli.hpp"

int main(int argc, char** argv) { return troupes::cli::run(argc, argv); }
