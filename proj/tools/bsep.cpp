#include "bsep/cli.hpp"

int main(int argc, char** argv) { return bsep::cli::run(argc, argv); }
