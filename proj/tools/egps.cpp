#include "egps/cli.hpp"

int main(int argc, char** argv) { return egps::cli::run(argc, argv); }
