#include "touchard/cli.hpp"

int main(int argc, char** argv) { return touchard::cli::run(argc, argv); }
