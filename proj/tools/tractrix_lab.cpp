#include "tractrix/cli.hpp"

int main(int argc, char** argv) { return tractrix::cli::run(argc, argv); }
