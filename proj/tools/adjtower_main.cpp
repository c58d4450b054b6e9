#include "adjtower/cli.hpp"

int main(int argc, char** argv) { return adjtower::cli::run(argc, argv); }
