#include "qfgcpe/cli.hpp"

int main(int argc, char** argv) { return qfgcpe::cli::run(argc, argv); }
