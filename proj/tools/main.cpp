#include "qbounce/cli.hpp"

int main(int argc, char** argv) { return qbounce::run_cli(argc, argv); }
