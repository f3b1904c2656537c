#include "cli.hpp"

int main(int argc, char** argv) { return acg::run_cli(argc, argv); }
