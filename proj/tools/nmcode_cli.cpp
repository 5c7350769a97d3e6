#include "nmcode/cli.hpp"

int main(int argc, char** argv) { return nmcode::run_cli(argc, argv); }
