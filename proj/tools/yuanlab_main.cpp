#include "yuanlab/cli.hpp"

int main(int argc, char** argv) { return yl::run_cli(argc, argv); }
