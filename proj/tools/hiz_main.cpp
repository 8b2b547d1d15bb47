#include "hiz/cli.hpp"

int main(int argc, char** argv) { return hiz::run_cli(argc, argv); }
