#include "svcdep/cli.hpp"

int main(int argc, char** argv) { return svcdep::run_cli(argc, argv); }
