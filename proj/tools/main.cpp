#include "cmx/cli.hpp"

int main(int argc, char** argv) { return cmx::cli_dispatch(argc, argv); }
