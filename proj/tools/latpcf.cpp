#include "latpcf/cli.hpp"

int main(int argc, char** argv) { return latpcf::cli_main(argc, argv); }
