#include "qisim/cli.hpp"

int main(int argc, char** argv) { return qisim::cli::cli_main(argc, argv); }
