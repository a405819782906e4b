#include "cwq/cli.hpp"

int main(int argc, char** argv) { return cwq::run_cli(argc, argv); }
