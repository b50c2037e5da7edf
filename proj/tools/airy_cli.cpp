#include "airy/harness.hpp"

int main(int argc, char** argv) { return airy::harness::run_cli(argc, argv); }
