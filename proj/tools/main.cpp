#include "gimvip/shell.hpp"

int main(int argc, char** argv) { return gimvip::run_cli(argc, argv); }
