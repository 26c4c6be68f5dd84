#include "sdp/cli.hpp"

int main(int argc, char** argv) { return sdp::cli_main(argc, argv); }
