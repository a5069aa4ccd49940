#include "lllab/cli.hpp"

int main(int argc, char** argv) { return lllab::run(argc, argv); }
