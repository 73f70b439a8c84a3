#include "mlcm/cli.hpp"

int main(int argc, char** argv) { return mlcm::cli::run(argc, argv); }
