#include "fbm/cli_app.hpp"

int main(int argc, char** argv) { return fbm::cli::run(argc, argv); }
