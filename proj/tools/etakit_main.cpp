#include <etakit/cli.hpp>

int main(int argc, char** argv) {
    return etakit::cli::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
