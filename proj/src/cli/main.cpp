// main.cpp — argument parsing, dispatch, exit-code mapping
#include <exception>
#include <iostream>
#include <vector>

#include "cli/config.hpp"
#include "cli/experiments.hpp"
#include "nonrecip/errors.hpp"

int main(int argc, char** argv) {
    using namespace nonrecip;
    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        const std::optional<RunConfig> cfg = parse_config(std::move(args));
        if (!cfg) return 0;  // usage/help
        return run_experiment(*cfg);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
