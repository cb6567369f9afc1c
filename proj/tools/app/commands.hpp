#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace adsc::app {

enum ExitCode : int { kOk = 0, kConfig = 1, kRefused = 2, kNumerical = 3 };

struct Context {
    RunConfig config;
    std::string out_dir;
    std::string pulses_path;  // validate: defaults to <out>/pulses.csv
    int jobs = 1;
    std::ostream* log = nullptr;
};

int cmd_synth(const Context& ctx);
int cmd_validate(const Context& ctx);
int cmd_sweep(const Context& ctx);
int cmd_poles(const Context& ctx);
int cmd_noise(const Context& ctx, const std::string& kind);

// Runs `body`, mapping library exceptions to exit codes and messages on `err`.
template <class F>
int guarded(std::ostream& err, F&& body);

int exit_code_for(const std::exception& e);

}  // namespace adsc::app

#include <ostream>

template <class F>
int adsc::app::guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}
