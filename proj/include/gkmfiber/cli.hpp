#pragma once

#include "gkmfiber/weyl.hpp"

#include <iosfwd>
#include <string>

namespace gkmfiber {

struct CommandConfig {
    std::string subcommand;
    std::string series;
    int rank = 0;
    std::string k;
    std::string k1;
    unsigned max_degree = 4;
    std::string input;
    std::string out;
    std::size_t max_group_order = default_max_group_order;
    bool pretty = false;
};

inline constexpr unsigned max_degree_cap = 16;

// Exit status: 0 pass, 1 verification failure, 2 invalid input.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (GKM_MAX_GROUP_ORDER supplies the cap when the flag is absent), then runs.
int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gkmfiber
