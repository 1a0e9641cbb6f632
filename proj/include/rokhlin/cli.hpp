#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace rokhlin::cli {

struct Check {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Machine-readable result of one command.  The overall verdict is the
/// conjunction of the checks.
struct Report {
    std::string command;
    nlohmann::json args = nlohmann::json::object();
    nlohmann::json input_hashes = nlohmann::json::object();
    std::vector<Check> checks;
    nlohmann::json data = nlohmann::json::object();

    void add(std::string name, double measured, double bound, bool pass);
    /// measured <= bound
    void at_most(std::string name, double measured, double bound);
    /// measured < bound
    void below(std::string name, double measured, double bound);
    void holds(std::string name, bool ok);

    bool pass() const;
    nlohmann::json to_json(double wall_time_s) const;
};

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

/// Runs the command line (args excludes the program name).  Returns 0 when
/// the report passes, 1 when a check fails, 2 on argument errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rokhlin::cli
