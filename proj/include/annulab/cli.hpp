#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace annulab {

// Exit statuses of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_solver = 3;

struct GridChoice {
  std::optional<double> b, a;  // default_domain of the surface when absent
  std::size_t n_s = 128;
  std::size_t n_theta = 256;
};

struct RunConfig {
  std::string surface;
  nlohmann::json params = nlohmann::json::object();
  GridChoice grid;
  std::vector<std::string> checks;
  std::optional<double> tolerance;
  std::uint64_t seed = 1;
  std::filesystem::path output = "annulab-out";
  std::set<std::string> formats{"json", "csv"};
};

/// Parses "128x256".
std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text);

/// Applies the keys of a JSON config file; throws Error{invalid_parameter} naming the key.
void apply_config_file(RunConfig& config, const nlohmann::json& file);

/// Runs every check of config, writes reports into config.output and returns an exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace annulab
