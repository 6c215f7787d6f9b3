#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jetvar/report.hpp"

namespace jetvar {

/// Bad names, missing selections, invalid bounds. Exit status 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommandRequest {
  std::string command;
  std::optional<std::string> lagrangian;
  std::optional<std::string> symmetry;
  std::optional<std::string> source;
  std::optional<std::string> form;
  std::optional<int> max_jet_order;
  std::optional<int> max_degree;
};

/// el, split, noether, lie, trivial, helmholtz, master-check, decompose,
/// potential.
const std::vector<std::string>& command_names();

/// Runs one command. A mathematical negative is a normal report; a failed
/// identity check is recorded in Report::failures.
Report run_command(const ModelFile& model, const CommandRequest& req);

}  // namespace jetvar
