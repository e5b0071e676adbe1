#pragma once

#include <json.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace geozeta::cli {

/// Raised for malformed invocations; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Command {
  std::string verb;
  nlohmann::json options;  // validated, typed option values; echoed as "request"
  bool csv = false;
};

/// Parses and validates argv (without the program name). Throws UsageError.
Command parse(const std::vector<std::string>& args);

/// Runs a validated command, writing one JSON document (or CSV) to out. Throws on computation
/// errors.
void execute(const Command& cmd, std::ostream& out);

/// parse + execute with exit codes 0 (success), 1 (computation error), 2 (usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace geozeta::cli
