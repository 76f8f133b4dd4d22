#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace curvseg {

/// Bad command line or config input; the CLI maps this to exit code 2.
class usage_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Flat key=value file, one entry per line; '#' starts a comment and
/// blank lines are skipped.  Keys mirror the CLI long flag names.
std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path);

double config_double(const std::string& key, const std::string& value);
long config_int(const std::string& key, const std::string& value);
bool config_bool(const std::string& key, const std::string& value);

}  // namespace curvseg
