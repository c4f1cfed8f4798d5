#pragma once

#include <stdexcept>
#include <string>

namespace franchise {

// Machine-readable error classes; the CLI maps each to a distinct exit code.
enum class errc {
  domain_error,
  config_missing_file,
  config_parse_error,
  config_constraint,
  io_error,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::domain_error: return "domain_error";
    case errc::config_missing_file: return "config_missing_file";
    case errc::config_parse_error: return "config_parse_error";
    case errc::config_constraint: return "config_constraint";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void throw_domain(const std::string& msg) {
  throw error(errc::domain_error, msg);
}

}  // namespace franchise
